"""The regression corpus: every shipped example with the properties it is meant to decide.

Each entry lists the properties that the rules are expected to settle.  A
targeted property left undecided must be one of the registered open cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .certificates import Certificate, sort_certificates
from .cones import toric_big_diagonal, toric_nef_diagonal
from .criteria import (
    MorphismFact, classify_surface, consistency_sweep, double_plane, fano_threefold_certificates, horikawa,
    hypersurface_pipeline, k3_status, load_fano_threefolds, perturbed_diagonal_surface, threefold_obstruction,
    SweepReport, _table_reports,
)
from .elliptic import verify_blowup_elliptic
from .toric import fan_product, hirzebruch_fan, product_of_projective_spaces_fan, projective_space_fan, toric_from_fan
from .varieties import SurfaceInvariants, ThreefoldInvariants, hypersurface_name

BIG_NEF = ("big", "nef")

TORIC_PRESETS: dict[str, Callable] = {
    **{f"P{n}": (lambda n=n: projective_space_fan(n)) for n in range(1, 5)},
    "P1xP1": lambda: product_of_projective_spaces_fan([1, 1]),
    "P2xP1": lambda: product_of_projective_spaces_fan([2, 1]),
    "P1xP1xP1": lambda: product_of_projective_spaces_fan([1, 1, 1]),
    "P2xP2": lambda: product_of_projective_spaces_fan([2, 2]),
    "F1": lambda: hirzebruch_fan(1),
    "F2": lambda: hirzebruch_fan(2),
    "F3": lambda: hirzebruch_fan(3),
    "F1xP1": lambda: fan_product(hirzebruch_fan(1), projective_space_fan(1)),
}


def toric_certificates(name: str) -> list[Certificate]:
    try:
        fan = TORIC_PRESETS[name]()
    except KeyError:
        from .errors import UsageError
        raise UsageError(f"unknown toric preset {name!r}; choose from {', '.join(sorted(TORIC_PRESETS))}") from None
    x = toric_from_fan(fan)
    return sort_certificates([toric_big_diagonal(x), toric_nef_diagonal(x)])


def _surface(name, kodaira, K2, c2, q, pg, **kw) -> SurfaceInvariants:
    return SurfaceInvariants(name, kodaira, K2, c2, q, pg, **kw)


# (invariants, facts) for the surface corpus
SURFACES: list[tuple[SurfaceInvariants, tuple[MorphismFact, ...]]] = [
    (_surface("P2", None, 9, 3, 0, 0, tangent_nef=True), ()),
    (_surface("P1 x P1", None, 8, 4, 0, 0, tangent_nef=True), ()),
    (_surface("F1", None, 8, 4, 0, 0, minimal=False), ()),
    (_surface("F2", None, 8, 4, 0, 0), (MorphismFact("negative-curve", self_intersection=-2),)),
    (_surface("ruled surface over a genus 2 curve", None, -8, -4, 2, 0),
     (MorphismFact("curve-map", genus=2),)),
    (_surface("abelian surface", 0, 0, 0, 2, 1, tangent_nef=True), ()),
    (_surface("hyperelliptic surface", 0, 0, 0, 1, 0, tangent_nef=True),
     (MorphismFact("fibration", target_dim=1, note="Albanese map to an elliptic curve"),)),
    (_surface("Enriques surface", 0, 0, 12, 0, 0),
     (MorphismFact("fibration", target_dim=1, note="elliptic pencil"),
      MorphismFact("involution-graph", note="Enriques involution of the K3 cover"))),
    (_surface("K3 surface", 0, 0, 24, 0, 1, polarization_degrees=(4,)), ()),
    (_surface("elliptic surface with a section", 1, 0, 36, 0, 2), (MorphismFact("section"),)),
    (_surface("product of curves of genus 2 and 3", 2, 16, 8, 5, 6),
     (MorphismFact("curve-map", genus=2), MorphismFact("curve-map", genus=3))),
    (_surface("fake projective plane", 2, 9, 3, 0, 0), ()),
    (_surface("unmixed fake quadric", 2, 8, 4, 0, 0, rank2_gram=((0, 1), (1, 0))), ()),
    (_surface("mixed fake quadric", 2, 8, 4, 0, 0), ()),
    *[(horikawa(pg), ()) for pg in range(3, 11)],
    *[(double_plane(d), ()) for d in range(8, 21, 2)],
]

THREEFOLDS: list[ThreefoldInvariants] = [
    ThreefoldInvariants("quintic Calabi-Yau threefold", 0, 0, 0, hodge=(0, 0, 1)),
    ThreefoldInvariants("general type threefold with c1c2 = 24", -2, 24, 3),
    ThreefoldInvariants("general type threefold with c1c2 = 48", -4, 48, 3),
    ThreefoldInvariants("elliptic threefold with c1c2 = 24", 0, 24, 1),
    ThreefoldInvariants("threefold of Kodaira dimension 2 with c1c2 = 24", 0, 24, 2),
    ThreefoldInvariants("abelian threefold", 0, 0, 0, hodge=(3, 3, 1)),
]


@dataclass(frozen=True)
class CorpusEntry:
    subject: str
    targets: tuple[str, ...]
    certificates: tuple[Certificate, ...]

    def as_tuple(self):
        return self.subject, self.targets, self.certificates


def _hypersurface_targets(n: int, d: int) -> tuple[str, ...]:
    t = ["nef"]
    if n <= 2 or d <= 2 or (n, d) in _table_reports():
        t.append("big")
    if d >= n + 2:
        t.append("homologically-big")
    return tuple(t)


def corpus(k3_max: int = 200) -> list[CorpusEntry]:
    out: list[CorpusEntry] = []
    for n in range(1, 7):
        for d in range(1, 7):
            out.append(CorpusEntry(hypersurface_name(n, d), _hypersurface_targets(n, d),
                                   tuple(hypersurface_pipeline(n, d))))
    for d in range(2, k3_max + 1, 2):
        out.append(CorpusEntry(f"K3 surface of degree {d}", ("big", "nef", "homologically-big"), tuple(k3_status(d))))
    for name in TORIC_PRESETS:
        out.append(CorpusEntry(toric_from_fan(TORIC_PRESETS[name]()).name, BIG_NEF, tuple(toric_certificates(name))))
    for s, facts in SURFACES:
        certs = classify_surface(s, facts) + [perturbed_diagonal_surface(s)]
        out.append(CorpusEntry(s.name, BIG_NEF + ("perturbed-big",), tuple(sort_certificates(certs))))
    for t in THREEFOLDS:
        out.append(CorpusEntry(t.name, ("homologically-big",), (threefold_obstruction(t),)))
    for e in load_fano_threefolds():
        out.append(CorpusEntry(e["name"], BIG_NEF, tuple(fano_threefold_certificates(e))))
    subject = "blow-up of P3 along a plane cubic"
    out.append(CorpusEntry(subject, BIG_NEF + ("homologically-big",),
                           tuple(verify_blowup_elliptic().certificates(subject))))
    return out


def sweep(k3_max: int = 200) -> SweepReport:
    return consistency_sweep(e.as_tuple() for e in corpus(k3_max))


__all__ = ["CorpusEntry", "SURFACES", "THREEFOLDS", "TORIC_PRESETS", "corpus", "sweep", "toric_certificates"]
