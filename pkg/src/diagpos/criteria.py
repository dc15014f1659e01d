"""Obstructions and certificates for positivity of the diagonal.

Each rule turns declared geometric facts plus exact arithmetic into
Certificates.  Pipelines combine the rules for hypersurfaces, K3 surfaces,
surfaces given by invariants, and threefolds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Iterable, Mapping, Sequence

from .blowdiag import (
    DiagonalBlowupModel, corrected_keys, hilb2_pairing_product, load_table,
    surface_rigidity_via_blowup, verify_decomposition_row,
)
from .certificates import Certificate, make_certificate, sort_certificates
from .cones import rank2_trichotomy
from .errors import DataError, UsageError
from .pell import general_pell_solvable, k3_movability_bound
from .selfprod import kunneth_big_nef_certificate, kunneth_projective_space, kunneth_quadric
from .varieties import (
    SurfaceInvariants, ThreefoldInvariants, hypersurface, hypersurface_euler_formula, hypersurface_name,
)

FACT_KINDS = ("fibration", "curve-map", "finite-cover", "negative-curve", "involution-graph", "section",
              "hilb2-divisor")


@dataclass(frozen=True)
class MorphismFact:
    """A geometric input taken from outside the engine.

    fibration        surjection onto a variety of dimension ``target_dim`` < n
    curve-map        surjection onto a curve of genus ``genus`` (>= 2 matters)
    finite-cover     generically finite map of degree ``degree`` onto Y with c_n(Y) = ``target_euler``
    negative-curve   an effective curve of self-intersection ``self_intersection`` < 0
    involution-graph the graph of an involution, meeting the diagonal in ``pairing`` (< 0)
    section          a section of the canonical elliptic fibration (kappa = 1)
    hilb2-divisor    H^[2] - B' with H.H = ``degree``; nef when ``nef`` else only movable
    """

    kind: str
    target_dim: int | None = None
    genus: int | None = None
    degree: int | None = None
    target_euler: int | None = None
    self_intersection: int | None = None
    pairing: Fraction | None = None
    nef: bool = False
    note: str = ""

    def __post_init__(self):
        need = {"fibration": ("target_dim",), "curve-map": ("genus",), "finite-cover": ("degree", "target_euler"),
                "negative-curve": ("self_intersection",), "involution-graph": (), "section": (),
                "hilb2-divisor": ("degree",)}
        if self.kind not in need:
            raise DataError(f"unknown fact kind {self.kind!r}; expected one of {', '.join(FACT_KINDS)}")
        missing = [f for f in need[self.kind] if getattr(self, f) is None]
        if missing:
            raise DataError(f"{self.kind} fact is missing {', '.join(missing)}")
        if self.kind == "negative-curve" and self.self_intersection >= 0:
            raise DataError("a negative-curve fact needs negative self-intersection")
        if self.kind == "involution-graph" and self.pairing is not None and self.pairing >= 0:
            raise DataError("an involution-graph fact needs a negative pairing with the diagonal")
        if self.kind == "finite-cover" and self.degree < 1:
            raise DataError("cover degree must be positive")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MorphismFact":
        try:
            kw = {k: data[k] for k in ("target_dim", "genus", "degree", "target_euler", "self_intersection")
                  if data.get(k) is not None}
            kw = {k: int(v) for k, v in kw.items()}
            pairing = data.get("pairing")
            return cls(str(data["kind"]), pairing=None if pairing is None else Fraction(str(pairing)),
                       nef=bool(data.get("nef", False)), note=str(data.get("note", "")), **kw)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DataError):
                raise
            raise DataError(f"malformed fact: {exc}") from exc

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        for k in ("target_dim", "genus", "degree", "target_euler", "self_intersection"):
            if getattr(self, k) is not None:
                out[k] = getattr(self, k)
        if self.pairing is not None:
            out["pairing"] = str(self.pairing)
        if self.nef:
            out["nef"] = True
        if self.note:
            out["note"] = self.note
        return out

    def describe(self) -> str:
        base = {
            "fibration": lambda: f"surjection onto a variety of dimension {self.target_dim}",
            "curve-map": lambda: f"surjection onto a curve of genus {self.genus}",
            "finite-cover": lambda: f"degree-{self.degree} cover of a variety with Euler number {self.target_euler}",
            "negative-curve": lambda: f"effective curve with self-intersection {self.self_intersection}",
            "involution-graph": lambda: "graph of an involution",
            "section": lambda: "section of the elliptic fibration",
            "hilb2-divisor": lambda: f"H^[2] - B' {'nef' if self.nef else 'movable'} with H^2 = {self.degree}",
        }[self.kind]()
        return base + (f" ({self.note})" if self.note else "")


# -- single rules -------------------------------------------------------------


def hodge_obstruction(hodge: Sequence[int], subject: str = "variety") -> Certificate:
    """h^{k,0} for k = 1..n; any nonzero entry rules out a homologically big diagonal."""
    for k, h in enumerate(hodge, start=1):
        if h < 0:
            raise DataError("Hodge numbers are nonnegative")
        if h > 0:
            return make_certificate(subject, "homologically-big", "no", "hodge-obstruction", {f"h^{k},0": h}, [],
                                    [f"H^{k},0 is nonzero"])
    return make_certificate(subject, "homologically-big", "unknown", "hodge-obstruction",
                            {f"h^{k},0": h for k, h in enumerate(hodge, start=1)}, [],
                            ["all h^{k,0} vanish: no Hodge obstruction"])


def morphism_obstructions(facts: Iterable[MorphismFact], c_n, n: int, subject: str = "variety") -> list[Certificate]:
    c_n = Fraction(c_n)
    out = []
    for f in facts:
        a = [f.describe()]
        if f.kind == "fibration":
            if f.target_dim >= n:
                raise DataError(f"fibration target must have dimension < {n}")
            if f.target_dim > 0:
                out.append(make_certificate(subject, "big", "no", "fibration", {"target dimension": f.target_dim}, a,
                                            ["pullback of an ample class from the base is nef and not big"]))
        elif f.kind == "curve-map":
            if n > 1:
                out.append(make_certificate(subject, "big", "no", "fibration", {"target dimension": 1}, a,
                                            ["pullback of a point class from the curve is nef and not big"]))
            if f.genus >= 2:
                out.append(make_certificate(subject, "nef", "no", "curve-genus", {"genus": f.genus}, a,
                                            ["the diagonal of the base curve has negative self-intersection"]))
        elif f.kind == "finite-cover":
            bound = f.degree * f.target_euler
            nums = {"c_n(X)": c_n, "d*c_n(Y)": bound}
            if c_n > bound:
                out.append(make_certificate(subject, "nef", "no", "finite-cover", nums, a,
                                            ["Delta_X pairs negatively with F^*Delta_Y - Delta_X"]))
        elif f.kind == "negative-curve":
            out.append(make_certificate(subject, "nef", "no", "negative-curve", {"C^2": f.self_intersection}, a,
                                        ["C x C is effective and meets the diagonal negatively"]))
        elif f.kind == "involution-graph":
            nums = {"Delta.Gamma": f.pairing} if f.pairing is not None else {}
            out.append(make_certificate(subject, "nef", "no", "involution-graph", nums, a,
                                        ["the graph of the involution meets the diagonal negatively"]))
        elif f.kind == "section":
            out.append(make_certificate(subject, "nef", "no", "negative-curve", {}, a,
                                        ["a section T of the canonical fibration has T^2 < 0 by adjunction"]))
    return out


def hilb2_rule(subject: str, degree: int, c2, nef: bool, b1b2=1, extra: Mapping[str, Any] | None = None,
               assumptions: Iterable[str] = ()) -> list[Certificate]:
    """Apply the Hilbert-square criterion with H = A of self-intersection ``degree``."""
    pairing = hilb2_pairing_product(degree, b1b2, c2)
    nums = {"H.A": degree, "b1b2": b1b2, "c2": c2, **(extra or {})}
    return surface_rigidity_via_blowup(nef, True, pairing, subject, numbers=nums, assumptions=assumptions)


# -- K3 surfaces --------------------------------------------------------------

K3_DEGREE_TWO_PAIRING = Fraction(-18)  # Lefschetz: 1 + (1 - 21) + 1 for the covering involution


def k3_status(d: int, picard_rank_one: bool = True) -> list[Certificate]:
    if d <= 0 or d % 2:
        raise UsageError("K3 degree must be a positive even integer")
    subject = f"K3 surface of degree {d}"
    certs = [hodge_obstruction([0, 1], subject),
             make_certificate(subject, "big", "no", "hodge-obstruction", {"p_g": 1}, [],
                              ["p_g > 0; bigness and homological bigness agree for surfaces"])]
    if d == 2:
        certs += morphism_obstructions([MorphismFact("involution-graph", pairing=K3_DEGREE_TWO_PAIRING,
                                                     note="covering involution of the double plane")], 24, 2, subject)
    else:
        mb = k3_movability_bound(d)
        extra = {"b_d^2": mb.b_squared, "d/6": mb.threshold}
        assumptions = ["H - b_d B is movable on Hilb^2(S) for b_d^2 = d/2 - 1"]
        if mb.pell is not None:
            extra.update({"pell x": mb.pell.x, "pell y": mb.pell.y})
        if not picard_rank_one:
            assumptions.append("degeneration to a Picard rank one K3 of the same degree")
        certs += [c for c in hilb2_rule(subject, d, 24, False, mb.b_squared, extra, assumptions)
                  if c.property == "nef"]
    certs.append(k3_rigidity(d, picard_rank_one))
    return certs


def k3_rigidity(d: int, picard_rank_one: bool = True) -> Certificate:
    subject = f"K3 surface of degree {d}"
    if not picard_rank_one:
        return make_certificate(subject, "strongly-rigid", "unknown", "k3-pell-rigidity", {}, [],
                                ["the Pell criterion needs Picard rank one"])
    res = general_pell_solvable(2 * d, 5)
    nums = {"D": 2 * d, "N": 5}
    if res.bound is not None:
        nums["search bound"] = res.bound
    if res.status == "unsolvable":
        return make_certificate(subject, "strongly-rigid", "yes", "k3-pell-rigidity", nums,
                                ["Picard rank one"], [f"x^2 - {2 * d} y^2 = 5 has no solution: {res.method}"])
    if res.status == "solvable":
        x, y = res.witness
        nums.update({"x": x, "y": y})
        return make_certificate(subject, "strongly-rigid", "unknown", "k3-pell-rigidity", nums, ["Picard rank one"],
                                [f"x^2 - {2 * d} y^2 = 5 has the solution ({x}, {y}); the criterion is silent"])
    return make_certificate(subject, "strongly-rigid", "unknown", "k3-pell-rigidity", nums, ["Picard rank one"],
                            [res.method])


# -- threefolds ---------------------------------------------------------------


def threefold_obstruction(t: ThreefoldInvariants) -> Certificate:
    if not t.minimal:
        raise UsageError(f"{t.name}: pass the minimal model; run the obstruction after contracting")
    if t.kodaira is None:
        raise UsageError(f"{t.name}: the obstruction needs Kodaira dimension >= 0")
    subject = t.name
    if t.hodge and any(t.hodge):
        return hodge_obstruction(t.hodge, subject)
    nums = {"c1c2": t.c1c2, "chi(O)": Fraction(t.c1c2, 24)}
    if t.c1c2 != 24:
        return make_certificate(subject, "homologically-big", "no", "threefold-chi", nums, [],
                                ["chi(O) = c1c2/24 is not 1, so some H^{k,0} is nonzero"])
    if t.kodaira == 0:
        raise DataError(f"{subject}: a minimal threefold of Kodaira dimension 0 has c1c2 = 0")
    if t.kodaira == 3:
        if t.c1_cubed >= 0:
            raise DataError(f"{subject}: general type needs c1^3 = -K^3 < 0")
        nums.update({"c1^3": t.c1_cubed, "8/3 c1c2": 64})
        return make_certificate(subject, "homologically-big", "no", "threefold-miyaoka-yau", nums, [],
                                [f"Miyaoka-Yau needs c1^3 >= 64 but c1^3 = {t.c1_cubed} < 0"])
    nums["kodaira"] = t.kodaira
    return make_certificate(subject, "homologically-big", "no", "iitaka-fibration", nums,
                            ["the Iitaka fibration maps onto a variety of dimension kappa"],
                            ["a fibration onto a lower-dimensional base rules out bigness"])


# -- surfaces -----------------------------------------------------------------


def _is_p2(s: SurfaceInvariants) -> bool:
    return s.kodaira is None and s.minimal and s.K2 == 9 and s.c2 == 3 and s.q == 0 and s.pg == 0


def _is_horikawa(s: SurfaceInvariants) -> bool:
    return s.kodaira == 2 and s.minimal and s.q == 0 and s.K2 == 2 * s.pg - 4


def classify_surface(s: SurfaceInvariants, facts: Sequence[MorphismFact] = ()) -> list[Certificate]:
    subject = s.name
    certs = morphism_obstructions(facts, s.c2, 2, subject)
    if s.pg > 0 or s.q > 0:
        certs.append(hodge_obstruction([s.q, s.pg], subject))
        certs.append(make_certificate(subject, "big", "no", "hodge-obstruction", {"q": s.q, "p_g": s.pg}, [],
                                      ["bigness and homological bigness agree for surfaces"]))
    if not s.minimal:
        certs.append(make_certificate(subject, "nef", "no", "non-minimal", {"E^2": -1}, [],
                                      ["a (-1)-curve is effective and not nef"]))
    for f in facts:
        if f.kind == "hilb2-divisor":
            certs += hilb2_rule(subject, f.degree, s.c2, f.nef, 1, assumptions=[f.describe()])
    for deg in s.polarization_degrees:
        certs += hilb2_rule(subject, deg, s.c2, True, 1,
                            assumptions=[f"very ample H with H^2 = {deg}, so H^[2] - B' is nef"])

    if s.tangent_nef:
        certs.append(make_certificate(subject, "nef", "yes", "tangent-nef", {}, ["T_S is nef"],
                                      ["nef tangent bundle makes the diagonal nef"]))

    k = s.kodaira
    if k is None:
        if _is_p2(s):
            certs += kunneth_big_nef_certificate(kunneth_projective_space(2, subject))
        else:
            certs.append(make_certificate(subject, "big", "no", "ruled-fibration", {"K^2": s.K2}, [],
                                          ["a rational or ruled surface other than P2 maps onto a curve"]))
            if s.minimal and not s.tangent_nef:
                certs.append(make_certificate(subject, "nef", "no", "ruled-classification", {"q": s.q},
                                              ["classification of minimal ruled surfaces"],
                                              ["carries a negative curve or maps to a curve of genus >= 2"]))
    elif k == 0:
        if s.pg == 1 and s.q == 0:
            certs.append(make_certificate(subject, "nef", "no", "k3-not-nef", {"c2": s.c2},
                                          ["every K3 surface degenerates to a Picard rank one K3"],
                                          ["no K3 surface has nef diagonal"]))
    elif k == 1:
        certs.append(make_certificate(subject, "big", "no", "kodaira-one", {"kodaira": 1},
                                      ["the canonical map is an elliptic fibration onto a curve"],
                                      ["fibration onto a curve"]))
    else:
        if _is_horikawa(s):
            certs += hilb2_rule(subject, s.K2, s.c2, False, 1, {"p_g": s.pg},
                                ["K is big and base point free, so K^[2] - B' is movable"])
        if s.pg == 0 and s.q == 0 and s.minimal:
            if s.K2 == 9:
                certs += kunneth_big_nef_certificate(kunneth_projective_space(2, subject))
            elif s.rank2_gram is not None:
                certs += rank2_trichotomy(s.rank2_gram, subject)
    return _resolve(certs, subject)


def _resolve(certs: list[Certificate], subject: str) -> list[Certificate]:
    """Add an explicit unknown for big/nef when no rule decided them."""
    out = list(certs)
    for prop in ("big", "nef"):
        if not any(c.property == prop and c.verdict in ("yes", "no") for c in certs):
            if not any(c.property == prop for c in certs):
                out.append(make_certificate(subject, prop, "unknown", "no-rule", {}, [],
                                            ["no rule in the engine decides this case"]))
    return sort_certificates(out)


def perturbed_diagonal_surface(s: SurfaceInvariants) -> Certificate:
    verdict = "yes" if s.pg == 0 else "no"
    why = "p_g = 0: Delta + H x H is big for some ample H" if s.pg == 0 else \
        "p_g > 0: Delta + H x H is never big"
    return make_certificate(s.name, "perturbed-big", verdict, "perturbed-diagonal", {"p_g": s.pg}, [], [why])


def surface_in_p3(d: int) -> SurfaceInvariants:
    """Smooth degree-d surface in P3."""
    K2 = d * (d - 4) ** 2
    c2 = d ** 3 - 4 * d ** 2 + 6 * d
    kod = None if d <= 3 else 0 if d == 4 else 2
    return SurfaceInvariants(hypersurface_name(2, d), kod, K2, c2, 0, comb(d - 1, 3), minimal=d != 3,
                             polarization_degrees=(d,), picard_rank=1 if d >= 4 else None, tangent_nef=d <= 2)


def double_plane(d: int) -> SurfaceInvariants:
    """Double cover of P2 branched along a smooth curve of even degree d."""
    if d % 2 or d < 2:
        raise UsageError("branch degree must be even and positive")
    k = d // 2
    K2 = 2 * (k - 3) ** 2
    c2 = d * d - 3 * d + 6
    pg = (k - 1) * (k - 2) // 2
    kod = None if d <= 4 else 0 if d == 6 else 2
    return SurfaceInvariants(f"double plane branched in degree {d}", kod, K2, c2, 0, pg,
                             polarization_degrees=(d,))


def horikawa(pg: int) -> SurfaceInvariants:
    if pg < 3:
        raise UsageError("Horikawa surfaces have p_g >= 3")
    K2 = 2 * pg - 4
    return SurfaceInvariants(f"Horikawa surface with p_g = {pg}", 2, K2, 12 + 12 * pg - K2, 0, pg)


# -- hypersurfaces --------------------------------------------------------------


@lru_cache(maxsize=None)
def _table_reports() -> dict[tuple[int, int], Any]:
    fixed = corrected_keys()
    out = {}
    models: dict[tuple[int, int], DiagonalBlowupModel] = {}
    for row in load_table(corrected=True):
        key = (row.n, row.d)
        if key not in models:
            models[key] = DiagonalBlowupModel(hypersurface(row.n, row.d))
        out[key] = verify_decomposition_row(row, models[key], strict=False, corrected=key in fixed)
    return out


def hypersurface_pipeline(n: int, d: int) -> list[Certificate]:
    if n < 1 or d < 1:
        raise UsageError("need n >= 1 and d >= 1")
    subject = hypersurface_name(n, d)
    chi = hypersurface_euler_formula(n, d)
    if d == 1:
        return sort_certificates(kunneth_big_nef_certificate(kunneth_projective_space(n, subject)))
    if d == 2:
        return sort_certificates(kunneth_big_nef_certificate(replace(kunneth_quadric(n), name=subject)))
    if n == 1:
        genus = (d - 1) * (d - 2) // 2
        certs = [hodge_obstruction([genus], subject),
                 make_certificate(subject, "big", "no", "hodge-obstruction", {"genus": genus}, [],
                                  ["a curve of positive genus has h^{1,0} > 0"])]
        if genus == 1:
            certs.append(make_certificate(subject, "nef", "yes", "tangent-nef", {"Delta^2": chi}, ["T_C is trivial"],
                                          ["the diagonal of an elliptic curve has self-intersection 0"]))
        else:
            certs.append(make_certificate(subject, "nef", "no", "self-intersection", {"Delta^2": chi}, [],
                                          ["Delta^2 = c_1 < 0"]))
        return sort_certificates(certs)
    certs: list[Certificate] = []
    if n % 2:
        certs.append(make_certificate(subject, "nef", "no", "self-intersection", {"Delta^2": chi}, [],
                                      ["Delta^2 = c_n(X) < 0"]))
    else:
        certs += morphism_obstructions([MorphismFact("finite-cover", degree=d, target_euler=n + 1,
                                                     note="projection from a general point")], chi, n, subject)
    if n == 2:
        s = surface_in_p3(d)
        facts = []
        if d == 3:
            facts.append(MorphismFact("negative-curve", self_intersection=-1, note="a line on the cubic surface"))
        return _resolve(certs + classify_surface(s, facts), subject)
    if d >= n + 2:
        pg = comb(d - 1, n + 1)
        hodge = [0] * (n - 1) + [pg]
        certs.append(hodge_obstruction(hodge, subject))
    report = _table_reports().get((n, d))
    if report is not None:
        certs += [replace(c, subject=subject) for c in report.certificates()]
    elif d <= n + 1:
        certs.append(make_certificate(subject, "big", "unknown", "table-decomposition", {}, [],
                                      ["no decomposition row is known for this Fano hypersurface"]))
    else:
        certs.append(make_certificate(subject, "big", "unknown", "hodge-obstruction", {}, [],
                                      ["the Hodge rule decides homological bigness only; numerical bigness is open "
                                       "in dimension >= 3"]))
    return _resolve(certs, subject)


# -- Fano threefolds and the open cases ---------------------------------------------


def load_fano_threefolds() -> list[dict]:
    from importlib import resources
    text = resources.files("diagpos").joinpath("data").joinpath("fano_threefolds.json").read_text(encoding="utf-8")
    return json.loads(text)["threefolds"]


def fano_threefold_certificates(entry: Mapping[str, Any]) -> list[Certificate]:
    from .cones import toric_big_diagonal, toric_nef_diagonal
    from .toric import product_of_projective_spaces_fan, toric_from_fan
    name = entry["name"]
    facts = [MorphismFact.from_dict(f) for f in entry.get("facts", [])]
    certs = morphism_obstructions(facts, entry.get("euler", 0), 3, name)
    if entry.get("kunneth") == "P3":
        certs += kunneth_big_nef_certificate(kunneth_projective_space(3, name))
    elif entry.get("kunneth") == "Q3":
        certs += kunneth_big_nef_certificate(replace(kunneth_quadric(3), name=name))
    if entry.get("toric"):
        x = toric_from_fan(product_of_projective_spaces_fan(entry["toric"]))
        for c in (toric_big_diagonal(x), toric_nef_diagonal(x)):
            certs.append(replace(c, subject=name))
    if entry.get("tangent_nef"):
        certs.append(make_certificate(name, "nef", "yes", "tangent-nef", {}, ["T_X is nef"],
                                      ["nef tangent bundle makes the diagonal nef"]))
    if entry.get("nef_decomposition"):
        certs.append(make_certificate(name, "nef", "yes", "kunneth-nef", {"h^1,2": 0},
                                      ["Delta is a nonnegative combination of products of extremal nef classes"],
                                      ["h^{1,2} = 0, so the diagonal is spanned by products of the nef bases"]))
    for prop, why in entry.get("open", {}).items():
        certs.append(make_certificate(name, prop, "unknown", "open-case", {}, [], [why]))
    return sort_certificates(certs)


# (subject, property) pairs that the engine must leave undecided
OPEN_CASES: dict[tuple[str, str], str] = {
    ("V18", "nef"): "nefness open among primitive Fano threefolds",
    ("V18", "big"): "bigness of Picard rank one Fano threefolds is open",
    ("intersection of two quadrics in P5", "nef"): "nefness open among primitive Fano threefolds",
    ("intersection of two quadrics in P5", "big"): "bigness of Picard rank one Fano threefolds is open",
    ("double cover of P2 x P1 branched in a (2,2) divisor", "nef"): "nefness open among primitive Fano threefolds",
    ("mixed fake quadric", "big"): "K^2 = 8, p_g = q = 0, mixed quotient of a product of curves",
    ("mixed fake quadric", "nef"): "K^2 = 8, p_g = q = 0, mixed quotient of a product of curves",
}

# implications between properties of the same subject: (p, v) forces (q, not w)
IMPLICATIONS = (
    (("strongly-rigid", "yes"), ("big", "yes")),        # a rigid class spans an extremal ray
    (("big", "no"), ("homologically-big", "yes")),      # homologically big implies big
    (("big", "yes"), ("perturbed-big", "no")),          # adding an effective class keeps bigness
)


@dataclass
class SweepReport:
    verdicts: dict[tuple[str, str], str]
    conflicts: list[tuple[str, str, list[str]]]
    unexpected_unknowns: list[tuple[str, str]]
    missing_open_cases: list[tuple[str, str]]
    certificates: int = 0

    @property
    def ok(self) -> bool:
        return not (self.conflicts or self.unexpected_unknowns or self.missing_open_cases)


def consistency_sweep(entries: Iterable[tuple[str, Sequence[str], Sequence[Certificate]]],
                      open_cases: Mapping[tuple[str, str], str] = OPEN_CASES) -> SweepReport:
    """Check a corpus of (subject, targeted properties, certificates).

    A (subject, property) pair conflicts when rules give both yes and no, or
    when an implication between properties is violated.  Targeted pairs left
    undecided must be registered open cases, and every open case whose
    subject is present must come out undecided.
    """
    decided: dict[tuple[str, str], set[str]] = {}
    rules: dict[tuple[str, str], list[str]] = {}
    targets: set[tuple[str, str]] = set()
    subjects = set()
    count = 0
    for subject, props, certs in entries:
        subjects.add(subject)
        targets.update((subject, p) for p in props)
        for c in certs:
            count += 1
            key = (c.subject, c.property)
            rules.setdefault(key, []).append(f"{c.rule}:{c.verdict}")
            if c.verdict != "unknown":
                decided.setdefault(key, set()).add(c.verdict)
    conflicts = []
    verdicts = {}
    for key, vs in decided.items():
        if len(vs) > 1:
            conflicts.append((key[0], key[1], rules[key]))
        verdicts[key] = "conflict" if len(vs) > 1 else next(iter(vs))
    for (subj, _prop) in list(decided):
        for (p, v), (q, w) in IMPLICATIONS:
            if v in decided.get((subj, p), set()) and w in decided.get((subj, q), set()):
                conflicts.append((subj, f"{p}/{q}", rules.get((subj, p), []) + rules.get((subj, q), [])))
    conflicts = sorted(set((a, b, tuple(c)) for a, b, c in conflicts))
    unexpected = sorted(k for k in targets if k not in decided and k not in open_cases)
    missing = sorted(k for k in open_cases if k[0] in subjects and k in decided)
    for k in targets:
        verdicts.setdefault(k, "unknown")
    return SweepReport(verdicts, [(a, b, list(c)) for a, b, c in conflicts], unexpected, missing, count)
