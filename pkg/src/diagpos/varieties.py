"""Numerical models of the varieties the verdict engine works with."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .errors import DataError, UsageError
from .rings import CycleClass, GradedRingPresentation, RingBase, truncated_polynomial_ring
from .series import TruncatedSeries


@dataclass(frozen=True, eq=False)
class VarietyModel:
    name: str
    dimension: int
    ring: RingBase
    tangent_chern: TruncatedSeries
    ample: CycleClass | None = None
    # hyperplane class of an embedding as a hypersurface, when there is one
    hyperplane: CycleClass | None = None
    kind: str = "generic"
    params: tuple = ()

    def chern(self, k: int) -> CycleClass:
        return self.tangent_chern[k]

    def segre(self) -> TruncatedSeries:
        return self.tangent_chern.inverse()

    def __repr__(self) -> str:
        return f"<VarietyModel {self.name}>"


def hypersurface_euler_formula(n: int, d: int) -> Fraction:
    """((1-d)^(n+2) - 1)/d + n + 2"""
    if d < 1:
        raise UsageError("degree must be positive")
    return Fraction((1 - d) ** (n + 2) - 1, d) + n + 2


def _hypersurface_model(n: int, d: int, name: str, kind: str) -> VarietyModel:
    ring = truncated_polynomial_ring("h", n, d, label=name)
    h = ring.gen(0)
    c = TruncatedSeries([1, h], n, ring) ** (n + 2) * TruncatedSeries([1, h * d], n, ring).inverse()
    return VarietyModel(name, n, ring, c, ample=h, hyperplane=h, kind=kind, params=(n, d))


def projective_space(n: int) -> VarietyModel:
    if n < 1:
        raise UsageError("projective space needs n >= 1")
    # P^n is the degree-1 hypersurface in P^(n+1)
    return _hypersurface_model(n, 1, f"P{n}", "projective-space")


_DEGREE_NAMES = {1: "linear", 2: "quadric", 3: "cubic", 4: "quartic", 5: "quintic", 6: "sextic"}
_DIM_NAMES = {1: "curve", 2: "surface", 3: "threefold", 4: "fourfold", 5: "fivefold", 6: "sixfold"}


def hypersurface_name(n: int, d: int) -> str:
    dn = _DEGREE_NAMES.get(d, f"degree-{d}")
    nn = _DIM_NAMES.get(n, f"{n}-fold")
    return f"{dn} {nn}"


def hypersurface(n: int, d: int) -> VarietyModel:
    if n < 1 or d < 1:
        raise UsageError("hypersurface needs n >= 1 and d >= 1")
    return _hypersurface_model(n, d, hypersurface_name(n, d), "hypersurface")


def euler_characteristic(x: VarietyModel) -> Fraction:
    return x.chern(x.dimension).integrate()


def k3_numerical(d: int) -> VarietyModel:
    """Picard-rank-one K3 surface of degree d: N^1 spanned by H with H^2 = d."""
    if d <= 0 or d % 2:
        raise UsageError("K3 degree must be a positive even integer")
    ring = truncated_polynomial_ring("H", 2, d, label=f"K3 of degree {d}")
    H = ring.gen(0)
    c = TruncatedSeries([1, 0, H * H * Fraction(24, d)], 2, ring)
    return VarietyModel(f"K3 surface of degree {d}", 2, ring, c, ample=H, kind="k3", params=(d,))


def blowup_p3_curve(e: int, g: int) -> VarietyModel:
    """Blow-up of P^3 along a smooth curve of degree e and genus g.

    The exceptional divisor is P(N) over the curve, E|_E = -zeta, and
    pushforward of zeta^(1+j) is s_j(N).  With deg N = 4e + 2g - 2 this gives
    H^2 E = 0, H E^2 = -e and E^3 = s_1(N) = -deg N.
    """
    deg_n = 4 * e + 2 * g - 2
    table = {(3, 0): 1, (2, 1): 0, (1, 2): -e, (0, 3): -deg_n}
    ring = GradedRingPresentation(["H", "E"], [1, 1], 3, lambda m: table[m],
                                  label=f"Bl_C P3 (deg {e}, genus {g})")
    H, E = ring.gens()
    chi = 4 + (2 - 2 * g)
    c1 = H * 4 - E
    c2 = H * H * (6 + e) - H * E * 4
    c3 = H ** 3 * chi
    c = TruncatedSeries([1, c1, c2, c3], 3, ring)
    return VarietyModel(f"blow-up of P3 along a curve of degree {e} and genus {g}", 3, ring, c,
                        kind="blowup-p3-curve", params=(e, g))


def blowup_p3_plane_cubic() -> VarietyModel:
    x = blowup_p3_curve(3, 1)
    H, E = x.ring.gens()
    # 4H - E lies inside the nef cone spanned by 3H - E and H
    return VarietyModel("blow-up of P3 along a plane cubic", 3, x.ring, x.tangent_chern,
                        ample=H * 4 - E, kind="blowup-p3-plane-cubic", params=(3, 1))


# -- invariant records --------------------------------------------------------

def _kodaira_from_json(v) -> int | None:
    if v is None or v == "-inf" or v == -1:
        return None
    if v in (0, 1, 2, 3):
        return int(v)
    raise DataError(f"invalid Kodaira dimension {v!r}")


def _kodaira_to_json(k: int | None):
    return "-inf" if k is None else k


@dataclass(frozen=True)
class SurfaceInvariants:
    """Numerical data of a smooth projective surface; ``kodaira`` None means -infinity."""

    name: str
    kodaira: int | None
    K2: int
    c2: int
    q: int
    pg: int
    minimal: bool = True
    polarization_degrees: tuple[int, ...] = ()
    rank2_gram: tuple[tuple[int, int], tuple[int, int]] | None = None
    picard_rank: int | None = None
    tangent_nef: bool = False

    def __post_init__(self):
        if self.q < 0 or self.pg < 0:
            raise DataError(f"{self.name}: q and p_g must be nonnegative")
        if self.kodaira not in (None, 0, 1, 2):
            raise DataError(f"{self.name}: Kodaira dimension of a surface must be -inf, 0, 1 or 2")
        if (self.K2 + self.c2) % 12:
            raise DataError(f"{self.name}: Noether's formula fails, K^2 + c2 = {self.K2 + self.c2} is not divisible by 12")
        if self.chi_O != 1 - self.q + self.pg:
            raise DataError(f"{self.name}: chi(O) = {self.chi_O} but 1 - q + p_g = {1 - self.q + self.pg}")
        if self.rank2_gram is not None:
            g = self.rank2_gram
            if len(g) != 2 or any(len(r) != 2 for r in g) or g[0][1] != g[1][0]:
                raise DataError(f"{self.name}: rank-2 Gram matrix must be symmetric 2x2")

    @property
    def chi_O(self) -> int:
        return (self.K2 + self.c2) // 12

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SurfaceInvariants":
        try:
            gram = data.get("rank2_gram")
            return cls(
                name=str(data.get("name", "surface")),
                kodaira=_kodaira_from_json(data["kodaira"]),
                K2=int(data["K2"]), c2=int(data["c2"]), q=int(data["q"]), pg=int(data["pg"]),
                minimal=bool(data.get("minimal", True)),
                polarization_degrees=tuple(int(x) for x in data.get("polarization_degrees", ())),
                rank2_gram=None if gram is None else (tuple(int(x) for x in gram[0]), tuple(int(x) for x in gram[1])),
                picard_rank=None if data.get("picard_rank") is None else int(data["picard_rank"]),
                tangent_nef=bool(data.get("tangent_nef", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DataError):
                raise
            raise DataError(f"malformed surface invariants: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "name": self.name, "kodaira": _kodaira_to_json(self.kodaira), "K2": self.K2, "c2": self.c2,
            "q": self.q, "pg": self.pg, "minimal": self.minimal,
            "polarization_degrees": list(self.polarization_degrees),
            "rank2_gram": None if self.rank2_gram is None else [list(r) for r in self.rank2_gram],
            "picard_rank": self.picard_rank, "tangent_nef": self.tangent_nef,
        }


@dataclass(frozen=True)
class ThreefoldInvariants:
    name: str
    c1_cubed: int
    c1c2: int
    kodaira: int | None
    minimal: bool = True
    hodge: tuple[int, ...] = ()  # h^{1,0}, h^{2,0}, h^{3,0} when known

    def __post_init__(self):
        if self.kodaira not in (None, 0, 1, 2, 3):
            raise DataError(f"{self.name}: Kodaira dimension of a threefold must be -inf or 0..3")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ThreefoldInvariants":
        try:
            return cls(
                name=str(data.get("name", "threefold")),
                c1_cubed=int(data["c1_cubed"]), c1c2=int(data["c1c2"]),
                kodaira=_kodaira_from_json(data["kodaira"]),
                minimal=bool(data.get("minimal", True)),
                hodge=tuple(int(x) for x in data.get("hodge", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DataError):
                raise
            raise DataError(f"malformed threefold invariants: {exc}") from exc

    def to_dict(self) -> dict:
        return {"name": self.name, "c1_cubed": self.c1_cubed, "c1c2": self.c1c2,
                "kodaira": _kodaira_to_json(self.kodaira), "minimal": self.minimal, "hodge": list(self.hodge)}
