"""Two-row Schubert classes on Gr(2, m) as polynomials in sigma_1 and sigma_{1,1}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError

# exponent pair (i, j) stands for S1^i * S11^j
Expansion = dict[tuple[int, int], int]


def _mul(p: Expansion, q: Expansion) -> Expansion:
    out: Expansion = {}
    for (a, b), c in p.items():
        for (x, y), d in q.items():
            key = (a + x, b + y)
            out[key] = out.get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _add(p: Expansion, q: Expansion, scale: int = 1) -> Expansion:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class SchubertPoly:
    partition: tuple[int, int]
    expansion: tuple[tuple[tuple[int, int], int], ...]

    @property
    def degree(self) -> int:
        return self.partition[0] + self.partition[1]

    def terms(self) -> Expansion:
        return dict(self.expansion)

    def evaluate(self, s1, s11, one):
        """Substitute values for S1 and S11; ``one`` is the unit of the target."""
        total = None
        for (i, j), c in self.expansion:
            term = one
            for _ in range(i):
                term = term * s1
            for _ in range(j):
                term = term * s11
            term = term * Fraction(c)
            total = term if total is None else total + term
        return total if total is not None else one * 0

    def fits_box(self, m: int) -> bool:
        """Whether the partition indexes a class on Gr(2, m)."""
        return self.partition[0] <= m - 2

    def __str__(self) -> str:
        a, b = self.partition
        return f"sigma_{a},{b}" if b else f"sigma_{a}"


def _pieri_chain(k: int) -> Expansion:
    p0: Expansion = {(0, 0): 1}
    if k == 0:
        return p0
    p1: Expansion = {(1, 0): 1}
    for _ in range(k - 1):
        p0, p1 = p1, _add(_mul({(1, 0): 1}, p1), _mul({(0, 1): 1}, p0), -1)
    return p1


def schubert_poly(a: int, b: int = 0) -> SchubertPoly:
    """sigma_{a,b} = S11^b * P_{a-b} with P_k = S1 P_{k-1} - S11 P_{k-2}."""
    if b < 0 or a < b:
        raise UsageError(f"({a},{b}) is not a partition with a >= b >= 0")
    exp = _mul({(0, b): 1}, _pieri_chain(a - b))
    return SchubertPoly((a, b), tuple(sorted(exp.items())))
