"""Pell equations: fundamental units and solvability of x^2 - D y^2 = N."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import UsageError


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    D: int

    def __post_init__(self):
        if self.x * self.x - self.D * self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.D} y^2 = 1")


def continued_fraction_sqrt(D: int) -> tuple[int, list[int]]:
    """(a0, period) of the continued fraction of sqrt(D)."""
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise UsageError(f"{D} is a perfect square")
    period = []
    m, d, a = 0, 1, a0
    while a != 2 * a0:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return a0, period


def _convergents(D: int, count: int):
    a0, period = continued_fraction_sqrt(D)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    yield p, q
    i = 0
    while count is None or i < count:
        a = period[i % len(period)]
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q
        i += 1


def fundamental_solution(D: int) -> PellSolution:
    if D < 2:
        raise UsageError("D must be at least 2")
    if is_square(D):
        raise UsageError(f"D = {D} is a perfect square; x^2 - D y^2 = 1 has only trivial solutions")
    _, period = continued_fraction_sqrt(D)
    for p, q in _convergents(D, 2 * len(period)):
        if p * p - D * q * q == 1:
            return PellSolution(p, q, D)
    raise AssertionError("continued fraction did not produce a unit")  # pragma: no cover


@dataclass(frozen=True)
class GeneralPellResult:
    """Outcome of deciding x^2 - D y^2 = N.

    ``status`` is "solvable" (with ``witness``), "unsolvable" (with the
    argument in ``method``), or "unknown" when no complete argument applies.
    """

    D: int
    N: int
    status: str
    witness: tuple[int, int] | None
    bound: int | None
    method: str

    def __bool__(self) -> bool:
        return self.status == "solvable"


def residue_obstruction(D: int, N: int, moduli=range(2, 65)) -> int | None:
    """A modulus m for which x^2 - D y^2 = N has no solution mod m, if one exists in range."""
    for m in moduli:
        squares = {(x * x) % m for x in range(m)}
        dy2 = {(D * s + N) % m for s in squares}
        if not squares & dy2:
            return m
    return None


def _square_D(D: int, N: int) -> GeneralPellResult:
    # (x - r y)(x + r y) = N with r^2 = D
    r = isqrt(D)
    best = None
    for u in range(1, abs(N) + 1):
        if N % u:
            continue
        v = N // u
        for a, b in ((u, v), (-u, -v)):
            # x - r y = a, x + r y = b
            if (a + b) % 2 or (r and (b - a) % (2 * r)):
                continue
            x = (a + b) // 2
            y = (b - a) // (2 * r) if r else 0
            cand = (abs(x), abs(y))
            if cand[0] ** 2 - D * cand[1] ** 2 == N and (best is None or cand < best):
                best = cand
    if best is not None:
        return GeneralPellResult(D, N, "solvable", best, None, "difference-of-squares factorisation")
    return GeneralPellResult(D, N, "unsolvable", None, None, "difference-of-squares factorisation: no factor pair fits")


def general_pell_solvable(D: int, N: int) -> GeneralPellResult:
    """Decide x^2 - D y^2 = N for D > 0.

    Nonsquare D with N > 0: every solution class contains one with
    0 <= y <= y1 * sqrt(N / (2 (x1 + 1))), where (x1, y1) is the fundamental
    unit (Nagell), so an exhaustive search up to that bound is conclusive.
    """
    if D <= 0:
        raise UsageError("D must be positive")
    if N == 0:
        raise UsageError("N must be nonzero")
    if is_square(D):
        return _square_D(D, N)
    m = residue_obstruction(D, N)
    if m is not None:
        return GeneralPellResult(D, N, "unsolvable", None, None, f"no solution modulo {m}")
    if N > 0:
        u = fundamental_solution(D)
        bound = isqrt(u.y * u.y * N // (2 * (u.x + 1)))
        for y in range(bound + 1):
            t = N + D * y * y
            if is_square(t):
                return GeneralPellResult(D, N, "solvable", (isqrt(t), y), bound, "bounded search")
        return GeneralPellResult(D, N, "unsolvable", None, bound, f"exhaustive search y <= {bound} (Nagell bound)")
    if N * N < D:
        # every primitive solution with |N| < sqrt(D) is a convergent of sqrt(D)
        _, period = continued_fraction_sqrt(D)
        for p, q in _convergents(D, 2 * len(period)):
            val = p * p - D * q * q
            if val != 0 and N % val == 0 and is_square(N // val):
                k = isqrt(N // val)
                return GeneralPellResult(D, N, "solvable", (k * p, k * q), None, "continued fraction convergents")
        # non-primitive solutions reduce to N / k^2, also below sqrt(D)
        return GeneralPellResult(D, N, "unsolvable", None, None, "Lagrange: no convergent represents N")
    return GeneralPellResult(D, N, "unknown", None, None, "no complete method for N < 0 with N^2 >= D")


def brute_force_pell(D: int, N: int, ymax: int) -> tuple[int, int] | None:
    """Smallest-y solution with y <= ymax by direct search; a reference oracle."""
    for y in range(ymax + 1):
        t = N + D * y * y
        if t >= 0 and is_square(t):
            return isqrt(t), y
    return None


@dataclass(frozen=True)
class MovabilityBound:
    d: int
    b_squared: Fraction
    threshold: Fraction
    exceeds: bool
    pell: PellSolution | None
    ratio_check: bool | None  # b_d^2 x^2 <= (d/2)^2 y^2, when d/2 is not a square


def k3_movability_bound(d: int) -> MovabilityBound:
    """Data for the Hilbert-square criterion on a degree-d K3 of Picard rank one."""
    if d % 2:
        raise UsageError("K3 degree must be even")
    if d < 4:
        raise UsageError("the movability bound needs d >= 4")
    half = d // 2
    b2 = Fraction(d, 2) - 1
    threshold = Fraction(d, 6)
    pell = None
    ratio = None
    if not is_square(half):
        pell = fundamental_solution(half)
        ratio = b2 * pell.x ** 2 <= Fraction(half) ** 2 * pell.y ** 2
    return MovabilityBound(d, b2, threshold, b2 > threshold, pell, ratio)
