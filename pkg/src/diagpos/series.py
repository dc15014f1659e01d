"""Truncated power series whose degree-k coefficient is a rational or a degree-k class.

A total Chern class is the typical value: ``c(T) = 1 + c1 + c2 + ...`` with
``c_k`` of degree ``k`` in some ring.  The formal variable only tracks degree,
so a ring-valued series is simply a graded element truncated at ``cap``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import UsageError
from .rings import CycleClass, RingBase


class TruncatedSeries:
    __slots__ = ("coefficients", "cap", "ring")

    def __init__(self, coefficients: Sequence, cap: int | None = None, ring: RingBase | None = None):
        coeffs = list(coefficients)
        if ring is None:
            for c in coeffs:
                if isinstance(c, CycleClass):
                    ring = c.ring
                    break
        if cap is None:
            cap = ring.top_degree if ring is not None else len(coeffs) - 1
        if cap < 0:
            raise UsageError("cap must be nonnegative")
        norm = []
        for k in range(cap + 1):
            c = coeffs[k] if k < len(coeffs) else 0
            norm.append(self._coerce(c, k, ring))
        self.coefficients = tuple(norm)
        self.cap = cap
        self.ring = ring

    @staticmethod
    def _coerce(c, k: int, ring: RingBase | None):
        if ring is None:
            if isinstance(c, CycleClass):
                raise UsageError("ring-valued coefficient in a scalar series")
            return Fraction(c)
        if isinstance(c, CycleClass):
            if c.ring is not ring:
                raise UsageError("coefficients from different rings")
            if not c.is_zero and c.degree != k:
                raise UsageError(f"coefficient of t^{k} has degree {c.degree}")
            return c if not c.is_zero else ring.zero(k)
        c = Fraction(c)
        if k == 0:
            return ring.one() * c
        if c:
            raise UsageError(f"scalar coefficient {c} in positive degree {k} of a ring-valued series")
        return ring.zero(k)

    def __getitem__(self, k: int):
        if k < 0:
            return self._coerce(0, 0, None) if self.ring is None else self.ring.zero(0)
        if k > self.cap:
            return Fraction(0) if self.ring is None else self.ring.zero(k)
        return self.coefficients[k]

    def _compatible(self, other: "TruncatedSeries") -> tuple[int, RingBase | None]:
        if self.ring is not None and other.ring is not None and self.ring is not other.ring:
            raise UsageError("series over different rings")
        return min(self.cap, other.cap), self.ring or other.ring

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], cap=self.cap, ring=self.ring)
        cap, ring = self._compatible(other)
        return TruncatedSeries([self[k] + other[k] for k in range(cap + 1)], cap, ring)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coefficients], self.cap, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coefficients], self.cap, self.ring)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap, ring = self._compatible(other)
        out = []
        for k in range(cap + 1):
            acc = Fraction(0) if ring is None else ring.zero(k)
            for i in range(k + 1):
                acc = acc + self._lift(i, ring) * other._lift(k - i, ring)
            out.append(acc)
        return TruncatedSeries(out, cap, ring)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def _lift(self, k: int, ring: RingBase | None):
        c = self[k]
        if ring is not None and self.ring is None:
            return self._coerce(c, k, ring)
        return c

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = TruncatedSeries([1], self.cap, self.ring)
        for _ in range(e):
            out = out * self
        return out

    def constant_term(self) -> Fraction:
        c0 = self.coefficients[0]
        if isinstance(c0, CycleClass):
            return c0.coefficient((0,) * len(c0.ring.names))
        return c0

    def inverse(self) -> "TruncatedSeries":
        a0 = self.constant_term()
        if a0 == 0:
            raise UsageError("series with zero constant term is not invertible")
        ring = self.ring
        inv0 = 1 / a0
        b = [Fraction(inv0) if ring is None else ring.one() * inv0]
        for k in range(1, self.cap + 1):
            acc = Fraction(0) if ring is None else ring.zero(k)
            for i in range(1, k + 1):
                acc = acc + self[i] * b[k - i]
            b.append(acc * (-inv0))
        return TruncatedSeries(b, self.cap, ring)

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients[: cap + 1], min(cap, self.cap), self.ring)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap = max(self.cap, other.cap)
        return all(self[k] == other[k] for k in range(cap + 1))

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coefficients)!r}, cap={self.cap})"


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    return s.inverse()
