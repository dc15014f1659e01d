"""Graded commutative rings modulo numerical equivalence, and their elements.

A ring is presented by generators with degrees, a predicate for monomials
known to vanish, and the degree map on top-degree monomials.  Everything else
is derived: for every degree ``k`` a monomial basis is chosen greedily in
generation order, and each remaining monomial of degree ``k`` gets a rewrite
rule expressing it in that basis.  The rule is read off from the pairing into
complementary degree, so rewriting is confluent and idempotent by
construction (it is a linear projection), and two classes are equal exactly
when they are numerically equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import UsageError
from .linalg import independent_rows, inverse

Monomial = tuple[int, ...]


def monomials_of_degree(degrees: Sequence[int], k: int) -> Iterator[Monomial]:
    """Exponent vectors of weighted degree ``k``, lexicographically descending."""
    n = len(degrees)

    def rec(i: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if i == n - 1:
            if remaining % degrees[i] == 0:
                yield (remaining // degrees[i],)
            return
        for e in range(remaining // degrees[i], -1, -1):
            for rest in rec(i + 1, remaining - e * degrees[i]):
                yield (e,) + rest

    if n == 0:
        if k == 0:
            yield ()
        return
    yield from rec(0, k)


def _add(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


class RingBase:
    """Shared element plumbing; subclasses supply bases, normal forms and integrals."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    top_degree: int
    label: str

    def basis(self, k: int) -> list[Monomial]:
        raise NotImplementedError

    def normal_form(self, m: Monomial) -> dict[Monomial, Fraction]:
        raise NotImplementedError

    def integrate_monomial(self, m: Monomial) -> Fraction:
        raise NotImplementedError

    # -- helpers -----------------------------------------------------------

    def degree_of(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def rank(self, k: int) -> int:
        return len(self.basis(k))

    def element(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]],
                degree: int | None = None) -> "CycleClass":
        """Build a class from arbitrary (not necessarily reduced) monomial terms."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != len(self.names):
                raise UsageError(f"monomial {m} has wrong length for ring {self.label}")
            dm = self.degree_of(m)
            if degree is None:
                degree = dm
            elif dm != degree:
                raise UsageError(f"inhomogeneous terms: degree {dm} vs {degree}")
            c = Fraction(c)
            if not c:
                continue
            for b, cb in self.normal_form(m).items():
                acc[b] = acc.get(b, Fraction(0)) + c * cb
        if degree is None:
            degree = 0
        return CycleClass._make(self, degree, acc)

    def monomial(self, exponents: Sequence[int], coefficient=1) -> "CycleClass":
        return self.element({tuple(exponents): coefficient})

    def gen(self, key: int | str) -> "CycleClass":
        i = self.names.index(key) if isinstance(key, str) else key
        e = [0] * len(self.names)
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> list["CycleClass"]:
        return [self.gen(i) for i in range(len(self.names))]

    def one(self) -> "CycleClass":
        return self.monomial([0] * len(self.names))

    def zero(self, degree: int = 0) -> "CycleClass":
        return CycleClass._make(self, degree, {})

    def point_class(self) -> "CycleClass":
        """A top-degree class of degree map 1."""
        for b in self.basis(self.top_degree):
            v = self.integrate_monomial(b)
            if v:
                return self.monomial(b, 1 / v)
        raise UsageError(f"ring {self.label} has no nonzero top-degree class")

    def gram(self, k: int) -> list[list[Fraction]]:
        """Pairing matrix between the degree-k basis and the complementary basis."""
        return [[self.integrate_monomial(_add(a, b)) for b in self.basis(self.top_degree - k)]
                for a in self.basis(k)]

    def coordinates(self, c: "CycleClass") -> list[Fraction]:
        """Coordinates of ``c`` in ``basis(c.degree)``."""
        self._check(c)
        return [c.coefficient(b) for b in self.basis(c.degree)]

    def from_coordinates(self, coords: Sequence, k: int) -> "CycleClass":
        return self.element(dict(zip(self.basis(k), coords)), k)

    def _check(self, c: "CycleClass") -> None:
        if c.ring is not self:
            raise UsageError("class belongs to a different ring")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class GradedRingPresentation(RingBase):
    """Ring generated by ``names`` modulo numerical equivalence.

    ``integrals`` is the degree map on monomials of degree ``top_degree``.
    ``vanishing`` optionally marks monomials known to be zero (a
    Stanley-Reisner ideal, a truncation); it only prunes work and must agree
    with ``integrals``.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int], top_degree: int,
                 integrals: Callable[[Monomial], object],
                 vanishing: Callable[[Monomial], bool] | None = None,
                 label: str = ""):
        if len(names) != len(degrees):
            raise UsageError("names and degrees differ in length")
        if any(d < 1 for d in degrees):
            raise UsageError("generator degrees must be positive")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.top_degree = int(top_degree)
        self.label = label or "Q[" + ",".join(self.names) + "]"
        self._raw_integrals = integrals
        self._vanishing = vanishing or (lambda m: False)
        self._top_cache: dict[Monomial, Fraction] = {}
        self._build()

    def is_vanishing(self, m: Monomial) -> bool:
        return self.degree_of(m) > self.top_degree or bool(self._vanishing(m))

    def integrate_monomial(self, m: Monomial) -> Fraction:
        m = tuple(m)
        if self.degree_of(m) != self.top_degree:
            raise UsageError(f"degree map needs degree {self.top_degree}, got {self.degree_of(m)}")
        if m not in self._top_cache:
            self._top_cache[m] = Fraction(0) if self._vanishing(m) else Fraction(self._raw_integrals(m))
        return self._top_cache[m]

    def _build(self) -> None:
        top = self.top_degree
        mons = {k: [m for m in monomials_of_degree(self.degrees, k) if not self._vanishing(m)]
                for k in range(top + 1)}
        self._basis: dict[int, list[Monomial]] = {}
        for k in range(top + 1):
            partner = mons[top - k]
            pairing = [[self.integrate_monomial(_add(m, p)) for p in partner] for m in mons[k]]
            self._basis[k] = [mons[k][i] for i in independent_rows(pairing)]
        self._rules: dict[Monomial, dict[Monomial, Fraction]] = {}
        for k in range(top + 1):
            rows, cols = self._basis[k], self._basis[top - k]
            if len(rows) != len(cols):
                raise UsageError(f"pairing in degree {k} is not perfect on ring {self.label}")
            if not rows:
                for m in mons[k]:
                    self._rules[m] = {}
                continue
            ginv = inverse([[self.integrate_monomial(_add(a, b)) for b in cols] for a in rows])
            for m in mons[k]:
                v = [self.integrate_monomial(_add(m, b)) for b in cols]
                coords = [sum((v[j] * ginv[j][i] for j in range(len(cols))), Fraction(0))
                          for i in range(len(rows))]
                self._rules[m] = {rows[i]: c for i, c in enumerate(coords) if c}

    def basis(self, k: int) -> list[Monomial]:
        return list(self._basis.get(k, []))

    def normal_form(self, m: Monomial) -> dict[Monomial, Fraction]:
        m = tuple(m)
        if self.degree_of(m) > self.top_degree:
            return {}
        rule = self._rules.get(m)
        if rule is None:  # a vanishing monomial
            return {}
        return dict(rule)

    @property
    def rewrite_rules(self) -> dict[Monomial, "CycleClass"]:
        """Rules for every non-basis, non-vanishing monomial up to the top degree."""
        basis = {b for bs in self._basis.values() for b in bs}
        return {m: CycleClass._make(self, self.degree_of(m), r)
                for m, r in self._rules.items() if m not in basis}


class TensorRing(RingBase):
    """The ring of a product: monomials are concatenated exponent vectors."""

    def __init__(self, left: RingBase, right: RingBase, suffixes: tuple[str, str] = ("1", "2")):
        def rename(name: str, s: str) -> str:
            return f"{name}_{s}" if name[-1].isdigit() else f"{name}{s}"

        self.left, self.right = left, right
        self.names = tuple(rename(n, suffixes[0]) for n in left.names) + \
            tuple(rename(n, suffixes[1]) for n in right.names)
        self.degrees = left.degrees + right.degrees
        self.top_degree = left.top_degree + right.top_degree
        self.label = f"{left.label} x {right.label}"
        self._nl = len(left.names)
        self._nf_cache: dict[Monomial, dict[Monomial, Fraction]] = {}

    def split(self, m: Monomial) -> tuple[Monomial, Monomial]:
        return tuple(m[:self._nl]), tuple(m[self._nl:])

    def basis(self, k: int) -> list[Monomial]:
        out = []
        for i in range(max(0, k - self.right.top_degree), min(k, self.left.top_degree) + 1):
            for a in self.left.basis(i):
                for b in self.right.basis(k - i):
                    out.append(a + b)
        return out

    def normal_form(self, m: Monomial) -> dict[Monomial, Fraction]:
        m = tuple(m)
        if m not in self._nf_cache:
            a, b = self.split(m)
            na, nb = self.left.normal_form(a), self.right.normal_form(b)
            self._nf_cache[m] = {x + y: ca * cb for x, ca in na.items() for y, cb in nb.items()}
        return dict(self._nf_cache[m])

    def integrate_monomial(self, m: Monomial) -> Fraction:
        if self.degree_of(m) != self.top_degree:
            raise UsageError(f"degree map needs degree {self.top_degree}, got {self.degree_of(m)}")
        a, b = self.split(m)
        if self.left.degree_of(a) != self.left.top_degree:
            return Fraction(0)
        return self.left.integrate_monomial(a) * self.right.integrate_monomial(b)

    def pullback(self, c: "CycleClass", side: int) -> "CycleClass":
        """pi_side^* c for side in {1, 2}."""
        if side not in (1, 2):
            raise UsageError("side must be 1 or 2")
        factor = self.left if side == 1 else self.right
        factor._check(c)
        pad_l = (0,) * len(self.left.names)
        pad_r = (0,) * len(self.right.names)
        terms = {((m + pad_r) if side == 1 else (pad_l + m)): v for m, v in c.items()}
        return CycleClass._make(self, c.degree, terms)

    def external(self, a: "CycleClass", b: "CycleClass") -> "CycleClass":
        """pi_1^* a . pi_2^* b"""
        return self.pullback(a, 1) * self.pullback(b, 2)


@dataclass(frozen=True, eq=False)
class CycleClass:
    """Homogeneous element of a ring, stored in normal form."""

    ring: RingBase
    degree: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def _make(cls, ring: RingBase, degree: int, terms: Mapping[Monomial, Fraction]) -> "CycleClass":
        items = tuple(sorted(((m, Fraction(c)) for m, c in terms.items() if c), reverse=True))
        return cls(ring, degree, items)

    def items(self):
        return iter(self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        for k, v in self.terms:
            if k == tuple(m):
                return v
        return Fraction(0)

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _same_ring(self, other: "CycleClass") -> None:
        if other.ring is not self.ring:
            raise UsageError("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        if not isinstance(other, CycleClass):
            return NotImplemented
        self._same_ring(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if other.degree != self.degree:
            raise UsageError(f"cannot add classes of degrees {self.degree} and {other.degree}")
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return CycleClass._make(self.ring, self.degree, acc)

    __radd__ = __add__

    def __neg__(self):
        return CycleClass._make(self.ring, self.degree, {m: -c for m, c in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycleClass._make(self.ring, self.degree, {m: c * other for m, c in self.terms})
        if not isinstance(other, CycleClass):
            return NotImplemented
        self._same_ring(other)
        deg = self.degree + other.degree
        if deg > self.ring.top_degree:
            return CycleClass._make(self.ring, deg, {})
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                for b, cb in self.ring.normal_form(_add(m1, m2)).items():
                    acc[b] = acc.get(b, Fraction(0)) + c1 * c2 * cb
        return CycleClass._make(self.ring, deg, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero
        if not isinstance(other, CycleClass):
            return NotImplemented
        if other.ring is not self.ring:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), self.degree, self.terms))

    def integrate(self) -> Fraction:
        if self.degree != self.ring.top_degree:
            if self.is_zero:
                return Fraction(0)
            raise UsageError(f"can only integrate degree {self.ring.top_degree}, got {self.degree}")
        return sum((c * self.ring.integrate_monomial(m) for m, c in self.terms), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def ring_mul(a: CycleClass, b: CycleClass) -> CycleClass:
    return a * b


def ring_integrate(a: CycleClass) -> Fraction:
    return a.integrate()


def truncated_polynomial_ring(name: str, top_degree: int, top_value=1, label: str = "") -> GradedRingPresentation:
    """Q[name]/(name^(top+1)) with degree map name^top -> top_value."""
    return GradedRingPresentation([name], [1], top_degree, lambda m: top_value,
                                  label=label or f"Q[{name}]/({name}^{top_degree + 1})")
