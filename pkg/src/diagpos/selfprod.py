"""X x X: external products, the formal diagonal, and Kunneth decompositions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .certificates import Certificate, make_certificate
from .errors import DataError, UsageError
from .linalg import inverse
from .rings import CycleClass, Monomial, TensorRing
from .varieties import VarietyModel, euler_characteristic


class SelfProductModel:
    """Numerical model of X x X with the diagonal as a formal codimension-n symbol."""

    def __init__(self, factor: VarietyModel):
        self.factor = factor
        self.n = factor.dimension
        self.ring = TensorRing(factor.ring, factor.ring)

    def pullback(self, c: CycleClass, side: int) -> CycleClass:
        return self.ring.pullback(c, side)

    def restrict_to_diagonal(self, t: CycleClass) -> CycleClass:
        """Delta^* of a class on X x X: multiply the two factors together."""
        self.ring._check(t)
        acc = self.factor.ring.zero(t.degree)
        for m, c in t.items():
            a, b = self.ring.split(m)
            acc = acc + self.factor.ring.monomial(tuple(x + y for x, y in zip(a, b)), c)
        return acc

    def diagonal_pairing(self, t: CycleClass | Monomial) -> Fraction:
        """Delta . t for a class t of codimension n on X x X."""
        if not isinstance(t, CycleClass):
            t = self.ring.monomial(t)
        if t.is_zero:
            return Fraction(0)
        if t.degree != self.n:
            raise UsageError(f"diagonal pairs with codimension {self.n}, got {t.degree}")
        return self.restrict_to_diagonal(t).integrate()

    def diagonal_self_intersection(self) -> Fraction:
        return euler_characteristic(self.factor)

    def augmented(self, external: CycleClass | None = None, delta=0) -> "AugmentedClass":
        if external is None:
            external = self.ring.zero(self.n)
        return AugmentedClass(self, external, Fraction(delta))

    def diagonal(self) -> "AugmentedClass":
        return self.augmented(None, 1)

    def pair(self, u, v) -> Fraction:
        """Intersection number of two classes of complementary codimension."""
        u = u if isinstance(u, AugmentedClass) else self.augmented(u) if u.degree == self.n else u
        v = v if isinstance(v, AugmentedClass) else self.augmented(v) if v.degree == self.n else v
        if isinstance(u, AugmentedClass) and isinstance(v, AugmentedClass):
            return (u.external * v.external).integrate() + u.delta * self.diagonal_pairing(v.external) \
                + v.delta * self.diagonal_pairing(u.external) + u.delta * v.delta * self.diagonal_self_intersection()
        if isinstance(u, AugmentedClass) or isinstance(v, AugmentedClass):
            raise UsageError("the diagonal only pairs with classes of codimension n")
        return (u * v).integrate()


@dataclass(frozen=True, eq=False)
class AugmentedClass:
    """external + delta * Diagonal, a codimension-n class on X x X.

    Products of two such classes are numbers (see SelfProductModel.pair); a
    third diagonal factor is never formed.
    """

    model: SelfProductModel
    external: CycleClass
    delta: Fraction

    def __add__(self, other: "AugmentedClass") -> "AugmentedClass":
        return AugmentedClass(self.model, self.external + other.external, self.delta + other.delta)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AugmentedClass(self.model, self.external * other, self.delta * other)
        raise UsageError("products involving the diagonal are only defined as pairings")

    __rmul__ = __mul__

    def dot_diagonal(self) -> Fraction:
        return self.model.pair(self, self.model.diagonal())


# -- Kunneth data ---------------------------------------------------------------

TAGS = ("nef", "effective", "big")


@dataclass(frozen=True)
class KunnethData:
    """A numerical basis of N^*(X) with its Gram matrix and positivity tags."""

    name: str
    dimension: int
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    tags: tuple[frozenset, ...]

    def __post_init__(self):
        k = len(self.names)
        if len(self.degrees) != k or len(self.gram) != k or any(len(r) != k for r in self.gram) or len(self.tags) != k:
            raise DataError("Kunneth data: names, degrees, Gram matrix and tags must have matching sizes")
        for i in range(k):
            for j in range(k):
                if self.gram[i][j] != self.gram[j][i]:
                    raise DataError("Kunneth data: Gram matrix is not symmetric")
                if self.gram[i][j] and self.degrees[i] + self.degrees[j] != self.dimension:
                    raise DataError(f"Kunneth data: {self.names[i]} and {self.names[j]} pair nontrivially "
                                    "without complementary degrees")
        for t in self.tags:
            if not t <= set(TAGS):
                raise DataError(f"Kunneth data: unknown tags {sorted(t - set(TAGS))}")
        try:
            inverse([list(r) for r in self.gram])
        except ZeroDivisionError:
            raise DataError("Kunneth data: Gram matrix is singular") from None

    @classmethod
    def build(cls, name: str, dimension: int, names: Sequence[str], degrees: Sequence[int],
              gram: Sequence[Sequence], tags: Sequence[Sequence[str]]) -> "KunnethData":
        try:
            g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        except (TypeError, ValueError) as exc:
            raise DataError(f"Kunneth data: bad Gram entry: {exc}") from exc
        return cls(name, int(dimension), tuple(names), tuple(int(d) for d in degrees), g,
                   tuple(frozenset(t) for t in tags))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "KunnethData":
        try:
            return cls.build(data.get("name", "variety"), data["dimension"], data["names"], data["degrees"],
                             data["gram"], data.get("tags", [[] for _ in data["names"]]))
        except KeyError as exc:
            raise DataError(f"Kunneth data is missing field {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "KunnethData":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DataError(f"Kunneth JSON does not parse: {exc}") from exc

    def to_dict(self) -> dict:
        return {"name": self.name, "dimension": self.dimension, "names": list(self.names),
                "degrees": list(self.degrees), "gram": [[str(x) for x in r] for r in self.gram],
                "tags": [sorted(t) for t in self.tags]}

    @classmethod
    def from_variety(cls, x: VarietyModel, tags: Mapping[Monomial, Sequence[str]] | None = None) -> "KunnethData":
        """Use the monomial basis of X's ring; tags keyed by basis monomial."""
        basis = [(k, m) for k in range(x.dimension + 1) for m in x.ring.basis(k)]
        names = []
        for _, m in basis:
            s = "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in zip(x.ring.names, m) if e)
            names.append(s or "1")
        gram = [[x.ring.integrate_monomial(tuple(a + b for a, b in zip(m1, m2)))
                 if k1 + k2 == x.dimension else 0 for (k2, m2) in basis] for (k1, m1) in basis]
        tg = [list((tags or {}).get(m, ())) for _, m in basis]
        return cls.build(x.name, x.dimension, names, [k for k, _ in basis], gram, tg)


@dataclass(frozen=True)
class KunnethDecomposition:
    """Delta = sum of coefficient[i, j] * pi_1^* b_i . pi_2^* b_j."""

    data: KunnethData
    coefficients: tuple[tuple[Fraction, ...], ...]

    def terms(self) -> list[tuple[int, int, Fraction]]:
        k = len(self.data.names)
        return [(i, j, self.coefficients[i][j]) for i in range(k) for j in range(k) if self.coefficients[i][j]]

    def pairing_with(self, i: int, j: int) -> Fraction:
        """Pairing of the decomposition with pi_1^* b_i . pi_2^* b_j."""
        g = self.data.gram
        k = len(g)
        return sum((self.coefficients[a][b] * g[a][i] * g[b][j] for a in range(k) for b in range(k)), Fraction(0))

    def __str__(self) -> str:
        n = self.data.names
        return " + ".join(f"{c}*({n[i]} x {n[j]})" if c != 1 else f"({n[i]} x {n[j]})" for i, j, c in self.terms())


def kunneth_diagonal(k: KunnethData) -> KunnethDecomposition:
    # Delta . (b_k x b_l) = G_kl forces C = (G^T)^-1
    ginv = inverse([list(r) for r in k.gram])
    c = tuple(tuple(ginv[j][i] for j in range(len(ginv))) for i in range(len(ginv)))
    return KunnethDecomposition(k, c)


def kunneth_to_class(model: SelfProductModel, dec: KunnethDecomposition) -> CycleClass:
    """Realise a decomposition built by KunnethData.from_variety as a class on X x X."""
    x = model.factor
    basis = [m for kk in range(x.dimension + 1) for m in x.ring.basis(kk)]
    if len(basis) != len(dec.data.names):
        raise UsageError("decomposition does not come from this variety's monomial basis")
    acc = model.ring.zero(model.n)
    for i, j, c in dec.terms():
        acc = acc + model.ring.external(x.ring.monomial(basis[i]), x.ring.monomial(basis[j])) * c
    return acc


def kunneth_big_nef_certificate(k: KunnethData) -> list[Certificate]:
    """Big and nef verdicts read off a Kunneth decomposition and its tags."""
    dec = kunneth_diagonal(k)
    names, tags, deg = k.names, k.tags, k.degrees
    idx = range(len(names))
    comp = [(i, j) for i in idx for j in idx if deg[i] + deg[j] == k.dimension]
    coef = dec.coefficients
    subject = k.name
    certs = []
    assumption = "positivity tags on the basis classes are supplied as input"
    upsef = "classes tagged nef are universally pseudoeffective"

    # bigness: strictly positive combination of products of big nef classes over all bidegrees
    all_big = all({"big", "nef"} <= tags[i] for i in idx)
    if all_big and all(coef[i][j] > 0 for i, j in comp):
        nums = {"terms": len(comp), "min coefficient": min(coef[i][j] for i, j in comp)}
        certs.append(make_certificate(subject, "big", "yes", "kunneth-positive", nums, [assumption],
                                      ["Delta = " + str(dec)]))
    else:
        witness = None
        for i in idx:
            if "nef" in tags[i] and "big" not in tags[i] and 0 < deg[i] < k.dimension:
                for j in idx:
                    if "nef" in tags[j] and deg[i] + deg[j] == k.dimension and k.gram[i][j] == 0:
                        witness = (i, j)
                        break
            if witness:
                break
        if witness:
            i, j = witness
            certs.append(make_certificate(subject, "big", "no", "nef-not-big-class", {f"{names[i]}.{names[j]}": 0},
                                          [assumption, upsef],
                                          [f"{names[i]} is nef and not big; {names[i]} x {names[j]} is nef and "
                                           "meets the diagonal in degree 0"]))
        else:
            certs.append(make_certificate(subject, "big", "unknown", "kunneth-positive", {}, [assumption],
                                          ["decomposition is not a positive combination of big nef products"]))

    terms = dec.terms()
    if all(c > 0 for _, _, c in terms) and all("nef" in tags[i] and "nef" in tags[j] for i, j, _ in terms):
        certs.append(make_certificate(subject, "nef", "yes", "kunneth-nef", {"terms": len(terms)},
                                      [assumption, upsef], ["Delta = " + str(dec)]))
    else:
        certs.append(make_certificate(subject, "nef", "unknown", "kunneth-nef", {}, [assumption],
                                      ["decomposition has a negative coefficient or a term that is not nef"]))
    return certs


# -- stock Kunneth data -----------------------------------------------------------

def kunneth_projective_space(n: int, name: str | None = None) -> KunnethData:
    """P^n, or any fake projective space: N^k spanned by one ample power in each degree."""
    names = ["1"] + [f"h^{k}" if k > 1 else "h" for k in range(1, n + 1)]
    gram = [[1 if i + j == n else 0 for j in range(n + 1)] for i in range(n + 1)]
    tags = [["nef", "effective", "big"]] * (n + 1)
    return KunnethData.build(name or f"P{n}", n, names, range(n + 1), gram, tags)


def kunneth_quadric(n: int) -> KunnethData:
    """Smooth quadric of dimension n; for even n the middle degree carries the two rulings."""
    all_tags = ["nef", "effective", "big"]
    names, degrees, tags = [], [], []
    if n % 2:
        half = (n + 1) // 2
        for j in range(n + 1):
            names.append("1" if j == 0 else ("h" if j == 1 else f"h^{j}") if j < half else f"h^{j}/2")
            degrees.append(j)
            tags.append(all_tags)
        gram = [[1 if i + j == n else 0 for j in range(n + 1)] for i in range(n + 1)]
        return KunnethData.build(f"quadric of dimension {n}", n, names, degrees, gram, tags)
    k = n // 2
    for j in range(k):
        names.append("1" if j == 0 else "h" if j == 1 else f"h^{j}")
        degrees.append(j)
        tags.append(all_tags)
    names += ["L1", "L2"]
    degrees += [k, k]
    tags += [["nef", "effective"], ["nef", "effective"]]
    for j in range(k + 1, n + 1):
        names.append(f"h^{j}/2")
        degrees.append(j)
        tags.append(all_tags)
    size = len(names)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if degrees[i] + degrees[j] != n:
                continue
            if degrees[i] == k:
                same = names[i] == names[j]
                gram[i][j] = Fraction(int(same)) if k % 2 == 0 else Fraction(int(not same))
            else:
                gram[i][j] = Fraction(1)
    return KunnethData.build(f"quadric of dimension {n}", n, names, degrees, gram, tags)


def kunneth_p1xp1() -> KunnethData:
    names = ["1", "f1", "f2", "pt"]
    gram = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    tags = [["nef", "effective", "big"], ["nef", "effective"], ["nef", "effective"], ["nef", "effective", "big"]]
    return KunnethData.build("P1 x P1", 2, names, [0, 1, 1, 2], gram, tags)
