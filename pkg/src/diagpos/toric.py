"""Smooth complete toric varieties from fans."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping, Sequence

from .errors import DataError
from .linalg import inverse, rank
from .rings import GradedRingPresentation, Monomial
from .series import TruncatedSeries
from .varieties import VarietyModel


def _det(rows: Sequence[Sequence[int]]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


@dataclass(frozen=True)
class FanDescription:
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str = ""

    @classmethod
    def from_data(cls, rays, max_cones, name: str = "") -> "FanDescription":
        try:
            r = tuple(tuple(int(x) for x in ray) for ray in rays)
            c = tuple(tuple(sorted(int(i) for i in cone)) for cone in max_cones)
        except (TypeError, ValueError) as exc:
            raise DataError(f"malformed fan: {exc}") from exc
        return cls(r, tuple(sorted(c)), name)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FanDescription":
        if "rays" not in data or "max_cones" not in data:
            raise DataError("fan JSON needs 'rays' and 'max_cones'")
        return cls.from_data(data["rays"], data["max_cones"], str(data.get("name", "")))

    @classmethod
    def from_json(cls, text: str) -> "FanDescription":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DataError(f"fan JSON does not parse: {exc}") from exc

    def to_dict(self) -> dict:
        return {"name": self.name, "rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}

    @property
    def dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    def is_cone(self, rays: Sequence[int]) -> bool:
        s = set(rays)
        return any(s <= set(c) for c in self.max_cones)

    def cones_of_size(self, k: int) -> list[tuple[int, ...]]:
        out = set()
        for c in self.max_cones:
            out.update(itertools.combinations(c, k))
        return sorted(out)

    def validate(self) -> None:
        """Raise DataError unless the fan is smooth and complete."""
        n = self.dim
        if n < 1:
            raise DataError("fan has no rays")
        if any(len(r) != n for r in self.rays):
            raise DataError("rays have inconsistent dimensions")
        if len(set(self.rays)) != len(self.rays):
            raise DataError("repeated ray")
        for cone in self.max_cones:
            if len(cone) != n or len(set(cone)) != n or any(not 0 <= i < len(self.rays) for i in cone):
                raise DataError(f"cone {list(cone)} is not a set of {n} ray indices")
            if abs(_det([self.rays[i] for i in cone])) != 1:
                raise DataError(f"cone {list(cone)} is not smooth: its rays are not a lattice basis")
        used = {i for c in self.max_cones for i in c}
        if used != set(range(len(self.rays))):
            raise DataError(f"rays {sorted(set(range(len(self.rays))) - used)} lie in no maximal cone")
        walls: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
        for cone in self.max_cones:
            for i in cone:
                wall = tuple(j for j in cone if j != i)
                walls.setdefault(wall, []).append((cone, i))
        for wall, owners in walls.items():
            if len(owners) != 2:
                raise DataError(f"fan is not complete: wall {list(wall)} of cone {list(owners[0][0])} "
                                f"lies in {len(owners)} maximal cone(s)")
            signs = []
            for cone, i in owners:
                rows = [self.rays[j] for j in wall] + [self.rays[i]]
                signs.append(_det(rows))
            if signs[0] * signs[1] >= 0:
                raise DataError(f"cones {list(owners[0][0])} and {list(owners[1][0])} overlap across wall {list(wall)}")
        # a generic vector must lie in the interior of exactly one maximal cone
        probe = [Fraction(1, 1 + 7 * k) + Fraction(k * k, 1009) for k in range(n)]
        hits = 0
        for cone in self.max_cones:
            inv = inverse([[Fraction(self.rays[j][r]) for j in cone] for r in range(n)])
            coords = [sum(inv[a][r] * probe[r] for r in range(n)) for a in range(n)]
            if all(c > 0 for c in coords):
                hits += 1
        if hits != 1:
            raise DataError(f"fan covers a generic vector {hits} times; it is not a complete simplicial fan")


def projective_space_fan(n: int) -> FanDescription:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [tuple(c) for c in itertools.combinations(range(n + 1), n)]
    return FanDescription.from_data(rays, cones, f"P{n}")


def hirzebruch_fan(a: int) -> FanDescription:
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (0, 3)]
    return FanDescription.from_data(rays, cones, f"F{a}")


def fan_product(f: FanDescription, g: FanDescription) -> FanDescription:
    nf, ng = f.dim, g.dim
    rays = [tuple(r) + (0,) * ng for r in f.rays] + [(0,) * nf + tuple(r) for r in g.rays]
    off = len(f.rays)
    cones = [tuple(a) + tuple(off + j for j in b) for a in f.max_cones for b in g.max_cones]
    name = f"{f.name} x {g.name}" if f.name and g.name else ""
    return FanDescription.from_data(rays, cones, name)


def product_of_projective_spaces_fan(dims: Sequence[int]) -> FanDescription:
    fan = projective_space_fan(dims[0])
    for d in dims[1:]:
        fan = fan_product(fan, projective_space_fan(d))
    return fan


def toric_from_fan(fan: FanDescription) -> VarietyModel:
    fan.validate()
    n = fan.dim
    rays = fan.rays
    cones = [frozenset(c) for c in fan.max_cones]
    dual_cache: dict[tuple[frozenset, int], list[Fraction]] = {}

    def dual_vector(sigma: frozenset, rho: int) -> list[Fraction]:
        # m with <m, v_rho> = 1 and <m, v_tau> = 0 for the other rays of sigma
        key = (sigma, rho)
        if key not in dual_cache:
            order = sorted(sigma)
            inv = inverse([[Fraction(x) for x in rays[j]] for j in order])
            col = order.index(rho)
            dual_cache[key] = [inv[r][col] for r in range(n)]
        return dual_cache[key]

    def containing_cone(support: frozenset) -> frozenset | None:
        for c in cones:
            if support <= c:
                return c
        return None

    @lru_cache(maxsize=None)
    def integral(m: Monomial) -> Fraction:
        support = frozenset(i for i, e in enumerate(m) if e)
        sigma = containing_cone(support)
        if sigma is None:
            return Fraction(0)
        if all(e <= 1 for e in m):
            return Fraction(1)
        rho = next(i for i, e in enumerate(m) if e >= 2)
        u = dual_vector(sigma, rho)
        total = Fraction(0)
        for tau in range(len(rays)):
            if tau in sigma:
                continue
            w = sum(a * b for a, b in zip(u, rays[tau]))
            if w:
                nm = list(m)
                nm[rho] -= 1
                nm[tau] += 1
                total -= w * integral(tuple(nm))
        return total

    def vanishing(m: Monomial) -> bool:
        return containing_cone(frozenset(i for i, e in enumerate(m) if e)) is None

    label = fan.name or f"toric variety with {len(rays)} rays"
    ring = GradedRingPresentation([f"x{i}" for i in range(len(rays))], [1] * len(rays), n,
                                  integral, vanishing, label=label)
    c = TruncatedSeries([1], n, ring)
    for g in ring.gens():
        c = c * TruncatedSeries([1, g], n, ring)
    return VarietyModel(label, n, ring, c, ample=None, kind="toric", params=(fan,))


def _primitive_collections(fan: FanDescription) -> list[frozenset[int]]:
    r = len(fan.rays)
    out: list[frozenset[int]] = []
    for k in range(2, r + 1):
        for subset in itertools.combinations(range(r), k):
            s = frozenset(subset)
            if fan.is_cone(s):
                continue
            if all(fan.is_cone(s - {i}) for i in s):
                out.append(s)
    return out


def projective_space_factorization(fan: FanDescription) -> tuple[list[list[int]] | None, str]:
    """Split the rays into groups realising the fan as a product of projective spaces.

    Returns (groups, reason); groups is None when no such splitting exists, in
    which case ``reason`` names the failing invariant.
    """
    fan.validate()
    prims = _primitive_collections(fan)
    seen: set[int] = set()
    for p in prims:
        if seen & p:
            return None, f"primitive collections {sorted(p)} and another overlap"
        seen |= p
    if seen != set(range(len(fan.rays))):
        return None, f"rays {sorted(set(range(len(fan.rays))) - seen)} lie in no primitive collection"
    for p in prims:
        total = [sum(fan.rays[i][k] for i in p) for k in range(fan.dim)]
        if any(total):
            return None, f"primitive collection {sorted(p)} has nonzero ray sum {total}"
    expected = []
    for choice in itertools.product(*[[p - {i} for i in p] for p in prims]):
        expected.append(tuple(sorted(frozenset().union(*choice))))
    expected.sort()
    if expected != sorted(fan.max_cones):
        return None, "maximal cones differ from the product pattern"
    groups = sorted(sorted(p) for p in prims)
    if sum(len(g) - 1 for g in groups) != fan.dim or rank([fan.rays[i] for g in groups for i in g]) != fan.dim:
        return None, "group sizes do not add up to the dimension"
    return groups, "product of projective spaces of dimensions " + ", ".join(str(len(g) - 1) for g in groups)


def divisor_class(x: VarietyModel, ray: int):
    return x.ring.gen(ray)
