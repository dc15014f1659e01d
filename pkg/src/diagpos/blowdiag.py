"""Intersection calculus on W = Bl_Delta(X x X).

E = P(Omega_X) with tautological class xi = O(1) and E|_E = -xi.  Classes on
E are polynomials in xi with coefficients pulled back from X; pushforward to X
uses g_*(xi^(n-1+j)) = s_j(T_X).  A codimension-k class on W is a pair
(pullback part, exceptional part) where the exceptional part is a class on E of
codimension k-1 pushed forward by i_*.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Any, Iterable, Mapping

from .certificates import NEF_POLICY_TABLE, PAIRING_VERIFIED, Certificate, make_certificate
from .errors import DataError, InvariantViolation, UsageError, VerificationFailure
from .rings import CycleClass, Monomial
from .schubert import SchubertPoly, schubert_poly
from .selfprod import SelfProductModel
from .varieties import VarietyModel, euler_characteristic, hypersurface, hypersurface_name


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class WClass:
    """sum_c t_c * E^c with t_c a class on X x X of degree (codim - c)."""

    __slots__ = ("model", "codim", "parts")

    def __init__(self, model: "DiagonalBlowupModel", codim: int, parts: Mapping[int, CycleClass]):
        self.model = model
        self.codim = codim
        self.parts = {c: t for c, t in parts.items() if not t.is_zero}
        for c, t in self.parts.items():
            if t.degree != codim - c:
                raise UsageError(f"E^{c} term has degree {t.degree}, expected {codim - c}")

    def __add__(self, other: "WClass") -> "WClass":
        if other.codim != self.codim:
            raise UsageError("adding classes of different codimension")
        parts = dict(self.parts)
        for c, t in other.parts.items():
            parts[c] = parts[c] + t if c in parts else t
        return WClass(self.model, self.codim, parts)

    def __neg__(self) -> "WClass":
        return self * -1

    def __sub__(self, other: "WClass") -> "WClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WClass):
            parts: dict[int, CycleClass] = {}
            for c1, t1 in self.parts.items():
                for c2, t2 in other.parts.items():
                    t = t1 * t2
                    c = c1 + c2
                    parts[c] = parts[c] + t if c in parts else t
            return WClass(self.model, self.codim + other.codim, parts)
        return WClass(self.model, self.codim, {c: t * _frac(other) for c, t in self.parts.items()})

    def __rmul__(self, other):
        return self * other

    def restrict(self) -> "EClass":
        """i^*: t E^c  |->  g^*(t restricted to the diagonal) (-xi)^c."""
        mu = self.model.base.restrict_to_diagonal
        return EClass(self.model, self.codim, {c: mu(t) * (-1) ** c for c, t in self.parts.items()})

    def integrate(self) -> Fraction:
        if self.codim != 2 * self.model.n:
            raise UsageError(f"integrating a class of codimension {self.codim} on a {2 * self.model.n}-fold")
        return sum((self.model._w_term_integral(t, c) for c, t in self.parts.items()), Fraction(0))

    def __repr__(self) -> str:
        return " + ".join(f"({t})*E^{c}" for c, t in sorted(self.parts.items())) or "0"


class EClass:
    """sum_p g^*(x_p) xi^p on E, graded by codimension on E."""

    __slots__ = ("model", "codim", "parts")

    def __init__(self, model: "DiagonalBlowupModel", codim: int, parts: Mapping[int, CycleClass]):
        self.model = model
        self.codim = codim
        self.parts = {p: x for p, x in parts.items() if not x.is_zero}
        for p, x in self.parts.items():
            if x.degree != codim - p:
                raise UsageError(f"xi^{p} coefficient has degree {x.degree}, expected {codim - p}")

    def __add__(self, other: "EClass") -> "EClass":
        if other.codim != self.codim:
            raise UsageError("adding classes of different codimension")
        parts = dict(self.parts)
        for p, x in other.parts.items():
            parts[p] = parts[p] + x if p in parts else x
        return EClass(self.model, self.codim, parts)

    def __neg__(self) -> "EClass":
        return self * -1

    def __sub__(self, other: "EClass") -> "EClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, EClass):
            parts: dict[int, CycleClass] = {}
            for p1, x1 in self.parts.items():
                for p2, x2 in other.parts.items():
                    x = x1 * x2
                    p = p1 + p2
                    parts[p] = parts[p] + x if p in parts else x
            return EClass(self.model, self.codim + other.codim, parts)
        return EClass(self.model, self.codim, {p: x * _frac(other) for p, x in self.parts.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, EClass):
            return NotImplemented
        a, b = self.reduce().parts, other.reduce().parts
        return a.keys() == b.keys() and all(a[p] == b[p] for p in a)

    __hash__ = None

    def reduce(self) -> "EClass":
        """Rewrite xi^p, p >= n, with xi^n = -sum_{i>=1} c_i(T) xi^(n-i)."""
        n = self.model.n
        parts = dict(self.parts)
        top = max(parts, default=-1)
        while top >= n:
            x = parts.pop(top)
            for i in range(1, n + 1):
                ci = self.model.factor.chern(i)
                if ci.is_zero:
                    continue
                q = top - i
                term = -(x * ci)
                parts[q] = parts[q] + term if q in parts else term
            parts = {p: y for p, y in parts.items() if not y.is_zero}
            top = max(parts, default=-1)
        return EClass(self.model, self.codim, parts)

    def integrate(self) -> Fraction:
        if self.codim != 2 * self.model.n - 1:
            raise UsageError(f"integrating a class of codimension {self.codim} on E of dimension {2 * self.model.n - 1}")
        return sum((self.model._e_term_integral(x, p) for p, x in self.parts.items()), Fraction(0))

    def __repr__(self) -> str:
        return " + ".join(f"({x})*xi^{p}" for p, x in sorted(self.parts.items())) or "0"


@dataclass
class MiddleClass:
    """w + i_*(e) on W; e has codimension one less than w."""

    w: WClass
    e: EClass

    @property
    def codim(self) -> int:
        return self.w.codim

    def __add__(self, other: "MiddleClass") -> "MiddleClass":
        return MiddleClass(self.w + other.w, self.e + other.e)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MiddleClass(self.w * other, self.e * other)
        raise UsageError("use DiagonalBlowupModel.pair for products of two middle classes")

    __rmul__ = __mul__


class DiagonalBlowupModel:
    """Blow-up of X x X along the diagonal; build checks the diagonal formula."""

    def __init__(self, factor: VarietyModel, check: bool = True):
        self.factor = factor
        self.n = factor.dimension
        self.base = SelfProductModel(factor)
        self.segre = factor.segre()
        self._s_cache: dict[int, CycleClass | None] = {}
        if check:
            self.check_gates()

    # -- primitive integrals ----------------------------------------------------

    def s(self, j: int) -> CycleClass | None:
        if j < 0 or j > self.n:
            return None
        return self.segre[j]

    def _w_term_integral(self, t: CycleClass, c: int) -> Fraction:
        if c == 0:
            return t.integrate()
        sj = self.s(c - self.n)
        if sj is None:
            return Fraction(0)
        return (-1) ** (c - 1) * (self.base.restrict_to_diagonal(t) * sj).integrate()

    def _e_term_integral(self, x: CycleClass, p: int) -> Fraction:
        sj = self.s(p - (self.n - 1))
        if sj is None:
            return Fraction(0)
        return (x * sj).integrate()

    # -- constructors -----------------------------------------------------------

    def w_zero(self, codim: int) -> WClass:
        return WClass(self, codim, {})

    def e_zero(self, codim: int) -> EClass:
        return EClass(self, codim, {})

    def pullback(self, t: CycleClass) -> WClass:
        return WClass(self, t.degree, {0: t})

    def E(self, power: int = 1) -> WClass:
        return WClass(self, power, {power: self.base.ring.one()})

    def xi(self, power: int = 1) -> EClass:
        return EClass(self, power, {power: self.factor.ring.one()})

    def g(self, x: CycleClass) -> EClass:
        return EClass(self, x.degree, {0: x})

    def middle(self, w: WClass | None = None, e: EClass | None = None, codim: int | None = None) -> MiddleClass:
        if codim is None:
            codim = w.codim if w is not None else e.codim + 1
        return MiddleClass(w if w is not None else self.w_zero(codim), e if e is not None else self.e_zero(codim - 1))

    def _hyperplane(self) -> CycleClass:
        h = self.factor.hyperplane
        if h is None:
            raise UsageError(f"{self.factor.name} has no hyperplane class")
        return h

    def H(self, side: int) -> WClass:
        return self.pullback(self.base.pullback(self._hyperplane(), side))

    def test_monomials(self) -> list[tuple[str, WClass]]:
        """The codimension-n family t * E^c, t running over a basis of N^(n-c)(X x X)."""
        ring = self.base.ring
        out = []
        for c in range(self.n + 1):
            for m in ring.basis(self.n - c):
                label = "*".join(f"{nm}^{e}" if e > 1 else nm for nm, e in zip(ring.names, m) if e)
                label = (label + "*" if label else "") + (f"E^{c}" if c else "")
                out.append((label or "1", WClass(self, self.n, {c: ring.monomial(m)})))
        return out

    # -- integrals and pairings --------------------------------------------------

    def monomial_integral(self, a: int | Monomial, b: int | None = None, c: int | None = None) -> Fraction:
        """int_W H1^a H2^b E^c, or (T-monomial, c) for general factors."""
        if b is None:
            mono, c = a
            t = self.base.ring.monomial(mono)
        else:
            h1 = self.base.pullback(self._hyperplane(), 1)
            h2 = self.base.pullback(self._hyperplane(), 2)
            if a + b + c != 2 * self.n:
                raise UsageError(f"H1^{a} H2^{b} E^{c} is not of top degree {2 * self.n}")
            t = h1 ** a * h2 ** b
        if t.degree + c != 2 * self.n:
            raise UsageError(f"monomial has degree {t.degree + c}, expected {2 * self.n}")
        return WClass(self, 2 * self.n, {c: t}).integrate()

    def exc_pairing(self, p: int, q: int, a: int, b: int, c: int) -> Fraction:
        """i_*(xi^p g^*h^q) . H1^a H2^b E^c."""
        if p + q + a + b + c != 2 * self.n - 1:
            raise UsageError(f"total degree {p + q + a + b + c} on E, expected {2 * self.n - 1}")
        h = self._hyperplane()
        sj = self.s(p + c - (self.n - 1))
        if sj is None:
            return Fraction(0)
        return (-1) ** c * (h ** (q + a + b) * sj).integrate()

    def pair(self, u: MiddleClass | WClass, v: MiddleClass | WClass) -> Fraction:
        u = u if isinstance(u, MiddleClass) else self.middle(u)
        v = v if isinstance(v, MiddleClass) else self.middle(v)
        if u.codim + v.codim != 2 * self.n:
            raise UsageError(f"codimensions {u.codim} and {v.codim} are not complementary")
        total = (u.w * v.w).integrate()
        if u.e.parts:
            total += (u.e * v.w.restrict()).integrate()
            if v.e.parts:
                total += (u.e * v.e * self.xi() * -1).integrate()
        if v.e.parts:
            total += (u.w.restrict() * v.e).integrate()
        return total

    def multiply(self, u: MiddleClass, w: WClass) -> MiddleClass:
        """(pullback + i_* part) times a class from W: i_*(e) . w = i_*(e . w|_E)."""
        return MiddleClass(u.w * w, u.e * w.restrict())

    # -- the diagonal ---------------------------------------------------------

    @cached_property
    def diagonal_exceptional(self) -> EClass:
        parts = {self.n - 1 - i: self.factor.chern(i) for i in range(self.n)}
        return EClass(self, self.n - 1, parts)

    def pullback_diagonal(self) -> MiddleClass:
        """phi^* Delta = i_*(sum_i g^*c_i(T) xi^(n-1-i))."""
        return self.middle(None, self.diagonal_exceptional, codim=self.n)

    def check_gates(self) -> None:
        """Projection formula against every basis pairing, and (phi^*Delta)^2 = c_n."""
        pd = self.pullback_diagonal()
        for m in self.base.ring.basis(self.n):
            t = self.base.ring.monomial(m)
            got = self.pair(pd, self.pullback(t))
            want = self.base.diagonal_pairing(t)
            if got != want:
                raise InvariantViolation(f"{self.factor.name}: phi^*Delta . {t} = {got}, expected {want}")
        sq = self.pair(pd, pd)
        chi = euler_characteristic(self.factor)
        if sq != chi:
            raise InvariantViolation(f"{self.factor.name}: (phi^*Delta)^2 = {sq}, expected c_n = {chi}")

    # -- Schubert classes -----------------------------------------------------

    def schubert_substitute(self, s: SchubertPoly, target: str = "W", sigma11: str = "H1E"):
        """g^*sigma on W ("W") or its restriction h^*sigma on E ("E")."""
        if not s.fits_box(self.n + 2):
            raise UsageError(f"sigma_{s.partition} does not fit Gr(2, {self.n + 2})")
        if target == "W":
            h1, h2 = self.H(1), self.H(2)
            s1 = h1 + h2 - self.E()
            if sigma11 == "H1E":
                s11 = h1 * h2 - h1 * self.E()
            elif sigma11 == "H2E":
                s11 = h1 * h2 - h2 * self.E()
            else:
                raise UsageError("sigma11 must be 'H1E' or 'H2E'")
            return s.evaluate(s1, s11, self.pullback(self.base.ring.one())) if s.degree else \
                self.pullback(self.base.ring.one())
        if target == "E":
            h = self.g(self._hyperplane())
            s1 = h * 2 + self.xi()
            s11 = h * h + h * self.xi()
            one = self.g(self.factor.ring.one())
            return (s.evaluate(s1, s11, one) if s.degree else one).reduce()
        raise UsageError("target must be 'W' or 'E'")


# -- table rows ---------------------------------------------------------------


@dataclass(frozen=True)
class MTerm:
    coef: Fraction
    sigma: tuple[int, int] | None
    h1: int = 0
    h2: int = 0

    def describe(self) -> str:
        bits = []
        if self.h1:
            bits.append("H1" + (f"^{self.h1}" if self.h1 > 1 else ""))
        if self.h2:
            bits.append("H2" + (f"^{self.h2}" if self.h2 > 1 else ""))
        if self.sigma:
            bits.append("g*sigma" + "".join(str(x) for x in self.sigma if x or self.sigma[1]))
        return (f"{self.coef} " if self.coef != 1 else "") + "*".join(bits or ["1"])


@dataclass(frozen=True)
class NTerm:
    coef: Fraction
    sigma: tuple[int, int] | None
    h: int = 0

    def describe(self) -> str:
        bits = []
        if self.sigma:
            bits.append("h*sigma" + "".join(str(x) for x in self.sigma if x or self.sigma[1]))
        if self.h:
            bits.append("H" + (f"^{self.h}" if self.h > 1 else ""))
        return (f"{self.coef} " if self.coef != 1 else "") + "*".join(bits or ["1"])


@dataclass(frozen=True)
class TableRow:
    name: str
    n: int
    d: int
    alpha: tuple[tuple[int, int, Fraction], ...]  # (a, b, coefficient) for H1^a H2^b
    delta: Fraction
    M: tuple[MTerm, ...]
    N: tuple[NTerm, ...]

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TableRow":
        def sig(v):
            return None if v is None else (int(v[0]), int(v[1]))
        try:
            alpha = tuple((int(t["H1"]), int(t["H2"]), Fraction(str(t["coef"]))) for t in data["alpha"]["external"])
            M = tuple(MTerm(Fraction(str(t["coef"])), sig(t.get("sigma")), int(t.get("H1", 0)), int(t.get("H2", 0)))
                      for t in data["M"])
            N = tuple(NTerm(Fraction(str(t["coef"])), sig(t.get("sigma")), int(t.get("H", 0))) for t in data["N"])
            return cls(str(data.get("name") or hypersurface_name(data["n"], data["d"])), int(data["n"]),
                       int(data["d"]), alpha, Fraction(str(data["alpha"]["delta"])), M, N)
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"malformed table row: {exc}") from exc

    def to_dict(self) -> dict:
        def sig(s):
            return None if s is None else list(s)
        return {
            "name": self.name, "n": self.n, "d": self.d,
            "alpha": {"external": [{"H1": a, "H2": b, "coef": str(c)} for a, b, c in self.alpha],
                      "delta": str(self.delta)},
            "M": [{"coef": str(t.coef), "sigma": sig(t.sigma), "H1": t.h1, "H2": t.h2} for t in self.M],
            "N": [{"coef": str(t.coef), "sigma": sig(t.sigma), "H": t.h} for t in self.N],
        }


@dataclass(frozen=True)
class RowReport:
    name: str
    n: int
    d: int
    alpha_dot_delta: Fraction
    branch: str  # "not-big", "strongly-rigid" or "silent"
    tested: int
    mismatches: tuple[tuple[str, Fraction, Fraction], ...]
    corrected: bool = False

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {"name": self.name, "n": self.n, "d": self.d, "alpha.Delta": str(self.alpha_dot_delta),
                "branch": self.branch, "tested monomials": self.tested, "passed": self.passed,
                "corrected": self.corrected,
                "mismatches": [{"monomial": m, "phi*alpha": str(a), "M + i_*N": str(b)} for m, a, b in self.mismatches]}

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.mismatches)} mismatches)"
        return f"{self.name}: alpha.Delta = {self.alpha_dot_delta}, {self.branch}, {status}"

    def certificates(self) -> list[Certificate]:
        if not self.passed:
            return [make_certificate(self.name, "big", "unknown", "table-decomposition", {},
                                     [PAIRING_VERIFIED], ["decomposition does not match phi^*alpha"])]
        nums = {"alpha.Delta": self.alpha_dot_delta, "tested monomials": self.tested}
        assumptions = [NEF_POLICY_TABLE, PAIRING_VERIFIED]
        if self.corrected:
            assumptions.append("table row uses a corrected coefficient (see hypersurface_table_corrections.json)")
        if self.branch == "not-big":
            return [make_certificate(self.name, "big", "no", "table-decomposition", nums, assumptions,
                                     ["alpha is nef and alpha.Delta = 0"])]
        if self.branch == "strongly-rigid":
            return [
                make_certificate(self.name, "strongly-rigid", "yes", "table-decomposition", nums, assumptions,
                                 ["alpha is nef and alpha.Delta < 0"]),
                make_certificate(self.name, "big", "no", "table-decomposition", nums, assumptions,
                                 ["a strongly rigid class spans an extremal ray, so it is not big"]),
            ]
        return [make_certificate(self.name, "big", "unknown", "table-decomposition", nums, assumptions,
                                 ["alpha.Delta > 0: the criterion is silent"])]


def row_classes(model: DiagonalBlowupModel, row: TableRow) -> tuple[MiddleClass, MiddleClass]:
    """(phi^*alpha, M + i_*N) as classes on W."""
    n = model.n
    for t in row.M + row.N:
        if t.coef < 0:
            raise UsageError(f"{row.name}: negative coefficient {t.coef} in {t.describe()}")
    h1 = model.base.pullback(model._hyperplane(), 1)
    h2 = model.base.pullback(model._hyperplane(), 2)
    ext = model.base.ring.zero(n)
    for a, b, c in row.alpha:
        if a + b != n:
            raise DataError(f"{row.name}: H1^{a} H2^{b} is not of codimension {n}")
        ext = ext + h1 ** a * h2 ** b * c
    lhs = model.middle(model.pullback(ext)) + model.pullback_diagonal() * row.delta
    M = model.w_zero(n)
    for t in row.M:
        term = model.schubert_substitute(schubert_poly(*t.sigma), "W") if t.sigma else model.pullback(model.base.ring.one())
        for _ in range(t.h1):
            term = term * model.H(1)
        for _ in range(t.h2):
            term = term * model.H(2)
        if term.codim != n:
            raise DataError(f"{row.name}: M term {t.describe()} has codimension {term.codim}, expected {n}")
        M = M + term * t.coef
    N = model.e_zero(n - 1)
    h = model.g(model._hyperplane())
    for t in row.N:
        term = model.schubert_substitute(schubert_poly(*t.sigma), "E") if t.sigma else model.g(model.factor.ring.one())
        for _ in range(t.h):
            term = term * h
        if term.codim != n - 1:
            raise DataError(f"{row.name}: N term {t.describe()} has codimension {term.codim} on E, expected {n - 1}")
        N = N + term * t.coef
    return lhs, model.middle(M, N)


def verify_decomposition_row(row: TableRow, model: DiagonalBlowupModel | None = None, strict: bool = True,
                             corrected: bool = False) -> RowReport:
    """Compare phi^*alpha with M + i_*N against every test monomial.

    With ``strict`` a mismatch raises VerificationFailure; otherwise it is
    recorded in the report.
    """
    if model is None:
        model = DiagonalBlowupModel(hypersurface(row.n, row.d))
    elif model.n != row.n:
        raise UsageError(f"row {row.name} has n = {row.n}, model has n = {model.n}")
    lhs, rhs = row_classes(model, row)
    mismatches = []
    tests = model.test_monomials()
    for label, t in tests:
        a, b = model.pair(lhs, t), model.pair(rhs, t)
        if a != b:
            mismatches.append((label, a, b))
    ad = model.base.pair(model.base.augmented(lhs.w.parts.get(0, model.base.ring.zero(row.n)), row.delta),
                         model.base.diagonal())
    branch = "not-big" if ad == 0 else "strongly-rigid" if ad < 0 else "silent"
    report = RowReport(row.name, row.n, row.d, ad, branch, len(tests), tuple(mismatches), corrected)
    if strict and mismatches:
        listed = ", ".join(f"{m}: {a} vs {b}" for m, a, b in mismatches)
        raise VerificationFailure(f"{row.name}: pairing mismatch at {listed}", report)
    return report


def _load_json(name: str) -> Any:
    text = resources.files("diagpos").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def load_table(corrected: bool = False) -> list[TableRow]:
    """The ten hypersurface rows as printed; ``corrected`` applies the shipped errata."""
    rows = [TableRow.from_dict(r) for r in _load_json("hypersurface_table.json")["rows"]]
    if not corrected:
        return rows
    fixes = {(f["n"], f["d"]): f for f in _load_json("hypersurface_table_corrections.json")["corrections"]}
    out = []
    for r in rows:
        f = fixes.get((r.n, r.d))
        if f is not None:
            r = TableRow.from_dict(f["row"])
        out.append(r)
    return out


def corrected_keys() -> set[tuple[int, int]]:
    return {(f["n"], f["d"]) for f in _load_json("hypersurface_table_corrections.json")["corrections"]}


def verify_table(corrected: bool = False) -> list[RowReport]:
    fixed = corrected_keys() if corrected else set()
    models: dict[tuple[int, int], DiagonalBlowupModel] = {}
    out = []
    for row in load_table(corrected):
        key = (row.n, row.d)
        if key not in models:
            models[key] = DiagonalBlowupModel(hypersurface(row.n, row.d))
        out.append(verify_decomposition_row(row, models[key], strict=False, corrected=key in fixed))
    return out


# -- Hilbert square of a surface -------------------------------------------------


def hilb2_pairing(HA, b1, b2, c2) -> Fraction:
    """D1 . D2 . phi^*Delta for D_i = H_i - b_i B on Hilb^2(S): 4 H.A - b1 b2 c2."""
    return hilb2_pairing_product(HA, _frac(b1) * _frac(b2), c2)


def hilb2_pairing_product(HA, b1b2, c2) -> Fraction:
    """Same pairing, given only the product b1 b2 (which may be rational when b_i are not)."""
    return 4 * _frac(HA) - _frac(b1b2) * _frac(c2)


def hilb2_direct(model: DiagonalBlowupModel, H: CycleClass, A: CycleClass, b1b2) -> Fraction:
    """The same pairing computed on W from (H1 + H2 - b1 E)(A1 + A2 - b2 E) phi^*Delta.

    The pairing is bilinear in (b1, b2); the linear terms must vanish, so only
    the product b1 b2 enters.
    """
    if model.n != 2:
        raise UsageError("the Hilbert-square pairing needs a surface")
    pd = model.pullback_diagonal()
    base = model.base

    def value(b1, b2) -> Fraction:
        D1 = model.pullback(base.pullback(H, 1) + base.pullback(H, 2)) - model.E() * b1
        D2 = model.pullback(base.pullback(A, 1) + base.pullback(A, 2)) - model.E() * b2
        return model.pair(pd, D1 * D2)

    v00, v10, v01, v11 = value(0, 0), value(1, 0), value(0, 1), value(1, 1)
    if v10 != v00 or v01 != v00:
        raise InvariantViolation("Hilbert-square pairing has a nonzero linear term in b")
    return v00 + (v11 - v00) * _frac(b1b2)


def surface_rigidity_via_blowup(d1_nef: bool, d2_movable: bool, pairing, subject: str = "surface",
                                d1_movable: bool = True, numbers: Mapping[str, Any] | None = None,
                                assumptions: Iterable[str] = ()) -> list[Certificate]:
    """Verdicts from D1 . D2 . phi^*Delta < 0 on Hilb^2(S).

    Both movable and pairing negative: Delta is not nef.  D1 nef as well:
    Delta is strongly numerically rigid.  Otherwise the rule is silent.
    """
    pairing = _frac(pairing)
    nums = {"D1.D2.phi*Delta": pairing, **(numbers or {})}
    assumptions = list(assumptions)
    movable = (d1_nef or d1_movable) and d2_movable
    if pairing < 0 and movable:
        out = [make_certificate(subject, "nef", "no", "hilb2-movable", nums,
                                assumptions + ["D1 and D2 are movable on Hilb^2"],
                                ["phi^*Delta pairs negatively with a product of movable divisors"])]
        if d1_nef:
            out.append(make_certificate(subject, "strongly-rigid", "yes", "hilb2-nef-movable", nums,
                                        assumptions + ["D1 is nef and D2 is movable on Hilb^2"],
                                        ["phi^*Delta is not pseudoeffective"]))
        return out
    reason = "pairing is nonnegative" if pairing >= 0 else "divisors are not known to be movable"
    return [make_certificate(subject, "strongly-rigid", "unknown", "hilb2-nef-movable", nums, assumptions,
                             [f"Hilbert-square rule silent: {reason}"])]
