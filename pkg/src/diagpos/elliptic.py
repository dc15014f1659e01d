"""Big diagonal on the blow-up of P^3 along a plane cubic curve.

N_3(X x X) is modelled as the formal span of the external classes of degree 3
and the diagonal.  The class Z_{a,b,c} pushed forward from a divisor on C x C
is substituted, and the stated effective decomposition of the diagonal is
checked to be an identity in that span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificates import Certificate, make_certificate
from .linalg import rank
from .selfprod import AugmentedClass, SelfProductModel
from .varieties import blowup_p3_plane_cubic


@dataclass(frozen=True)
class EllipticReport:
    span_dimension: int
    terms_rank: int
    residual: tuple[Fraction, ...]
    coefficients: tuple[tuple[str, Fraction], ...]
    effective_factors: bool
    delta_dot_H1E1E2: Fraction

    @property
    def identity_holds(self) -> bool:
        return not any(self.residual)

    @property
    def coefficients_nonnegative(self) -> bool:
        return all(c >= 0 for _, c in self.coefficients)

    @property
    def passed(self) -> bool:
        return (self.identity_holds and self.coefficients_nonnegative and self.effective_factors
                and self.terms_rank == self.span_dimension and self.delta_dot_H1E1E2 < 0)

    def to_dict(self) -> dict:
        return {
            "span dimension": self.span_dimension,
            "rank of terms": self.terms_rank,
            "residual": [str(x) for x in self.residual],
            "coefficients": {k: str(v) for k, v in self.coefficients},
            "effective factors": self.effective_factors,
            "Delta.H1E1E2": str(self.delta_dot_H1E1E2),
            "passed": self.passed,
        }

    def certificates(self, subject: str = "blow-up of P3 along a plane cubic") -> list[Certificate]:
        out = []
        if self.identity_holds and self.coefficients_nonnegative and self.effective_factors \
                and self.terms_rank == self.span_dimension:
            nums = {"span dimension": self.span_dimension, "terms": len(self.coefficients)}
            why = ["Delta is a positive combination of effective cycles spanning N_3(X x X)"]
            assumption = ["C has no complex multiplication, so N_3(X x X) is spanned by Delta and external products"]
            out.append(make_certificate(subject, "big", "yes", "effective-decomposition", nums, assumption, why))
            out.append(make_certificate(subject, "homologically-big", "yes", "effective-decomposition", nums,
                                        assumption + ["X is rational"], why))
        if self.delta_dot_H1E1E2 < 0:
            out.append(make_certificate(subject, "nef", "no", "negative-curve", {"Delta.H1E1E2": self.delta_dot_H1E1E2},
                                        [], ["H1 E1 E2 is effective and meets Delta negatively"]))
        return out


def verify_blowup_elliptic() -> EllipticReport:
    x = blowup_p3_plane_cubic()
    m = SelfProductModel(x)
    H, E = x.ring.gens()
    H1, E1 = m.pullback(H, 1), m.pullback(E, 1)
    H2, E2 = m.pullback(H, 2), m.pullback(E, 2)

    def ext(c) -> AugmentedClass:
        return m.augmented(c)

    def Z(a, b, c) -> AugmentedClass:
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        return ext(H1 * E1 * E2 * (a / 3) + H2 * E1 * E2 * (b / 3)
                   + (H1 ** 3 + H1 ** 2 * H2 + H1 * H2 ** 2 + H2 ** 3) * c) + m.diagonal() * (-c)

    sixth, five = Fraction(1, 6), Fraction(5, 6)
    # (label, coefficient, class, factors) with every factor one of H, E, H - E on either side
    terms = [
        ("Z_{2,2,-1}", Fraction(1), Z(2, 2, -1), None),
        ("H1E1E2", sixth, ext(H1 * E1 * E2), ("H1", "E1", "E2")),
        ("H2E1E2", sixth, ext(H2 * E1 * E2), ("H2", "E1", "E2")),
        ("H1E1(H2-E2)", five, ext(H1 * E1 * (H2 - E2)), ("H1", "E1", "H2-E2")),
        ("H2E2(H1-E1)", five, ext(H2 * E2 * (H1 - E1)), ("H2", "E2", "H1-E1")),
        ("H1H2(H1-E1)", five, ext(H1 * H2 * (H1 - E1)), ("H1", "H2", "H1-E1")),
        ("H1H2(H2-E2)", five, ext(H1 * H2 * (H2 - E2)), ("H1", "H2", "H2-E2")),
        ("H1^2(H2-E2)", sixth, ext(H1 ** 2 * (H2 - E2)), ("H1", "H1", "H2-E2")),
        ("H2^2(H1-E1)", sixth, ext(H2 ** 2 * (H1 - E1)), ("H2", "H2", "H1-E1")),
        ("H1^2E2", sixth, ext(H1 ** 2 * E2), ("H1", "H1", "E2")),
        ("H2^2E1", sixth, ext(H2 ** 2 * E1), ("H2", "H2", "E1")),
        ("H1^3", Fraction(1), ext(H1 ** 3), ("H1", "H1", "H1")),
        ("H2^3", Fraction(1), ext(H2 ** 3), ("H2", "H2", "H2")),
    ]
    effective = {"H1", "H2", "E1", "E2", "H1-E1", "H2-E2"}

    def coords(a: AugmentedClass) -> list[Fraction]:
        return list(m.ring.coordinates(a.external)) + [a.delta]

    total = m.augmented()
    for _, c, cls, _ in terms:
        total = total + cls * c
    residual = tuple(a - b for a, b in zip(coords(total), coords(m.diagonal())))
    span = m.ring.rank(3) + 1
    terms_rank = rank([coords(cls) for _, _, cls, _ in terms])
    eff = all(f is None or set(f) <= effective for *_, f in terms)
    pairing = m.diagonal_pairing(H1 * E1 * E2)
    return EllipticReport(span, terms_rank, residual, tuple((lbl, c) for lbl, c, _, _ in terms), eff, pairing)
