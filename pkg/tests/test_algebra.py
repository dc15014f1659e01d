from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from diagpos.errors import UsageError
from diagpos.linalg import inverse, matmul, nullspace, rank
from diagpos.rings import TensorRing, truncated_polynomial_ring
from diagpos.schubert import schubert_poly
from diagpos.series import TruncatedSeries
from diagpos.varieties import hypersurface, projective_space

small = st.integers(min_value=-6, max_value=6)


# -- linear algebra against sympy ------------------------------------------------

@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_is_inverse(rows):
    if sympy.Matrix(rows).det() == 0:
        return
    inv = inverse(rows)
    prod = matmul(rows, inv)
    assert all(prod[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=2, max_size=3))
def test_nullspace_is_kernel(rows):
    ker = nullspace(rows, 4)
    assert len(ker) == 4 - rank(rows)
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


# -- graded rings ---------------------------------------------------------------

def _random_class(ring, k, coeffs):
    basis = ring.basis(k)
    return ring.element({m: c for m, c in zip(basis, coeffs)}, degree=k) if basis else ring.zero(k)


@settings(max_examples=40)
@given(st.integers(2, 4), st.integers(1, 5), st.lists(small, min_size=6, max_size=6))
def test_ring_axioms_on_product(n, d, cs):
    x = hypersurface(n, d)
    r = TensorRing(x.ring, x.ring)
    a = _random_class(r, 1, cs[:3])
    b = _random_class(r, 1, cs[3:])
    c = _random_class(r, 2, cs[1:4])
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + b) == a * b + a * b
    assert (a + b) * c == a * c + b * c


@given(st.integers(1, 6), st.integers(1, 6))
def test_normal_form_idempotent(n, d):
    ring = hypersurface(n, d).ring
    for k in range(n + 1):
        for m in ring.basis(k):
            assert ring.normal_form(m) == {m: 1}
    h = ring.gen(0)
    assert (h ** n).integrate() == d
    assert (h ** (n + 1)).is_zero


def test_integrate_wrong_degree():
    ring = truncated_polynomial_ring("h", 2, 1)
    with pytest.raises(UsageError):
        ring.integrate_monomial((1,))


def test_tensor_ring_point_class():
    r = TensorRing(projective_space(2).ring, projective_space(3).ring)
    h1, h2 = r.gens()
    assert (h1 ** 2 * h2 ** 3).integrate() == 1
    assert r.rank(2) == 3


# -- truncated series ---------------------------------------------------------------

@given(st.lists(small, min_size=1, max_size=6))
def test_series_inverse(tail):
    s = TruncatedSeries([1] + tail, len(tail))
    one = s * s.inverse()
    assert one == TruncatedSeries([1] + [0] * len(tail), len(tail))


def test_series_inverse_needs_unit():
    with pytest.raises(UsageError):
        TruncatedSeries([0, 1], 3).inverse()


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_segre_against_sympy(n, d):
    # s(T) of a hypersurface is (1+dh)/(1+h)^(n+2); compare with sympy's series
    x = hypersurface(n, d)
    t = sympy.symbols("t")
    ser = sympy.series((1 + d * t) / (1 + t) ** (n + 2), t, 0, n + 1).removeO()
    seg = x.segre()
    h = x.ring.gen(0)
    for k in range(n + 1):
        want = Fraction(str(ser.coeff(t, k)))
        assert seg[k] == (h ** k) * want


# -- Schubert polynomials against Schur polynomials ----------------------------------------

@pytest.mark.parametrize("a,b", [(a, b) for a in range(0, 8) for b in range(0, a + 1)])
def test_schubert_is_schur(a, b):
    # on Gr(2, m), sigma_{a,b} is the Schur polynomial s_{a,b}(x1, x2) with S1 = e1, S11 = e2
    x1, x2 = sympy.symbols("x1 x2")
    schur = sympy.cancel((x1 ** (a + 1) * x2 ** b - x2 ** (a + 1) * x1 ** b) / (x1 - x2))
    got = sum(c * (x1 + x2) ** i * (x1 * x2) ** j for (i, j), c in schubert_poly(a, b).terms().items())
    assert sympy.expand(got - schur) == 0


def test_schubert_partition_checks():
    with pytest.raises(UsageError):
        schubert_poly(1, 2)
    assert schubert_poly(3, 1).fits_box(5)
    assert not schubert_poly(4, 0).fits_box(5)
