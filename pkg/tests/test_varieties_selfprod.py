import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from diagpos.errors import DataError, UsageError
from diagpos.selfprod import (
    KunnethData, SelfProductModel, kunneth_big_nef_certificate, kunneth_diagonal, kunneth_p1xp1,
    kunneth_projective_space, kunneth_quadric, kunneth_to_class,
)
from diagpos.varieties import (
    SurfaceInvariants, ThreefoldInvariants, blowup_p3_plane_cubic, euler_characteristic, hypersurface,
    hypersurface_euler_formula, k3_numerical, projective_space,
)


def euler_oracle(n, d):
    # independent: chi = d * [h^n] (1+h)^(n+2) / (1+dh), expanded by hand
    return d * sum(comb(n + 2, n - k) * (-d) ** k for k in range(n + 1))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_euler_characteristic(n, d):
    chi = euler_characteristic(hypersurface(n, d))
    assert chi == euler_oracle(n, d) == hypersurface_euler_formula(n, d)
    if n == 2:
        assert chi == d ** 3 - 4 * d ** 2 + 6 * d


def test_projective_space_euler():
    for n in range(1, 7):
        assert euler_characteristic(projective_space(n)) == n + 1


def test_k3_numerical():
    x = k3_numerical(6)
    assert euler_characteristic(x) == 24
    with pytest.raises(UsageError):
        k3_numerical(5)


def test_surface_invariants_validation():
    with pytest.raises(DataError):
        SurfaceInvariants("bad", 2, 1, 2, 0, 0)  # Noether fails
    with pytest.raises(DataError):
        SurfaceInvariants("bad", 2, 9, 3, 1, 0)  # chi(O) mismatch
    s = SurfaceInvariants("K3", 0, 0, 24, 0, 1)
    assert SurfaceInvariants.from_dict(json.loads(json.dumps(s.to_dict()))) == s
    with pytest.raises(DataError):
        SurfaceInvariants.from_dict({"K2": 1})


def test_threefold_invariants_roundtrip():
    t = ThreefoldInvariants("x", -2, 24, 3)
    assert ThreefoldInvariants.from_dict(t.to_dict()) == t
    with pytest.raises(DataError):
        ThreefoldInvariants.from_dict({"c1_cubed": 0, "c1c2": 0, "kodaira": 7})


# -- self-products -----------------------------------------------------------------

@pytest.mark.parametrize("n,d", [(1, 3), (2, 2), (2, 4), (3, 3), (4, 2)])
def test_diagonal_self_intersection_is_euler(n, d):
    x = hypersurface(n, d)
    assert SelfProductModel(x).diagonal_self_intersection() == euler_characteristic(x)


def test_diagonal_pairing_degree_check():
    m = SelfProductModel(hypersurface(2, 3))
    h1 = m.pullback(m.factor.ring.gen(0), 1)
    with pytest.raises(UsageError):
        m.diagonal_pairing(h1)
    assert m.diagonal_pairing(h1 * h1) == 3


@given(st.integers(1, 4), st.integers(1, 4))
def test_kunneth_reproduces_diagonal_pairings(n, d):
    # the decomposition must pair with every external basis product exactly like Delta
    x = hypersurface(n, d)
    m = SelfProductModel(x)
    cls = kunneth_to_class(m, kunneth_diagonal(KunnethData.from_variety(x)))
    r = x.ring
    for k in range(n + 1):
        for a in r.basis(k):
            for b in r.basis(n - k):
                t = m.pullback(r.monomial(a), 1) * m.pullback(r.monomial(b), 2)
                assert (cls * t).integrate() == m.diagonal_pairing(t)


def test_kunneth_projective_space_coefficients():
    dec = kunneth_diagonal(kunneth_projective_space(3))
    assert sorted(c for _, _, c in dec.terms()) == [1, 1, 1, 1]


def test_kunneth_verdicts():
    def verdicts(k):
        return {c.property: c.verdict for c in kunneth_big_nef_certificate(k)}
    assert verdicts(kunneth_projective_space(2)) == {"big": "yes", "nef": "yes"}
    assert verdicts(kunneth_projective_space(2, "fake projective plane")) == {"big": "yes", "nef": "yes"}
    assert verdicts(kunneth_p1xp1()) == {"big": "no", "nef": "yes"}
    assert verdicts(kunneth_quadric(3)) == {"big": "yes", "nef": "yes"}
    assert verdicts(kunneth_quadric(4)) == {"big": "no", "nef": "yes"}
    assert verdicts(kunneth_quadric(6)) == {"big": "no", "nef": "yes"}


def test_kunneth_data_validation():
    base = kunneth_p1xp1().to_dict()
    KunnethData.from_dict(base)
    bad = dict(base, gram=[[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [2, 0, 0, 0]])
    with pytest.raises(DataError):
        KunnethData.from_dict(bad)
    with pytest.raises(DataError):
        KunnethData.from_dict(dict(base, gram=[[0] * 4] * 4))
    with pytest.raises(DataError):
        KunnethData.from_dict(dict(base, tags=[["shiny"]] * 4))
    with pytest.raises(DataError):
        KunnethData.from_json("{not json")


def test_cubic_threefold_and_blowup_pairings():
    m = SelfProductModel(hypersurface(3, 3))
    h = m.factor.ring.gen(0)
    assert m.diagonal_pairing(m.pullback(h, 1) * m.pullback(h * h, 2)) == 3
    assert m.diagonal_self_intersection() == -6
    x = blowup_p3_plane_cubic()
    mb = SelfProductModel(x)
    H, E = x.ring.gens()
    assert mb.diagonal_pairing(mb.pullback(H, 1) * mb.pullback(E, 1) * mb.pullback(E, 2)) == Fraction(-3)
