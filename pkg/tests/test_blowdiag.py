from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diagpos.blowdiag import (
    DiagonalBlowupModel, TableRow, corrected_keys, hilb2_direct, hilb2_pairing, hilb2_pairing_product,
    load_table, surface_rigidity_via_blowup, verify_decomposition_row, verify_table,
)
from diagpos.errors import UsageError, VerificationFailure
from diagpos.schubert import schubert_poly
from diagpos.varieties import euler_characteristic, hypersurface, k3_numerical

EXPECTED_ALPHA = [0, -40, -6, -144, -740, -24, -436, -3050, -12468, -54]


@pytest.fixture(scope="module")
def quartic_k3():
    return DiagonalBlowupModel(hypersurface(2, 4))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_gates(n, d):
    # construction runs check_gates; repeat explicitly and compare with an independent Euler number
    m = DiagonalBlowupModel(hypersurface(n, d))
    m.check_gates()
    pd = m.pullback_diagonal()
    assert m.pair(pd, pd) == euler_characteristic(m.factor)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.integers(1, 5), st.data())
def test_projection_formula(n, d, data):
    # phi^*Delta . phi^*t = Delta . t for every external class t of degree n
    m = DiagonalBlowupModel(hypersurface(n, d))
    sp = m.base
    h = m.factor.ring.gen(0)
    a = data.draw(st.integers(0, n))
    t = sp.pullback(h ** a, 1) * sp.pullback(h ** (n - a), 2)
    assert m.pair(m.pullback_diagonal(), m.pullback(t)) == sp.diagonal_pairing(t) == d


def test_k3_integrals(quartic_k3):
    m = quartic_k3
    assert m.monomial_integral(2, 2, 0) == 16
    assert m.monomial_integral(1, 1, 2) == -4
    assert m.monomial_integral(0, 0, 4) == 24
    assert m.exc_pairing(1, 0, 1, 1, 0) == 4
    D = m.H(1) + m.H(2) - m.E()
    assert m.pair(m.pullback_diagonal(), D * D) == -8


def test_monomial_degree_check(quartic_k3):
    with pytest.raises(UsageError):
        quartic_k3.monomial_integral(1, 1, 1)


@pytest.mark.parametrize("n,d", [(3, 3), (4, 2), (5, 4)])
def test_sigma11_forms_agree(n, d):
    # H1 E and H2 E restrict to the same class on E, so both forms give the same pairings
    m = DiagonalBlowupModel(hypersurface(n, d))
    for a in range(0, n + 1):
        for b in range(0, min(a, n - a) + 1):
            s = schubert_poly(a, b)
            if s.degree > n:
                continue
            u = m.schubert_substitute(s, "W", "H1E")
            v = m.schubert_substitute(s, "W", "H2E")
            for _, t in m.test_monomials():
                if t.codim + u.codim == 2 * m.n:
                    assert (u * t).integrate() == (v * t).integrate()


@pytest.mark.parametrize("n,d", [(3, 4), (4, 3)])
def test_schubert_restriction(n, d):
    # restricting g^*sigma from W to E gives the E-side substitution
    m = DiagonalBlowupModel(hypersurface(n, d))
    for a, b in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0)]:
        s = schubert_poly(a, b)
        assert m.schubert_substitute(s, "W").restrict() == m.schubert_substitute(s, "E")


def test_schubert_box(quartic_k3):
    with pytest.raises(UsageError):
        quartic_k3.schubert_substitute(schubert_poly(3, 0))


# -- the table ---------------------------------------------------------------------

def test_table_as_printed():
    reports = verify_table()
    assert [r.alpha_dot_delta for r in reports] == EXPECTED_ALPHA
    failing = {(r.n, r.d) for r in reports if not r.passed}
    assert failing == {(5, 4), (5, 6)} == corrected_keys()


def test_table_with_errata():
    reports = verify_table(corrected=True)
    assert all(r.passed for r in reports)
    assert [r.branch for r in reports] == ["not-big"] + ["strongly-rigid"] * 9


def test_corrections_are_single_coefficients():
    printed = {(r.n, r.d): r for r in load_table()}
    fixed = {(r.n, r.d): r for r in load_table(corrected=True)}
    diffs = {k: [(a, b) for a, b in zip(printed[k].N, fixed[k].N) if a != b] for k in corrected_keys()}
    assert {k: [(a.coef, b.coef) for a, b in v] for k, v in diffs.items()} == {
        (5, 4): [(62, 72)], (5, 6): [(500, 525)]}


def test_strict_verification_raises():
    row = next(r for r in load_table() if (r.n, r.d) == (5, 4))
    with pytest.raises(VerificationFailure) as exc:
        verify_decomposition_row(row)
    assert [mono for mono, _, _ in exc.value.report.mismatches] == ["h2*E^4", "h1*E^4", "E^5"]


def test_row_roundtrip():
    for r in load_table():
        assert TableRow.from_dict(r.to_dict()) == r


# -- Hilbert square ----------------------------------------------------------------------

def test_hilb2_direct_matches_formula(quartic_k3):
    H = quartic_k3.factor.ring.gen(0)
    assert hilb2_direct(quartic_k3, H, H, 1) == -8 == hilb2_pairing(4, 1, 1, 24)


@pytest.mark.parametrize("d", range(4, 201, 14))
def test_hilb2_direct_k3(d):
    m = DiagonalBlowupModel(k3_numerical(d))
    H = m.factor.ring.gen(0)
    b2 = Fraction(d, 2) - 1
    assert hilb2_direct(m, H, H, b2) == hilb2_pairing_product(d, b2, 24) == 24 - 8 * d


def test_surface_rigidity_branches():
    certs = surface_rigidity_via_blowup(True, True, -1)
    assert {(c.property, c.verdict) for c in certs} == {("nef", "no"), ("strongly-rigid", "yes")}
    certs = surface_rigidity_via_blowup(False, True, -1)
    assert {(c.property, c.verdict) for c in certs} == {("nef", "no")}
    certs = surface_rigidity_via_blowup(True, True, 3)
    assert [c.verdict for c in certs] == ["unknown"]
