import pytest
from hypothesis import given, strategies as st

from diagpos.certificates import Certificate, make_certificate
from diagpos.corpus import SURFACES, TORIC_PRESETS, corpus, sweep, toric_certificates
from diagpos.criteria import (
    OPEN_CASES, MorphismFact, classify_surface, consistency_sweep, double_plane, hodge_obstruction, horikawa,
    hypersurface_pipeline, k3_status, morphism_obstructions, perturbed_diagonal_surface, surface_in_p3,
    threefold_obstruction,
)
from diagpos.errors import DataError, UsageError
from diagpos.varieties import SurfaceInvariants, ThreefoldInvariants


def verdicts(certs, subject=None):
    out = {}
    for c in certs:
        if subject is None or c.subject == subject:
            if c.verdict != "unknown" or c.property not in out:
                out[c.property] = c.verdict
    return out


def number(certs, prop, name):
    return next(c.number(name) for c in certs if c.property == prop and c.verdict != "unknown")


# -- single rules ------------------------------------------------------------------------

def test_hodge_obstruction():
    assert hodge_obstruction([0, 1]).verdict == "no"
    assert hodge_obstruction([0, 0]).verdict == "unknown"
    assert hodge_obstruction([2, 1]).verdict == "no"


def test_morphism_obstructions():
    enriques = morphism_obstructions([MorphismFact("fibration", target_dim=1)], 12, 2)
    assert verdicts(enriques) == {"big": "no"}
    quartic = morphism_obstructions([MorphismFact("finite-cover", degree=4, target_euler=3)], 24, 2)
    assert verdicts(quartic) == {"nef": "no"}
    assert morphism_obstructions([MorphismFact("finite-cover", degree=4, target_euler=3)], 12, 2) == []
    genus2 = morphism_obstructions([MorphismFact("curve-map", genus=2)], 4, 2)
    assert verdicts(genus2) == {"big": "no", "nef": "no"}


def test_fact_validation():
    with pytest.raises(DataError):
        MorphismFact("fibration")
    with pytest.raises(DataError):
        MorphismFact("teleport")
    with pytest.raises(DataError):
        MorphismFact("negative-curve", self_intersection=0)
    f = MorphismFact("finite-cover", degree=2, target_euler=3, note="x")
    assert MorphismFact.from_dict(f.to_dict()) == f


# -- K3 --------------------------------------------------------------------------------

def test_k3_examples():
    c4 = k3_status(4)
    assert verdicts(c4) == {"homologically-big": "no", "big": "no", "nef": "no", "strongly-rigid": "yes"}
    assert number(c4, "nef", "D1.D2.phi*Delta") == -8
    c10 = k3_status(10)
    assert verdicts(c10)["strongly-rigid"] == "unknown"
    rig = next(c for c in c10 if c.property == "strongly-rigid")
    assert (rig.number("x"), rig.number("y")) == (5, 1)
    assert verdicts(k3_status(12))["strongly-rigid"] == "yes"
    assert number(k3_status(2), "nef", "Delta.Gamma") == -18
    with pytest.raises(UsageError):
        k3_status(7)


@pytest.mark.parametrize("d", range(4, 201, 2))
def test_k3_pairing_matches_formula(d):
    assert number(k3_status(d), "nef", "D1.D2.phi*Delta") == 24 - 8 * d


def test_k3_higher_picard_rank():
    assert verdicts(k3_status(4, picard_rank_one=False))["strongly-rigid"] == "unknown"


# -- threefolds -------------------------------------------------------------------------

def test_threefold_branches():
    gt = threefold_obstruction(ThreefoldInvariants("gt", -2, 24, 3))
    assert (gt.verdict, gt.rule) == ("no", "threefold-miyaoka-yau")
    chi2 = threefold_obstruction(ThreefoldInvariants("x", -4, 48, 3))
    assert (chi2.verdict, chi2.rule, chi2.number("chi(O)")) == ("no", "threefold-chi", 2)
    cy = threefold_obstruction(ThreefoldInvariants("cy", 0, 0, 0, hodge=(0, 0, 1)))
    assert (cy.verdict, cy.rule) == ("no", "hodge-obstruction")
    it = threefold_obstruction(ThreefoldInvariants("e", 0, 24, 1))
    assert (it.verdict, it.rule) == ("no", "iitaka-fibration")
    with pytest.raises(UsageError):
        threefold_obstruction(ThreefoldInvariants("nm", -2, 24, 3, minimal=False))
    with pytest.raises(UsageError):
        threefold_obstruction(ThreefoldInvariants("fano", 64, 24, None))


@given(st.integers(0, 3), st.integers(-200, 200).map(lambda k: 24 * k), st.integers(-100, -1))
def test_threefold_always_not_homologically_big(kod, c1c2, c1_cubed):
    hodge = (0, 0, 1) if kod == 0 else ()
    t = ThreefoldInvariants("t", c1_cubed, c1c2, kod, hodge=hodge)
    assert threefold_obstruction(t).verdict == "no"


# -- surfaces ---------------------------------------------------------------------------

def test_surface_examples():
    assert verdicts(classify_surface(horikawa(5)))["nef"] == "no"
    for d in range(8, 41, 2):
        assert verdicts(classify_surface(double_plane(d)))["nef"] == "no"
    ab = SurfaceInvariants("abelian surface", 0, 0, 0, 2, 1, tangent_nef=True)
    assert verdicts(classify_surface(ab)) == {"big": "no", "homologically-big": "no", "nef": "yes"}
    fpp = SurfaceInvariants("fake projective plane", 2, 9, 3, 0, 0)
    assert verdicts(classify_surface(fpp)) == {"big": "yes", "nef": "yes"}
    nm = SurfaceInvariants("blown-up surface", 2, 8, 16, 0, 1, minimal=False)
    assert verdicts(classify_surface(nm))["nef"] == "no"


@pytest.mark.parametrize("pg", range(3, 60))
def test_horikawa_pairing(pg):
    s = horikawa(pg)
    assert s.c2 > 4 * s.K2
    assert number(classify_surface(s), "nef", "D1.D2.phi*Delta") == -2 * pg - 32


def test_surfaces_in_p3():
    for d in range(4, 12):
        s = surface_in_p3(d)
        assert s.c2 == d ** 3 - 4 * d ** 2 + 6 * d
        v = verdicts(classify_surface(s))
        assert v["nef"] == "no" and v["strongly-rigid"] == "yes"


def test_perturbed_diagonal():
    rational = SurfaceInvariants("rational", None, 8, 4, 0, 0)
    assert perturbed_diagonal_surface(rational).verdict == "yes"
    assert perturbed_diagonal_surface(SurfaceInvariants("K3", 0, 0, 24, 0, 1)).verdict == "no"
    assert perturbed_diagonal_surface(SurfaceInvariants("Enriques", 0, 0, 12, 0, 0)).verdict == "yes"


# -- hypersurfaces ---------------------------------------------------------------------------

def test_hypersurface_examples():
    assert verdicts(hypersurface_pipeline(3, 3))["big"] == "no"
    q = hypersurface_pipeline(4, 4)
    assert verdicts(q)["strongly-rigid"] == "yes"
    cs = verdicts(hypersurface_pipeline(2, 3))
    assert cs["nef"] == "no" and cs["big"] == "no"
    assert number(hypersurface_pipeline(3, 4), "strongly-rigid", "alpha.Delta") == -40
    assert verdicts(hypersurface_pipeline(3, 1)) == {"big": "yes", "nef": "yes"}
    assert verdicts(hypersurface_pipeline(4, 2)) == {"big": "no", "nef": "yes"}
    assert verdicts(hypersurface_pipeline(1, 3))["nef"] == "yes"
    assert verdicts(hypersurface_pipeline(1, 4))["nef"] == "no"
    assert verdicts(hypersurface_pipeline(3, 5))["homologically-big"] == "no"


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(3, 7))
def test_hypersurfaces_never_nef(n, d):
    if (n, d) == (1, 3):
        return
    assert verdicts(hypersurface_pipeline(n, d))["nef"] == "no"


# -- toric ------------------------------------------------------------------------------------

@pytest.mark.parametrize("name,big,nef", [
    ("P1", "yes", "yes"), ("P2", "yes", "yes"), ("P3", "yes", "yes"), ("P4", "yes", "yes"),
    ("P1xP1", "no", "yes"), ("P2xP1", "no", "yes"), ("P1xP1xP1", "no", "yes"), ("P2xP2", "no", "yes"),
    ("F1", "no", "no"), ("F2", "no", "no"), ("F3", "no", "no"), ("F1xP1", "no", "no"),
])
def test_toric_presets(name, big, nef):
    certs = toric_certificates(name)
    assert verdicts(certs) == {"big": big, "nef": nef}


def test_f1_witness():
    nef = next(c for c in toric_certificates("F1") if c.property == "nef")
    assert nef.rule == "negative-curve" and nef.number("negative pairing") < 0


def test_unknown_preset():
    with pytest.raises(UsageError):
        toric_certificates("P9000")
    assert "P1xP1" in TORIC_PRESETS


# -- the sweep ------------------------------------------------------------------------------

def test_sweep_detects_conflicts():
    a = make_certificate("X", "big", "yes", "r1", {"x": 1})
    b = make_certificate("X", "big", "no", "r2", {"x": 1})
    assert consistency_sweep([("X", ["big"], [a, b])]).conflicts
    r = make_certificate("X", "strongly-rigid", "yes", "r3", {"x": 1})
    assert consistency_sweep([("X", ["big"], [a, r])]).conflicts
    u = make_certificate("Y", "nef", "unknown", "r4", {}, [], ["?"])
    assert consistency_sweep([("Y", ["nef"], [u])]).unexpected_unknowns == [("Y", "nef")]


def test_full_corpus_is_consistent():
    rep = sweep()
    assert rep.conflicts == []
    assert rep.unexpected_unknowns == []
    assert rep.missing_open_cases == []
    undecided = {k for k, v in rep.verdicts.items() if v == "unknown"}
    assert undecided == set(OPEN_CASES)


def test_corpus_certificates_roundtrip():
    for e in corpus(k3_max=20):
        for c in e.certificates:
            assert Certificate.from_json(c.to_json()) == c


def test_surface_corpus_present():
    names = {s.name for s, _ in SURFACES}
    assert {"Enriques surface", "fake projective plane", "mixed fake quadric"} <= names
