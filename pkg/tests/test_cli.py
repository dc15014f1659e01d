import json

import pytest

from diagpos.certificates import Certificate
from diagpos.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def certs_of(out):
    return [Certificate.from_dict(d) for d in json.loads(out)]


def test_hypersurface_json(capsys):
    code, out, _ = run(capsys, "hypersurface", "--dim", "3", "--deg", "4", "--json")
    assert code == 0
    rigid = [c for c in certs_of(out) if c.property == "strongly-rigid"]
    assert rigid[0].verdict == "yes" and rigid[0].number("alpha.Delta") == -40


def test_json_roundtrip_and_determinism(capsys):
    _, first, _ = run(capsys, "k3", "--degree", "4", "--json")
    _, second, _ = run(capsys, "k3", "--degree", "4", "--json")
    assert first == second
    data = json.loads(first)
    assert [c.to_dict() for c in certs_of(first)] == data
    assert all(isinstance(v, str) for d in data for v in d["numbers"].values())


def test_k3_text(capsys):
    code, out, _ = run(capsys, "k3", "--degree", "4")
    assert code == 0
    assert "nef = no" in out and "strongly-rigid = yes" in out and "=-8" in out


def test_verify_table_exit_codes(capsys):
    code, out, _ = run(capsys, "verify-table", "--json")
    rows = json.loads(out)["rows"]
    assert code == 3
    assert len(rows) == 10 and sum(r["passed"] for r in rows) == 8
    assert [r["alpha.Delta"] for r in rows] == ["0", "-40", "-6", "-144", "-740", "-24", "-436", "-3050",
                                                "-12468", "-54"]
    code, out, _ = run(capsys, "verify-table", "--errata")
    assert code == 0 and "10/10 rows verified" in out


def test_blowup_elliptic(capsys):
    code, out, _ = run(capsys, "blowup-elliptic", "--json")
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["span dimension"] == 11 and rep["Delta.H1E1E2"] == "-3"
    assert set(rep["residual"]) == {"0"}


def test_toric_and_kunneth(capsys, tmp_path):
    code, out, _ = run(capsys, "toric", "--preset", "F1")
    assert code == 0 and "nef = no [negative-curve]" in out
    fan = {"rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]], "name": "P2"}
    p = tmp_path / "fan.json"
    p.write_text(json.dumps(fan))
    code, out, _ = run(capsys, "toric", "--fan", str(p))
    assert code == 0 and "big = yes" in out
    code, out, _ = run(capsys, "kunneth", "--preset", "Q4")
    assert code == 0 and "big = no" in out


def test_surface_file(capsys, tmp_path):
    p = tmp_path / "enriques.json"
    p.write_text(json.dumps({"name": "Enriques", "kodaira": 0, "K2": 0, "c2": 12, "q": 0, "pg": 0,
                             "facts": [{"kind": "fibration", "target_dim": 1}]}))
    code, out, _ = run(capsys, "surface", "--file", str(p))
    assert code == 0 and "Enriques: big = no" in out and "perturbed-big = yes" in out


def test_threefold_flags(capsys):
    code, out, _ = run(capsys, "threefold", "--c1-cubed", "-2", "--c1c2", "24", "--kodaira", "3")
    assert code == 0 and "threefold-miyaoka-yau" in out
    code, _, err = run(capsys, "threefold", "--c1-cubed", "-2", "--c1c2", "24", "--kodaira", "3", "--non-minimal")
    assert code == 2 and "minimal" in err


@pytest.mark.parametrize("argv", [
    ["bogus"], ["k3", "--degree", "5"], ["k3"], ["hypersurface", "--dim", "2"], ["kunneth", "--preset", "X7"],
    ["surface", "--file", "/nonexistent.json"], ["toric", "--preset", "F1", "--frobnicate"],
])
def test_invalid_input_exit_2(capsys, argv):
    assert main(argv) == 2


def test_bad_json_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{oops")
    assert main(["surface", "--file", str(p)]) == 2
    p.write_text(json.dumps({"kodaira": 2, "K2": 1, "c2": 2, "q": 0, "pg": 0}))
    assert main(["surface", "--file", str(p)]) == 2
