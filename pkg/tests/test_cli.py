import contextlib
import io
import json
from pathlib import Path

import pytest

from nervekit.cli import Report, main
from nervekit.simpl import sset_from_json, sset_to_json, nerve
from nervekit import corpus

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    argv = [str(CORPUS / a) if (CORPUS / a).exists() else a for a in argv]
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


GOLDEN = {
    "homology-circle": ["homology", "circle.json"],
    "homology-delta2": ["homology", "delta2.json", "--max-dim", "3"],
    "homology-boundary2": ["homology", "boundary2.json", "--max-dim", "3"],
    "nerve-diamond": ["nerve", "diamond-poset.json"],
    "binerve-chain2": ["binerve", "chain2.json", "--max-dim", "1"],
    "chi-diamond": ["chi-check", "diamond-poset.json", "--max-dim", "2"],
    "compare-point-circle": ["compare", "point.json", "circle.json", "point-to-circle.json", "--max-dim", "2"],
    "simplices-boundary2": ["simplices", "boundary2.json", "--max-dim", "2"],
    "hocolim-swap": ["hocolim", "swap-diagram.json", "--max-dim", "2"],
    "moduli-diamond-tw": ["moduli", "diamond.json", "--from", "x", "--to", "y", "--variant", "restricted-tw"],
    "theorem-diamond": ["theorem-main", "diamond.json", "--from", "x", "--to", "y"],
    "double-diamond": ["double", "diamond.json", "--from", "x", "--to", "y", "--max-dim", "2"],
    "validate-diamond": ["validate", "diamond.json"],
}

EXPECTED_CODES = {"compare-point-circle": 1}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name):
    code, out, _ = run(GOLDEN[name])
    assert code == EXPECTED_CODES.get(name, 0)
    assert out == (GOLDEN_DIR / f"{name}.txt").read_text()


@pytest.mark.parametrize("name", ["homology-circle", "theorem-diamond", "compare-point-circle"])
def test_machine_round_trip_and_determinism(name):
    argv = GOLDEN[name] + ["--format", "machine"]
    code1, out1, _ = run(argv)
    code2, out2, _ = run(argv)
    assert out1 == out2 and code1 == code2
    rep = Report.from_json(out1)
    assert rep.to_json() + "\n" == out1
    assert rep.exit_code == code1


def test_homology_machine_fields():
    _, out, _ = run(["homology", "circle.json", "--format", "machine"])
    data = json.loads(out)["data"]
    assert data["betti"] == [1, 1] and data["pi0"] == 1


def test_nerve_out_file_round_trip(tmp_path):
    target = tmp_path / "n.json"
    code, _, _ = run(["nerve", "chain2.json", "--max-dim", "2", "--out", str(target)])
    assert code == 0
    raw = json.loads(target.read_text())
    assert raw == json.loads((GOLDEN_DIR / "nerve-chain2.json").read_text())
    assert sset_to_json(sset_from_json(raw)) == sset_to_json(nerve(corpus.chain(2), 2))


def test_builtin_names():
    code, out, _ = run(["theorem-main", "diamond", "--from", "x", "--to", "y"])
    assert code == 0 and "certificate: PASS" in out


@pytest.mark.parametrize("argv", [
    ["homology", "circle.json", "--max-dim", "-1"],
    ["theorem-main", "diamond.json", "--from", "nope", "--to", "y"],
    ["validate", "no-such-file.json"],
    ["moduli", "diamond.json", "--from", "x", "--to", "y", "--variant", "bogus"],
    ["theorem-main", "diamond.json", "--from", "x", "--to", "y", "--strict"],
])
def test_input_errors_exit_2(argv):
    code, out, _ = run(argv)
    assert code == 2 and out == ""


def test_strict_error_names_the_lift():
    _, _, err = run(["theorem-main", "diamond.json", "--from", "x", "--to", "y", "--strict"])
    assert "no lift" in err


def test_strict_model_file_passes():
    code, _, _ = run(["validate", "diamond-cof-id.json", "--strict"])
    assert code == 0


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(["validate", str(bad)])
    assert code == 2 and "line 1" in err
