import json

import pytest

from quatspec.cli import main
from quatspec.verify import golden_dir

GOLDENS = golden_dir()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum(capsys, tmp_path):
    code, out, _ = run(capsys, "spectrum", str(GOLDENS / "diag12.json"))
    assert code == 0
    spheres = [(s["re"], s["rad"]) for s in json.loads(out)["spheres"]]
    assert spheres == [(1, 0), (2, 0)]
    m = tmp_path / "dij.json"
    m.write_text('{"n": 2, "entries": [[[0, 1, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [0, 0, 1, 0]]]}')
    code, out, _ = run(capsys, "spectrum", str(m))
    spheres = json.loads(out)["spheres"]
    assert len(spheres) == 1 and spheres[0]["mult"] == 2
    assert spheres[0]["rad"] == pytest.approx(1.0, abs=1e-12)


def test_spectrum_bad_input(capsys, tmp_path):
    m = tmp_path / "cut.json"
    m.write_text('{"n": 2, "entries": [[[1, 0')
    code, _, err = run(capsys, "spectrum", str(m))
    assert code == 2 and "malformed JSON" in err
    code, _, _ = run(capsys, "spectrum", str(tmp_path / "missing.json"))
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", str(GOLDENS / "diag12.json"), "--tol", "-1"])
    assert exc.value.code == 2


def test_scan(capsys, tmp_path):
    out_file = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "scan", str(GOLDENS / "identity2.json"), "--re-min", "0", "--re-max", "2",
                     "--rad-max", "1", "--grid", "21x11", "--out", str(out_file))
    assert code == 0
    assert out_file.read_bytes() == (GOLDENS / "scan_identity.csv").read_bytes()
    rows = [list(map(float, r.split(","))) for r in out_file.read_text().splitlines()[1:]]
    assert all(r[2] >= 0 for r in rows)
    code, _, _ = run(capsys, "scan", str(GOLDENS / "identity2.json"), "--re-min", "0", "--re-max", "2",
                     "--rad-max", "1", "--grid", "1")
    assert code == 2
    code, _, _ = run(capsys, "scan", str(GOLDENS / "identity2.json"), "--re-min", "2", "--re-max", "0",
                     "--rad-max", "1")
    assert code == 2


def test_fredholm(capsys):
    code, out, _ = run(capsys, "fredholm", "S^3")
    assert code == 0
    assert out == (GOLDENS / "fredholm_S3.json").read_text()
    code, out, _ = run(capsys, "fredholm", "S", "--q", "0.5,0,0,0")
    d = json.loads(out)
    assert (d["verdict"], d["k"]) == ("sigma_k", -2)
    code, _, err = run(capsys, "fredholm", "S + * I")
    assert code == 2 and "offset 4" in err and "^" in err


def test_fredholm_env(capsys, tmp_path):
    env = tmp_path / "env.json"
    env.write_text('{"patches": {"p1": {"pairs": [{"u": {"support": [0], "values": [[1, 0, 0, 0]]},'
                   ' "v": {"support": [2], "values": [[0, 1, 0, 0]]}}]}}}')
    code, out, _ = run(capsys, "fredholm", "S * (I + F(p1))", "--env", str(env))
    assert code == 0 and json.loads(out)["index"] == -1
    code, _, err = run(capsys, "fredholm", "F(p2)", "--env", str(env))
    assert code == 2 and "unknown patch" in err


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "axial-symmetry", "--seed", "42")
    report = json.loads(out)
    assert code == 0 and report["cases"] == 500 and report["failures"] == []
    code, _, _ = run(capsys, "verify", "nosuchsuite")
    assert code == 2


def test_output_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "point-spectrum", "--seed", "3", "--out", str(a)])
    main(["verify", "point-spectrum", "--seed", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.slow
def test_index_laws_suite(capsys):
    code, out, _ = run(capsys, "verify", "index-laws", "--seed", "7")
    assert code == 0 and json.loads(out)["failures"] == []


@pytest.mark.slow
def test_acceptance_from_one_invocation(capsys):
    code, out, _ = run(capsys, "verify", "acceptance", "--seed", "0")
    report = json.loads(out)
    assert code == 0 and report["failures"] == []
    assert [c["criterion"] for c in report["criteria"]] == list(range(1, 12))
