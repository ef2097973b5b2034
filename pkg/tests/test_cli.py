import json

import pytest

from srbetti import cli
from srbetti.complexes import cycle, dumps, loads


@pytest.fixture
def c6_file(tmp_path):
    p = tmp_path / "c6.json"
    p.write_text(dumps(cycle(6)))
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys, c6_file):
    code, out, _ = run(capsys, "info", c6_file)
    assert code == 0
    blob = json.loads(out)
    assert blob["f_vector"] == [1, 6, 6] and blob["flag"]


def test_betti_csv(capsys, c6_file):
    code, out, _ = run(capsys, "betti", c6_file, "--field", "q")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "i\\j,0,1,2"
    assert lines[2] == "1,0,9,0"
    assert lines[5] == "4,0,0,1"


def test_betti_gate_exit_code(capsys, c6_file):
    code, _, err = run(capsys, "betti", c6_file, "--gate", "3")
    assert code == 2
    assert "gate" in err


def test_betti_json_and_field(capsys, c6_file):
    code, out, _ = run(capsys, "betti", c6_file, "--field", "gf2",
                       "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert {"i": 1, "j": 1, "value": 9} in blob["entries"]


def test_betti_worker_output_identical(capsys, c6_file):
    _, out1, _ = run(capsys, "betti", c6_file, "--workers", "1")
    _, out2, _ = run(capsys, "betti", c6_file, "--workers", "3")
    assert out1 == out2


def test_subdivide_round_trip(capsys, c6_file, tmp_path):
    out_path = tmp_path / "sub.json"
    code, _, _ = run(capsys, "subdivide", c6_file, "--mode", "edgewise",
                     "--r", "2", "-o", str(out_path))
    assert code == 0
    sub = loads(out_path.read_text())
    assert sub.f_vector() == (1, 12, 12)
    assert sub.labels is not None and all(sum(lab) == 2 for lab in sub.labels)
    assert dumps(loads(dumps(sub))) == dumps(sub)


def test_generate_limit_example(capsys):
    code, out, _ = run(capsys, "generate", "limit-example", "--d", "2",
                       "--p", "1", "--q", "3", "--scale", "3")
    assert code == 0
    c = loads(out)
    assert c.f_vector() == (1, 9, 9)


def test_generate_standard(capsys):
    code, out, _ = run(capsys, "generate", "standard", "stacked_sphere(2, 6)")
    assert code == 0
    assert loads(out).f_vector() == (1, 5, 9, 6)


def test_limits_lambda(capsys):
    code, out, _ = run(capsys, "limits", "lambda", "--d", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["matrix"] == [[1, 0, 0], [0, 1, 0], [0, 1, 2]]
    assert blob["vertex_constant"] == "1"


def test_limits_ratio(capsys, tmp_path):
    from srbetti.complexes import stacked_attach

    p = tmp_path / "pend.json"
    p.write_text(dumps(stacked_attach(cycle(3), 2, (0,))))
    code, out, _ = run(capsys, "limits", "ratio", str(p), "--field", "gf2")
    assert code == 0
    assert json.loads(out)["ratio"] == "2/5"


def test_strands(capsys, c6_file):
    code, out, _ = run(capsys, "strands", c6_file)
    assert code == 0
    blob = json.loads(out)
    assert blob["invariants"]["reg"] == 2
    assert blob["strands"]["1"] == {"l": 1, "u": 3, "zeros": []}


def test_verify_mj(capsys):
    code, out, _ = run(capsys, "verify", "mj", "--dmax", "8")
    assert code == 0
    blob = json.loads(out)
    assert blob["failed"] == 0


def test_verify_link(capsys):
    code, out, _ = run(capsys, "verify", "link", "--d", "3", "--r", "3")
    assert code == 0
    assert json.loads(out)["failed"] == 0


def test_verify_detects_violation(capsys, monkeypatch):
    from srbetti import formulas

    monkeypatch.setattr(formulas, "strand_start_bruteforce", lambda d, j: -1)
    code, out, _ = run(capsys, "verify", "mj", "--dmax", "4")
    assert code == 1
    assert json.loads(out)["failed"] > 0


def test_malformed_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "betti", str(bad))
    assert code == 2 and err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "mj: ok" in out


def test_selftest_fault_injection(capsys, monkeypatch):
    from srbetti import formulas

    monkeypatch.setattr(formulas, "strand_start_closed",
                        lambda d, j, _orig=formulas.strand_start_closed:
                        _orig(d, j) + (1 if (d, j) == (5, 3) else 0))
    code, _, _ = run(capsys, "selftest")
    assert code == 1


def test_selftest_corrupt_fixture_dir(capsys, tmp_path):
    fixtures = tmp_path / "fx"
    fixtures.mkdir()
    (fixtures / "ok.json").write_text(dumps(cycle(3)))
    (fixtures / "broken.json").write_text("{]")
    code, _, err = run(capsys, "selftest", "--fixtures", str(fixtures))
    assert code == 2 and "broken" in err


def test_selftest_missing_fixture_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "selftest", "--fixtures", str(tmp_path / "nope"))
    assert code == 2
