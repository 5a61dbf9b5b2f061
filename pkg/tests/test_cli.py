import json
import os
import subprocess
import sys

from segrelab.cli import fix_negative_values, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("-2..1") == [-2, -1, 0, 1]
    assert parse_range("3..1") == []
    assert parse_range("1,5,7") == [1, 5, 7]
    assert parse_range("0..1:1/2", integral=False) == [0, 0.5, 1]


def test_negative_range_glued():
    assert fix_negative_values(["--n", "-12..12", "--m", "3"]) == ["--n=-12..12", "--m", "3"]
    assert fix_negative_values(["--c1-sq", "-2"]) == ["--c1-sq=-2"]


def test_segre_examples(capsys):
    assert run(capsys, "segre", "--kind", "k3", "--r", "1", "--chi", "6", "--delta", "0", "--k", "2")[:2] == (0, "4\n")
    assert run(capsys, "segre", "--kind", "curve", "--g", "0", "--r", "1", "--d", "3", "--k", "1")[:2] == (0, "3\n")
    assert run(capsys, "segre", "--kind", "k3", "--k", "0")[:2] == (0, "1\n")
    assert run(capsys, "segre", "--kind", "k3", "--r", "1", "--c1-sq", "8", "--c2", "0", "--k", "2")[:2] == (0, "4\n")


def test_segre_json_and_other_kinds(capsys):
    code, out, _ = run(capsys, "segre", "--kind", "blowup-k3", "--h", "20", "--ell", "2", "--k", "2", "--format", "json")
    assert code == 0 and json.loads(out) == {"kind": "blowup-k3", "k": 2, "value": "476", "sign": "positive"}
    code, out, _ = run(capsys, "segre", "--kind", "general-type", "--m", "2", "--n", "19", "--p", "1", "--k", "10")
    assert out == "-1158\n"
    code, out, _ = run(capsys, "segre", "--kind", "enriques", "--r", "2", "--chi", "12", "--delta", "1/2", "--k", "1")
    assert code == 0
    code, out, _ = run(capsys, "segre", "--kind", "quot", "--g", "1", "--N", "2", "--d-L", "4", "--k", "2", "--format", "csv")
    assert out.startswith("kind,k,value,sign\nquot,2,")


def test_segre_usage_errors(capsys):
    assert run(capsys, "segre", "--kind", "k3", "--r", "1", "--k", "2")[0] == 2
    assert run(capsys, "segre", "--r", "1")[0] == 2
    assert run(capsys, "segre", "--kind", "nope", "--k", "1")[0] == 2
    assert run(capsys, "segre", "--kind", "k3", "--k", "-1")[0] == 2
    # odd c1^2 on a K3 is inconsistent data
    assert run(capsys, "segre", "--kind", "k3", "--r", "1", "--c1-sq", "3", "--c2", "0", "--k", "1")[0] == 2


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--kind", "k3", "--r", "1", "--c1-sq", "4", "--c2", "0", "--k-max", "3")
    assert code == 0 and out.startswith("1, 4, ")
    code, out, _ = run(capsys, "series", "--kind", "k3", "--r", "1", "--c1-sq", "4", "--c2", "0", "--k-max", "0")
    assert out == "1\n"
    code, out, _ = run(capsys, "series", "--kind", "enriques", "--r", "1", "--c1-sq", "2", "--c2", "0",
                       "--k-max", "2", "--format", "json")
    assert json.loads(out)[0] == {"k": 0, "value": "1"}
    code, out, _ = run(capsys, "series", "--kind", "curve", "--g", "1", "--r", "1", "--d", "5", "--k-max", "2",
                       "--format", "csv")
    assert out.splitlines()[0] == "k,value"
    code, out, _ = run(capsys, "series", "--kind", "curve", "--g", "1", "--r", "1", "--d", "5", "--k-max", "4")
    assert out == "1, 5, 5, 0, 0\n"
    assert run(capsys, "series", "--kind", "k3", "--r", "1", "--c1-sq", "4", "--c2", "0", "--k-max", "-1")[0] == 2


def test_scan_enriques_file(tmp_path, capsys):
    out_file = tmp_path / "enriques.json"
    code, out, _ = run(capsys, "scan", "--kind", "enriques", "--r", "1..8", "--k", "1..10", "--output", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["summary"]["r_plus_2_k"]["counterexamples"] >= 1
    assert doc["summary"]["conjecture"]["counterexamples"] == 0
    assert "r_plus_2_k" in out


def test_scan_lemma(capsys):
    code, out, _ = run(capsys, "scan", "--lemma41", "--m", "0..12", "--p", "0..12", "--n", "-12..12", "--format", "plain")
    assert code == 0 and "lemma: 0 counterexamples" in out


def test_scan_bit_identical_across_workers(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["scan", "--kind", "k3", "--r", "1..3", "--k", "1..4", "--format", "csv"]
    assert run(capsys, *args, "--workers", "1", "-o", str(a))[0] == 0
    assert run(capsys, *args, "--workers", "2", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    header = a.read_text().splitlines()[0]
    assert "chi_ge" in header and "delta_ge" in header


def test_scan_errors(tmp_path, capsys):
    assert run(capsys, "scan", "--kind", "k3", "--r", "3..1")[0] == 3
    target = tmp_path / "missing" / "x.json"
    assert run(capsys, "scan", "--kind", "k3", "--r", "1..2", "-o", str(target))[0] == 4
    assert not target.parent.exists()
    assert run(capsys, "scan")[0] == 2
    assert run(capsys, "scan", "--kind", "k3", "--m", "1..2")[0] == 2
    assert run(capsys, "scan", "--kind", "k3", "--r", "a..b")[0] == 2


def test_no_partial_file_on_error(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert run(capsys, "scan", "--kind", "k3", "--r", "5..1", "-o", str(target))[0] == 3
    assert os.listdir(tmp_path) == []


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"kind": "k3", "r": "1..2", "k": [1, 2], "format": "plain"}))
    code, out, _ = run(capsys, "scan", "--config", str(cfg))
    assert code == 0 and out.startswith("k3: 196 rows")
    # the command line wins over the config file
    code, out, _ = run(capsys, "scan", "--config", str(cfg), "--r", "1")
    assert code == 0 and out.startswith("k3: 98 rows")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "blue"}))
    assert run(capsys, "scan", "--config", str(bad))[0] == 2
    assert run(capsys, "scan", "--config", str(tmp_path / "none.json"))[0] == 4


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--only", "sqrt-expansion")
    assert code == 0 and out.startswith("PASS sqrt-expansion")
    code, out, _ = run(capsys, "verify", "--only", "lemma-counterexamples,blowup-internals")
    assert code == 0 and out.count("PASS") == 2
    assert run(capsys, "verify", "--only", "nonsense")[0] == 2


def test_examples(capsys):
    code, out, _ = run(capsys, "examples", "ulrich", "--a", "1", "--h", "5", "--k", "2")
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "examples", "semihomogeneous", "--a", "2", "--b", "4")
    assert code == 0 and "rejected" in out
    code, out, _ = run(capsys, "examples", "lazarsfeld-mukai", "--g", "9", "--d", "10", "--r", "2", "--k", "2",
                       "--format", "json")
    rows = json.loads(out)
    assert rows[0]["hypotheses"]["rho_ge_0"] and rows[0]["checks"]["chain_bound"]
    code, out, _ = run(capsys, "examples", "blowup-line-bundle", "--h", "30", "--ell", "3", "--k", "3", "--format", "csv")
    assert code == 0 and "verdict.flags.h_gt_segre" in out.splitlines()[0]
    code, out, _ = run(capsys, "examples", "enriques-small")
    assert out.count("positive") == 8
    assert run(capsys, "examples", "ulrich", "--a", "1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "segrelab", "segre", "--kind", "k3", "--k", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1\n"
