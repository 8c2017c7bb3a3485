"""Command-line interface: contracts, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from mirabolic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "relations", "--d", "3")
    assert code == 0
    assert json.loads(out) == {"passed": 10, "failed": 0}


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--word", "l e l")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"terms": [{"monomial": "l e", "coeff": "1"}]}


def test_normalize_with_scalar(capsys):
    code, out, _ = run(capsys, "normalize", "--word", "(v^-1) e^2 l f k^-2")
    assert code == 0
    obj = json.loads(out)
    assert all(t["coeff"] for t in obj["terms"])


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--n", "3", "--d", "5", "--tensor")
    assert code == 0
    assert out.strip() == "2358"
    code, out, _ = run(capsys, "count", "--n", "2", "--d", "2")
    assert code == 0
    assert out.strip() == "27"


def test_mul(tmp_path, capsys):
    x = {"d": 2, "terms": [{"label": {"A": [[1, 0], [0, 1]], "delta": []},
                            "coeff": "1"}]}
    f = tmp_path / "x.json"
    f.write_text(json.dumps(x))
    code, out, _ = run(capsys, "mul", "--lhs", str(f), "--rhs", str(f))
    assert code == 0
    assert json.loads(out) == x
    # inline JSON is accepted too
    code, out2, _ = run(capsys, "mul", "--lhs", json.dumps(x),
                        "--rhs", json.dumps(x))
    assert code == 0 and out2 == out


def test_mul_missing_file(capsys):
    code, _, err = run(capsys, "mul", "--lhs", "/nonexistent.json",
                       "--rhs", "/nonexistent.json")
    assert code == 2
    assert "error:" in err


def test_rep(capsys):
    code, out, _ = run(capsys, "rep", "--module", "L+(2,01)", "--casimir")
    assert code == 0
    obj = json.loads(out)
    assert obj["module"] == "L+(2,01)"
    assert obj["dim"] == 4
    assert {tuple(sorted(r.items())) for r in obj["weights"]} == {
        tuple(sorted({"sign": "+", "a": 2, "eps": 0, "mult": 1}.items())),
        tuple(sorted({"sign": "+", "a": 0, "eps": 0, "mult": 1}.items())),
        tuple(sorted({"sign": "+", "a": 0, "eps": 1, "mult": 1}.items())),
        tuple(sorted({"sign": "+", "a": -2, "eps": 1, "mult": 1}.items())),
    }
    assert obj["casimir"] == "(v^3+v^-1)/(v^2-1)"


def test_rep_bad_name(capsys):
    code, _, err = run(capsys, "rep", "--module", "X(1,0)")
    assert code == 2 and "error:" in err


def test_weights_json_and_csv(capsys):
    code, out, _ = run(capsys, "weights", "--d", "3")
    assert code == 0
    obj = json.loads(out)
    assert obj["d"] == 3
    row = next(r for r in obj["rows"] if r["a"] == 1 and r["eps"] == 1)
    assert row["mult"] == 6 and row["closed_form"] == 6
    code, out, _ = run(capsys, "weights", "--d", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a,eps,mult,closed_form"
    assert len(lines) == 7


def test_sw_check(capsys):
    code, out, _ = run(capsys, "sw-check", "--d", "2")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"weights", "decomposition", "conjecture_match"}
    assert obj["conjecture_match"] is True
    mods = {r["module"]: r["mult"] for r in obj["decomposition"]}
    assert mods == {"L+(2,1)": 1, "L+(0,1)": 1, "L+(2,01)": 2, "L+(0,0)": 1}


def test_oracle_subcommand(tmp_path, capsys):
    lhs = tmp_path / "lhs.json"
    rhs = tmp_path / "rhs.json"
    lhs.write_text(json.dumps({"A": [[1, 0], [0, 1]], "delta": [[1, 1]]}))
    rhs.write_text(json.dumps({"A": [[1, 0], [0, 1]], "delta": [[1, 1]]}))
    counts = tmp_path / "counts.csv"
    code, out, _ = run(capsys, "oracle", "--d", "2",
                       "--primes", "2,3,5,7,11",
                       "--lhs", str(lhs), "--rhs", str(rhs),
                       "--counts", str(counts))
    assert code == 0
    obj = json.loads(out)
    coeffs = {json.dumps(t["label"], sort_keys=True): t["coeff"]
              for t in obj["terms"]}
    assert set(coeffs.values()) == {"v^2-2", "v^2-1"}
    lines = counts.read_text().strip().splitlines()
    assert lines[0] == "label,p,count"
    assert all(line.count(",") >= 2 for line in lines[1:])


def test_oracle_needs_enough_primes(capsys):
    code, _, err = run(capsys, "oracle", "--d", "2", "--primes", "2,3",
                       "--lhs", '{"A": [[1,0],[0,1]], "delta": []}',
                       "--rhs", '{"A": [[1,0],[0,1]], "delta": []}')
    assert code == 2 and "error:" in err


def test_deterministic_output(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run(capsys, "sw-check", "--d", "1")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mirabolic", "count",
                           "--n", "2", "--d", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "8"
