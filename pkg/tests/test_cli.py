import json
import os
import subprocess
import sys

import pytest

from diagrees import cli
from diagrees.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE, main, write_atomic

GOLDEN_GENS_22 = """\
X([1,2]): -x[1,2]*x[2,1] + x[1,1]*x[2,2]
Y([1,2]): -y[1,2]*y[2,1] + y[1,1]*y[2,2]
g([1,1];[1,2]): z[1,1]*x[1,2] - z[1,1]*y[1,2] - z[1,2]*x[1,1] + z[1,2]*y[1,1]
g([1,1];[2,1]): z[1,1]*x[2,1] - z[1,1]*y[2,1] - z[2,1]*x[1,1] + z[2,1]*y[1,1]
g([1,1];[2,2]): z[1,1]*x[2,2] - z[1,1]*y[2,2] - z[2,2]*x[1,1] + z[2,2]*y[1,1]
g([1,2];[2,1]): z[1,2]*x[2,1] - z[1,2]*y[2,1] - z[2,1]*x[1,2] + z[2,1]*y[1,2]
g([1,2];[2,2]): z[1,2]*x[2,2] - z[1,2]*y[2,2] - z[2,2]*x[1,2] + z[2,2]*y[1,2]
g([2,1];[2,2]): z[2,1]*x[2,2] - z[2,1]*y[2,2] - z[2,2]*x[2,1] + z[2,2]*y[2,1]
f([1,2]): z[1,1]*x[2,2] - z[1,2]*x[2,1] - z[2,1]*y[1,2] + z[2,2]*y[1,1]
"""


@pytest.fixture(autouse=True)
def _no_env_budget(monkeypatch):
    monkeypatch.delenv(cli.BUDGET_ENV, raising=False)


def test_gens_golden(capsys):
    assert main(["gens", "--params", "2,2,2,2,2,2"]) == EXIT_PASS
    assert capsys.readouterr().out == GOLDEN_GENS_22


def test_gens_out_and_matrices(tmp_path, capsys):
    out = tmp_path / "gens.txt"
    assert main(["gens", "--params", "2,2,2,2,2,2", "--out", str(out)]) == EXIT_PASS
    assert out.read_text() == GOLDEN_GENS_22
    assert capsys.readouterr().out == ""
    main(["gens", "--params", "3,4,3,4,2,4", "--dump-matrices"])
    text = capsys.readouterr().out
    assert "  +det[ Z(1)|X(2..3) ; cols 1,2,3 ]" in text
    assert "  -det[ Z(2)|Y(1)|X(3) ; cols 1,2,3 ]" in text


def test_gens_G_set(capsys):
    main(["gens", "--params", "2,2,2,2,2,2", "--set", "G"])
    tags = [line.split(":")[0] for line in capsys.readouterr().out.splitlines()]
    assert len(tags) == 14 and any(t.startswith("U(") for t in tags)


@pytest.mark.parametrize("argv", [
    ["gens", "--params", "2,2,3,2,2,2"],
    ["gens", "--params", "2,2"],
    ["gens", "--params", "a,b,c,d,e,f"],
    ["groebner", "--params", "2,2,2,2,2,2", "--order", "grevlex"],
    ["verify", "gb"],
    ["verify", "example-notfiber", "--params", "2,2,2,2,2,2"],
    ["verify", "nonsense", "--params", "2,2,2,2,2,2"],
    ["verify", "gb", "--params", "2,2,2,2,2,2", "--budget-secs", "0"],
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_bad_env_budget(monkeypatch):
    monkeypatch.setenv(cli.BUDGET_ENV, "soon")
    assert main(["verify", "fiber", "--params", "2,2,2,2,2,2"]) == EXIT_USAGE


def test_env_budget_makes_run_inconclusive(monkeypatch, capsys):
    monkeypatch.setenv(cli.BUDGET_ENV, "0.001")
    assert main(["verify", "linear-type", "--params", "3,4,3,4,2,4"]) == EXIT_INCONCLUSIVE
    assert "inconclusive" in capsys.readouterr().out


def test_flag_overrides_env(monkeypatch):
    monkeypatch.setenv(cli.BUDGET_ENV, "0.001")
    assert main(["verify", "fiber", "--params", "2,2,2,2,2,2", "--budget-secs", "600"]) == EXIT_PASS


def test_groebner_inconclusive(capsys):
    assert main(["groebner", "--params", "3,4,3,4,2,4", "--budget-secs", "0.0001"]) == EXIT_INCONCLUSIVE


@pytest.mark.parametrize("order", ["paperlex", "elim:t", "elim:xy"])
def test_groebner_orders_and_strategies(order, capsys):
    base = ["groebner", "--params", "2,2,2,2,2,2", "--order", order]
    assert main(base) == EXIT_PASS
    normal = capsys.readouterr().out
    assert main(base + ["--strategy", "fifo"]) == EXIT_PASS
    assert capsys.readouterr().out == normal


def test_groebner_stats(tmp_path, capsys):
    out = tmp_path / "gb.txt"
    assert main(["groebner", "--params", "2,2,2,2,2,2", "--out", str(out), "--stats"]) == EXIT_PASS
    stats = json.loads(capsys.readouterr().out)
    assert stats["basis_size"] == len(out.read_text().splitlines()) == 11
    assert stats["order"] == "paperlex" and stats["pairs"] > 0


def test_verify_pass_and_json(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "linear-type", "--params", "2,2,2,2,2,2", "--json", str(path)]) == EXIT_PASS
    doc = json.loads(path.read_text())
    assert doc["schema"] == 1 and doc["params"] == [2, 2, 2, 2, 2, 2]
    assert [c["name"] for c in doc["checks"]] == ["compute-K", "L-in-K", "K-in-L"]
    assert all(set(c) <= {"name", "verdict", "witness", "elapsed_ms"} for c in doc["checks"])
    assert set(doc["engine"]) == {"pairs", "reductions", "max_degree"}
    assert capsys.readouterr().out.endswith("verdict: pass\n")


def test_verify_fail_prints_witness(capsys):
    # t1 > t2 breaks the candidate basis; the report names a failing S-pair
    assert main(["verify", "gb", "--params", "3,3,2,3,2,2"]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert "s-pairs: fail" in out and "  witness: S(" in out


def test_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        main(["verify", "nzd", "--params", "2,3,2,2,2,3", "--json", str(p), "--no-timings"])
    assert a.read_bytes() == b.read_bytes()


def test_write_atomic_replaces_and_cleans(tmp_path):
    target = tmp_path / "out.txt"
    target.write_text("old")
    write_atomic(target, "new\n")
    assert target.read_text() == "new\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]

    with pytest.raises(TypeError):
        write_atomic(target, 42)
    assert target.read_text() == "new\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


def test_module_entry_point():
    env = dict(os.environ)
    env.pop(cli.BUDGET_ENV, None)
    res = subprocess.run([sys.executable, "-m", "diagrees", "verify", "example-notfiber"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == EXIT_PASS
    assert "h-not-in-J: pass" in res.stdout and "  witness: " in res.stdout
    res = subprocess.run([sys.executable, "-m", "diagrees", "gens", "--params", "0,0,0,0,0,0"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == EXIT_USAGE
