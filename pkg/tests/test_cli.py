#tests/test_cli.py

import csv
import io
import json

import pytest

from app.ui import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "-m", "2", "-n", "3", "-d", "5", "--format", "json", "--workers", "1")
    assert code == 0
    data = json.loads(out)
    assert data["config"]["label"] == "(2,3,5)"
    assert data["summary"]["pass"] is True
    assert data["summary"]["pairs_checked"] > 0
    assert all({"id", "kind", "table", "pass", "binding"} <= set(check) for check in data["checks"])
    assert "timing" not in data


def test_verify_invalid_config_is_a_usage_error(capsys):
    code, out, err = run(capsys, "verify", "-m", "3", "-n", "2", "-d", "5")
    assert code == 2
    assert out == ""
    assert "usage:" in err


def test_verify_reversed_order_fails(capsys):
    code, out, _ = run(capsys, "verify", "-m", "2", "-n", "2", "-d", "4", "--reversed-order")
    assert code == 1
    assert "FAIL" in out


def test_verify_timing(capsys):
    code, out, _ = run(capsys, "verify", "-m", "2", "-n", "2", "-d", "4", "--format", "json", "--timing")
    assert code == 0
    assert set(json.loads(out)["timing"]) == {"seconds", "rss_mb"}


def test_unknown_flag_exits_two(capsys):
    code, _, err = run(capsys, "verify", "--bogus")
    assert code == 2
    assert "usage:" in err


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "verify" in out


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--max-d", "3", "--format", "csv", "--workers", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["label"] for row in rows] == ["(2,2,2)", "(2,2,3)", "(2,3,3)", "(3,3,3)"]
    assert all(row["pass"] == "True" for row in rows)
    assert all(int(row["pairs_checked"]) > 0 for row in rows)


def test_sweep_in_a_process_pool(capsys):
    code, out, _ = run(capsys, "sweep", "--min-d", "3", "--max-d", "3", "--cyclic", "--format", "json", "--workers", "2")
    assert code == 0
    data = json.loads(out)
    assert [row["label"] for row in data["configs"]] == ["(1,1,3)", "(1,2,3)", "(1,3,3)", "(2,2,3)", "(2,3,3)", "(3,3,3)"]
    assert data["summary"]["pass"] is True


def test_empty_sweep_exits_two(capsys):
    code, _, err = run(capsys, "sweep", "--max-d", "1")
    assert code == 2
    assert "Empty sweep" in err


def test_cohom(capsys):
    code, out, _ = run(capsys, "cohom", "-m", "2", "-n", "2", "-d", "4", "-k", "0", "-c", "-2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["invariants"] == {"2": 1}
    assert data["table"] == {"0": {"2": 1}, "2": {"0": 1}}


@pytest.mark.parametrize("space", ["projective", "line"])
def test_cohom_other_spaces(capsys, space):
    code, out, _ = run(capsys, "cohom", "-m", "2", "-n", "2", "-d", "4", "-k", "1", "--space", space)
    assert code == 0
    assert "degree 0" in out


def test_ext(capsys):
    code, out, _ = run(capsys, "ext", "-m", "2", "-n", "2", "-d", "4", "--later", "LB:0:0", "--earlier", "PF:0", "--format", "json")
    assert code == 0
    assert json.loads(out)["table"] == {"0": {"0": 1}}


def test_ext_object_missing_on_x(capsys):
    code, _, err = run(capsys, "ext", "-m", "1", "-n", "3", "-d", "4", "--later", "PF:0", "--earlier", "PG:0")
    assert code == 2
    assert "X_f is empty" in err


def test_ext_bad_object(capsys):
    code, _, _ = run(capsys, "ext", "-m", "2", "-n", "2", "-d", "4", "--later", "QQ:1", "--earlier", "PF:0")
    assert code == 2


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "-m", "3", "-n", "3", "-d", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["inferred_twist"] == 0
    assert any(check["id"] == "spq_equality" for check in data["checks"])


def test_p1(capsys):
    code, out, _ = run(capsys, "p1", "--max-d", "5", "--workers", "1")
    assert code == 0
    assert out.count("PASS") == 4


def test_output_file_and_config(tmp_path, capsys):
    config = tmp_path / "run.conf"
    config.write_text("format = json\nmax_d = 3\nworkers = 1\n")
    target = tmp_path / "reports" / "sweep.json"
    code, out, _ = run(capsys, "sweep", "--max-d", "6", "--config", str(config), "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["summary"]["configs"] == 4


def test_config_file_unknown_key(tmp_path, capsys):
    config = tmp_path / "run.conf"
    config.write_text("colour = blue\n")
    code, _, err = run(capsys, "sweep", "--max-d", "3", "--config", str(config))
    assert code == 2
    assert "Unknown config key" in err


def test_run_in_pool_keeps_order():
    assert cli.run_in_pool(abs, [-3, 2, -1], 1) == [3, 2, 1]
