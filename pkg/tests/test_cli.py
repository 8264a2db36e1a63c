"""Command-line surface: flags, outputs, exit codes."""

import csv
import io
import json
import math

import pytest

from semirandom.cli import main, parse_property, parse_range


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_property_tokens():
    assert parse_property("mindeg3") == ("min_degree", 3)
    assert parse_property("pm") == ("perfect_matching", None)
    assert parse_property("ham") == ("hamilton_cycle", None)
    with pytest.raises(Exception):
        parse_property("mindeg0")
    with pytest.raises(Exception):
        parse_property("clique")


def test_parse_range():
    assert list(parse_range("2..4")) == [2, 3, 4]
    with pytest.raises(Exception):
        parse_range("4..2")
    with pytest.raises(Exception):
        parse_range("1-3")


def test_ode_table_stdout_csv(capsys):
    code, out, _ = run_cli(
        capsys, "ode-table", "--property", "mindeg", "--k-range", "1..2",
        "--l-range", "1..1",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2
    assert abs(float(rows[0]["constant"]) - math.log(2.0)) < 1e-8


def test_ode_table_json_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, _, _ = run_cli(
        capsys, "ode-table", "--property", "pm", "--k-range", "3..3",
        "--format", "json", "-o", str(path),
    )
    assert code == 0
    records = json.loads(path.read_text())
    kinds = {r["kind"] for r in records}
    assert kinds == {"lower", "upper"}
    upper = next(r for r in records if r["kind"] == "upper")
    assert abs(upper["constant"] - 0.80505) < 5e-4


def test_oracle_prints_expectation(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--property", "mindeg1", "--n", "4", "--k", "1")
    assert code == 0
    assert out.strip() == "2.5"


def test_oracle_rejects_cycle_target(capsys):
    code, _, err = run_cli(capsys, "oracle", "--property", "ham", "--n", "4", "--k", "1")
    assert code == 1
    assert "oracle" in err


def test_simulate_validation_failure(capsys):
    code, _, err = run_cli(
        capsys, "simulate", "--property", "mindeg1", "--n", "0", "--k", "1"
    )
    assert code == 1
    assert "vertex count" in err


def test_unknown_flag_exits_one(capsys):
    code, _, err = run_cli(
        capsys, "simulate", "--property", "mindeg1", "--n", "4", "--k", "1",
        "--frobnicate",
    )
    assert code == 1
    assert "usage" in err.lower()


def test_simulate_outputs_summary(capsys):
    code, out, _ = run_cli(
        capsys, "simulate", "--property", "mindeg1", "--n", "200", "--k", "2",
        "--trials", "3", "--threads", "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["spec"]["k"] == 2
    assert payload["main_rounds_per_n"]["trials"] == 3


def test_simulate_needs_degree_target(capsys):
    code, _, err = run_cli(
        capsys, "simulate", "--property", "mindeg", "--n", "10", "--k", "1"
    )
    assert code == 1
    assert "target" in err


def test_compare_reports_gap(capsys):
    code, out, _ = run_cli(
        capsys, "compare", "--property", "mindeg1", "--n", "2000", "--k", "1",
        "--trials", "1", "--threads", "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["sup_distance"] < 0.05
    assert abs(payload["solved_constant"] - math.log(2.0)) < 1e-8


def test_dominance_runs(capsys):
    code, out, _ = run_cli(
        capsys, "dominance", "--property", "mindeg1", "--baseline", "uniform_circle",
        "--n", "300", "--k", "1", "--trials", "20", "--threads", "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["mean_strategy"] < payload["mean_baseline"]


def test_help_lists_documented_flags(capsys):
    with pytest.raises(SystemExit):
        main(["ode-table", "--help"])
    out = capsys.readouterr().out
    for flag in ("--property", "--k-range", "--l-range", "--eps", "--format",
                 "--seed", "--threads", "--verbose"):
        assert flag in out
