"""Command-line interface: outputs, formats, exit codes, determinism."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

import rfpcompare.selfcheck as selfcheck
from rfpcompare import (
    LayoutKind,
    builtin_scenario,
    layout_alpha,
    run_validation,
    serialize_scenario,
)
from rfpcompare.cli import main

runner = CliRunner()


def invoke(*args):
    return runner.invoke(main, list(args))


def table_cells(output: str) -> list[dict[str, str]]:
    """Parse the aligned-table output into row dicts."""
    lines = [line for line in output.strip().split("\n") if line]
    headers = lines[0].split()
    return [dict(zip(headers, line.split())) for line in lines[2:]]


# -- compare -------------------------------------------------------------------


def test_compare_s1_hexagonal_neighbors_off():
    result = invoke("compare", "--scenario", "S1", "--layout", "hexagonal",
                    "--neighbors", "off")
    assert result.exit_code == 0
    rows = table_cells(result.output)
    assert len(rows) == 1
    assert rows[0]["layout"] == "hexagonal" and rows[0]["mode"] == "none"
    assert float(rows[0]["delta_pr_fx"]) == 8.0
    assert float(rows[0]["closed_pr_fx"]) == 8.0


def test_compare_s4_highway_neighbors_on():
    result = invoke("compare", "--scenario", "S4", "--layout", "highway",
                    "--neighbors", "on")
    assert result.exit_code == 0
    rows = table_cells(result.output)
    assert float(rows[0]["delta_pr_avg"]) == 0.5


def test_compare_s2_all_layouts_highway_avg_is_largest():
    result = invoke("compare", "--scenario", "S2", "--all-layouts", "--neighbors", "on")
    assert result.exit_code == 0
    rows = table_cells(result.output)
    assert len(rows) == 3
    by_layout = {r["layout"]: float(r["delta_pr_avg"]) for r in rows}
    assert by_layout["highway"] > by_layout["square"] > by_layout["hexagonal"]


def test_compare_defaults_cover_all_layouts_and_modes():
    result = invoke("compare", "--scenario", "S1")
    assert result.exit_code == 0
    assert len(table_cells(result.output)) == 6


def test_compare_json_schema():
    result = invoke("compare", "--scenario", "S5", "--layout", "hexagonal",
                    "--neighbors", "off", "--format", "json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert len(payload) == 1
    obj = payload[0]
    assert set(obj) == {
        "scenario", "layout", "mode", "delta_pe", "delta_pr_avg", "delta_pr_fx",
        "closed_form", "relative_difference",
    }
    assert obj["scenario"] == "S5"
    assert obj["mode"] == "none"
    assert obj["delta_pr_fx"] == pytest.approx(933.032992, rel=1e-8)
    assert obj["closed_form"]["delta_pr_fx"] == pytest.approx(933.032992, rel=1e-8)
    assert obj["relative_difference"] <= 1e-12


def test_compare_formats_agree_to_table_precision():
    """Table, CSV, and JSON carry the same numbers at printed precision."""
    args = ("compare", "--scenario", "S2", "--layout", "hexagonal", "--neighbors", "on")
    as_table = table_cells(invoke(*args).output)[0]
    csv_lines = invoke(*args, "--format", "csv").output.strip().split("\n")
    as_csv = dict(zip(csv_lines[0].split(","), csv_lines[1].split(",")))
    as_json = json.loads(invoke(*args, "--format", "json").output)[0]
    for key in ("delta_pe", "delta_pr_avg", "delta_pr_fx"):
        reference = as_json[key]
        assert float(as_csv[key]) == pytest.approx(reference, rel=1e-8), key
        assert float(as_table[key]) == pytest.approx(reference, rel=5e-4), key


def test_compare_db_flag_adds_decibel_columns():
    result = invoke("compare", "--scenario", "S1", "--layout", "hexagonal",
                    "--neighbors", "off", "--db")
    rows = table_cells(result.output)
    assert float(rows[0]["delta_pr_fx_db"]) == pytest.approx(9.031, abs=1e-3)


def test_compare_scenario_file_matches_builtin(tmp_path):
    doc = tmp_path / "s1.json"
    doc.write_text(serialize_scenario(builtin_scenario("S1")), encoding="utf-8")
    from_file = invoke("compare", "--scenario", str(doc), "--format", "csv")
    from_builtin = invoke("compare", "--scenario", "S1", "--format", "csv")
    assert from_file.exit_code == 0
    assert from_file.output == from_builtin.output


def test_compare_writes_output_file(tmp_path):
    out = tmp_path / "report.csv"
    result = invoke("compare", "--scenario", "S3", "--format", "csv", "--out", str(out))
    assert result.exit_code == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith("scenario,layout,mode,delta_pe")
    assert "S3" in text


def test_compare_rejects_unknown_scenario():
    result = invoke("compare", "--scenario", "S9")
    assert result.exit_code == 2


def test_compare_rejects_conflicting_layout_flags():
    result = invoke("compare", "--scenario", "S1", "--layout", "hexagonal",
                    "--all-layouts")
    assert result.exit_code == 2


def test_compare_rejects_invalid_scenario_file(tmp_path):
    doc = tmp_path / "bad.json"
    doc.write_text('{"id": "X"}', encoding="utf-8")
    result = invoke("compare", "--scenario", str(doc))
    assert result.exit_code == 2


def test_compare_rejects_beta_breaking_pair_invariant():
    result = invoke("compare", "--scenario", "S5", "--layout", "hexagonal",
                    "--neighbors", "off", "--beta", "0.2")
    assert result.exit_code == 2


def test_compare_rejects_empty_selection(tmp_path):
    doc = tmp_path / "empty.json"
    doc.write_text(
        serialize_scenario(builtin_scenario("S1")).replace(
            '"layouts": [\n    "highway",\n    "square",\n    "hexagonal"\n  ]',
            '"layouts": []',
        ),
        encoding="utf-8",
    )
    result = invoke("compare", "--scenario", str(doc))
    assert result.exit_code == 2


def test_compare_json_and_csv_outputs_are_reproducible():
    """Identical requests give byte-identical CSV and JSON renderings."""
    for fmt in ("csv", "json"):
        args = ("compare", "--scenario", "S2", "--all-layouts", "--format", fmt)
        assert invoke(*args).output == invoke(*args).output


# -- sweep ---------------------------------------------------------------------


def test_sweep_s5_series_endpoints():
    result = invoke("sweep", "--scenario", "S5", "--layout", "hexagonal",
                    "--neighbors", "off", "--beta-start", "0.05",
                    "--beta-end", "0.1", "--beta-step", "0.01", "--format", "csv")
    assert result.exit_code == 0
    lines = result.output.strip().split("\n")
    assert lines[0] == "beta1,delta_pr_fx"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert len(values) == 6
    assert values[0] == pytest.approx(933.033, abs=1e-3)
    assert values[-1] == pytest.approx(500.0, rel=1e-9)


def test_sweep_s1_is_constant():
    result = invoke("sweep", "--scenario", "S1", "--layout", "hexagonal",
                    "--beta-start", "0.05", "--beta-end", "0.1", "--beta-step", "0.01",
                    "--format", "csv")
    values = {line.split(",")[1] for line in result.output.strip().split("\n")[1:]}
    assert values == {"8"}


def test_sweep_json_rows():
    result = invoke("sweep", "--scenario", "S5", "--layout", "hexagonal",
                    "--beta-start", "0.05", "--beta-end", "0.1", "--beta-step", "0.05",
                    "--format", "json")
    payload = json.loads(result.output)
    assert [row["beta1"] for row in payload] == [0.05, 0.1]
    assert payload[0]["delta_pr_fx"] == pytest.approx(933.032992, rel=1e-8)


def test_sweep_rejects_zero_step():
    result = invoke("sweep", "--scenario", "S1", "--layout", "hexagonal",
                    "--beta-start", "0.05", "--beta-end", "0.1", "--beta-step", "0")
    assert result.exit_code == 2


def test_sweep_rejects_beta2_overflow():
    result = invoke("sweep", "--scenario", "S5", "--layout", "hexagonal",
                    "--beta-start", "0.05", "--beta-end", "0.11", "--beta-step", "0.01")
    assert result.exit_code == 2
    assert "beta2" in result.stderr


# -- simulate ------------------------------------------------------------------


def test_simulate_hexagonal_summary_and_csv(tmp_path):
    out = tmp_path / "field.csv"
    result = invoke("simulate", "--layout", "hexagonal", "--rings", "2",
                    "--resolution", "5", "--out", str(out))
    assert result.exit_code == 0
    assert "upper-bound violations: 0" in result.output
    assert "empirical alpha: 0.60" in result.output
    text = out.read_text(encoding="utf-8")
    assert text.startswith("x_m,y_m,serving_site,distance_m,rfp_serving,rfp_total,excluded")
    assert len(text.strip().split("\n")) > 1000


def test_simulate_circle_exits_2(tmp_path):
    result = invoke("simulate", "--layout", "circle", "--out", str(tmp_path / "f.csv"))
    assert result.exit_code == 2


def test_simulate_write_failure_exits_1(tmp_path):
    result = invoke("simulate", "--layout", "highway", "--resolution", "10",
                    "--out", str(tmp_path / "missing_dir" / "f.csv"))
    assert result.exit_code == 1


def test_simulate_second_deployment_uses_its_d_max(tmp_path):
    out = tmp_path / "field.csv"
    result = invoke("simulate", "--scenario", "S1", "--deployment", "2",
                    "--layout", "hexagonal", "--resolution", "2.5", "--out", str(out))
    assert result.exit_code == 0
    assert "d_max: 250 m" in result.output


# -- validate ------------------------------------------------------------------


def test_validate_passes_and_lists_families():
    result = invoke("validate", "--samples", "200000")
    assert result.exit_code == 0
    for family in ("closed-form", "geometry", "propagation", "simulation"):
        assert family in result.output
    assert "FAIL" not in result.output
    assert "monte-carlo-alpha-hexagonal" in result.output


def test_validate_names_monte_carlo_check_when_alpha_is_corrupted(monkeypatch):
    """Negative control: a corrupted alpha constant fails the MC check."""
    real = layout_alpha

    def corrupted(kind):
        return 0.7 if kind is LayoutKind.HEXAGONAL else real(kind)

    monkeypatch.setattr(selfcheck, "layout_alpha", corrupted)
    result = invoke("validate", "--samples", "100000")
    assert result.exit_code == 1
    assert "[FAIL] geometry     monte-carlo-alpha-hexagonal" in result.output
    assert "monte-carlo-alpha-hexagonal" in result.stderr


def test_run_validation_alpha_reference_negative_control():
    """The injectable reference corrupts exactly the Monte Carlo comparison."""
    corrupted = {kind: layout_alpha(kind) for kind in LayoutKind}
    corrupted[LayoutKind.SQUARE] = 0.6
    results = run_validation(mc_samples=100_000, alpha_reference=corrupted)
    failed = [r.name for r in results if not r.passed]
    assert failed == ["monte-carlo-alpha-square"]


# -- determinism ---------------------------------------------------------------


def run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "rfpcompare", *args],
        cwd=cwd, capture_output=True, timeout=300,
    )


def test_validate_runs_are_byte_identical(tmp_path):
    args = ["validate", "--samples", "200000", "--seed", "7"]
    first = run_cli(args, tmp_path)
    second = run_cli(args, tmp_path)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_seeded_simulate_runs_are_byte_identical(tmp_path):
    args = ["simulate", "--layout", "hexagonal", "--rings", "2",
            "--resolution", "25", "--seed", "11", "--out", "field.csv"]
    first = run_cli(args, tmp_path)
    csv_first = (tmp_path / "field.csv").read_bytes()
    second = run_cli(args, tmp_path)
    csv_second = (tmp_path / "field.csv").read_bytes()
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert csv_first == csv_second
