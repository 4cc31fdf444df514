import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from ricbounds import asymptotic
from ricbounds.cli import main


def run_cli(capsys, *argv):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    code = 0
    try:
        main(list(argv))
    except SystemExit as exc:
        code = exc.code or 0
    out, err = capsys.readouterr()
    return code, out, err


def load_schema():
    text = resources.files("ricbounds").joinpath("schemas/output.schema.json").read_text()
    return json.loads(text)


class TestBounds:
    def test_ct_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "bounds", "0.5", "0.5", "--family", "CT")
        assert code == 0
        payload = json.loads(out)
        ref = asymptotic.ct_bounds(0.5, 0.5)
        assert payload["results"]["U"] == pytest.approx(ref.U, rel=1e-15)
        assert payload["results"]["L"] == pytest.approx(ref.L, rel=1e-15)

    def test_bt_strictly_below_bct(self, capsys):
        _, out_bt, _ = run_cli(capsys, "--json", "bounds", "0.5", "0.5", "--family", "BT")
        _, out_bct, _ = run_cli(capsys, "--json", "bounds", "0.5", "0.5", "--family", "BCT")
        bt = json.loads(out_bt)["results"]
        bct = json.loads(out_bct)["results"]
        assert bt["U"] < bct["U"]
        assert bt["log_lambda_min"] > bct["log_lambda_min"]  # L_BT < L_BCT

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "1.5", "0.5")
        assert code == 2
        assert "delta" in err

    def test_json_envelope_validates(self, capsys):
        _, out, _ = run_cli(capsys, "--json", "bounds", "0.3", "0.2")
        jsonschema.validate(json.loads(out), load_schema())


class TestGrid:
    def test_row_count_and_columns(self, capsys):
        code, out, _ = run_cli(
            capsys, "grid", "--delta-steps", "3", "--rho-steps", "3", "--families", "BT"
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == [
            "delta", "rho", "family", "L", "U", "lambda_min", "lambda_max",
            "gamma_min", "gamma_max", "nu_opt",
        ]
        assert len(rows) == 10  # header + 9 data rows

    def test_csv_round_trip(self, capsys):
        _, out, _ = run_cli(
            capsys, "grid", "--delta-steps", "2", "--rho-steps", "2", "--families", "BT"
        )
        reader = csv.DictReader(io.StringIO(out))
        for row in reader:
            ref = asymptotic.bt_bounds(float(row["delta"]), float(row["rho"]))
            assert float(row["U"]) == ref.U  # exact round trip
            assert float(row["L"]) == ref.L
            assert float(row["gamma_min"]) == ref.gamma_min
            assert row["nu_opt"] == ""  # not applicable for BT

    def test_gamma_exceeds_rho_on_interior_grid(self, capsys):
        _, out, _ = run_cli(
            capsys, "grid", "--delta-steps", "3", "--rho-steps", "3",
            "--rho-max", "0.6", "--families", "BT",
        )
        for row in csv.DictReader(io.StringIO(out)):
            assert float(row["gamma_min"]) > float(row["rho"])

    def test_svg_output(self, capsys, tmp_path):
        out_file = tmp_path / "grid.svg"
        code, _, _ = run_cli(
            capsys, "--format", "svg", "--out", str(out_file),
            "grid", "--delta-steps", "3", "--rho-steps", "3",
        )
        assert code == 0
        text = out_file.read_text()
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")

    def test_unknown_family_rejected(self, capsys):
        code, _, err = run_cli(capsys, "grid", "--families", "XY")
        assert code == 2


class TestFinite:
    def test_upper_value_matches_library(self, capsys):
        from ricbounds.finite import FiniteInstance, tail_prob_upper

        code, out, _ = run_cli(
            capsys, "--json", "finite", "100", "200", "2000",
            "--epsilon", "1e-3", "--side", "upper",
        )
        assert code == 0
        payload = json.loads(out)
        ref = tail_prob_upper(FiniteInstance(100, 200, 2000, 1e-3))
        assert payload["results"]["total"] == pytest.approx(ref.total, rel=1e-12)
        assert payload["results"]["log_total"] == pytest.approx(ref.log_total, rel=1e-12)

    def test_invalid_instance_exit_code(self, capsys):
        code, _, _ = run_cli(capsys, "finite", "300", "200", "2000")
        assert code == 2


class TestEmpirical:
    def test_csv_columns_and_determinism(self, capsys):
        args = (
            "--seed", "5", "empirical", "--n", "20", "--sizes", "40",
            "--k", "2", "--restarts", "5",
        )
        code, out1, _ = run_cli(capsys, *args)
        assert code == 0
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2
        row = next(csv.DictReader(io.StringIO(out1)))
        assert float(row["ratio_U"]) >= 1.0
        assert row["error"] == ""

    def test_tiny_instance_matches_exhaustive(self, capsys):
        from ricbounds.empirical import exhaustive_ric, sample_gaussian

        _, out, _ = run_cli(
            capsys, "--seed", "3", "empirical", "--n", "6", "--sizes", "10",
            "--k", "2", "--restarts", "50",
        )
        row = next(csv.DictReader(io.StringIO(out)))
        L, U, _, _ = exhaustive_ric(sample_gaussian(6, 10, 3), 2)
        assert float(row["U_est"]) == pytest.approx(U, abs=1e-9)
        assert float(row["L_est"]) == pytest.approx(L, abs=1e-9)


class TestPhase:
    def test_curve_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "phase", "--delta-steps", "2", "--delta-min", "0.3",
            "--delta-max", "0.7", "--families", "BT",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 2
        for row in rows:
            assert 1e-4 < float(row["rho_star"]) < 1e-2


class TestCover:
    def test_summary_record(self, capsys):
        code, out, _ = run_cli(
            capsys, "--json", "--seed", "1", "cover",
            "-N", "12", "--k", "3", "--m", "6", "--trials", "10",
        )
        assert code == 0
        rec = json.loads(out)["results"]
        assert rec["u"] == 132
        assert rec["failure_frequency"] <= 1.0

    def test_guard_exit_code(self, capsys):
        code, _, err = run_cli(
            capsys, "cover", "-N", "80", "--k", "10", "--m", "20", "--trials", "1"
        )
        assert code == 4
        assert "guard" in err

    def test_universe_superset_never_fails(self, capsys):
        _, out, _ = run_cli(
            capsys, "--json", "cover", "-N", "8", "--k", "2", "--m", "8", "--trials", "5"
        )
        assert json.loads(out)["results"]["failures"] == 0


class TestIO:
    def test_unwritable_path_exit_code(self, capsys):
        code, _, err = run_cli(
            capsys, "--out", "/nonexistent-dir/x.csv", "bounds", "0.5", "0.5",
            "--family", "CT",
        )
        assert code == 5

    def test_usage_error_exit_code(self, capsys):
        code, _, _ = run_cli(capsys, "bounds", "not-a-number", "0.5")
        assert code == 2
