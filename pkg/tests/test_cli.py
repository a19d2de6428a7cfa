"""CLI behavior: formats, exit codes, determinism, atomic writes."""

import json
import math
import os

import pytest

from expseries.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTriangleCommand:
    def test_rows_to_two(self, capsys):
        code, out, _ = run(capsys, "triangle", "--rows", "2")
        assert code == 0
        assert out == (
            "m,power,coefficient\n"
            "0,0,1\n"
            "1,0,0\n"
            "1,1,-1\n"
            "2,0,0\n"
            "2,1,-1\n"
            "2,2,1\n"
        )

    def test_single_row(self, capsys):
        code, out, _ = run(capsys, "triangle", "--rows", "0")
        assert code == 0
        assert out == "m,power,coefficient\n0,0,1\n"

    def test_row_eight_entry(self, capsys):
        code, out, _ = run(capsys, "triangle", "--rows", "8")
        assert code == 0
        assert "8,2,127\n" in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "triangle", "--rows", "1", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"rows": [[0, 0, "1"], [1, 0, "0"], [1, 1, "-1"]]}


class TestEvalCommand:
    def test_closed_form(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--x", "1", "--alpha", "1", "--method", "closed-alpha1"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value_re"] == pytest.approx(0.581976706869, abs=1e-12)
        assert payload["method"] == "closed_alpha1"

    def test_direct_report_fields(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "1.5", "--alpha", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["terms_used"] >= 1
        assert payload["cancellation"] >= 1.0

    def test_invalid_alpha_is_domain_error(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "1", "--alpha", "-1")
        assert code == 2
        assert "error" in err

    def test_asymptotic(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--x", "2", "--alpha", "1.6", "--method", "asymptotic"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value_re"] == pytest.approx(0.133845551580, abs=1e-9)

    def test_transformed(self, capsys):
        code, out, _ = run(
            capsys,
            "eval", "--x", "1", "--alpha", "1", "--method", "transformed",
            "--tol", "1e-7",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value_re"] == pytest.approx(0.5819767069, abs=1e-6)

    def test_convergence_failure_exit_code(self, capsys):
        code, out, err = run(
            capsys,
            "eval", "--x", "0.001", "--alpha", "0.5", "--terms", "40",
            "--tol", "1e-12",
        )
        assert code == 3
        payload = json.loads(out)
        assert payload["terms_used"] == 40

    def test_precision_flag(self, capsys):
        code, out, _ = run(
            capsys,
            "eval", "--x", "1", "--alpha", "1", "--method", "closed-alpha1",
            "--precision", "3",
        )
        assert code == 0
        assert json.loads(out)["value_re"] == 0.582


class TestFigureCommand:
    def test_family_monotone_in_alpha(self, capsys):
        code, out, _ = run(
            capsys, "figure", "family", "--xmax", "1", "--xstep", "0.25"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,alpha,f"
        by_x = {}
        for line in lines[1:]:
            x, alpha, f = (float(v) for v in line.split(","))
            by_x.setdefault(x, []).append(f)
        for vals in by_x.values():
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_family_deterministic(self, capsys):
        _, first, _ = run(capsys, "figure", "family", "--xmax", "0.5", "--xstep", "0.25")
        _, second, _ = run(capsys, "figure", "family", "--xmax", "0.5", "--xstep", "0.25")
        assert first == second

    def test_complex_grid_symmetry(self, capsys):
        code, out, _ = run(
            capsys,
            "figure", "complex-re", "--grid", "0.5:1.5:-1:1:5", "--alpha", "1",
        )
        assert code == 0
        rows = {}
        for line in out.strip().splitlines()[1:]:
            re, im, value = (float(v) for v in line.split(","))
            rows[(re, im)] = value
        for (re, im), value in rows.items():
            assert rows[(re, -im)] == pytest.approx(value, rel=1e-12)

    def test_complex_grid_needs_positive_re(self, capsys):
        code, _, err = run(capsys, "figure", "complex-re", "--grid=-1:1:-1:1:5")
        assert code == 2

    def test_complex_needs_grid(self, capsys):
        code, _, err = run(capsys, "figure", "complex-im")
        assert code == 2

    def test_poly_figure(self, capsys):
        code, out, _ = run(
            capsys, "figure", "poly", "--rows", "2", "--xmax", "1", "--xstep", "0.5"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,m,value"
        assert lines[1] == "0,0,1"
        # row m=1 at x=0.5 is -0.5
        assert "0.5,1,-0.5" in out

    def test_poly_norm_divides_by_factorial(self, capsys):
        _, plain, _ = run(
            capsys, "figure", "poly", "--rows", "3", "--xmax", "1", "--xstep", "1"
        )
        _, norm, _ = run(
            capsys, "figure", "poly-norm", "--rows", "3", "--xmax", "1", "--xstep", "1"
        )
        plain_rows = plain.strip().splitlines()[1:]
        norm_rows = norm.strip().splitlines()[1:]
        for p_line, n_line in zip(plain_rows, norm_rows):
            x, m, pv = p_line.split(",")
            _, _, nv = n_line.split(",")
            assert float(nv) == pytest.approx(float(pv) / math.factorial(int(m)), rel=1e-9)

    def test_asymptotics_columns(self, capsys):
        code, out, _ = run(
            capsys,
            "figure", "asymptotics", "--alpha", "1.6",
            "--xmin", "2", "--xmax", "3", "--xstep", "0.5",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,f,exp_neg_x,two_term"
        x, f, e1, e2 = (float(v) for v in lines[1].split(","))
        assert f > e1 > 0.0

    def test_trig_figure(self, capsys):
        code, out, _ = run(capsys, "figure", "trig", "--func", "sin")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,exact,approx1,approx2"
        assert lines[1].startswith("0,0,")

    def test_gaussian_figure_taylor_column(self, capsys):
        code, out, _ = run(
            capsys,
            "figure", "gaussian", "--terms", "2,4", "--xmax", "1", "--xstep", "0.5",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,exact,series_2_terms,series_4_terms,taylor2"
        last = lines[-1].split(",")
        assert float(last[0]) == 1.0
        assert float(last[-1]) == pytest.approx(0.0, abs=1e-12)

    def test_unknown_figure_exits_two(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["figure", "spiral"])
        assert err.value.code == 2


class TestVerifyCommand:
    def test_poly_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "poly")
        assert code == 0
        assert "PASS poly/four-way-equivalence" in out
        assert "FAIL" not in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "verify", "poly", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert all(entry["passed"] for entry in payload)

    def test_unknown_suite_exits_two(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["verify", "everything"])
        assert err.value.code == 2


class TestOutputHandling:
    def test_out_file_matches_stdout(self, capsys, tmp_path):
        path = tmp_path / "rows.csv"
        code, _, _ = run(capsys, "triangle", "--rows", "3", "--out", str(path))
        assert code == 0
        code, out, _ = run(capsys, "triangle", "--rows", "3")
        assert path.read_text() == out

    def test_missing_directory_exits_one(self, capsys, tmp_path):
        target = tmp_path / "no" / "such" / "dir" / "rows.csv"
        code, _, err = run(capsys, "triangle", "--rows", "2", "--out", str(target))
        assert code == 1
        assert not target.exists()

    def test_no_stray_temp_files(self, capsys, tmp_path):
        path = tmp_path / "rows.csv"
        run(capsys, "triangle", "--rows", "2", "--out", str(path))
        assert os.listdir(tmp_path) == ["rows.csv"]

    def test_bad_precision(self, capsys):
        code, _, err = run(capsys, "triangle", "--rows", "1", "--precision", "30")
        assert code == 2
