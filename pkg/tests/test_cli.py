import json
import subprocess
import sys

import numpy as np
import pytest

from toepcirc import ApproximationMethod, ResidualReport
from toepcirc import serialization as ser
from toepcirc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# formats
# ---------------------------------------------------------------------------


def test_fmt_is_round_trippable():
    rng = np.random.default_rng(5)
    for x in list(rng.normal(size=200)) + [0.1, 1 / 3, 1e-300, 5e-324, 1.0]:
        assert float(ser.fmt(x)) == x
    assert ser.fmt(0.1) == "0.10000000000000001"


def test_parse_row_csv_and_json():
    np.testing.assert_array_equal(ser.parse_row("1, 0.5,0.25\n"), [1, 0.5, 0.25])
    np.testing.assert_array_equal(ser.parse_row("1,0.5\n0.25\n"), [1, 0.5, 0.25])
    np.testing.assert_array_equal(ser.parse_row("[1, 0.5, 0.25]"), [1, 0.5, 0.25])
    for bad in ("", "1,abc", "[1, \"x\"]", "[1, true]", "{\"a\": 1}"):
        with pytest.raises(ValueError):
            ser.parse_row(bad)


def test_dense_csv_is_row_major():
    text = ser.format_dense_csv(np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert text == "1,2\n3,4"


def test_eigenvalue_serialisation():
    values = np.array([1.5 + 0.25j, -2 + 0j])
    assert ser.eigenvalues_csv(values) == "1.5,0.25\n-2,0"
    assert json.loads(ser.eigenvalues_json(values)) == [{"re": 1.5, "im": 0.25}, {"re": -2, "im": 0}]
    assert json.loads(ser.eigenvalues_json(np.array([1.0, 0.5]))) == [1.0, 0.5]


def test_report_round_trip():
    reports = [
        ResidualReport(ApproximationMethod.NEAREST, 0.9, 400, 0.10951651115322933, 0.10951651115322932, 0.33494531740415423),
        ResidualReport(ApproximationMethod.NEAREST, 1.0, 5, 0.0, None, None),
        ResidualReport(ApproximationMethod.GS, 1 / 3, 7, 2 / 7, 2 / 7, 1e-17),
    ]
    text = "\n".join([ser.report_csv_header()] + [ser.report_csv_line(r) for r in reports]) + "\n"
    assert ser.parse_report_csv(text) == reports
    record = json.loads(ser.report_json(reports[1]))
    assert record == {
        "method": "nearest",
        "rho": 1,
        "M": 5,
        "scaled_norm_sq_direct": 0,
        "scaled_norm_sq_closed": None,
        "leading_term": None,
    }


# ---------------------------------------------------------------------------
# approximate
# ---------------------------------------------------------------------------


def test_approximate_nearest(capsys):
    code, out, _ = run(capsys, "approximate", "--rho", "0.5", "--m", "4", "--method", "nearest")
    assert code == 0
    assert out == "1,0.40625,0.25,0.40625\n"


def test_approximate_gs_rho_zero(capsys):
    assert run(capsys, "approximate", "--rho", "0", "--m", "3", "--method", "gs")[1] == "1,0,0\n"


def test_approximate_row_file_fixed_point(capsys, tmp_path):
    path = tmp_path / "row.csv"
    path.write_text("1,0.3,0.2,0.3\n")
    code, out, _ = run(capsys, "approximate", "--row-file", str(path), "--method", "nearest")
    assert code == 0
    np.testing.assert_array_equal(ser.parse_row(out), [1, 0.3, 0.2, 0.3])


def test_approximate_json_and_dense(capsys):
    code, out, _ = run(capsys, "approximate", "--rho", "0.5", "--m", "3", "--format", "json")
    assert json.loads(out) == pytest.approx([1, 5 / 12, 5 / 12], rel=1e-15)
    code, out, _ = run(capsys, "approximate", "--rho", "0.5", "--m", "3", "--method", "gs", "--dense")
    dense = np.array([ser.parse_row(line) for line in out.splitlines()])
    np.testing.assert_allclose(dense, [[1, 6 / 7, 6 / 7], [6 / 7, 1, 6 / 7], [6 / 7, 6 / 7, 1]], rtol=1e-15)


def test_approximate_common(capsys):
    assert run(capsys, "approximate", "--rho", "0.25", "--m", "3", "--method", "common")[1] == "1,0.25,0.25\n"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["approximate", "--rho", "1", "--m", "3", "--method", "gs"], 3),
        (["approximate", "--rho", "1.5", "--m", "3"], 3),
        (["approximate", "--rho", "0.5", "--m", "3", "--method", "bogus"], 2),
        (["approximate", "--rho", "0.5"], 2),
        (["approximate", "--m", "0", "--rho", "0.5"], 2),
        (["approximate", "--rho", "abc", "--m", "3"], 2),
        (["approximate", "--row-file", "/nonexistent/row.csv"], 2),
        (["frobnicate"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err


def test_gs_needs_exponential_input(capsys, tmp_path):
    path = tmp_path / "row.json"
    path.write_text("[1, 0.5, 0.25]")
    code, _, err = run(capsys, "approximate", "--row-file", str(path), "--method", "gs")
    assert code == 3 and "exponential" in err


# ---------------------------------------------------------------------------
# eigvals
# ---------------------------------------------------------------------------


def test_eigvals_symmetric_row(capsys, tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("0,1,2,3,2,1")
    code, out, _ = run(capsys, "eigvals", "--row-file", str(path))
    assert code == 0
    np.testing.assert_allclose(ser.parse_row(out), [9, -4, 0, -1, 0, -4], atol=1e-12)
    assert len(out.strip().splitlines()) == 1


def test_eigvals_identity(capsys, tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("1,0,0,0")
    np.testing.assert_allclose(ser.parse_row(run(capsys, "eigvals", "--row-file", str(path))[1]), np.ones(4))


def test_eigvals_exponential_nearest(capsys):
    code, out, _ = run(capsys, "eigvals", "--rho", "0.5", "--m", "3", "--method", "nearest")
    np.testing.assert_allclose(ser.parse_row(out), [11 / 6, 7 / 12, 7 / 12], atol=1e-14)


def test_eigvals_common(capsys):
    code, out, _ = run(capsys, "eigvals", "--rho", "0.2", "--m", "5", "--method", "common")
    np.testing.assert_allclose(ser.parse_row(out), [1.8, 0.8, 0.8, 0.8, 0.8], atol=1e-14)


def test_eigvals_general_circulant_has_im_column(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text("[1, 2, 3]")
    code, out, _ = run(capsys, "eigvals", "--row-file", str(path))
    lines = [list(map(float, line.split(","))) for line in out.strip().splitlines()]
    np.testing.assert_allclose(lines, [[6, 0], [-1.5, -np.sqrt(3) / 2], [-1.5, np.sqrt(3) / 2]], atol=1e-14)
    code, out, _ = run(capsys, "eigvals", "--row-file", str(path), "--format", "json")
    assert json.loads(out)[0] == {"re": 6, "im": 0}


def test_eigvals_row_file_as_toeplitz(capsys, tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("1,0.5,0.25")
    code, out, _ = run(capsys, "eigvals", "--row-file", str(path), "--method", "nearest")
    np.testing.assert_allclose(ser.parse_row(out), [11 / 6, 7 / 12, 7 / 12], atol=1e-14)


# ---------------------------------------------------------------------------
# residual
# ---------------------------------------------------------------------------


def test_residual_nearest(capsys):
    code, out, _ = run(capsys, "residual", "--rho", "0.5", "--m", "3", "--method", "nearest")
    (report,) = ser.parse_report_csv(out)
    assert report.scaled_norm_sq_direct == pytest.approx(1 / 36, rel=1e-13)
    assert report.scaled_norm_sq_closed == pytest.approx(1 / 36, rel=1e-13)


def test_residual_gs_json(capsys):
    code, out, _ = run(capsys, "residual", "--rho", "0.5", "--m", "3", "--method", "gs", "--format", "json")
    record = json.loads(out)
    assert record["method"] == "gs"
    assert record["scaled_norm_sq_direct"] == pytest.approx(0.41581632653061207, rel=1e-13)
    assert record["scaled_norm_sq_closed"] == pytest.approx(0.41581632653061207, rel=1e-13)


def test_residual_zero(capsys):
    (report,) = ser.parse_report_csv(run(capsys, "residual", "--rho", "0", "--m", "10")[1])
    assert (report.scaled_norm_sq_direct, report.scaled_norm_sq_closed, report.leading_term) == (0, 0, 0)


def test_residual_rho_one_omits_closed(capsys):
    code, out, _ = run(capsys, "residual", "--rho", "1", "--m", "6")
    assert code == 0
    assert out.splitlines()[1] == "nearest,1,6,0,,"


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def test_sweep_small_grid_order(capsys):
    code, out, _ = run(capsys, "sweep", "--rhos", "0.9,0.5", "--m-min", "2", "--m-max", "4")
    reports = ser.parse_report_csv(out)
    keys = [(r.method.value, r.rho, r.order) for r in reports]
    assert keys == [
        (m, rho, M) for m in ("nearest", "gs") for rho in (0.5, 0.9) for M in (2, 3, 4)
    ]


def test_sweep_single_method_to_file(capsys, tmp_path):
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--rhos", "0.5", "--m-max", "10", "--method", "gs", "--out", str(out_path))
    assert code == 0 and out == ""
    reports = ser.parse_report_csv(out_path.read_text())
    assert len(reports) == 8
    assert all(r.method is ApproximationMethod.GS for r in reports)


@pytest.mark.parametrize(
    "argv",
    [
        ["--rhos", "1.0"],
        ["--rhos", ""],
        ["--rhos", "0.5,x"],
        ["--m-min", "1"],
        ["--m-min", "10", "--m-max", "5"],
    ],
)
def test_sweep_invalid_requests(capsys, argv):
    assert run(capsys, "sweep", *argv)[0] == 2


def test_sweep_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--rhos", "0.5", "--m-max", "5", "--out", str(tmp_path / "no" / "such.csv"))
    assert code == 4
    assert "cannot write" in err


def test_sweep_is_byte_deterministic(capsys):
    first = run(capsys, "sweep", "--rhos", "0.3,0.99", "--m-max", "60")[1]
    second = run(capsys, "sweep", "--rhos", "0.3,0.99", "--m-max", "60")[1]
    assert first == second


def test_sweep_round_trip_reproduces_reports(capsys):
    from toepcirc.cli import sweep_reports

    out = run(capsys, "sweep", "--rhos", "0.1,0.99", "--m-max", "40")[1]
    assert ser.parse_report_csv(out) == sweep_reports([0.1, 0.99], 3, 40)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick", "--seed", "7")
    assert code == 0
    suite_lines = [line for line in out.splitlines() if line.startswith("[PASS]")]
    assert len(suite_lines) >= 8
    assert run(capsys, "verify", "--level", "quick", "--seed", "7")[1] == out


def test_verify_full_includes_leading_term_checks(capsys):
    code, out, _ = run(capsys, "verify", "--level", "full", "--seed", "1")
    assert code == 0
    assert "leading_term_ratio_m400" in out
    assert "gs_ratio_convergence" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "toepcirc", "approximate", "--rho", "0.5", "--m", "4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "1,0.40625,0.25,0.40625\n"
