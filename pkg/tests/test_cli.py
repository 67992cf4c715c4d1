import numpy as np
import pytest

from lhdef.cli import main
from lhdef.config import load_scenario
from lhdef.catalog import ConfigurationError

SINGLE_CONFIG = """\
[scenario]
class = P2
z = 0.1
mode = single
seed = 3

[initial]
point = 0.2, 1.0

[time]
t0 = 0.0
t1 = 0.5
dt = 0.001

[b1]
kind = constant
value = 1.0

[b2]
kind = constant
value = 0.0

[b3]
kind = constant
value = 0.0

[output]
path = {out}
"""

TWO_COPY_CONFIG = """\
[scenario]
class = P2
z = 0.1
mode = two_copy

[initial]
point = 0.2, 1.0, -0.3, 1.4

[time]
t0 = 0.0
t1 = 1.0
dt = 0.001

[b1]
kind = constant
value = 1.0

[b2]
kind = sinusoid
amplitude = 0.2
frequency = 2.0

[b3]
kind = polynomial
coeffs = 0.1, 0.05

[output]
path = {out}
"""

ZERO_CONFIG = """\
[scenario]
class = I5
z = 0.2
mode = single

[initial]
point = 0.1, 1.1

[time]
t0 = 0.0
t1 = 0.2
dt = 0.01

[b1]
kind = constant
value = 0.0

[b2]
kind = constant
value = 0.0

[b3]
kind = constant
value = 0.0

[output]
path = {out}
"""

TRUNCATING_CONFIG = """\
[scenario]
class = P2
z = 0.0
mode = single

[initial]
point = 0.0, 0.6

[time]
t0 = 0.0
t1 = 40.0
dt = 0.01

[b1]
kind = constant
value = 0.0

[b2]
kind = constant
value = -1.0

[b3]
kind = constant
value = 0.0

[output]
path = {out}
"""


def write_config(tmp_path, template, name="scenario.ini"):
    out = tmp_path / "run.csv"
    cfg = tmp_path / name
    cfg.write_text(template.format(out=out))
    return cfg, out


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, data


class TestRun:
    def test_zero_drive_constant_rows(self, tmp_path):
        cfg, out = write_config(tmp_path, ZERO_CONFIG)
        assert main(["run", "--config", str(cfg)]) == 0
        header, data = read_csv(out)
        assert header == ["t", "x", "y", "f_z"]
        assert np.allclose(data[:, 1], 0.1, atol=0.0)
        assert np.allclose(data[:, 2], 1.1, atol=0.0)
        assert np.allclose(data[:, 3], 0.0, atol=1e-12)  # I5 level c/4 = 0

    def test_single_run_level_column(self, tmp_path):
        cfg, out = write_config(tmp_path, SINGLE_CONFIG)
        assert main(["run", "--config", str(cfg)]) == 0
        header, data = read_csv(out)
        assert header == ["t", "x", "y", "f_z"]
        assert np.max(np.abs(data[:, 3] - 1.0)) < 1e-10  # P2 level c/4 = 1
        assert data[0, 0] == 0.0 and data[-1, 0] == 0.5

    def test_two_copy_conservation(self, tmp_path):
        cfg, out = write_config(tmp_path, TWO_COPY_CONFIG)
        assert main(["run", "--config", str(cfg)]) == 0
        header, data = read_csv(out)
        assert header == ["t", "x1", "y1", "x2", "y2", "f_z", "f_z2"]
        f2 = data[:, 6]
        assert abs(f2[-1] - f2[0]) / abs(f2[0]) < 1e-8
        assert np.max(np.abs(data[:, 5] - 1.0)) < 1e-10

    def test_byte_identical_reruns(self, tmp_path):
        cfg, out = write_config(tmp_path, TWO_COPY_CONFIG)
        assert main(["run", "--config", str(cfg)]) == 0
        first = out.read_bytes()
        assert main(["run", "--config", str(cfg)]) == 0
        assert out.read_bytes() == first

    def test_truncated_run_exit_code(self, tmp_path, capsys):
        cfg, out = write_config(tmp_path, TRUNCATING_CONFIG)
        assert main(["run", "--config", str(cfg)]) == 3
        assert "truncated" in capsys.readouterr().out
        header, data = read_csv(out)
        assert data[-1, 0] < 40.0

    def test_out_override(self, tmp_path):
        cfg, _ = write_config(tmp_path, SINGLE_CONFIG)
        other = tmp_path / "elsewhere.csv"
        assert main(["run", "--config", str(cfg), "--out", str(other)]) == 0
        assert other.is_file()

    def test_missing_config_is_config_error(self, tmp_path, capsys):
        assert main(["run", "--config", str(tmp_path / "nope.ini")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_mode_dimension(self, tmp_path):
        text = SINGLE_CONFIG.replace("point = 0.2, 1.0", "point = 0.2, 1.0, 3.0")
        cfg, _ = write_config(tmp_path, text)
        assert main(["run", "--config", str(cfg)]) == 2

    def test_out_of_domain_initial_point(self, tmp_path):
        text = SINGLE_CONFIG.replace("point = 0.2, 1.0", "point = 0.2, -1.0")
        cfg, _ = write_config(tmp_path, text)
        assert main(["run", "--config", str(cfg)]) == 2

    def test_csv_has_17_significant_digits(self, tmp_path):
        cfg, out = write_config(tmp_path, SINGLE_CONFIG)
        main(["run", "--config", str(cfg)])
        line = out.read_text().split("\n")[2]
        t_text = line.split(",")[0]
        assert t_text == format(0.001, ".17g")


class TestConfigParsing:
    def test_loads_all_curve_kinds(self, tmp_path):
        cfg, _ = write_config(tmp_path, TWO_COPY_CONFIG)
        scenario = load_scenario(cfg)
        assert scenario.b[0].kind == "constant"
        assert scenario.b[1].kind == "sinusoid"
        assert scenario.b[2].kind == "polynomial"
        assert scenario.mode == "two_copy"

    def test_missing_section(self, tmp_path):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[scenario]\nclass = P2\nz = 0.1\n")
        with pytest.raises(ConfigurationError):
            load_scenario(cfg)

    def test_bad_class(self, tmp_path):
        cfg, _ = write_config(tmp_path, SINGLE_CONFIG.replace("class = P2",
                                                              "class = Q9"))
        with pytest.raises(ConfigurationError):
            load_scenario(cfg)

    def test_bad_curve_kind(self, tmp_path):
        cfg, _ = write_config(
            tmp_path, SINGLE_CONFIG.replace("kind = constant\nvalue = 1.0",
                                            "kind = spline\nvalue = 1.0", 1))
        with pytest.raises(ConfigurationError):
            load_scenario(cfg)


class TestVerifyCommand:
    def test_passes_and_is_reproducible(self, tmp_path, capsys):
        args = ["verify", "--class", "P2", "--z", "0,0.1", "--seed", "42",
                "--points", "40"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second
        assert "overall: PASS" in first

    def test_report_file_matches_stdout(self, tmp_path, capsys):
        out = tmp_path / "report.txt"
        assert main(["verify", "--class", "I5", "--z", "0.3", "--seed", "7",
                     "--points", "30", "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert out.read_text() == stdout

    def test_flagged_misprint_row_present(self, capsys):
        assert main(["verify", "--class", "I4", "--z", "0.5", "--seed", "42",
                     "--points", "30"]) == 0
        text = capsys.readouterr().out
        assert "FLAG" in text
        assert "printed X_z3 form conformance (corrected)" in text
        assert "printed F_z2 form conformance" in text

    def test_corrupted_tolerance_fails(self, monkeypatch, capsys):
        monkeypatch.setenv("LHDEF_TOL_SCALE", "1e-30")
        assert main(["verify", "--class", "P2", "--z", "0.1", "--seed", "42",
                     "--points", "20"]) == 1
        assert "overall: FAIL" in capsys.readouterr().out


class TestLimitScanCommand:
    def test_default_scan_ratios(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(["limit-scan", "--class", "P2", "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        header = lines[0].split(",")
        assert header[0] == "z"
        rows = [line.split(",") for line in lines[1:]]
        assert len(rows) == 5
        # ratio columns for the varying entries are near 4
        idx = {name: k for k, name in enumerate(header)}
        for row in rows[1:]:
            for name in ("ratio_h2", "ratio_h3", "ratio_X2", "ratio_X3"):
                assert 3.4 <= float(row[idx[name]]) <= 4.6
        # the first entry never deforms
        for row in rows:
            assert float(row[idx["dev_h1"]]) == 0.0
            assert row[idx["ratio_h1"]] == ""

    def test_single_z_zero(self, tmp_path, capsys):
        assert main(["limit-scan", "--class", "I5", "--z", "0",
                     "--grid=-1,1,0.5,2,11"]) == 0
        text = capsys.readouterr().out.strip().split("\n")
        assert len(text) == 2
        values = text[1].split(",")
        assert all(float(v) == 0.0 for v in values[1:7])

    def test_empty_grid_is_config_error(self, capsys):
        assert main(["limit-scan", "--class", "P2",
                     "--grid=-1,1,-2,-1,5"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_grid_spec(self, capsys):
        assert main(["limit-scan", "--class", "P2", "--grid", "1,2,3"]) == 2

    def test_non_decreasing_z_rejected(self, capsys):
        assert main(["limit-scan", "--class", "P2", "--z", "0.1,0.2"]) == 2
