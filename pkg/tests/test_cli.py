import csv
import json
import math
import re

import pytest

from collet.cli import main
from collet.config import RunConfig
from collet.emit import CURVE_HEADER, OUTPUT_DIR_ENV, fmt

HEADER = "delta_mm,delta_tip_mm,b_mm,beta_rad,phi_rad,fx_n,fy_n"


def write_config(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_curve_preset_s1(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    assert main(["curve", "--preset", "S1", "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert raw.startswith((HEADER + "\n").encode())
    assert b"\r" not in raw
    rows = read_rows(out)
    assert rows[0] == CURVE_HEADER
    assert float(rows[-1][1]) == pytest.approx(1.5, abs=1e-9)
    assert "clearance_reached" in capsys.readouterr().out


def test_nine_significant_digits(tmp_path):
    out = tmp_path / "curve.csv"
    main(["curve", "--preset", "S3", "--out", str(out)])
    for row in read_rows(out)[1:]:
        for cell in row:
            digits = re.sub(r"e.*$", "", cell).replace("-", "").replace(".", "").lstrip("0")
            assert len(digits) <= 9
            assert "," not in cell
    assert fmt(1 / 3) == "0.333333333"


def test_missing_config_exit_2_no_output(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    assert main(["curve", "--config", str(tmp_path / "missing.json"), "--out", str(out)]) == 2
    assert not out.exists()
    assert "error" in capsys.readouterr().err


def test_invalid_geometry_exit_2(tmp_path):
    cfg = write_config(tmp_path / "c.json", {"geometry": {"preset": "S3", "c": 60.0}})
    assert main(["curve", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 2
    assert not (tmp_path / "x.csv").exists()


def test_no_source_exit_2(tmp_path):
    assert main(["curve", "--out", str(tmp_path / "x.csv")]) == 2


def test_numerical_failure_exit_3(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.json", {"geometry": {"preset": "S3", "d": 53.0}})
    out = tmp_path / "curve.csv"
    with pytest.warns(UserWarning):
        code = main(["curve", "--config", cfg, "--out", str(out)])
    assert code == 3
    assert "step 0" in capsys.readouterr().err
    assert len(read_rows(out)) == 2  # partial curve is still written


def test_grip_range_interference_run(tmp_path):
    cfg = write_config(tmp_path / "c.json", {
        "geometry": {"preset": "S3", "c": 5 * math.pi / 4},
        "run": {"delta_total": 3.0, "clearance": 3.0}})
    out = tmp_path / "report.json"
    assert main(["grip-range", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert [report["min"], report["max"]] == [48.0, 53.0]
    assert report["stop_reason"] == "interference"


def test_dump_config_round_trip(tmp_path):
    src = write_config(tmp_path / "c.json", {"geometry": {"preset": "S2", "t": 1.5},
                                             "run": {"revolutions": 2}})
    dumped = tmp_path / "dump.json"
    assert main(["curve", "--config", src, "--dump-config", str(dumped)]) == 0
    assert RunConfig.load(dumped) == RunConfig.load(src)
    assert not (tmp_path / "curve.csv").exists()


def test_design_space(tmp_path):
    out, js = tmp_path / "grid.csv", tmp_path / "grid.json"
    assert main(["design-space", "--scenario", "adaptor", "--values", "30,34,40",
                 "--out", str(out), "--json", str(js)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["value_mm"] + CURVE_HEADER
    assert {float(r[0]) for r in rows[1:]} == {30.0, 34.0, 40.0}
    data = json.loads(js.read_text())
    assert data["scenario"] == "adaptor_diameter"
    assert len(data["curves"]) == 3
    assert all(len(c["tip_on_common_grid_mm"]) == 200 for c in data["curves"])


def test_design_space_bad_values(tmp_path):
    assert main(["design-space", "--scenario", "chuck", "--values", "3,x",
                 "--out", str(tmp_path / "g.csv")]) == 2
    assert main(["design-space", "--scenario", "pitch", "--values", "3",
                 "--out", str(tmp_path / "g.csv")]) == 2


def test_verify(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    assert main(["verify", "--preset", "S3", "--elems", "100", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0][:3] == ["step", "delta_mm", "b_mm"]
    assert all(float(r[8]) < 0.10 for r in rows[1:])
    assert "ok" in capsys.readouterr().out


def test_section(capsys):
    assert main(["section", "--preset", "S3", "--theta", "60"]) == 0
    lines = dict(line.split("=") for line in capsys.readouterr().out.split())
    assert float(lines["theta"]) == pytest.approx(math.radians(60), rel=1e-8)
    assert float(lines["I_c"]) > 0


def test_section_outside_jaw(capsys):
    assert main(["section", "--preset", "S3", "--theta", "5"]) == 2


def test_output_dir_override(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "runs"))
    assert main(["curve", "--preset", "S1", "--out", "c.csv"]) == 0
    assert (tmp_path / "runs" / "c.csv").exists()
