"""Scenario parsing, file emission, and CLI determinism."""

import math
from pathlib import Path

import numpy as np
import pytest

from doublewell import (
    ScenarioParseError,
    ScenarioValidationError,
    parse_scenario_text,
    run_scenario,
)
from doublewell.cli import main
from doublewell.emit import (
    format_float,
    heatmap_bytes,
    read_csv_matrix,
    write_csv_columns,
    write_csv_matrix,
)
from doublewell.wigner import PhaseSpaceGrid, WignerField

SCENARIO_DIR = Path(__file__).resolve().parents[1] / "src" / "doublewell" / "scenarios"

MINIMAL = """
well.kind = symmetric
well.e0 = -1
well.e1 = -0.9
outputs = potential
"""


# ---------------------------------------------------------------------------
# scenario parsing
# ---------------------------------------------------------------------------

def test_parse_minimal():
    scn = parse_scenario_text(MINIMAL, name="mini")
    assert scn.kind == "symmetric"
    assert scn.e0 == -1.0 and scn.e1 == -0.9
    assert scn.outputs == ["potential"]
    assert scn.theta == pytest.approx(math.pi / 4)
    assert scn.n_x == 256 and scn.n_y == 1024


def test_parse_rejects_unknown_key():
    with pytest.raises(ScenarioParseError, match="unknown key 'wel.kind'"):
        parse_scenario_text("wel.kind = symmetric\noutputs = potential\n")


def test_parse_reports_missing_well_kind():
    with pytest.raises(ScenarioParseError, match="well.kind"):
        parse_scenario_text("well.e0 = -1\noutputs = potential\n")


def test_parse_reports_line_numbers():
    text = "well.kind = symmetric\nbogus line without equals\n"
    with pytest.raises(ScenarioParseError, match="line 2"):
        parse_scenario_text(text)


def test_parse_rejects_duplicates_and_empty_values():
    base = "well.kind = symmetric\nwell.e0 = -1\nwell.e1 = -0.9\noutputs = potential\n"
    with pytest.raises(ScenarioParseError, match="duplicate"):
        parse_scenario_text(base + "well.e0 = -2\n")
    with pytest.raises(ScenarioParseError, match="empty value"):
        parse_scenario_text(base + "theta =\n")


def test_parse_angle_and_time_tokens():
    text = """
well.kind = asymmetric
well.alpha = 0.9
well.beta = 1
well.e0 = 0
well.delta_e = 1
theta = pi/8
times = 0, T/8, 0.25T, 1.5
outputs = wigner
"""
    scn = parse_scenario_text(text)
    assert scn.theta == pytest.approx(math.pi / 8)
    resolved = [spec.resolve(8.0) for spec in scn.times]
    assert resolved == [0.0, 1.0, 2.0, 1.5]


def test_parse_sweep_excludes_fixed_splitting():
    text = """
well.kind = symmetric
well.e0 = -1
well.e1 = -0.9
sweep.delta_e = 0.25,0.5
outputs = wigner
"""
    with pytest.raises(ScenarioParseError, match="mutually exclusive"):
        parse_scenario_text(text)


def test_parse_validates_physics():
    text = """
well.kind = symmetric
well.e0 = -0.5
well.e1 = -0.9
outputs = potential
"""
    with pytest.raises(ScenarioValidationError, match="E0 < E1"):
        parse_scenario_text(text)


def test_parse_validates_grid():
    with pytest.raises(ScenarioValidationError, match="power of two"):
        parse_scenario_text(MINIMAL + "grid.n_y = 1000\n")


def test_all_shipped_scenarios_parse():
    files = sorted(SCENARIO_DIR.glob("*.scn"))
    assert len(files) >= 9
    for path in files:
        scn = parse_scenario_text(path.read_text(), name=path.stem)
        assert scn.outputs


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def test_matrix_csv_round_trip(tmp_path):
    m = np.array([[1.0 / 3.0, -2.5e-17], [math.pi, 7.0]])
    path = write_csv_matrix(tmp_path / "m.csv", "x", "p",
                            [0.1, 0.2], [-1.0, 1.0], m)
    rows, cols, back = read_csv_matrix(path)
    assert np.array_equal(back, m)
    assert np.array_equal(rows, [0.1, 0.2])
    assert np.array_equal(cols, [-1.0, 1.0])
    assert path.read_text().splitlines()[0].startswith("x\\p,")


def test_column_csv_headers(tmp_path):
    path = write_csv_columns(tmp_path / "c.csv", ["x", "P"], [0.0, 1.0], [0.5, 0.5])
    assert path.read_text().splitlines()[0] == "x,P"


def test_float_format_is_shortest_round_trip():
    for v in (0.1, 1.0 / 3.0, -2.5e-308, 6283.185307179586):
        assert float(format_float(v)) == v


# ---------------------------------------------------------------------------
# heatmaps
# ---------------------------------------------------------------------------

def _field_from(values, p_axis=None):
    values = np.asarray(values, dtype=float)
    n_x, n_p = values.shape
    grid = PhaseSpaceGrid(0.0, 1.0, n_x, -1.0, 1.0, n_p)
    return WignerField(grid=grid, values=values, time=0.0, method="fourier")


def _pixels(raw):
    # P6 header is three text lines, then packed RGB bytes
    idx = 0
    for _ in range(3):
        idx = raw.index(b"\n", idx) + 1
    return np.frombuffer(raw[idx:], dtype=np.uint8).reshape(-1, 3)


def test_heatmap_zero_field_all_white():
    raw = heatmap_bytes(_field_from(np.zeros((4, 3))))
    assert raw.startswith(b"P6\n4 3\n255\n")
    assert np.all(_pixels(raw) == 255)


def test_heatmap_diverging_channels():
    raw = heatmap_bytes(_field_from(np.array([[1.0, -1.0, 0.5],
                                              [1.0, -1.0, 0.5]])))
    px = _pixels(raw)
    # rows are emitted top-down = p descending: 0.5, -1.0, 1.0
    assert list(px[0]) == [255, 128, 128]      # +A/2 -> half red
    assert list(px[2]) == [0, 0, 255]          # -A -> saturated blue
    assert list(px[4]) == [255, 0, 0]          # +A -> saturated red


def test_heatmap_gaussian_has_no_blue(gaussian_field):
    px = _pixels(heatmap_bytes(gaussian_field))
    assert not np.any(px[:, 2] > px[:, 0])


def test_heatmap_split_packet_blue_between_wells(cat_field_quarter):
    from doublewell import crop_momentum
    sub = crop_momentum(cat_field_quarter, 3.0)
    raw = heatmap_bytes(sub)
    px = _pixels(raw).reshape(sub.grid.n_p, sub.grid.n_x, 3)
    xs = sub.grid.x_axis()
    central = np.abs(xs) < 2.0
    blue = px[:, central, 2].astype(int) > px[:, central, 0].astype(int)
    assert np.any(blue)


# ---------------------------------------------------------------------------
# scenario runs and the CLI
# ---------------------------------------------------------------------------

def test_run_scenario_emits_expected_files(tmp_path):
    manifest = run_scenario(SCENARIO_DIR / "fig4_symmetric.scn", tmp_path / "out")
    names = set(manifest)
    for i in range(3):
        assert f"fig4_symmetric_wigner_t{i}.csv" in names
        assert f"fig4_symmetric_wigner_t{i}.ppm" in names
        assert f"fig4_symmetric_marginal_x_t{i}.csv" in names
        assert f"fig4_symmetric_marginal_p_t{i}.csv" in names
    assert (tmp_path / "out" / "manifest.txt").exists()


def test_run_scenario_fringe_table_monotone(tmp_path):
    run_scenario(SCENARIO_DIR / "fig5_asymmetric.scn", tmp_path / "out")
    lines = (tmp_path / "out" / "fig5_asymmetric_fringes.csv").read_text().splitlines()
    assert lines[0] == "delta_e,time,x0,spacing"
    spacing = [float(line.split(",")[3]) for line in lines[1:]]
    assert spacing == sorted(spacing)
    assert len(spacing) == 3


def test_plot_compat_scales_momentum_marginal(tmp_path):
    base = """
well.kind = symmetric
well.e0 = -1
well.e1 = -0.999
theta = pi/4
times = 0
outputs = marginals
"""
    scn_plain = parse_scenario_text(base, name="plain")
    scn_compat = parse_scenario_text(base + "plot_compat = true\n", name="compat")
    run_scenario(scn_plain, tmp_path / "a")
    run_scenario(scn_compat, tmp_path / "b")
    read = lambda p: np.array([
        [float(v) for v in line.split(",")]
        for line in Path(p).read_text().splitlines()[1:]])
    plain = read(tmp_path / "a" / "plain_marginal_p_t0.csv")
    compat = read(tmp_path / "b" / "compat_marginal_p_t0.csv")
    assert np.array_equal(plain[:, 0], compat[:, 0])
    assert np.array_equal(compat[:, 1], plain[:, 1] / 3.0)
    header = (tmp_path / "b" / "compat_marginal_p_t0.csv").read_text().splitlines()[0]
    assert header == "p,Ptilde"


def test_bench_scenario_outputs(tmp_path):
    from doublewell import SpectralBenchReport
    run_scenario(SCENARIO_DIR / "bench_symmetric.scn", tmp_path / "out")
    report = (tmp_path / "out" / "bench_symmetric_bench_report.txt").read_text()
    assert "exact_e0=-1.0\n" in report
    assert "exact_e1=-0.9\n" in report
    conv = (tmp_path / "out" / "bench_symmetric_bench_convergence.csv").read_text()
    rows = [line.split(",") for line in conv.splitlines()[1:]]
    err0 = [float(r[2]) for r in rows]
    assert err0 == sorted(err0, reverse=True)
    # the emitted key=value text reconstructs the report losslessly
    mapping = dict(line.split("=", 1) for line in report.splitlines())
    again = SpectralBenchReport.from_mapping(mapping)
    assert again.as_mapping() == mapping


def test_bench_empty_ladder_rejected(tmp_path):
    scn = parse_scenario_text(MINIMAL.replace("potential", "bench"), name="x")
    scn.bench_ladder = []
    with pytest.raises(ScenarioValidationError, match="ladder"):
        run_scenario(scn, tmp_path / "out")


def test_cli_verbs_write_files(tmp_path):
    out = str(tmp_path / "v")
    assert main(["potential", "--well", "symmetric", "--e0", "-1", "--e1", "-0.9",
                 "--out-dir", out]) == 0
    assert main(["states", "--well", "asymmetric", "--e0", "0", "--alpha", "0.9",
                 "--beta", "1", "--delta-e", "1", "--out-dir", out]) == 0
    assert main(["evolve", "--well", "symmetric", "--e0", "-1", "--e1", "-0.9",
                 "--times", "0,T/4", "--out-dir", out]) == 0
    assert (tmp_path / "v" / "potential.csv").exists()
    assert (tmp_path / "v" / "states.csv").exists()
    assert (tmp_path / "v" / "evolve_t1.csv").exists()


def test_cli_phase_space_verbs(tmp_path):
    out = str(tmp_path / "w")
    well = ["--well", "asymmetric", "--e0", "0", "--alpha", "0.9",
            "--beta", "1", "--delta-e", "1", "--grid-nx", "64",
            "--grid-ny", "512"]
    assert main(["wigner", *well, "--times", "T/4", "--out-dir", out]) == 0
    assert main(["marginals", *well, "--times", "T/4", "--out-dir", out]) == 0
    assert main(["negativity", *well, "--times", "0,T/4", "--out-dir", out]) == 0
    assert main(["fringes", *well, "--times", "T/4", "--out-dir", out]) == 0
    assert main(["bench", "--well", "symmetric", "--e0", "-1", "--e1", "-0.9",
                 "--ladder", "401,801", "--out-dir", out]) == 0
    for name in ("wigner_t0.csv", "wigner_t0.ppm", "marginal_x_t0.csv",
                 "negativity.csv", "fringes.csv", "bench_report.txt"):
        assert (tmp_path / "w" / name).exists()


def test_cli_reports_errors(tmp_path, capsys):
    code = main(["potential", "--well", "symmetric", "--e0", "-1", "--e1", "1",
                 "--out-dir", str(tmp_path / "e")])
    assert code == 1
    assert "E1 < 0" in capsys.readouterr().err


def test_cli_scenario_round(tmp_path):
    assert main(["scenario", str(SCENARIO_DIR / "fig2_symmetric.scn"),
                 "--out-dir", str(tmp_path / "s")]) == 0
    assert (tmp_path / "s" / "fig2_symmetric_states.csv").exists()
