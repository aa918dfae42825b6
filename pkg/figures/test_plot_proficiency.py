import csv
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plot_proficiency import FigureSpec, SchemaError, load_series, main, plot_proficiency

FIXTURES = Path(__file__).parent / "fixtures"


def write_csv(path, rows, header=("time_s", "proficiency_r_per_s", "n_runs")):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)


def make_series(path, values, width=0.2, n_runs=2):
    write_csv(path, [(k * width, v, n_runs) for k, v in enumerate(values)])


def test_load_series_converts_seconds_to_minutes(tmp_path):
    p = tmp_path / "a.csv"
    make_series(p, [0.0, 1.0, 2.0], width=30.0)
    minutes, values = load_series(p)
    assert minutes == [0.0, 0.5, 1.0]
    assert values == [0.0, 1.0, 2.0]


def test_missing_column_named(tmp_path):
    p = tmp_path / "bad.csv"
    write_csv(p, [(0.0, 1.0)], header=("time_s", "reward_rate"))
    with pytest.raises(SchemaError, match="proficiency_r_per_s"):
        load_series(p)


def test_unexpected_column_named(tmp_path):
    p = tmp_path / "extra.csv"
    write_csv(p, [(0.0, 1.0, 2, 9)], header=("time_s", "proficiency_r_per_s", "n_runs", "oops"))
    with pytest.raises(SchemaError, match="oops"):
        load_series(p)


def test_flat_zero_series_renders(tmp_path):
    p = tmp_path / "zero.csv"
    make_series(p, [0.0] * 50)
    out = tmp_path / "zero.png"
    plotted = plot_proficiency(FigureSpec([(str(p), "zero")], str(out)))
    assert out.exists()
    assert set(plotted["zero"][1]) == {0.0}


def test_plotted_arrays_equal_csv_contents(tmp_path):
    p = tmp_path / "vals.csv"
    vals = [0.1 * k for k in range(30)]
    make_series(p, vals)
    out = tmp_path / "vals.svg"
    plotted = plot_proficiency(FigureSpec([(str(p), "v")], str(out)))
    minutes, values = plotted["v"]
    assert values == vals
    assert minutes == [k * 0.2 / 60.0 for k in range(30)]
    assert out.exists()


def test_x_axis_maximum_matches_duration(tmp_path):
    p = tmp_path / "dur.csv"
    make_series(p, [0.0] * 100, width=0.2)  # 20 s of data
    plotted = plot_proficiency(FigureSpec([(str(p), "d")], str(tmp_path / "d.png")))
    assert plotted["d"][0][-1] == pytest.approx((100 - 1) * 0.2 / 60.0)


def test_mismatched_bin_widths_rejected(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    make_series(a, [0.0] * 10, width=0.2)
    make_series(b, [0.0] * 10, width=0.5)
    with pytest.raises(ValueError, match="bin width"):
        plot_proficiency(FigureSpec([(str(a), "a"), (str(b), "b")], str(tmp_path / "x.png")))


def test_cli_three_series_one_panel(tmp_path):
    paths = []
    for name in ("pc", "ovc", "multimodal"):
        p = tmp_path / f"{name}.csv"
        make_series(p, [0.01 * k for k in range(20)])
        paths.append(f"{p}:{name}")
    out = tmp_path / "trio.png"
    assert main(["--out", str(out), "--title", "exp2", *paths]) == 0
    assert out.exists() and out.stat().st_size > 0


def test_cli_reports_schema_error(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    write_csv(p, [(0, 0)], header=("time_s", "wrong"))
    assert main(["--out", str(tmp_path / "x.png"), f"{p}:bad"]) == 1
    assert "proficiency_r_per_s" in capsys.readouterr().err  # names the offending column


def test_committed_exp2_fixtures_render(tmp_path):
    trio = [
        (str(FIXTURES / "pc.csv"), "pc"),
        (str(FIXTURES / "ovc.csv"), "ovc"),
        (str(FIXTURES / "multimodal.csv"), "multimodal"),
    ]
    out = tmp_path / "exp2.png"
    plotted = plot_proficiency(FigureSpec(trio, str(out), title="modality comparison"))
    assert out.exists() and out.stat().st_size > 0
    # plotted data must equal the CSV contents after the unit conversion
    for path, label in trio:
        with open(path, newline="") as f:
            rows = list(csv.reader(f))[1:]
        assert plotted[label][0] == [float(r[0]) / 60.0 for r in rows]
        assert plotted[label][1] == [float(r[1]) for r in rows]
