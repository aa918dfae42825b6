#!/usr/bin/env python3
"""Render proficiency figures from aggregate experiment CSVs.

Each input CSV follows the harness contract (time_s, proficiency_r_per_s,
n_runs). Curves are drawn in one panel with minutes on the x-axis and reward
per second on the y-axis; the only transform applied to the data is the
seconds-to-minutes conversion.

Usage:
    plot_proficiency.py --out FIG.png [--title TITLE] CSV:LABEL [CSV:LABEL ...]

The image format follows the output extension (png, svg, pdf, ...).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_HEADER = ["time_s", "proficiency_r_per_s", "n_runs"]


class SchemaError(ValueError):
    pass


@dataclass
class FigureSpec:
    series: list[tuple[str, str]]  # (csv_path, label)
    output_path: str
    title: str = ""

    def __post_init__(self):
        if not self.series:
            raise ValueError("need at least one CSV:LABEL series")


def load_series(csv_path) -> tuple[list[float], list[float]]:
    """Read (minutes, reward-per-second) columns from one aggregate CSV."""
    with open(csv_path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise SchemaError(f"{csv_path}: empty file")
    header = rows[0]
    for col in EXPECTED_HEADER:
        if col not in header:
            raise SchemaError(f"{csv_path}: missing column {col!r}")
    for col in header:
        if col not in EXPECTED_HEADER:
            raise SchemaError(f"{csv_path}: unexpected column {col!r}")
    t_idx = header.index("time_s")
    v_idx = header.index("proficiency_r_per_s")
    minutes = [float(r[t_idx]) / 60.0 for r in rows[1:]]
    values = [float(r[v_idx]) for r in rows[1:]]
    return minutes, values


def _bin_width(minutes) -> float:
    return minutes[1] - minutes[0] if len(minutes) > 1 else 0.0


def plot_proficiency(spec: FigureSpec) -> dict[str, tuple[list[float], list[float]]]:
    """Write the figure; return the plotted arrays per label for inspection."""
    plotted = {}
    widths = set()
    for path, label in spec.series:
        minutes, values = load_series(path)
        plotted[label] = (minutes, values)
        widths.add(round(_bin_width(minutes), 12))
    if len(widths) > 1:
        raise ValueError(f"input CSVs disagree on bin width: {sorted(widths)}")

    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, (minutes, values) in plotted.items():
        ax.plot(minutes, values, label=label, linewidth=1.4)
    ax.set_xlabel("minutes since agent initiation")
    ax.set_ylabel("proficiency [R/s]")
    if spec.title:
        ax.set_title(spec.title)
    ax.axhline(0.0, color="gray", linewidth=0.6, alpha=0.6)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_path)
    plt.close(fig)
    return plotted


def parse_args(argv=None) -> FigureSpec:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="", help="panel title")
    parser.add_argument("series", nargs="+", metavar="CSV:LABEL",
                        help="aggregate CSV and its legend label")
    args = parser.parse_args(argv)
    pairs = []
    for item in args.series:
        path, sep, label = item.rpartition(":")
        if not sep or not path:
            parser.error(f"expected CSV:LABEL, got {item!r}")
        pairs.append((path, label))
    return FigureSpec(pairs, args.out, args.title)


def main(argv=None) -> int:
    spec = parse_args(argv)
    try:
        plot_proficiency(spec)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {spec.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
