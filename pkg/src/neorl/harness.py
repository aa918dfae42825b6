"""Seeded runs, reward binning, cross-run averaging, low-pass smoothing, CSV.

A run is fully determined by (config, run index): the environment seed is
base_seed XOR run index and the agent starts from zero knowledge every time,
so batches are reproducible and individual runs re-runnable in isolation.
Proficiency is reward per second: events are summed over fixed-width bins,
divided by the bin width, averaged pointwise across runs, then smoothed by a
causal first-order Butterworth low-pass filter.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .agent import NeoRLAgent
from .behavior import AgentSpec
from .waterworld import Env, EnvConfig, RewardEvent

#: Decorrelates the agent's action/tie-break RNG from the env's spawn RNG.
_AGENT_SEED_SALT = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class FilterConfig:
    order: int = 1
    cutoff_normalized: float = 0.01  # cycles per sample, (0, 0.5)

    def __post_init__(self):
        if self.order != 1:
            raise ValueError(f"only first-order smoothing is supported, got order={self.order}")
        if not 0.0 < self.cutoff_normalized < 0.5:
            raise ValueError(f"cutoff_normalized must be in (0, 0.5), got {self.cutoff_normalized}")


@dataclass(frozen=True)
class RunConfig:
    env: EnvConfig = field(default_factory=EnvConfig)
    agent: AgentSpec = field(default_factory=AgentSpec)
    duration_s: float = 1200.0
    bin_width_s: float = 0.2
    n_runs: int = 20
    base_seed: int = 0
    filter: FilterConfig = field(default_factory=FilterConfig)

    def __post_init__(self):
        if self.duration_s < 0:
            raise ValueError(f"duration_s must be >= 0, got {self.duration_s}")
        if self.bin_width_s <= 0:
            raise ValueError(f"bin_width_s must be positive, got {self.bin_width_s}")
        if self.n_runs < 1:
            raise ValueError(f"n_runs must be >= 1, got {self.n_runs}")


@dataclass
class ProficiencySeries:
    bin_width_s: float
    values: np.ndarray  # reward per second, one entry per bin
    n_runs_averaged: int

    def __len__(self) -> int:
        return len(self.values)


def n_bins(duration_s: float, bin_width_s: float) -> int:
    # ceil of the true ratio; the epsilon absorbs float division overshoot
    return int(math.ceil(duration_s / bin_width_s - 1e-9))


def run_single(cfg: RunConfig, run_idx: int) -> list[RewardEvent]:
    """One isolated run: fresh env, fresh zero-knowledge agent, event log."""
    seed = cfg.base_seed ^ run_idx
    env = Env(replace(cfg.env, seed=seed))
    agent = NeoRLAgent(cfg.agent, cfg.env.object_count, seed ^ _AGENT_SEED_SALT)
    n_ticks = round(cfg.duration_s / cfg.env.dt)
    events: list[RewardEvent] = []
    obs = env.observation()
    for _ in range(n_ticks):
        action = agent.act(obs)
        obs, new_events = env.step(action)
        agent.learn(obs, action)
        if new_events:
            events.extend(new_events)
    return events


def bin_events(events, duration_s: float, bin_width_s: float) -> ProficiencySeries:
    """Sum event values per bin and scale to reward per second."""
    n = n_bins(duration_s, bin_width_s)
    sums = np.zeros(n)
    for t, value in events:
        k = int(t / bin_width_s)
        if k >= n:
            k = n - 1
        sums[k] += value
    return ProficiencySeries(bin_width_s, sums / bin_width_s, 1)


def average_series(series_list) -> ProficiencySeries:
    if not series_list:
        raise ValueError("nothing to average")
    first = series_list[0]
    for s in series_list[1:]:
        if len(s) != len(first) or s.bin_width_s != first.bin_width_s:
            raise ValueError("series shapes differ; cannot average")
    stacked = np.stack([s.values for s in series_list])
    return ProficiencySeries(first.bin_width_s, stacked.mean(axis=0), len(series_list))


def butter_coefficients(cutoff_normalized: float) -> tuple[float, float, float]:
    """First-order low-pass (b0, b1, a1) via prewarped bilinear transform."""
    if not 0.0 < cutoff_normalized < 0.5:
        raise ValueError(f"cutoff_normalized must be in (0, 0.5), got {cutoff_normalized}")
    k = math.tan(math.pi * cutoff_normalized)
    b0 = k / (k + 1.0)
    a1 = (k - 1.0) / (k + 1.0)
    return b0, b0, a1


def butterworth_lowpass(series: ProficiencySeries, fc: FilterConfig) -> ProficiencySeries:
    """Causal y[n] = b0 x[n] + b1 x[n-1] - a1 y[n-1], steady-state start.

    Initial conditions assume the signal held x[0] forever before n=0, so a
    constant input passes through unchanged from the very first sample.
    """
    x = series.values
    if len(x) < 2:
        raise ValueError("series too short to filter")
    b0, b1, a1 = butter_coefficients(fc.cutoff_normalized)
    y = np.empty_like(x)
    x_prev = x[0]
    y_prev = x[0]
    for i, xi in enumerate(x):
        y_prev = b0 * xi + b1 * x_prev - a1 * y_prev
        x_prev = xi
        y[i] = y_prev
    return ProficiencySeries(series.bin_width_s, y, series.n_runs_averaged)


def _run_events(args) -> list[RewardEvent]:
    cfg, run_idx = args
    return run_single(cfg, run_idx)


def default_threads() -> int:
    env_val = os.environ.get("NEORL_THREADS")
    if env_val:
        return max(1, int(env_val))
    return os.cpu_count() or 1


def run_experiment(
    cfg: RunConfig,
    out_dir=None,
    threads: int | None = None,
    write_raw: bool = False,
) -> ProficiencySeries:
    """n_runs independent runs -> binned, averaged, filtered series (+ CSVs)."""
    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or cfg.n_runs == 1:
        per_run = [run_single(cfg, k) for k in range(cfg.n_runs)]
    else:
        jobs = [(cfg, k) for k in range(cfg.n_runs)]
        with ProcessPoolExecutor(max_workers=min(threads, cfg.n_runs)) as pool:
            per_run = list(pool.map(_run_events, jobs))
    binned = [bin_events(ev, cfg.duration_s, cfg.bin_width_s) for ev in per_run]
    filtered = butterworth_lowpass(average_series(binned), cfg.filter)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_aggregate_csv(filtered, out_dir / "aggregate.csv")
        if write_raw:
            write_raw_csv(per_run, out_dir / "raw.csv")
    return filtered


def write_aggregate_csv(series: ProficiencySeries, path) -> None:
    try:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["time_s", "proficiency_r_per_s", "n_runs"])
            for k, v in enumerate(series.values):
                w.writerow([repr(k * series.bin_width_s), repr(float(v)), series.n_runs_averaged])
    except OSError as e:
        raise OSError(f"failed writing {path}: {e}") from e


def write_raw_csv(per_run_events, path) -> None:
    try:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["run_idx", "time_s", "reward"])
            for run_idx, events in enumerate(per_run_events):
                for t, value in events:
                    w.writerow([run_idx, repr(t), repr(value)])
    except OSError as e:
        raise OSError(f"failed writing {path}: {e}") from e


def read_aggregate_csv(path) -> ProficiencySeries:
    """Inverse of write_aggregate_csv, for tooling and tests."""
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header = rows[0]
    if header != ["time_s", "proficiency_r_per_s", "n_runs"]:
        raise ValueError(f"unexpected aggregate CSV header: {header}")
    times = [float(r[0]) for r in rows[1:]]
    values = np.array([float(r[1]) for r in rows[1:]])
    n_runs = int(rows[1][2]) if len(rows) > 1 else 0
    width = times[1] - times[0] if len(times) > 1 else 0.0
    return ProficiencySeries(width, values, n_runs)
