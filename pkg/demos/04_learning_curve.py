"""A small learning-curve experiment
==================================

Runs a handful of isolated seeded runs for one agent, bins the reward into
0.2 s intervals, averages across runs, smooths, and writes the aggregate CSV
the plotting script consumes. Desk-scale settings keep this to ~1 minute.
"""

from pathlib import Path

from neorl import AgentSpec, Modality, RunConfig, run_experiment

cfg = RunConfig(
    agent=AgentSpec(modalities=(Modality.PC, Modality.OVC)),
    duration_s=240.0,  # 4 sim-minutes per run
    n_runs=4,
    base_seed=7,
)

out = Path("demo_out")
series = run_experiment(cfg, out_dir=out, threads=1)

n = len(series.values)
quarters = [series.values[i * n // 4 : (i + 1) * n // 4].mean() for i in range(4)]
print("mean proficiency by quarter [R/s]:",
      "  ".join(f"{q:+.3f}" for q in quarters))
print(f"aggregate written to {out / 'aggregate.csv'}")
print("plot it with:  python3 figures/plot_proficiency.py --out demo_out/curve.png "
      f"{out / 'aggregate.csv'}:multimodal")
