"""JSON run configs: strict loading, full-default dumping, named presets.

A config file mirrors RunConfig/EnvConfig/AgentSpec/FilterConfig; omitted
keys take the dataclass defaults, unknown keys are rejected by name so typos
cannot silently change an experiment. dump_config(load_config(doc)) is the
fully resolved document and loads back to the identical config.
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

from .behavior import AgentSpec
from .encoding import Modality
from .harness import FilterConfig, RunConfig
from .waterworld import EnvConfig


class ConfigError(ValueError):
    pass


_ENV_KEYS = {
    "dt", "thrust", "damping", "agent_radius", "object_radius", "object_count",
    "speed_range", "spawn_min_dist", "green_prob", "board_reset", "seed",
}
_AGENT_KEYS = {"modalities", "resolutions", "alpha", "gamma", "epsilon", "control"}
_FILTER_KEYS = {"order", "cutoff_normalized"}
_RUN_KEYS = {"env", "agent", "duration_s", "bin_width_s", "n_runs", "base_seed", "filter"}


def _check_keys(doc: dict, allowed: set, where: str) -> None:
    for key in doc:
        if key not in allowed:
            raise ConfigError(f"unknown config key {key!r} in {where}")


def _parse_env(doc: dict) -> EnvConfig:
    _check_keys(doc, _ENV_KEYS, "env")
    kwargs = dict(doc)
    if "speed_range" in kwargs:
        kwargs["speed_range"] = tuple(kwargs["speed_range"])
    try:
        return EnvConfig(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad env config: {e}") from e


def _parse_agent(doc: dict) -> AgentSpec:
    _check_keys(doc, _AGENT_KEYS, "agent")
    kwargs = dict(doc)
    if "modalities" in kwargs:
        try:
            kwargs["modalities"] = tuple(Modality(m) for m in kwargs["modalities"])
        except ValueError as e:
            raise ConfigError(f"bad modality: {e}") from e
    if "resolutions" in kwargs:
        kwargs["resolutions"] = tuple(int(n) for n in kwargs["resolutions"])
    try:
        return AgentSpec(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad agent config: {e}") from e


def _parse_filter(doc: dict) -> FilterConfig:
    _check_keys(doc, _FILTER_KEYS, "filter")
    try:
        return FilterConfig(**doc)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad filter config: {e}") from e


def parse_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    _check_keys(doc, _RUN_KEYS, "config root")
    kwargs = {}
    if "env" in doc:
        kwargs["env"] = _parse_env(doc["env"])
    if "agent" in doc:
        kwargs["agent"] = _parse_agent(doc["agent"])
    if "filter" in doc:
        kwargs["filter"] = _parse_filter(doc["filter"])
    for key in ("duration_s", "bin_width_s", "n_runs", "base_seed"):
        if key in doc:
            kwargs[key] = doc[key]
    try:
        return RunConfig(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad run config: {e}") from e


def load_config(path) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}") from e
    return parse_config(doc)


def dump_config(cfg: RunConfig) -> dict:
    """Fully resolved, JSON-ready mirror of cfg; parse_config round-trips it."""
    return {
        "env": {
            "dt": cfg.env.dt,
            "thrust": cfg.env.thrust,
            "damping": cfg.env.damping,
            "agent_radius": cfg.env.agent_radius,
            "object_radius": cfg.env.object_radius,
            "object_count": cfg.env.object_count,
            "speed_range": list(cfg.env.speed_range),
            "spawn_min_dist": cfg.env.spawn_min_dist,
            "green_prob": cfg.env.green_prob,
            "board_reset": cfg.env.board_reset,
            "seed": cfg.env.seed,
        },
        "agent": {
            "modalities": [m.value for m in cfg.agent.modalities],
            "resolutions": list(cfg.agent.resolutions),
            "alpha": cfg.agent.alpha,
            "gamma": cfg.agent.gamma,
            "epsilon": cfg.agent.epsilon,
            "control": cfg.agent.control,
        },
        "duration_s": cfg.duration_s,
        "bin_width_s": cfg.bin_width_s,
        "n_runs": cfg.n_runs,
        "base_seed": cfg.base_seed,
        "filter": {
            "order": cfg.filter.order,
            "cutoff_normalized": cfg.filter.cutoff_normalized,
        },
    }


def save_config(cfg: RunConfig, path) -> None:
    Path(path).write_text(json.dumps(dump_config(cfg), indent=2) + "\n")


# ---------------------------------------------------------------------------
# Presets

PRIME_RESOLUTIONS = (2, 3, 5, 7, 11, 13)
SWEEP_RESOLUTIONS = (5, 10, 15, 20, 25, 30, 35, 40)

PRESETS = ("exp1_pc", "exp1_ovc", "exp2_multimodal", "resolution_sweep", "control")

_DESK_RUNS = 20
_DESK_DURATION_S = 1200.0
_SWEEP_DURATION_S = 900.0


def _agent(modalities, resolutions, control=False) -> AgentSpec:
    if control:
        return AgentSpec(control=True)
    return AgentSpec(modalities=tuple(modalities), resolutions=tuple(resolutions))


def _mono_modality_variants(modality: Modality) -> dict[str, AgentSpec]:
    tag = modality.value.lower()
    variants = {f"{tag}_multires": _agent((modality,), PRIME_RESOLUTIONS)}
    for n in PRIME_RESOLUTIONS:
        variants[f"{tag}_n{n}"] = _agent((modality,), (n,))
    return variants


def preset_configs(name: str, n_runs=None, base_seed=None) -> dict[str, RunConfig]:
    """Expand a preset into named RunConfigs, one CSV per entry."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    env = EnvConfig()
    duration = _DESK_DURATION_S
    if name == "exp1_pc":
        agents = _mono_modality_variants(Modality.PC)
    elif name == "exp1_ovc":
        agents = _mono_modality_variants(Modality.OVC)
    elif name == "exp2_multimodal":
        agents = {
            "pc": _agent((Modality.PC,), PRIME_RESOLUTIONS),
            "ovc": _agent((Modality.OVC,), PRIME_RESOLUTIONS),
            "multimodal": _agent((Modality.PC, Modality.OVC), PRIME_RESOLUTIONS),
        }
    elif name == "resolution_sweep":
        env = replace(env, object_count=1, green_prob=1.0)
        duration = _SWEEP_DURATION_S
        agents = {f"pc_n{n}": _agent((Modality.PC,), (n,)) for n in SWEEP_RESOLUTIONS}
        agents["control"] = _agent((), (), control=True)
    else:  # control
        agents = {"control": _agent((), (), control=True)}

    runs = _DESK_RUNS if n_runs is None else n_runs
    seed = 0 if base_seed is None else base_seed
    return {
        variant: RunConfig(env=env, agent=spec, duration_s=duration, n_runs=runs, base_seed=seed)
        for variant, spec in agents.items()
    }
