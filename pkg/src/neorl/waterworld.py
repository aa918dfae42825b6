"""Deterministic WaterWorld arena.

An inertial agent accelerates in the four compass directions inside the unit
square while valenced circular objects drift ballistically, reflecting off
the walls. Touching an object emits a reward event (+1 green, -1 red) and
respawns it elsewhere with a fresh color and velocity. If a catch leaves the
board without a single green object, the whole board is respawned, so there
is always something worth chasing.

Everything is driven by one seeded RNG: identical configs produce identical
runs, byte for byte.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

from .encoding import Vec2


class Action(IntEnum):
    N = 0
    S = 1
    E = 2
    W = 3


#: Unit thrust direction per action, indexed by Action value.
ACTION_DIRS = ((0.0, 1.0), (0.0, -1.0), (1.0, 0.0), (-1.0, 0.0))


@dataclass(frozen=True)
class EnvConfig:
    dt: float = 1.0 / 30.0
    thrust: float = 0.3          # units/s^2 while an action is held
    damping: float = 0.975       # per-tick velocity decay factor
    agent_radius: float = 0.03
    object_radius: float = 0.03
    object_count: int = 3
    speed_range: tuple[float, float] = (0.03, 0.08)
    spawn_min_dist: float = 0.1  # objects never spawn closer to the agent
    green_prob: float = 0.5      # chance a spawned object is desirable
    board_reset: bool = True     # respawn the board when no green remains
    seed: int = 0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.object_count < 1:
            raise ValueError(f"object_count must be >= 1, got {self.object_count}")
        lo, hi = self.speed_range
        if lo > hi or lo < 0:
            raise ValueError(f"bad speed_range {self.speed_range}")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError(f"damping must be in (0, 1], got {self.damping}")
        if self.agent_radius <= 0 or self.object_radius <= 0:
            raise ValueError("radii must be positive")
        if not 0.0 <= self.green_prob <= 1.0:
            raise ValueError(f"green_prob must be in [0, 1], got {self.green_prob}")
        if self.thrust < 0 or self.spawn_min_dist < 0:
            raise ValueError("thrust and spawn_min_dist must be non-negative")


@dataclass
class AgentBody:
    x: float
    y: float
    vx: float
    vy: float
    radius: float

    @property
    def pos(self) -> Vec2:
        return Vec2(self.x, self.y)

    @property
    def vel(self) -> Vec2:
        return Vec2(self.vx, self.vy)


@dataclass
class FloatObject:
    id: int
    x: float
    y: float
    vx: float
    vy: float
    radius: float
    valence: float  # +1.0 desirable, -1.0 aversive

    @property
    def pos(self) -> Vec2:
        return Vec2(self.x, self.y)

    @property
    def vel(self) -> Vec2:
        return Vec2(self.vx, self.vy)


class RewardEvent(NamedTuple):
    time: float
    value: float


class ObjectView(NamedTuple):
    id: int
    pos: Vec2
    valence: float


class Observation(NamedTuple):
    agent_pos: Vec2
    objects: tuple[ObjectView, ...]


class Env:
    """Single-run simulator state; step() advances one dt."""

    def __init__(self, cfg: EnvConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.agent = AgentBody(0.5, 0.5, 0.0, 0.0, cfg.agent_radius)
        self._next_id = 0
        self._ticks = 0
        self.score = 0.0
        self.objects = [self.spawn_object() for _ in range(cfg.object_count)]
        self._ensure_green()

    @property
    def time(self) -> float:
        return self._ticks * self.cfg.dt

    def observation(self) -> Observation:
        return Observation(
            self.agent.pos,
            tuple(ObjectView(o.id, o.pos, o.valence) for o in self.objects),
        )

    def spawn_object(self) -> FloatObject:
        """Fresh object: random color, position away from the agent, drift."""
        cfg = self.cfg
        rng = self.rng
        ax, ay = self.agent.x, self.agent.y
        for _ in range(1000):
            x = rng.uniform(0.0, 1.0)
            y = rng.uniform(0.0, 1.0)
            if math.hypot(x - ax, y - ay) >= cfg.spawn_min_dist:
                break
        else:
            raise RuntimeError(
                f"arena too crowded: no spawn point {cfg.spawn_min_dist} away from agent"
            )
        valence = 1.0 if rng.random() < cfg.green_prob else -1.0
        theta = rng.uniform(0.0, 2.0 * math.pi)
        speed = rng.uniform(*cfg.speed_range)
        obj = FloatObject(
            self._next_id, x, y,
            speed * math.cos(theta), speed * math.sin(theta),
            cfg.object_radius, valence,
        )
        self._next_id += 1
        return obj

    def _ensure_green(self) -> None:
        # Board-level respawn: an all-red board leaves nothing to catch and
        # nothing that ever respawns, so redraw until a green exists.
        if not self.cfg.board_reset or self.cfg.green_prob <= 0.0:
            return
        for _ in range(1000):
            if any(o.valence > 0 for o in self.objects):
                return
            self.objects = [self.spawn_object() for _ in range(self.cfg.object_count)]
        raise RuntimeError("board respawn failed to produce a green object")

    def step(self, action: Action) -> tuple[Observation, list[RewardEvent]]:
        cfg = self.cfg
        dt = cfg.dt
        t_event = self.time  # events carry the time at the start of the tick
        ag = self.agent

        dirx, diry = ACTION_DIRS[action]
        ag.vx = (ag.vx + cfg.thrust * dirx * dt) * cfg.damping
        ag.vy = (ag.vy + cfg.thrust * diry * dt) * cfg.damping
        ag.x += ag.vx * dt
        ag.y += ag.vy * dt
        # Walls stop the agent: clamp position, zero the normal velocity.
        if ag.x < 0.0:
            ag.x, ag.vx = 0.0, 0.0
        elif ag.x > 1.0:
            ag.x, ag.vx = 1.0, 0.0
        if ag.y < 0.0:
            ag.y, ag.vy = 0.0, 0.0
        elif ag.y > 1.0:
            ag.y, ag.vy = 0.0, 0.0

        for o in self.objects:
            o.x += o.vx * dt
            o.y += o.vy * dt
            # Specular wall reflection, |vel| preserved exactly.
            if o.x < 0.0:
                o.x, o.vx = -o.x, -o.vx
            elif o.x > 1.0:
                o.x, o.vx = 2.0 - o.x, -o.vx
            if o.y < 0.0:
                o.y, o.vy = -o.y, -o.vy
            elif o.y > 1.0:
                o.y, o.vy = 2.0 - o.y, -o.vy

        events = []
        contact = cfg.agent_radius + cfg.object_radius
        contact_sq = contact * contact
        caught = False
        for i, o in enumerate(self.objects):
            dx = o.x - ag.x
            dy = o.y - ag.y
            if dx * dx + dy * dy < contact_sq:
                events.append(RewardEvent(t_event, o.valence))
                self.score += o.valence
                # Replacement spawns beyond spawn_min_dist, so it cannot
                # re-trigger within this same tick.
                self.objects[i] = self.spawn_object()
                caught = True
        if caught:
            self._ensure_green()

        self._ticks += 1
        return self.observation(), events


def random_policy_calibration(cfg: EnvConfig, duration_s: float) -> float:
    """Mean seconds between reward events under uniform random actions."""
    if duration_s < 600:
        raise ValueError("calibration needs duration_s >= 600 for a stable mean")
    env = Env(cfg)
    act_rng = random.Random(cfg.seed ^ 0x5DEECE66D)
    n_ticks = round(duration_s / cfg.dt)
    n_events = 0
    for _ in range(n_ticks):
        _, events = env.step(Action(act_rng.randrange(4)))
        n_events += len(events)
    if n_events == 0:
        raise RuntimeError("no encounters; check constants")
    return duration_s / n_events
