"""From observation to action: desires, composite values, epsilon-greedy.

An observation turns into a list of desires, one per (layer, object): the
cell holding something rewarding, weighted by that reward. The relevant
value-function rows are summed with those weights into a single 4-vector of
action values, and the action is picked epsilon-greedily with a uniform
random tie-break.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .encoding import (
    CellIndex,
    Modality,
    NresMap,
    ResolutionStack,
    UNIT_SQUARE,
    VECTOR_SQUARE,
    Vec2,
    cell_index,
    make_stack,
    ovc_vector,
)
from .learners import LearnerBank, N_ACTIONS
from .waterworld import Action, Observation


class Layer(NamedTuple):
    ref: str       # e.g. "pc_n5", "ovc_n13"
    nmap: NresMap


class Desire(NamedTuple):
    layer_ref: str
    target: CellIndex
    eval_state: CellIndex
    weight: float


@dataclass(frozen=True)
class PolicyConfig:
    epsilon: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class AgentSpec:
    """Declarative agent description: which layers exist and how they learn."""

    modalities: tuple[Modality, ...] = (Modality.PC,)
    resolutions: tuple[int, ...] = (2, 3, 5, 7, 11, 13)
    alpha: float = 0.25
    gamma: float = 0.95
    epsilon: float = 0.1
    control: bool = False  # epsilon=1, no layers, no learning

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must be in [0, 1), got {self.gamma}")
        if not self.control:
            if not self.modalities:
                raise ValueError("agent needs at least one modality")
            if not self.resolutions:
                raise ValueError("agent needs at least one resolution")

    def stacks(self) -> dict[Modality, ResolutionStack]:
        if self.control:
            return {}
        bounds = {Modality.PC: UNIT_SQUARE, Modality.OVC: VECTOR_SQUARE}
        return {m: make_stack(self.resolutions, bounds[m], m) for m in self.modalities}

    def layers(self) -> list[Layer]:
        out = []
        for modality, stack in self.stacks().items():
            for nmap in stack.layers:
                out.append(Layer(f"{modality.value.lower()}_n{nmap.resolution}", nmap))
        return out


def derive_desires(obs: Observation, layers: Sequence[Layer]) -> list[Desire]:
    """One desire per (layer, object), weighted by the object's reward.

    PC layers evaluate from the agent's cell and aim at the object's cell.
    OVC layers evaluate from the relative-vector cell and aim at the
    zero-vector cell, where contact happens.
    """
    desires = []
    agent_pos = obs.agent_pos
    for ref, nmap in layers:
        if nmap.modality is Modality.PC:
            eval_cell = cell_index(agent_pos, nmap)
            for _, pos, valence in obs.objects:
                if valence:
                    desires.append(Desire(ref, cell_index(pos, nmap), eval_cell, valence))
        else:
            zero_cell = cell_index(Vec2(0.0, 0.0), nmap)
            for _, pos, valence in obs.objects:
                if valence:
                    rel = ovc_vector(pos, agent_pos)
                    desires.append(Desire(ref, zero_cell, cell_index(rel, nmap), valence))
    return desires


def composite_q(desires: Sequence[Desire], banks: Mapping[str, LearnerBank]) -> np.ndarray:
    """Weighted sum of the desires' value rows; zeros when nothing is desired."""
    values = np.zeros(N_ACTIONS)
    for ref, target, eval_state, weight in desires:
        bank = banks.get(ref)
        if bank is None:
            raise KeyError(f"no bank for layer {ref!r}")
        values += weight * bank.q[eval_state.flat, target.flat]
    return values


def select_action(values, policy: PolicyConfig, rng: random.Random) -> Action:
    """Epsilon-greedy over 4 action values, ties broken uniformly."""
    if policy.epsilon > 0.0 and rng.random() < policy.epsilon:
        return Action(rng.randrange(N_ACTIONS))
    best = values[0]
    ties = [0]
    for i in range(1, N_ACTIONS):
        v = values[i]
        if v > best:
            best = v
            ties = [i]
        elif v == best:
            ties.append(i)
    if len(ties) == 1:
        return Action(ties[0])
    return Action(ties[rng.randrange(len(ties))])
