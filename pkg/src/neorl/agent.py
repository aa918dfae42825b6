"""Wires maps, banks, and stream trackers into one navigating agent.

Each layer owns a bank. PC layers learn from a single stream (the agent's
own cell trajectory); OVC layers share one bank across one stream per object
slot, pooling relative-vector experience. Object respawns are detected by id
change and reset the affected OVC streams so teleports are never learned.
"""

from __future__ import annotations

import random

from .behavior import (
    AgentSpec,
    PolicyConfig,
    composite_q,
    derive_desires,
    select_action,
)
from .encoding import Modality, cell_index, ovc_vector
from .learners import LearnerBank, StreamTracker, observe
from .waterworld import Action, Observation


class NeoRLAgent:
    """One agent instance for one run: acts, then learns from what changed."""

    def __init__(self, spec: AgentSpec, object_count: int, seed: int):
        self.spec = spec
        self.rng = random.Random(seed)
        self.object_count = object_count
        self.layers = [] if spec.control else spec.layers()
        self.banks: dict[str, LearnerBank] = {}
        self._trackers: dict[str, list[StreamTracker]] = {}
        for ref, nmap in self.layers:
            self.banks[ref] = LearnerBank(ref, nmap.n_cells, spec.alpha, spec.gamma)
            n_streams = 1 if nmap.modality is Modality.PC else object_count
            self._trackers[ref] = [StreamTracker(i) for i in range(n_streams)]
        epsilon = 1.0 if spec.control else spec.epsilon
        self.policy = PolicyConfig(epsilon=epsilon, seed=seed)
        self._last_ids: tuple[int, ...] | None = None

    def act(self, obs: Observation) -> Action:
        if self.spec.control:
            return Action(self.rng.randrange(4))
        desires = derive_desires(obs, self.layers)
        return select_action(composite_q(desires, self.banks), self.policy, self.rng)

    def learn(self, obs: Observation, action: Action) -> None:
        """Feed the post-step observation and the action that produced it."""
        if self.spec.control:
            return
        ids = tuple(o.id for o in obs.objects)
        respawned = None
        if self._last_ids is not None and ids != self._last_ids:
            respawned = [i for i, (a, b) in enumerate(zip(ids, self._last_ids)) if a != b]
        self._last_ids = ids

        agent_pos = obs.agent_pos
        for ref, nmap in self.layers:
            bank = self.banks[ref]
            trackers = self._trackers[ref]
            if nmap.modality is Modality.PC:
                observe(trackers[0], bank, cell_index(agent_pos, nmap), action)
            else:
                if respawned:
                    for slot in respawned:
                        trackers[slot].reset()
                for slot, view in enumerate(obs.objects):
                    rel = ovc_vector(view.pos, agent_pos)
                    observe(trackers[slot], bank, cell_index(rel, nmap), action)
