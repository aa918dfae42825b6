"""Banks of per-cell action-value functions, learned off-policy.

One bank per map layer. The bank keeps a dense table q[state, target, action]
holding, for every cell of the layer, the value of each action toward
reaching every other cell. A single behavior stream feeds all targets at
once: each observed transition performs a max-bootstrap update of every
target column, with cumulant 1 and termination exactly when the transition
lands on that target.

Updates are effect-driven. A transition exists only when the discretized
state actually changes; ticks that stay inside one cell touch nothing, and
respawns reset the stream so teleports never become transitions.
"""

from __future__ import annotations

import struct
from typing import NamedTuple, Optional

import numpy as np

from .encoding import CellIndex

N_ACTIONS = 4


class Transition(NamedTuple):
    stream_id: int
    s: CellIndex
    a: int
    s_next: CellIndex


class LearnerBank:
    """Dense q[state, target, action] table for one layer."""

    __slots__ = ("map_id", "n_cells", "alpha", "gamma", "q")

    def __init__(self, map_id: str, n_cells: int, alpha: float = 0.25, gamma: float = 0.95):
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {alpha}")
        if not 0.0 <= gamma < 1.0:
            raise ValueError(f"gamma must be in [0, 1), got {gamma}")
        self.map_id = map_id
        self.n_cells = n_cells
        self.alpha = alpha
        self.gamma = gamma
        self.q = np.zeros((n_cells, n_cells, N_ACTIONS))

    def update_flat(self, s: int, a: int, s_next: int) -> None:
        """Apply one transition to every target column.

        For each target d: cumulant 1 and termination if the transition
        arrived at d, otherwise cumulant 0 and a discounted max bootstrap
        from the successor state. Only the entries q[s, :, a] move.
        """
        q = self.q
        target = self.gamma * q[s_next].max(axis=1)
        target[s_next] = 1.0  # arrival pays 1; continuation cut at the target
        row = q[s, :, a]
        row += self.alpha * (target - row)

    def update(self, t: Transition) -> None:
        if t.s.flat == t.s_next.flat:
            raise ValueError("self-transition passed to update; observe() filters these")
        self.update_flat(t.s.flat, t.a, t.s_next.flat)

    def greedy_values(self, s: CellIndex, d: CellIndex) -> np.ndarray:
        """Copy of the 4 action values from s toward target d."""
        return self.q[s.flat, d.flat].copy()


class StreamTracker:
    """Last seen cell of one experience stream, for change detection."""

    __slots__ = ("stream_id", "last_cell", "last_action")

    def __init__(self, stream_id: int = 0):
        self.stream_id = stream_id
        self.last_cell: Optional[CellIndex] = None
        self.last_action: Optional[int] = None

    def reset(self) -> None:
        self.last_cell = None
        self.last_action = None


def reset_stream(tracker: StreamTracker) -> None:
    tracker.reset()


def observe(
    tracker: StreamTracker,
    bank: LearnerBank,
    current_cell: CellIndex,
    action_in_effect: int,
) -> Optional[Transition]:
    """Feed one tick of one stream; update the bank only on a cell change.

    The first call after a reset primes the tracker without emitting, so a
    respawned stream never produces a teleport transition.
    """
    prev = tracker.last_cell
    tracker.last_cell = current_cell
    tracker.last_action = action_in_effect
    if prev is None or prev.flat == current_cell.flat:
        return None
    t = Transition(tracker.stream_id, prev, action_in_effect, current_cell)
    bank.update(t)
    return t


_SNAPSHOT_MAGIC = b"NEOQ"
_SNAPSHOT_VERSION = 1


def save_snapshot(bank: LearnerBank, path) -> None:
    """Binary q-table dump with a versioned header, for debugging."""
    map_id = bank.map_id.encode("utf-8")
    with open(path, "wb") as f:
        f.write(_SNAPSHOT_MAGIC)
        f.write(struct.pack("<IH", _SNAPSHOT_VERSION, len(map_id)))
        f.write(map_id)
        f.write(struct.pack("<Idd", bank.n_cells, bank.alpha, bank.gamma))
        f.write(np.ascontiguousarray(bank.q).tobytes())


def load_snapshot(path) -> LearnerBank:
    with open(path, "rb") as f:
        if f.read(4) != _SNAPSHOT_MAGIC:
            raise ValueError(f"not a q-table snapshot: {path}")
        version, id_len = struct.unpack("<IH", f.read(6))
        if version != _SNAPSHOT_VERSION:
            raise ValueError(f"unsupported snapshot version {version}")
        map_id = f.read(id_len).decode("utf-8")
        n_cells, alpha, gamma = struct.unpack("<Idd", f.read(20))
        bank = LearnerBank(map_id, n_cells, alpha, gamma)
        table = np.frombuffer(f.read(), dtype=np.float64)
        bank.q = table.reshape(n_cells, n_cells, N_ACTIONS).copy()
        return bank
