"""A value-function bank on a toy grid
====================================

Every cell of a layer owns a little learner: the action values for reaching
that cell. All of them train from the same behavior stream, and an update
fires only when the discretized state changes. Here a scripted walk on a
5 x 5 grid feeds the bank until it converges, and the learned values match
independent value iteration.
"""

import numpy as np

from neorl import CellIndex, LearnerBank, Transition
from neorl.selfcheck import grid_moves, value_iteration_q

N = 5
GAMMA = 0.95

bank = LearnerBank("demo_grid", N * N, alpha=0.5, gamma=GAMMA)
moves = grid_moves(N)
print(f"{len(moves)} possible cell-to-cell moves on a {N}x{N} grid")

sweeps = 0
while True:
    before = bank.q.copy()
    for s, a, s2 in moves:
        bank.update(Transition(0, CellIndex(s // N, s % N, s), a, CellIndex(s2 // N, s2 % N, s2)))
    sweeps += 1
    if np.abs(bank.q - before).max() < 1e-9:
        break
print(f"bank converged after {sweeps} sweeps")

# Value surface toward the center cell: gamma^(steps-1) rings.
target = 12
v = bank.q[:, target, :].max(axis=1).reshape(N, N)
print(f"\nvalue toward cell {target} (center), max over actions:")
print(np.array2string(v, precision=3))

oracle = value_iteration_q(N, target, GAMMA)
err = np.abs(bank.q[:, target, :] - oracle).max()
print(f"\nmax deviation from value iteration: {err:.2e}")
