"""WaterWorld under a random policy
=================================

Three valenced objects drift through the unit square; the agent accelerates
N/S/E/W with inertia and damping. Touching an object pays its valence and
respawns it. This rollout shows the raw event stream and the encounter-rate
calibration used to anchor the default constants.
"""

import random

from neorl import Action, Env, EnvConfig, random_policy_calibration

cfg = EnvConfig(seed=2024)
env = Env(cfg)
rng = random.Random(0)

print("initial board:")
for o in env.observation().objects:
    tag = "green" if o.valence > 0 else "red"
    print(f"  object {o.id} ({tag}) at ({o.pos.x:.2f}, {o.pos.y:.2f})")

minutes = 2
events = []
for _ in range(int(minutes * 60 / cfg.dt)):
    _, ev = env.step(Action(rng.randrange(4)))
    events.extend(ev)

greens = sum(1 for e in events if e.value > 0)
print(f"\n{minutes} minutes of random play: {len(events)} encounters "
      f"({greens} green, {len(events) - greens} red), net score {env.score:+.0f}")

# The default constants are tuned so a random agent meets an object every
# several seconds; this is the calibration the CLI `calibrate` command runs.
interval = random_policy_calibration(EnvConfig(seed=7), 600)
print(f"mean random-policy encounter interval: {interval:.1f} s")
