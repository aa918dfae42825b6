import random
from collections import Counter

import numpy as np
import pytest

from neorl import (
    AgentSpec,
    CellIndex,
    LearnerBank,
    Modality,
    Observation,
    ObjectView,
    PolicyConfig,
    Vec2,
    cell_index,
    composite_q,
    derive_desires,
    ovc_vector,
    select_action,
)
from neorl.waterworld import Action


def obs_with(agent_pos, objects):
    return Observation(
        Vec2(*agent_pos),
        tuple(ObjectView(i, Vec2(*pos), val) for i, (pos, val) in enumerate(objects)),
    )


def test_pc_only_three_objects_three_desires():
    spec = AgentSpec(modalities=(Modality.PC,), resolutions=(5,))
    obs = obs_with((0.5, 0.5), [((0.1, 0.1), 1.0), ((0.9, 0.9), -1.0), ((0.3, 0.7), 1.0)])
    desires = derive_desires(obs, spec.layers())
    assert len(desires) == 3
    assert sorted(d.weight for d in desires) == [-1.0, 1.0, 1.0]
    assert all(d.layer_ref == "pc_n5" for d in desires)
    # all desires evaluate from the agent's current cell
    agent_cell = cell_index(Vec2(0.5, 0.5), spec.layers()[0].nmap)
    assert all(d.eval_state == agent_cell for d in desires)


def test_colocated_object_target_equals_eval_state():
    spec = AgentSpec(modalities=(Modality.PC,), resolutions=(5,))
    obs = obs_with((0.52, 0.52), [((0.5, 0.5), 1.0)])
    (d,) = derive_desires(obs, spec.layers())
    assert d.target == d.eval_state


def test_multimodal_stack_desire_count():
    spec = AgentSpec(modalities=(Modality.PC, Modality.OVC), resolutions=(2, 3, 5, 7, 11, 13))
    obs = obs_with((0.5, 0.5), [((0.1, 0.1), 1.0), ((0.9, 0.9), -1.0), ((0.3, 0.7), 1.0)])
    desires = derive_desires(obs, spec.layers())
    assert len(desires) == 2 * 6 * 3


def test_ovc_desires_aim_at_zero_vector_cell():
    spec = AgentSpec(modalities=(Modality.OVC,), resolutions=(5,))
    layer = spec.layers()[0]
    obs = obs_with((0.5, 0.5), [((0.7, 0.2), 1.0)])
    (d,) = derive_desires(obs, spec.layers())
    assert d.target == cell_index(Vec2(0.0, 0.0), layer.nmap)
    assert d.eval_state == cell_index(ovc_vector(Vec2(0.7, 0.2), Vec2(0.5, 0.5)), layer.nmap)


def test_composite_single_desire_identity():
    spec = AgentSpec(modalities=(Modality.PC,), resolutions=(5,))
    banks = {"pc_n5": LearnerBank("pc_n5", 25)}
    banks["pc_n5"].q[12, 3] = [0.1, 0.2, 0.3, 0.4]
    obs = obs_with((0.5, 0.5), [((0.7, 0.1), 1.0)])
    desires = derive_desires(obs, spec.layers())
    assert desires[0].eval_state.flat == 12 and desires[0].target.flat == 3
    values = composite_q(desires, banks)
    assert np.allclose(values, [0.1, 0.2, 0.3, 0.4])


def test_composite_opposite_weights_cancel():
    bank = LearnerBank("pc_n5", 25)
    bank.q[12, 3] = [0.5, 0.25, 0.125, 0.0625]
    c12 = CellIndex(2, 2, 12)
    c3 = CellIndex(0, 3, 3)
    from neorl import Desire

    desires = [Desire("pc_n5", c3, c12, 1.0), Desire("pc_n5", c3, c12, -1.0)]
    assert np.array_equal(composite_q(desires, {"pc_n5": bank}), np.zeros(4))


def test_composite_empty_is_zero():
    assert np.array_equal(composite_q([], {}), np.zeros(4))


def test_composite_matches_bruteforce_double_loop():
    rng = random.Random(5)
    from neorl import Desire

    banks = {f"m{i}": LearnerBank(f"m{i}", 9) for i in range(3)}
    for b in banks.values():
        b.q[:] = rng.random()
        for s in range(9):
            for d in range(9):
                for a in range(4):
                    b.q[s, d, a] = rng.random()
    desires = [
        Desire(f"m{rng.randrange(3)}",
               CellIndex(0, 0, rng.randrange(9)),
               CellIndex(0, 0, rng.randrange(9)),
               rng.uniform(-2, 2))
        for _ in range(20)
    ]
    got = composite_q(desires, banks)
    expected = np.zeros(4)
    for d in desires:
        for a in range(4):
            expected[a] += d.weight * banks[d.layer_ref].q[d.eval_state.flat, d.target.flat, a]
    assert np.allclose(got, expected, atol=1e-12)


def test_composite_unresolved_layer_errors():
    from neorl import Desire

    d = Desire("missing", CellIndex(0, 0, 0), CellIndex(0, 0, 1), 1.0)
    with pytest.raises(KeyError, match="missing"):
        composite_q([d], {})


def test_composite_linear_in_weights_and_argmax_invariant():
    rng = random.Random(6)
    from neorl import Desire

    bank = LearnerBank("m", 9)
    bank.q[:] = np.array(rng.sample(range(9 * 9 * 4), 9 * 9 * 4)).reshape(9, 9, 4) / 100.0
    desires = [
        Desire("m", CellIndex(0, 0, rng.randrange(9)), CellIndex(0, 0, rng.randrange(9)), rng.uniform(-1, 1))
        for _ in range(8)
    ]
    base = composite_q(desires, {"m": bank})
    scaled = composite_q([d._replace(weight=3.0 * d.weight) for d in desires], {"m": bank})
    assert np.allclose(scaled, 3.0 * base, atol=1e-12)
    assert np.argmax(scaled) == np.argmax(base)


def test_composite_additive_over_disjoint_desire_lists():
    rng = random.Random(7)
    from neorl import Desire

    bank = LearnerBank("m", 16)
    bank.q[:] = np.arange(16 * 16 * 4).reshape(16, 16, 4) / 1000.0
    all_desires = [
        Desire("m", CellIndex(0, 0, rng.randrange(16)), CellIndex(0, 0, rng.randrange(16)), rng.uniform(-1, 1))
        for _ in range(10)
    ]
    left, right = all_desires[:4], all_desires[4:]
    combined = composite_q(all_desires, {"m": bank})
    assert np.allclose(
        combined,
        composite_q(left, {"m": bank}) + composite_q(right, {"m": bank}),
        atol=1e-12,
    )


def test_select_action_pure_greedy_argmax():
    rng = random.Random(0)
    a = select_action(np.array([0.0, 0.0, 1.0, 0.0]), PolicyConfig(epsilon=0.0), rng)
    assert a == Action.E


def test_select_action_epsilon_one_uniform():
    rng = random.Random(1)
    counts = Counter(
        select_action(np.array([9.0, 0.0, 0.0, 0.0]), PolicyConfig(epsilon=1.0), rng)
        for _ in range(10000)
    )
    for action in Action:
        assert 0.22 <= counts[action] / 10000 <= 0.28


def test_select_action_tie_break_uniform():
    rng = random.Random(2)
    counts = Counter(
        select_action(np.zeros(4), PolicyConfig(epsilon=0.0), rng) for _ in range(10000)
    )
    for action in Action:
        assert 0.22 <= counts[action] / 10000 <= 0.28


def test_select_action_unique_argmax_consumes_no_rng():
    rng = random.Random(3)
    state = rng.getstate()
    select_action(np.array([0.1, 0.4, 0.2, 0.3]), PolicyConfig(epsilon=0.0), rng)
    assert rng.getstate() == state


def test_policy_epsilon_validated():
    with pytest.raises(ValueError):
        PolicyConfig(epsilon=1.5)


def test_agent_spec_layer_refs():
    spec = AgentSpec(modalities=(Modality.PC, Modality.OVC), resolutions=(2, 13))
    refs = [layer.ref for layer in spec.layers()]
    assert refs == ["pc_n2", "pc_n13", "ovc_n2", "ovc_n13"]


def test_agent_spec_control_has_no_layers():
    assert AgentSpec(control=True).layers() == []


def test_agent_spec_requires_modalities_unless_control():
    with pytest.raises(ValueError):
        AgentSpec(modalities=())
