import math

import numpy as np
import pytest

from dlmsim import vector


def random_state(k, alpha, seed):
    return vector.UnitVectorState.random(k, alpha, np.random.default_rng(seed))


def test_candidate_updates_preserve_norm():
    for k in (2, 4):
        for seed in range(20):
            st = random_state(k, 0.99, seed)
            for cand in vector.candidate_updates(st.x, st.alpha):
                assert abs(np.linalg.norm(cand) - 1.0) <= 1e-12


def test_candidate_count_and_order():
    st = random_state(4, 0.9, 0)
    cands = vector.candidate_updates(st.x, st.alpha)
    assert len(cands) == 8
    # candidate 2j has sign +1 on component j, candidate 2j+1 sign -1
    for j in range(4):
        assert cands[2 * j][j] >= 0.0
        assert cands[2 * j + 1][j] <= 0.0


def test_step_hypersphere_picks_minimum_cost():
    rng = np.random.default_rng(42)
    for _ in range(200):
        st = vector.UnitVectorState.random(4, 0.97, rng)
        y = rng.normal(size=4)
        choice, new = vector.step_hypersphere(st, y)
        costs = [-float(np.dot(c, y))
                 for c in vector.candidate_updates(st.x, st.alpha)]
        best = min(costs)
        chosen = costs[2 * choice.component + (0 if choice.sign > 0 else 1)]
        assert chosen <= best + 1e-12


def test_step_hypersphere_tie_breaks_to_first_candidate():
    # symmetric state and input: components tie, smallest index and +1 win
    st = vector.UnitVectorState(np.array([0.5, 0.5, 0.5, 0.5]), 0.99)
    choice, _ = vector.step_hypersphere(st, np.array([1.0, 1.0, 1.0, 1.0]))
    assert choice.component == 0
    assert choice.sign == 1.0


def test_step_scale_invariance():
    rng = np.random.default_rng(7)
    for _ in range(100):
        st = vector.UnitVectorState.random(4, 0.99, rng)
        y = rng.normal(size=4)
        c1, s1 = vector.step_hypersphere(st, y)
        c2, s2 = vector.step_hypersphere(st, 3.7 * y)
        assert (c1.component, c1.sign) == (c2.component, c2.sign)
        assert np.array_equal(s1.x, s2.x)


def test_step_rejects_zero_input():
    st = random_state(4, 0.99, 0)
    with pytest.raises(ValueError):
        vector.step_hypersphere(st, np.zeros(4))
    st2 = random_state(2, 0.99, 0)
    with pytest.raises(ValueError):
        vector.step_circle(st2, np.zeros(2))


def test_circle_matches_hypersphere_bitwise():
    rng = np.random.default_rng(3)
    st2 = vector.UnitVectorState.random(2, 0.99, rng)
    st4 = vector.UnitVectorState(st2.x.copy(), 0.99)
    for _ in range(500):
        y = rng.normal(size=2)
        theta, sign, st2 = vector.step_circle(st2, y)
        choice, st4 = vector.step_hypersphere(st4, y)
        assert theta == (1 if choice.component == 0 else 0)
        assert sign == choice.sign
        assert np.array_equal(st2.x, st4.x)


def test_circle_converges_to_input_direction():
    st = random_state(2, 0.99, 5)
    y = vector.angle_to_vector(math.radians(30.0))
    ones = 0
    for k in range(2000):
        theta, _, st = vector.step_circle(st, y)
        if k >= 1000:
            ones += theta
    assert ones / 1000 == pytest.approx(math.cos(math.radians(30)) ** 2,
                                        abs=0.03)


def test_frontend_merges_by_channel():
    st = random_state(4, 0.99, 1)
    y = np.array([0.6, 0.8])
    c0, s0 = vector.step_frontend(st, 0, y)
    ref = vector.step_hypersphere(st, np.array([0.6, 0.8, st.x[2], st.x[3]]))
    assert np.array_equal(s0.x, ref[1].x)
    c1, s1 = vector.step_frontend(st, 1, y)
    ref = vector.step_hypersphere(st, np.array([st.x[0], st.x[1], 0.6, 0.8]))
    assert np.array_equal(s1.x, ref[1].x)
    with pytest.raises(ValueError):
        vector.step_frontend(st, 2, y)


def test_iterate_random_theta_recursion():
    x0 = np.array([[0.6, 0.8]])
    thetas = np.array([[1.0, 0.0, 1.0]])
    traj = vector.iterate_random_theta(x0, thetas, 0.9)
    a2 = 0.81
    expect = [0.36]
    for t in (1.0, 0.0, 1.0):
        expect.append(a2 * expect[-1] + (1 - a2) * t)
    assert traj[0] == pytest.approx(expect, abs=1e-12)


def test_vector_to_angle():
    assert vector.vector_to_angle([0.0, 2.0]) == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        vector.vector_to_angle([0.0, 0.0])
