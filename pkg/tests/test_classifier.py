import math

import numpy as np
import pytest

from dlmsim import classifier


def test_segment_side_convention():
    # sign of cross(y - mid, dir): below the axis is +1, above is -1
    st = classifier.SegmentState(np.zeros(2), np.array([1.0, 0.0]), 0.99)
    assert classifier.segment_side(st, [0.0, -1.0]) == 1
    assert classifier.segment_side(st, [0.0, 1.0]) == -1
    # boundary counts as +1
    assert classifier.segment_side(st, [2.0, 0.0]) == 1


def test_step_segment_hand_computed():
    st = classifier.SegmentState(np.zeros(2), np.array([1.0, 0.0]), 0.9)
    y = np.array([0.5, 1.0])
    side, new = classifier.step_segment(st, y)
    v1 = np.array([-0.5, 0.0])
    v2 = np.array([0.5, 0.0])
    w1 = v1 + 0.1 * (y - v1) * np.linalg.norm(y - v1)
    w2 = v2 + 0.1 * (y - v2) * np.linalg.norm(y - v2)
    assert side == -1
    assert new.mid == pytest.approx(0.5 * (w1 + w2))
    d = (w2 - w1) / np.linalg.norm(w2 - w1)
    assert new.dir == pytest.approx(d)


def test_step_segment_direction_is_continuous():
    # direction must not flip sign from one event to the next
    st = classifier.SegmentState.initial([0.0, 0.0], 0.99)
    rng = np.random.default_rng(0)
    for _ in range(500):
        prev = st.dir.copy()
        _, st = classifier.step_segment(st, rng.normal(size=2))
        assert float(prev @ st.dir) > 0.0


def test_step_segment_linear_variant():
    st = classifier.SegmentState(np.zeros(2), np.array([1.0, 0.0]), 0.9)
    y = np.array([0.0, 2.0])
    _, new = classifier.step_segment(st, y, linear=True)
    # both support points move 0.1 of the way toward y
    assert new.mid == pytest.approx([0.0, 0.2])


def test_degenerate_update_keeps_direction():
    st = classifier.SegmentState(np.zeros(2), np.array([1.0, 0.0]), 1e-9)
    # alpha ~ 0 pulls both support points onto y, collapsing the segment
    _, new = classifier.step_segment(st, np.array([5.0, 5.0]))
    assert np.array_equal(new.dir, st.dir) or np.linalg.norm(new.dir) > 0


def test_simplex_k2_matches_segment():
    seg = classifier.SegmentState.initial([0.2, -0.1], 0.99)
    sim = classifier.SimplexState.initial([0.2, -0.1], 0.99)
    rng = np.random.default_rng(4)
    for _ in range(300):
        y = rng.normal(size=2)
        s1, seg = classifier.step_segment(seg, y)
        s2, sim = classifier.step_simplex(sim, y)
        assert s1 == s2
        assert seg.mid == pytest.approx(sim.mid, abs=1e-9)
        assert abs(abs(float(seg.dir @ sim.dirs[0]))) == pytest.approx(1.0, abs=1e-9)


def test_simplex_3d_runs_and_stays_orthonormal():
    sim = classifier.SimplexState.initial([0.0, 0.0, 0.0], 0.99)
    rng = np.random.default_rng(9)
    for _ in range(200):
        _, sim = classifier.step_simplex(sim, rng.normal(size=3))
        g = sim.dirs @ sim.dirs.T
        assert g == pytest.approx(np.eye(2), abs=1e-9)
        assert sim.dirs @ sim.normal == pytest.approx(np.zeros(2), abs=1e-9)


def test_canonical_simplex_geometry():
    for k in (2, 3, 4):
        pts = classifier._canonical_simplex(k)
        assert pts.shape == (k, k - 1)
        assert pts.mean(axis=0) == pytest.approx(np.zeros(k - 1), abs=1e-12)
        for i in range(k):
            for j in range(i + 1, k):
                assert np.linalg.norm(pts[i] - pts[j]) == pytest.approx(1.0)


def test_mgs_orthonormalizes():
    rng = np.random.default_rng(2)
    rows = rng.normal(size=(3, 4))
    q = classifier._mgs(rows)
    assert q @ q.T == pytest.approx(np.eye(3), abs=1e-10)
    with pytest.raises(ValueError):
        classifier._mgs(np.array([[1.0, 0.0], [2.0, 0.0]]))


def test_stream_statistics():
    rng = np.random.default_rng(11)
    pts = np.array([classifier.generate_rotating_gaussians(0.0, 0, rng)
                    for _ in range(4000)])
    # two clusters at (+-1, 0): mean ~ 0, variance ~ 1/2 + 1 on x, 1/2 on y
    assert pts.mean(axis=0) == pytest.approx([0.0, 0.0], abs=0.08)
    assert pts[:, 1].var() == pytest.approx(0.5, abs=0.05)
    assert pts[:, 0].var() == pytest.approx(1.5, abs=0.12)


def test_pca_oracle_recovers_known_axis():
    rng = np.random.default_rng(3)
    t = rng.normal(size=400)
    ang = math.radians(40.0)
    axis = np.array([math.cos(ang), math.sin(ang)])
    pts = np.outer(t, axis) + 0.05 * rng.normal(size=(400, 2))
    d = classifier.pca_oracle(pts)
    assert classifier.axis_angle_between(d, axis) < math.radians(3.0)
    sep = classifier.pca_separatrix(pts)
    assert abs(float(sep @ d)) < 1e-12


def test_pca_oracle_input_validation():
    with pytest.raises(ValueError):
        classifier.pca_oracle([[1.0, 2.0]])
    with pytest.raises(ValueError):
        classifier.pca_oracle([[1.0, 2.0], [1.0, 2.0]])


def test_axis_angle_is_mod_pi():
    assert classifier.axis_angle_between([1, 0], [-1, 0]) == pytest.approx(0.0)
    assert classifier.axis_angle_between([1, 0], [0, 1]) == pytest.approx(math.pi / 2)
