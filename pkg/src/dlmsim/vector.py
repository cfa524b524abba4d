"""Unit-vector learning machines on the circle and the K-sphere.

These are the computational heart of every optics device: the machine
keeps a unit K-vector, and per event applies whichever of the 2K
norm-preserving candidate updates brings it closest (by inner product)
to the input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def angle_to_vector(phi: float) -> np.ndarray:
    return np.array([math.cos(phi), math.sin(phi)])


def vector_to_angle(y) -> float:
    """Angle of a 2-vector; invariant under positive scaling."""
    y = np.asarray(y, dtype=float)
    if math.hypot(y[0], y[1]) < 1e-300:
        raise ValueError("zero vector has no angle")
    return math.atan2(y[1], y[0])


@dataclass
class UnitVectorState:
    """Internal unit K-vector plus learning parameter."""

    x: np.ndarray
    alpha: float

    @classmethod
    def random(cls, k: int, alpha: float, rng) -> "UnitVectorState":
        """Uniform random direction on the K-sphere."""
        v = rng.normal(size=k)
        return cls(v / np.linalg.norm(v), alpha)


@dataclass
class RuleChoice:
    """Which of the 2K candidate updates was applied.

    ``component`` is the 0-based index that received the square-root
    update; ``sign`` is the +-1 quadrant choice.
    """

    component: int
    sign: float


def candidate_updates(x: np.ndarray, alpha: float) -> list[np.ndarray]:
    """All 2K candidate successors of ``x``, in tie-break order.

    Order: component 0 with sign +1, component 0 with sign -1, component 1
    with sign +1, ...  Each candidate maps unit vectors to unit vectors
    exactly (up to floating-point drift).
    """
    K = x.size
    out = []
    for j in range(K):
        sq = math.sqrt(max(0.0, 1.0 + alpha * alpha * (x[j] * x[j] - 1.0)))
        for s in (1.0, -1.0):
            cand = alpha * x
            cand[j] = s * sq
            out.append(cand)
    return out


def step_hypersphere(st: UnitVectorState, y) -> tuple[RuleChoice, UnitVectorState]:
    """One event of the K-sphere machine.

    Applies the candidate update minimizing ``-(x' . y)``; ties break by
    smaller component index, then sign +1.  The new vector is renormalized
    to absorb floating-point drift.
    """
    yv = np.asarray(y, dtype=float)
    xs = st.x.tolist()
    yl = yv.tolist()
    K = len(xs)
    if K != yv.size:
        raise ValueError("input dimension mismatch")
    if max(abs(v) for v in yl) == 0.0:
        raise ValueError("zero input vector")
    a = st.alpha
    best_cost = math.inf
    best = (0, 1.0, 0.0)
    for j in range(K):
        sq = math.sqrt(max(0.0, 1.0 + a * a * (xs[j] * xs[j] - 1.0)))
        for s in (1.0, -1.0):
            c = 0.0
            for i in range(K):
                if i == j:
                    c += s * sq * yl[i]
                else:
                    c += a * xs[i] * yl[i]
            c = -c
            if c < best_cost:
                best_cost = c
                best = (j, s, sq)
    j, s, sq = best
    new = [a * v for v in xs]
    new[j] = s * sq
    nrm = 0.0
    for v in new:
        nrm += v * v
    nrm = math.sqrt(nrm)
    newx = np.array([v / nrm for v in new])
    return RuleChoice(j, s), UnitVectorState(newx, a)


def step_circle(st: UnitVectorState, y) -> tuple[int, float, UnitVectorState]:
    """One event of the circle (K=2) machine.

    Returns ``(theta, sign, state')`` where theta=1 means the first
    component received the square-root update (internal vector pulled
    toward the horizontal axis) and theta=0 the second.  Scalar fast path;
    decisions agree bit-for-bit with :func:`step_hypersphere` at K=2.
    """
    x1, x2 = st.x[0], st.x[1]
    y1, y2 = float(y[0]), float(y[1])
    if y1 == 0.0 and y2 == 0.0:
        raise ValueError("zero input vector")
    a = st.alpha
    sq1 = math.sqrt(max(0.0, 1.0 + a * a * (x1 * x1 - 1.0)))
    sq2 = math.sqrt(max(0.0, 1.0 + a * a * (x2 * x2 - 1.0)))
    best_cost = math.inf
    best = (0, 1.0)
    for j, sq in ((0, sq1), (1, sq2)):
        for s in (1.0, -1.0):
            if j == 0:
                c = s * sq * y1
                c += a * x2 * y2
            else:
                c = a * x1 * y1
                c += s * sq * y2
            c = -c
            if c < best_cost:
                best_cost = c
                best = (j, s)
    j, s = best
    if j == 0:
        nx1, nx2 = s * sq1, a * x2
    else:
        nx1, nx2 = a * x1, s * sq2
    nrm = 0.0
    for v in (nx1, nx2):
        nrm += v * v
    nrm = math.sqrt(nrm)
    theta = 1 if j == 0 else 0
    return theta, s, UnitVectorState(np.array([nx1 / nrm, nx2 / nrm]), a)


def step_frontend(st: UnitVectorState, channel: int, y) -> tuple[RuleChoice, UnitVectorState]:
    """Two-input front-end step: merge a 2-vector arriving on one of two
    channels with the internal state's opposite half, then do a K=4 step.
    """
    if st.x.size != 4:
        raise ValueError("front-end state must be 4-dimensional")
    y = np.asarray(y, dtype=float)
    if channel == 0:
        yhat = np.array([y[0], y[1], st.x[2], st.x[3]])
    elif channel == 1:
        yhat = np.array([st.x[0], st.x[1], y[0], y[1]])
    else:
        raise ValueError(f"invalid channel {channel}")
    return step_hypersphere(st, yhat)


def iterate_random_theta(x0, thetas, alpha: float) -> np.ndarray:
    """Squared-first-component trajectory under a given 0/1 decision stream.

    Implements ``x1^2' = alpha^2 x1^2 + (1 - alpha^2) theta``; used to
    check that the ensemble mean of x1^2 converges to the theta mean.
    ``thetas`` may be (n,) or (batch, n); iteration runs along the last
    axis and the returned trajectory has one extra leading step for x0.
    """
    thetas = np.asarray(thetas, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    x2 = np.broadcast_to(x0[..., 0] ** 2, thetas.shape[:-1]).copy()
    a2 = alpha * alpha
    traj = np.empty(thetas.shape[:-1] + (thetas.shape[-1] + 1,))
    traj[..., 0] = x2
    for k in range(thetas.shape[-1]):
        x2 = a2 * x2 + (1.0 - a2) * thetas[..., k]
        traj[..., k + 1] = x2
    return traj
