"""One-dimensional learning machines and the three-level adaptive classifier.

Two machine variants live here: the position learner, whose internal value
follows an exponential moving average of its inputs, and the interval
learner, which nudges its internal value by fixed-ratio steps and encodes
what it learned in the rate at which it fires each output channel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Network, Node, Sink


@dataclass
class PositionState:
    """Internal value of the position learner, with learning parameter alpha."""

    x: float
    alpha: float


def step_position(st: PositionState, y: float) -> tuple[int, PositionState]:
    """Advance the position learner by one event.

    Returns the routing decision (+1 when ``y >= x``, ties go to +1) and the
    new state ``x' = alpha*x + (1-alpha)*y``.
    """
    if abs(y) > 1.0:
        raise ValueError(f"input {y} outside [-1, 1]")
    delta = 1 if st.x <= y else -1
    x = st.alpha * st.x + (1.0 - st.alpha) * y
    return delta, PositionState(x, st.alpha)


def iterate_position(x0, ys, alpha):
    """Run the position recursion over a batch of input sequences.

    ``ys`` has shape (n,) or (batch, n); the recursion runs along the last
    axis.  Returns the final internal values.
    """
    ys = np.asarray(ys, dtype=float)
    x = np.broadcast_to(np.asarray(x0, dtype=float), ys.shape[:-1]).copy()
    a = float(alpha)
    for k in range(ys.shape[-1]):
        x = a * x + (1.0 - a) * ys[..., k]
    return x


def closed_form_position(x0: float, ys, alpha: float) -> float:
    """Closed-form value of the position recursion after ``len(ys)`` events.

    Independent oracle for :func:`step_position` /
    :func:`iterate_position`: evaluates the explicit geometric sum instead
    of iterating.
    """
    ys = np.asarray(ys, dtype=float)
    if np.any(np.abs(ys) > 1.0):
        raise ValueError("inputs outside [-1, 1]")
    n = ys.size
    if n == 0:
        return float(x0)
    powers = alpha ** np.arange(n - 1, -1, -1, dtype=float)
    return float(alpha ** n * x0 + (1.0 - alpha) * np.dot(powers, ys))


@dataclass
class IntervalState:
    """Internal value of the interval learner; stays inside [-1, 1]."""

    x: float
    alpha: float


def step_interval(st: IntervalState, y: float) -> tuple[int, IntervalState]:
    """Advance the interval learner by one event.

    Picks the move direction minimizing ``|y - alpha*x - (1-alpha)*d|``
    over d = +-1 (ties go to +1) and applies ``x' = alpha*x + (1-alpha)*d``.
    """
    if abs(y) >= 1.0:
        raise ValueError(f"input {y} outside (-1, 1)")
    base = st.alpha * st.x
    w = 1.0 - st.alpha
    cost_up = abs(y - base - w)
    cost_down = abs(y - base + w)
    delta = 1 if cost_up <= cost_down else -1
    return delta, IntervalState(base + w * delta, st.alpha)


class PositionNode(Node):
    """Network node wrapping a position learner.

    Forwards the received value on output 0 (the "-1" branch) when it is
    below the internal value, on output 1 otherwise.
    """

    n_outputs = 2

    def __init__(self, x0: float, alpha: float):
        self.state = PositionState(float(x0), float(alpha))

    def step(self, channel, payload):
        delta, self.state = step_position(self.state, float(payload))
        return (0 if delta < 0 else 1), payload


def build_three_level_classifier(alpha: float = 0.99, rng=None) -> Network:
    """Three-level binary tree of position learners (7 machines, 8 sinks).

    Machine 1 is the root; machines 2 and 3 receive its below/above splits,
    and machines 4-7 are the leaves.  Initial internal values are drawn
    uniformly from [-1, 1].
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    rng = np.random.default_rng(rng)
    nodes: dict[str, Node] = {}
    for i in range(1, 8):
        nodes[f"m{i}"] = PositionNode(rng.uniform(-1.0, 1.0), alpha)
    for i in range(8):
        nodes[f"s{i}"] = Sink()
    edges = {
        ("m1", 0): ("m2", 0), ("m1", 1): ("m3", 0),
        ("m2", 0): ("m4", 0), ("m2", 1): ("m5", 0),
        ("m3", 0): ("m6", 0), ("m3", 1): ("m7", 0),
        ("m4", 0): ("s0", 0), ("m4", 1): ("s1", 0),
        ("m5", 0): ("s2", 0), ("m5", 1): ("s3", 0),
        ("m6", 0): ("s4", 0), ("m6", 1): ("s5", 0),
        ("m7", 0): ("s6", 0), ("m7", 1): ("s7", 0),
    }
    return Network(nodes, edges, sources={"in": ("m1", 0)})
