"""Stochastic output-channel selection for unit-vector machines.

The learning update stays fully deterministic; only the choice of which
output channel carries the message is randomized, with probability equal
to the squared length of the corresponding internal-vector half.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .vector import RuleChoice, UnitVectorState, step_hypersphere


def slm_select_output(x, r: float, literal: bool = False) -> int:
    """Pick output channel 0 or 1 from a unit 4-vector and a uniform draw.

    Channel 0 is selected when ``r < x1^2 + x2^2``, so its long-run
    frequency equals the squared length of the first component pair.
    ``literal=True`` flips the comparison (debug aid; it inverts the
    channel distribution and is not used by any scenario).
    """
    p = float(x[0]) ** 2 + float(x[1]) ** 2
    if literal:
        return 0 if p <= r else 1
    return 0 if r < p else 1


@dataclass
class SlmWrapper:
    """A K=4 machine whose output channel is drawn stochastically.

    The internal-state trajectory depends only on the inputs, never on
    the random stream.
    """

    inner: UnitVectorState
    rng: np.random.Generator
    literal: bool = False

    def step(self, y) -> tuple[RuleChoice, int, "SlmWrapper"]:
        choice, st = step_hypersphere(self.inner, y)
        channel = slm_select_output(st.x, self.rng.random(), self.literal)
        return choice, channel, SlmWrapper(st, self.rng, self.literal)
