"""Optics devices built from unit-vector learning machines.

Each device is a network node: the polarizer wraps a circle machine
behind a plane rotation, and the beam splitter chains a two-input
front-end machine, a fixed pair of 45-degree plane rotations, and a
K=4 back-end machine that picks the output port.
"""
from __future__ import annotations

import math

import numpy as np

from .core import Network, Node, PassThroughCounter, Sink
from .slm import slm_select_output
from .vector import UnitVectorState, step_circle, step_frontend, step_hypersphere

SQRT1_2 = math.sqrt(0.5)


def rotate2(v, phi: float) -> np.ndarray:
    """Counterclockwise plane rotation of a 2-vector by phi."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([v[0] * c - v[1] * s, v[0] * s + v[1] * c])


class Rotator(Node):
    """Passive phase element: rotates the payload by a fixed angle."""

    def __init__(self, phi: float):
        self.phi = float(phi)

    def step(self, channel, payload):
        return 0, rotate2(payload, self.phi)


class PolarizerNode(Node):
    """Polarizer at angle ``phi``: rotation into the device frame, a
    circle-machine decision, and a freshly prepared output polarization.

    The incoming payload (cos psi, sin psi) is rotated by -phi so the
    machine sees the relative angle psi - phi.  The aligned decision
    (theta=1) fires channel 0 with payload (cos phi, sin phi); the
    orthogonal decision fires channel 1 with the 90-degree-shifted
    polarization, matching the cos^2/sin^2 intensity law.
    """

    n_outputs = 2

    def __init__(self, phi: float, alpha: float, rng):
        self.phi = float(phi)
        self.state = UnitVectorState.random(2, alpha, rng)

    def step(self, channel, payload):
        z = rotate2(payload, -self.phi)
        theta, _, self.state = step_circle(self.state, z)
        if theta == 1:
            return 0, np.array([math.cos(self.phi), math.sin(self.phi)])
        shifted = self.phi + 0.5 * math.pi
        return 1, np.array([math.cos(shifted), math.sin(shifted)])


class BeamSplitterNode(Node):
    """Two-input/two-output splitter made of two K=4 machines.

    The front-end merges the arriving 2-vector into a 4-dimensional
    internal state; that state is rotated by 45 degrees in the (1,4) and
    (3,2) planes (fixed order for reproducibility) and fed to the
    back-end, whose chosen update component selects the output port.
    With ``backend="slm"`` the port is instead drawn at random with the
    squared-amplitude probability; the learning updates are unchanged.
    """

    n_inputs = 2
    n_outputs = 2

    def __init__(self, alpha: float, rng, backend: str = "dlm",
                 slm_rng=None, slm_literal: bool = False):
        if backend not in ("dlm", "slm"):
            raise ValueError(f"unknown backend {backend!r}")
        self.front = UnitVectorState.random(4, alpha, rng)
        self.back = UnitVectorState.random(4, alpha, rng)
        self.backend = backend
        self.slm_rng = slm_rng
        self.slm_literal = slm_literal
        # Cold-start guard: payload re-emitted when an output pair has no
        # length yet (possible before any event has hit one input).
        self._last_out = [np.array([1.0, 0.0]), np.array([1.0, 0.0])]
        self.zero_norm_events = 0

    def step(self, channel, payload):
        _, self.front = step_frontend(self.front, channel, payload)
        v = self.front.x
        u = np.array([(v[0] - v[3]) * SQRT1_2,
                      (v[2] + v[1]) * SQRT1_2,
                      (v[2] - v[1]) * SQRT1_2,
                      (v[0] + v[3]) * SQRT1_2])
        choice, self.back = step_hypersphere(self.back, u)
        b = self.back.x
        if self.backend == "slm":
            out = slm_select_output(b, self.slm_rng.random(), self.slm_literal)
        else:
            out = 0 if choice.component < 2 else 1
        i = 0 if out == 0 else 2
        a0, a1 = b[i], b[i + 1]
        n = math.sqrt(a0 * a0 + a1 * a1)
        if n < 1e-12:
            self.zero_norm_events += 1
            return out, self._last_out[out]
        emitted = np.array([a0 / n, a1 / n])
        self._last_out[out] = emitted
        return out, emitted


def build_polarizer(phi: float = 0.0, alpha: float = 0.99, rng=None) -> Network:
    rng = np.random.default_rng(rng)
    nodes = {"pol": PolarizerNode(phi, alpha, rng), "N0": Sink(), "N1": Sink()}
    edges = {("pol", 0): ("N0", 0), ("pol", 1): ("N1", 0)}
    return Network(nodes, edges, sources={"in": ("pol", 0)})


def build_three_polarizers(phi2: float = 0.0, phi3: float = 0.0,
                           alpha: float = 0.99, rng=None) -> Network:
    """First polarizer fixed at angle zero; its two outputs feed two more
    polarizers, giving four sinks top-to-bottom."""
    rng = np.random.default_rng(rng)
    nodes = {
        "pol1": PolarizerNode(0.0, alpha, rng),
        "pol2": PolarizerNode(phi2, alpha, rng),
        "pol3": PolarizerNode(phi3, alpha, rng),
        "N0": Sink(), "N1": Sink(), "N2": Sink(), "N3": Sink(),
    }
    edges = {
        ("pol1", 0): ("pol2", 0), ("pol1", 1): ("pol3", 0),
        ("pol2", 0): ("N0", 0), ("pol2", 1): ("N1", 0),
        ("pol3", 0): ("N2", 0), ("pol3", 1): ("N3", 0),
    }
    return Network(nodes, edges, sources={"in": ("pol1", 0)})


def build_beam_splitter(alpha: float = 0.99, rng=None, backend: str = "dlm",
                        slm_rng=None) -> Network:
    rng = np.random.default_rng(rng)
    nodes = {"bs": BeamSplitterNode(alpha, rng, backend, slm_rng),
             "N0": Sink(), "N1": Sink()}
    edges = {("bs", 0): ("N0", 0), ("bs", 1): ("N1", 0)}
    return Network(nodes, edges,
                   sources={"in0": ("bs", 0), "in1": ("bs", 1)})


def build_mach_zehnder(phi0: float = 0.0, phi1: float = 0.0,
                       alpha: float = 0.99, rng=None, backend: str = "dlm",
                       slm_rng=None) -> Network:
    """Two splitters with phase rotators on the arms.

    The arms carry pass-through counters N0/N1 (the same event continues
    to the second splitter); the second splitter's ports are sinks N2/N3.
    """
    rng = np.random.default_rng(rng)
    nodes = {
        "bs1": BeamSplitterNode(alpha, rng, backend, slm_rng),
        "rot0": Rotator(phi0), "rot1": Rotator(phi1),
        "N0": PassThroughCounter(), "N1": PassThroughCounter(),
        "bs2": BeamSplitterNode(alpha, rng, backend, slm_rng),
        "N2": Sink(), "N3": Sink(),
    }
    edges = {
        ("bs1", 0): ("rot0", 0), ("bs1", 1): ("rot1", 0),
        ("rot0", 0): ("N0", 0), ("rot1", 0): ("N1", 0),
        ("N0", 0): ("bs2", 0), ("N1", 0): ("bs2", 1),
        ("bs2", 0): ("N2", 0), ("bs2", 1): ("N3", 0),
    }
    return Network(nodes, edges,
                   sources={"in0": ("bs1", 0), "in1": ("bs1", 1)})


def build_chained_mz(phi0: float = 0.0, phi1: float = 0.0, phi2: float = 0.0,
                     phi3: float = 0.0, alpha: float = 0.99, rng=None,
                     backend: str = "dlm", slm_rng=None) -> Network:
    """Three splitters and four arm rotators; counters N0..N3 on the arms
    and sinks N4/N5 at the end."""
    rng = np.random.default_rng(rng)
    nodes = {
        "bs1": BeamSplitterNode(alpha, rng, backend, slm_rng),
        "rot0": Rotator(phi0), "rot1": Rotator(phi1),
        "N0": PassThroughCounter(), "N1": PassThroughCounter(),
        "bs2": BeamSplitterNode(alpha, rng, backend, slm_rng),
        "rot2": Rotator(phi2), "rot3": Rotator(phi3),
        "N2": PassThroughCounter(), "N3": PassThroughCounter(),
        "bs3": BeamSplitterNode(alpha, rng, backend, slm_rng),
        "N4": Sink(), "N5": Sink(),
    }
    edges = {
        ("bs1", 0): ("rot0", 0), ("bs1", 1): ("rot1", 0),
        ("rot0", 0): ("N0", 0), ("rot1", 0): ("N1", 0),
        ("N0", 0): ("bs2", 0), ("N1", 0): ("bs2", 1),
        ("bs2", 0): ("rot2", 0), ("bs2", 1): ("rot3", 0),
        ("rot2", 0): ("N2", 0), ("rot3", 0): ("N3", 0),
        ("N2", 0): ("bs3", 0), ("N3", 0): ("bs3", 1),
        ("bs3", 0): ("N4", 0), ("bs3", 1): ("N5", 0),
    }
    return Network(nodes, edges,
                   sources={"in0": ("bs1", 0), "in1": ("bs1", 1)})
