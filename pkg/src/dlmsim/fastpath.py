"""Compiled event loop for splitter chains.

The object network in :mod:`optics` is the readable reference; long runs
(millions of events per data point) go through this numba kernel instead.
Arithmetic is written to match the object path operation-for-operation,
so the two produce bit-identical tallies and final states — asserted by
the equivalence tests.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _hyp_step(x, y, alpha):
    """In-place K-sphere update; returns the chosen component index."""
    K = x.shape[0]
    best_c = np.inf
    bj = 0
    bsgn = 1.0
    bsq = 0.0
    for j in range(K):
        arg = 1.0 + alpha * alpha * (x[j] * x[j] - 1.0)
        if arg < 0.0:
            arg = 0.0
        sq = np.sqrt(arg)
        for si in range(2):
            s = 1.0 if si == 0 else -1.0
            c = 0.0
            for i in range(K):
                if i == j:
                    c += s * sq * y[i]
                else:
                    c += alpha * x[i] * y[i]
            c = -c
            if c < best_c:
                best_c = c
                bj = j
                bsgn = s
                bsq = sq
    for i in range(K):
        x[i] = alpha * x[i]
    x[bj] = bsgn * bsq
    nrm = 0.0
    for i in range(K):
        nrm += x[i] * x[i]
    nrm = np.sqrt(nrm)
    for i in range(K):
        x[i] = x[i] / nrm
    return bj


@njit(cache=True)
def _bs_step(front, back, last_out, alpha, channel, py0, py1, slm, r_slm):
    """One splitter event; mirrors BeamSplitterNode.step exactly."""
    yh = np.empty(4)
    if channel == 0:
        yh[0] = py0
        yh[1] = py1
        yh[2] = front[2]
        yh[3] = front[3]
    else:
        yh[0] = front[0]
        yh[1] = front[1]
        yh[2] = py0
        yh[3] = py1
    _hyp_step(front, yh, alpha)
    r = np.sqrt(0.5)
    u = np.empty(4)
    u[0] = (front[0] - front[3]) * r
    u[1] = (front[2] + front[1]) * r
    u[2] = (front[2] - front[1]) * r
    u[3] = (front[0] + front[3]) * r
    bj = _hyp_step(back, u, alpha)
    if slm:
        p = back[0] * back[0] + back[1] * back[1]
        out = 0 if r_slm < p else 1
    else:
        out = 0 if bj < 2 else 1
    i = 0 if out == 0 else 2
    a0 = back[i]
    a1 = back[i + 1]
    n = np.sqrt(a0 * a0 + a1 * a1)
    if n < 1e-12:
        return out, last_out[out, 0], last_out[out, 1]
    o0 = a0 / n
    o1 = a1 / n
    last_out[out, 0] = o0
    last_out[out, 1] = o1
    return out, o0, o1


@njit(cache=True)
def run_bs_chain(n_bs, n, p0, y0, y1, phis, alpha,
                 fronts, backs, last_outs, u_chan, slm, u_slm, counts):
    """Drive ``n`` events through a chain of ``n_bs`` splitters.

    ``phis`` holds the two arm rotation angles between consecutive
    splitters (length ``2*(n_bs-1)``).  ``u_chan`` selects the entry
    channel per event (channel 0 when below ``p0``); ``u_slm`` is one
    uniform per (event, splitter), consumed only when ``slm`` is set.
    ``counts`` accumulates arm and output tallies in the N0, N1, ...
    layout; states and ``last_outs`` are updated in place so consecutive
    blocks carry the machines over.
    """
    cphi = np.cos(phis)
    sphi = np.sin(phis)
    for ev in range(n):
        if u_chan[ev] < p0:
            ch = 0
            px = y0[0]
            py = y0[1]
        else:
            ch = 1
            px = y1[0]
            py = y1[1]
        for b in range(n_bs):
            r = u_slm[ev, b] if slm else 0.0
            ch, px, py = _bs_step(fronts[b], backs[b], last_outs[b],
                                  alpha, ch, px, py, slm, r)
            counts[2 * b + ch] += 1
            if b < n_bs - 1:
                k = 2 * b + ch
                c = cphi[k]
                s = sphi[k]
                nx = px * c - py * s
                ny = px * s + py * c
                px = nx
                py = ny
    return counts


@njit(cache=True)
def _circle_step(x, y1, y2, alpha):
    """In-place K=2 update; returns theta.  Mirrors the scalar circle step."""
    x1 = x[0]
    x2 = x[1]
    a = alpha
    arg1 = 1.0 + a * a * (x1 * x1 - 1.0)
    if arg1 < 0.0:
        arg1 = 0.0
    sq1 = np.sqrt(arg1)
    arg2 = 1.0 + a * a * (x2 * x2 - 1.0)
    if arg2 < 0.0:
        arg2 = 0.0
    sq2 = np.sqrt(arg2)
    best_cost = np.inf
    bj = 0
    bs = 1.0
    for j in range(2):
        sq = sq1 if j == 0 else sq2
        for si in range(2):
            s = 1.0 if si == 0 else -1.0
            if j == 0:
                c = s * sq * y1
                c += a * x2 * y2
            else:
                c = a * x1 * y1
                c += s * sq * y2
            c = -c
            if c < best_cost:
                best_cost = c
                bj = j
                bs = s
    if bj == 0:
        nx1 = bs * sq1
        nx2 = a * x2
    else:
        nx1 = a * x1
        nx2 = bs * sq2
    nrm = 0.0
    nrm += nx1 * nx1
    nrm += nx2 * nx2
    nrm = np.sqrt(nrm)
    x[0] = nx1 / nrm
    x[1] = nx2 / nrm
    return 1 if bj == 0 else 0


@njit(cache=True)
def run_three_polarizers(n, phi, alpha, states, u_psi, counts):
    """Fast path for the three-polarizer cascade (first polarizer at zero).

    ``states`` holds the three circle-machine vectors (updated in place);
    ``u_psi`` is one source angle in radians per event.  Tallies land in
    ``counts`` as (N0, N1, N2, N3) matching the object network's sinks.
    """
    half_pi = 0.5 * np.pi
    for ev in range(n):
        psi = u_psi[ev]
        y0 = np.cos(psi)
        y1 = np.sin(psi)
        # first polarizer at angle zero: device-frame rotation is identity
        c = np.cos(-0.0)
        s = np.sin(-0.0)
        z0 = y0 * c - y1 * s
        z1 = y0 * s + y1 * c
        th = _circle_step(states[0], z0, z1, alpha)
        if th == 1:
            p0 = np.cos(0.0)
            p1 = np.sin(0.0)
            idx = 1
            base = 0
        else:
            p0 = np.cos(half_pi)
            p1 = np.sin(half_pi)
            idx = 2
            base = 2
        c = np.cos(-phi)
        s = np.sin(-phi)
        z0 = p0 * c - p1 * s
        z1 = p0 * s + p1 * c
        th2 = _circle_step(states[idx], z0, z1, alpha)
        counts[base + (0 if th2 == 1 else 1)] += 1
    return counts


class SplitterChain:
    """Persistent state for a fast splitter chain (1, 2, or 3 splitters).

    Internal vectors are initialized from ``rng`` in the same draw order
    as the object-network builders, so a chain seeded identically to a
    network starts from identical states.
    """

    def __init__(self, n_bs: int, alpha: float, rng, slm: bool = False):
        if n_bs not in (1, 2, 3):
            raise ValueError("chain supports 1 to 3 splitters")
        self.n_bs = n_bs
        self.alpha = float(alpha)
        self.slm = bool(slm)
        self.fronts = np.empty((n_bs, 4))
        self.backs = np.empty((n_bs, 4))
        for b in range(n_bs):
            for arr in (self.fronts, self.backs):
                v = rng.normal(size=4)
                arr[b] = v / np.linalg.norm(v)
        self.last_outs = np.tile(np.array([1.0, 0.0]), (n_bs, 2, 1))

    def run_block(self, n: int, p0: float, psi0: float, psi1: float,
                  phis, source_rng, slm_rng=None) -> np.ndarray:
        """Process one block of ``n`` events; returns the tally vector
        (N0..N1 for one splitter, N0..N3 for two, N0..N5 for three)."""
        y0 = np.array([math.cos(psi0), math.sin(psi0)])
        y1 = np.array([math.cos(psi1), math.sin(psi1)])
        phis = np.asarray(phis, dtype=float)
        if phis.size != 2 * (self.n_bs - 1):
            raise ValueError("wrong number of arm angles")
        u_chan = source_rng.random(n)
        if self.slm:
            u_slm = slm_rng.random((n, self.n_bs))
        else:
            u_slm = np.empty((0, self.n_bs))
        counts = np.zeros(2 * self.n_bs, dtype=np.int64)
        run_bs_chain(self.n_bs, n, p0, y0, y1, phis, self.alpha,
                     self.fronts, self.backs, self.last_outs,
                     u_chan, self.slm, u_slm, counts)
        return counts
