"""Experiment orchestration: configs, scenario runners, CSV emission.

Every scenario follows the same block protocol: a master seed is split
into independent streams (state initialization, event source, per-block
parameter sampling, stochastic output selection), parameters are
(re)sampled per block, the network processes the block's events, and one
result row per block records the measured channel fractions next to the
exact prediction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from . import classifier, optics, oracle, scalar, vector
from .core import run_experiment
from .fastpath import SplitterChain
from .fastpath import run_three_polarizers as run_fast_three_polarizers

SCENARIOS = (
    "position-learner", "interval-learner", "three-level", "circle-learner",
    "classifier", "polarizer", "three-polarizers", "beam-splitter",
    "mach-zehnder", "chained-mz",
)

# Input sets for the three phases of the three-level run.
THREE_LEVEL_PHASES = (
    (-0.75, -0.25, 0.25, 0.75),
    (-0.75, -0.25, 0.25, 0.50),
    (-0.60, -0.75, -0.25, 0.25, 0.50),
)


@dataclass
class ExperimentConfig:
    """Scenario selection plus the knobs the figure protocols vary.

    Angles are degrees here (and in config files); they are converted to
    radians at the device boundary.  ``None`` means "scenario default".
    """

    scenario: str
    alpha: float = 0.99
    events_per_block: int | None = None
    blocks: int | None = None
    seed: int = 100
    warmup: int = 0
    backend: str = "dlm"
    p0: float | None = None
    psi0: float | None = None
    psi1: float | None = None
    phi0: float | None = None
    phi1: float | None = None
    phi2: float | None = None
    phi3: float | None = None
    gamma: float | None = None

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        if self.backend not in ("dlm", "slm"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.p0 is not None and not 0.0 <= self.p0 <= 1.0:
            raise ValueError("p0 must be in [0, 1]")
        if self.events_per_block is not None and self.events_per_block < 1:
            raise ValueError("events_per_block must be >= 1")
        if self.blocks is not None and self.blocks < 1:
            raise ValueError("blocks must be >= 1")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat ``key = value`` config format."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    if "scenario" not in values:
        raise ValueError("config must set 'scenario'")
    kwargs = {}
    field_types = {f.name: f.type for f in fields(ExperimentConfig)}
    for key, val in values.items():
        if key not in field_types:
            raise ValueError(f"unknown config key {key!r}")
        if key == "scenario" or key == "backend":
            kwargs[key] = val
        elif key in ("events_per_block", "blocks", "seed", "warmup"):
            kwargs[key] = int(val)
        else:
            kwargs[key] = float(val)
    cfg = ExperimentConfig(**kwargs)
    cfg.validate()
    return cfg


def _round12(v) -> float:
    """Fix values to 12 significant digits so the CSV round-trips exactly."""
    v = float(v)
    if math.isnan(v):
        return v
    return float(f"{v:.12g}")


def _format(v) -> str:
    if isinstance(v, int):
        return str(v)
    return f"{v:.12g}"


def emit_csv(columns, rows, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_format(v) for v in row) + "\n")


def parse_csv(path):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    columns = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        row = []
        for tok in line.split(","):
            try:
                row.append(int(tok))
            except ValueError:
                row.append(float(tok))
        rows.append(row)
    return columns, rows


def _streams(cfg: ExperimentConfig):
    """Independent rng streams derived from the master seed.

    Ordering is fixed so that e.g. switching the backend to "slm" leaves
    the sampled block parameters untouched.
    """
    init_ss, source_ss, param_ss, slm_ss = \
        np.random.SeedSequence(cfg.seed).spawn(4)
    return (np.random.default_rng(init_ss), np.random.default_rng(source_ss),
            np.random.default_rng(param_ss), np.random.default_rng(slm_ss))


def run_scenario(cfg: ExperimentConfig):
    """Run all blocks of a scenario; returns ``(columns, rows)``."""
    cfg.validate()
    runner = _RUNNERS[cfg.scenario]
    return runner(cfg)


# --- individual scenarios -------------------------------------------------

def _run_position(cfg):
    n = cfg.events_per_block or 2000
    st_piece = scalar.PositionState(0.0, cfg.alpha)
    st_rand = scalar.PositionState(0.0, cfg.alpha)
    _, source_rng, _, _ = _streams(cfg)
    columns = ["n", "y_piecewise", "x_piecewise", "y_random", "x_random"]
    rows = []
    for k in range(n):
        y1 = -0.5 if k < n // 2 else 0.5
        y2 = 0.5 if source_rng.random() < 0.5 else -0.5
        _, st_piece = scalar.step_position(st_piece, y1)
        _, st_rand = scalar.step_position(st_rand, y2)
        rows.append([k + 1, _round12(y1), _round12(st_piece.x),
                     _round12(y2), _round12(st_rand.x)])
    return columns, rows


def _run_interval(cfg):
    blocks = cfg.blocks or 100
    n = cfg.events_per_block or 1000
    counted = n // 2
    _, _, param_rng, _ = _streams(cfg)
    columns = ["block", "y", "frac_plus", "expected", "abs_diff"]
    rows = []
    for b in range(blocks):
        y = param_rng.uniform(-1.0, 1.0)
        st = scalar.IntervalState(0.0, cfg.alpha)
        ups = 0
        for k in range(n):
            delta, st = scalar.step_interval(st, y)
            if k >= n - counted and delta > 0:
                ups += 1
        frac = ups / counted
        expected = (1.0 + y) / 2.0
        rows.append([b, _round12(y), _round12(frac), _round12(expected),
                     _round12(abs(frac - expected))])
    return columns, rows


def _run_three_level(cfg):
    n = cfg.events_per_block or 5000
    init_rng, source_rng, _, _ = _streams(cfg)
    from .core import build_network
    net = build_network("three-level", rng=init_rng, alpha=cfg.alpha)
    machines = [net.nodes[f"m{i}"] for i in range(1, 8)]
    columns = ["phase"] + [f"x{i}" for i in range(1, 8)]
    rows = []
    for phase, values in enumerate(THREE_LEVEL_PHASES, 1):
        values = np.asarray(values)
        history = np.empty((n, 7))
        for k in range(n):
            y = values[source_rng.integers(0, values.size)]
            net.process_event("in", float(y))
            history[k] = [m.state.x for m in machines]
        learned = history[n // 2:].mean(axis=0)
        rows.append([phase] + [_round12(v) for v in learned])
    return columns, rows


def _run_circle(cfg):
    blocks = cfg.blocks or 100
    n = cfg.events_per_block or 1000
    counted = n // 2
    init_rng, _, param_rng, _ = _streams(cfg)
    columns = ["block", "phi_deg", "frac_theta1", "expected", "abs_diff"]
    rows = []
    for b in range(blocks):
        phi_deg = param_rng.uniform(0.0, 360.0)
        y = vector.angle_to_vector(math.radians(phi_deg))
        st = vector.UnitVectorState.random(2, cfg.alpha, init_rng)
        ones = 0
        for k in range(n):
            theta, _, st = vector.step_circle(st, y)
            if k >= n - counted and theta == 1:
                ones += 1
        frac = ones / counted
        expected = math.cos(math.radians(phi_deg)) ** 2
        rows.append([b, _round12(phi_deg), _round12(frac),
                     _round12(expected), _round12(abs(frac - expected))])
    return columns, rows


def _run_classifier(cfg):
    n = cfg.events_per_block or 20000
    gamma = cfg.gamma if cfg.gamma is not None else 1.0 / 5000.0
    total = cfg.warmup + n
    _, source_rng, _, _ = _streams(cfg)
    st = None
    columns = ["n", "y1", "y2", "side", "mid1", "mid2", "dir1", "dir2"]
    rows = []
    for k in range(total):
        y = classifier.generate_rotating_gaussians(gamma, k, source_rng)
        if st is None:
            st = classifier.SegmentState.initial(y, cfg.alpha)
        side, st = classifier.step_segment(st, y)
        rows.append([k, _round12(y[0]), _round12(y[1]), side,
                     _round12(st.mid[0]), _round12(st.mid[1]),
                     _round12(st.dir[0]), _round12(st.dir[1])])
    return columns, rows


def _run_polarizer(cfg):
    blocks = cfg.blocks or 100
    n = cfg.events_per_block or 1000
    init_rng, source_rng, param_rng, _ = _streams(cfg)
    net = optics.build_polarizer(0.0, cfg.alpha, init_rng)
    pol = net.nodes["pol"]
    fixed_psi = cfg.psi0
    columns = ["block", "phi_deg", "psi_deg", "frac0", "frac1",
               "oracle_I0", "abs_diff"]
    rows = []
    for b in range(blocks):
        phi_deg = param_rng.uniform(0.0, 360.0)
        pol.phi = math.radians(phi_deg)
        if fixed_psi is None:
            def events():
                for _ in range(n):
                    psi = source_rng.uniform(0.0, 2.0 * math.pi)
                    yield "in", vector.angle_to_vector(psi)
            expected = 0.5
            psi_col = math.nan
        else:
            y = vector.angle_to_vector(math.radians(fixed_psi))

            def events():
                for _ in range(n):
                    yield "in", y
            expected = oracle.malus_intensity(math.radians(fixed_psi),
                                              math.radians(phi_deg))[0]
            psi_col = fixed_psi
        tally = run_experiment(net, events())
        frac0 = tally.fraction("N0", ["N0", "N1"])
        rows.append([b, _round12(phi_deg), _round12(psi_col), _round12(frac0),
                     _round12(1.0 - frac0), _round12(expected),
                     _round12(abs(frac0 - expected))])
    return columns, rows


def _run_three_polarizers(cfg):
    blocks = cfg.blocks or 100
    n = cfg.events_per_block or 10000
    init_rng, source_rng, param_rng, _ = _streams(cfg)
    # Machine states drawn in the same order as the network builder.
    states = np.empty((3, 2))
    for i in range(3):
        v = init_rng.normal(size=2)
        states[i] = v / np.linalg.norm(v)
    columns = (["block", "phi_deg"] + [f"frac{i}" for i in range(4)]
               + [f"oracle{i}" for i in range(4)] + ["max_abs_diff"])
    rows = []
    for b in range(blocks):
        phi_deg = cfg.phi2 if cfg.phi2 is not None else param_rng.uniform(0.0, 360.0)
        phi = math.radians(phi_deg)
        u_psi = source_rng.uniform(0.0, 2.0 * math.pi, n)
        counts = np.zeros(4, dtype=np.int64)
        run_fast_three_polarizers(n, phi, cfg.alpha, states, u_psi, counts)
        fracs = [c / n for c in counts]
        c2, s2 = math.cos(phi) ** 2, math.sin(phi) ** 2
        expect = [0.5 * c2, 0.5 * s2, 0.5 * s2, 0.5 * c2]
        diff = max(abs(f - e) for f, e in zip(fracs, expect))
        rows.append([b, _round12(phi_deg)]
                    + [_round12(f) for f in fracs]
                    + [_round12(e) for e in expect] + [_round12(diff)])
    return columns, rows


def _run_beam_splitter(cfg):
    blocks = cfg.blocks or 100
    n = cfg.events_per_block or 10000
    p0 = cfg.p0 if cfg.p0 is not None else 0.5
    init_rng, source_rng, param_rng, slm_rng = _streams(cfg)
    chain = SplitterChain(1, cfg.alpha, init_rng, slm=cfg.backend == "slm")
    columns = ["block", "p0", "psi0_deg", "psi1_deg", "frac0",
               "oracle_b0sq", "abs_diff"]
    rows = []
    for b in range(blocks):
        psi0_deg, psi1_deg = param_rng.uniform(0.0, 360.0, 2)
        psi0, psi1 = math.radians(psi0_deg), math.radians(psi1_deg)
        counts = chain.run_block(n, p0, psi0, psi1, [], source_rng, slm_rng)
        frac0 = counts[0] / n
        b0sq = oracle.probabilities(
            oracle.bs_amplitudes(oracle.source_amplitudes(p0, psi0, psi1)))[0]
        rows.append([b, _round12(p0), _round12(psi0_deg), _round12(psi1_deg),
                     _round12(frac0), _round12(b0sq),
                     _round12(abs(frac0 - b0sq))])
    return columns, rows


def _run_mach_zehnder(cfg):
    n = cfg.events_per_block or 10000
    blocks = cfg.blocks or 37
    phi1_deg = cfg.phi1 if cfg.phi1 is not None else 0.0
    init_rng, source_rng, param_rng, slm_rng = _streams(cfg)
    chain = SplitterChain(2, cfg.alpha, init_rng, slm=cfg.backend == "slm")
    columns = ["block", "phi0_deg", "phi1_deg", "psi0_deg", "frac_arm0",
               "frac2", "frac3", "oracle_b0sq", "oracle_b1sq", "abs_diff"]
    rows = []
    phi1 = math.radians(phi1_deg)
    for b in range(blocks):
        phi0_deg = (cfg.phi0 if cfg.phi0 is not None else 0.0) + 10.0 * b
        phi0 = math.radians(phi0_deg)
        psi0_deg = param_rng.uniform(0.0, 360.0)
        psi0 = math.radians(psi0_deg)
        counts = chain.run_block(n, 1.0, psi0, 0.0, [phi0, phi1],
                                 source_rng, slm_rng)
        assert counts[0] + counts[1] == counts[2] + counts[3] == n
        b0sq, b1sq = oracle.probabilities(oracle.mz_amplitudes(
            oracle.source_amplitudes(1.0, psi0, 0.0), phi0, phi1))
        frac2 = counts[2] / n
        rows.append([b, _round12(phi0_deg), _round12(phi1_deg),
                     _round12(psi0_deg), _round12(counts[0] / n),
                     _round12(frac2), _round12(counts[3] / n),
                     _round12(b0sq), _round12(b1sq),
                     _round12(abs(frac2 - b0sq))])
    return columns, rows


def _run_chained_mz(cfg):
    blocks = cfg.blocks or 100
    n = cfg.events_per_block or 10000
    init_rng, source_rng, param_rng, slm_rng = _streams(cfg)
    chain = SplitterChain(3, cfg.alpha, init_rng, slm=cfg.backend == "slm")
    columns = ["block", "p0", "psi0_deg", "psi1_deg", "phi0_deg", "phi1_deg",
               "phi2_deg", "phi3_deg", "frac4", "oracle_b0sq", "abs_diff"]
    rows = []
    for b in range(blocks):
        p0 = cfg.p0 if cfg.p0 is not None else param_rng.uniform(0.0, 1.0)
        angles_deg = param_rng.uniform(0.0, 360.0, 6)
        psi0, psi1, phi0, phi1, phi2, phi3 = np.radians(angles_deg)
        counts = chain.run_block(n, p0, psi0, psi1, [phi0, phi1, phi2, phi3],
                                 source_rng, slm_rng)
        assert (counts[0] + counts[1] == counts[2] + counts[3]
                == counts[4] + counts[5] == n)
        b0sq = oracle.probabilities(oracle.chained_mz_amplitudes(
            oracle.source_amplitudes(p0, psi0, psi1),
            phi0, phi1, phi2, phi3))[0]
        frac4 = counts[4] / n
        rows.append([b, _round12(p0)] + [_round12(a) for a in angles_deg]
                    + [_round12(frac4), _round12(b0sq),
                       _round12(abs(frac4 - b0sq))])
    return columns, rows


_RUNNERS = {
    "position-learner": _run_position,
    "interval-learner": _run_interval,
    "three-level": _run_three_level,
    "circle-learner": _run_circle,
    "classifier": _run_classifier,
    "polarizer": _run_polarizer,
    "three-polarizers": _run_three_polarizers,
    "beam-splitter": _run_beam_splitter,
    "mach-zehnder": _run_mach_zehnder,
    "chained-mz": _run_chained_mz,
}


# --- figure-reproduction presets -----------------------------------------

FIGURES = {
    "fig1": ("position learner trajectories",
             [ExperimentConfig("position-learner")]),
    "fig2": ("three-level adaptive classifier, three input phases",
             [ExperimentConfig("three-level")]),
    "fig3": ("interval learner output rate vs (1+y)/2",
             [ExperimentConfig("interval-learner")]),
    "fig4": ("streaming classifier on the rotating two-Gaussian stream",
             [ExperimentConfig("classifier", warmup=2000)]),
    "fig5": ("polarizer intensity vs cos^2(psi-phi), psi = 25 deg",
             [ExperimentConfig("polarizer", psi0=25.0)]),
    "fig6": ("circle machine output rate vs cos^2(phi)",
             [ExperimentConfig("circle-learner")]),
    "fig7": ("beam splitter vs quantum prediction, p0 in {1, 0.5, 0.25}",
             [ExperimentConfig("beam-splitter", p0=p, seed=100 + i)
              for i, p in enumerate((1.0, 0.5, 0.25))]),
    "fig8": ("interferometer fringes for phi1 in {0, 30, 240, 300} deg",
             [ExperimentConfig("mach-zehnder", phi1=p, seed=100 + i)
              for i, p in enumerate((0.0, 30.0, 240.0, 300.0))]),
    "fig10": ("chained interferometers, 100 random parameter sets",
              [ExperimentConfig("chained-mz")]),
    "fig11": ("chained interferometers at alpha=0.9999, 10^6 events/block",
              [ExperimentConfig("chained-mz", alpha=0.9999,
                                events_per_block=1000000)]),
    "fig13": ("interferometer fringes with stochastic output selection",
              [ExperimentConfig("mach-zehnder", phi1=p, backend="slm",
                                seed=100 + i)
               for i, p in enumerate((0.0, 30.0, 240.0, 300.0))]),
}


def reproduce(figure_id: str, **overrides):
    """Run a figure preset; returns ``(columns, rows)`` over all series."""
    if figure_id not in FIGURES:
        raise ValueError(f"unknown figure id {figure_id!r}")
    _, configs = FIGURES[figure_id]
    columns = None
    rows = []
    for cfg in configs:
        cfg = replace(cfg, **overrides) if overrides else cfg
        cols, r = run_scenario(cfg)
        if columns is None:
            columns = cols
        rows.extend(r)
    return columns, rows
