"""Message-passing core: messages, nodes, networks, and the sequential event loop.

A network is a directed acyclic graph of processing nodes.  Exactly one
message is in flight at any time: an event enters at a source port, each
node transforms its state and the payload, and the message hops along
edges until a sink absorbs it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class NetworkError(ValueError):
    """Raised for malformed network topologies."""


class Message:
    """A unit 2-vector travelling on a channel.

    The payload is renormalized on construction; zero vectors are rejected.
    """

    __slots__ = ("payload", "channel")

    def __init__(self, payload, channel: int = 0):
        v = np.asarray(payload, dtype=float)
        if v.shape != (2,):
            raise ValueError(f"payload must be a 2-vector, got shape {v.shape}")
        n = math.sqrt(v[0] * v[0] + v[1] * v[1])
        if n < 1e-12:
            raise ValueError("zero-vector payload rejected")
        self.payload = v / n
        self.channel = int(channel)

    @classmethod
    def from_angle(cls, phi: float, channel: int = 0) -> "Message":
        return cls(np.array([math.cos(phi), math.sin(phi)]), channel)

    def angle(self) -> float:
        return math.atan2(self.payload[1], self.payload[0])

    def __repr__(self):
        return f"Message({self.payload!r}, channel={self.channel})"


class Node:
    """Base processing node.

    Subclasses implement ``step(channel, payload) -> (out_channel, payload)``
    and declare how many output channels they drive.
    """

    n_outputs = 1

    def step(self, channel: int, payload):
        raise NotImplementedError


class Sink(Node):
    """Absorbing endpoint; its event count lives in the run's tally."""

    n_outputs = 0

    def step(self, channel, payload):  # pragma: no cover - sinks never step
        raise RuntimeError("sinks do not process messages")


class PassThroughCounter(Node):
    """Counts traversing events and forwards the payload unchanged.

    Used for arm tallies that must not absorb the message (the same event
    continues to the next device).
    """

    def step(self, channel, payload):
        return 0, payload


class Network:
    """A validated node graph with named source ports.

    ``edges`` maps (node, output-channel) to (node, input-channel).  Every
    declared output channel must be wired, each sink has no outgoing edges,
    and the graph must be acyclic.
    """

    def __init__(self, nodes: dict[str, Node],
                 edges: dict[tuple[str, int], tuple[str, int]],
                 sources: dict[str, tuple[str, int]]):
        self.nodes = dict(nodes)
        self.edges = dict(edges)
        self.sources = dict(sources)
        self._validate()

    @property
    def sink_names(self) -> list[str]:
        return [k for k, n in self.nodes.items() if isinstance(n, Sink)]

    @property
    def counter_names(self) -> list[str]:
        return [k for k, n in self.nodes.items()
                if isinstance(n, PassThroughCounter)]

    def _validate(self):
        for (src, out_ch), (dst, in_ch) in self.edges.items():
            if src not in self.nodes:
                raise NetworkError(f"edge from unknown node {src!r}")
            if dst not in self.nodes:
                raise NetworkError(f"edge to unknown node {dst!r}")
            node = self.nodes[src]
            if isinstance(node, Sink):
                raise NetworkError(f"sink {src!r} has an outgoing edge")
            if not 0 <= out_ch < node.n_outputs:
                raise NetworkError(f"{src!r} has no output channel {out_ch}")
        for name, node in self.nodes.items():
            for ch in range(node.n_outputs):
                if (name, ch) not in self.edges:
                    raise NetworkError(
                        f"output {ch} of {name!r} is not wired")
        for port, (dst, _) in self.sources.items():
            if dst not in self.nodes:
                raise NetworkError(f"source port {port!r} targets unknown "
                                   f"node {dst!r}")
        self._check_acyclic()

    def _check_acyclic(self):
        succ: dict[str, set[str]] = {k: set() for k in self.nodes}
        for (src, _), (dst, _) in self.edges.items():
            succ[src].add(dst)
        WHITE, GREY, BLACK = 0, 1, 2
        color = dict.fromkeys(self.nodes, WHITE)

        def visit(u):
            color[u] = GREY
            for v in succ[u]:
                if color[v] == GREY:
                    raise NetworkError(f"cycle detected through {v!r}")
                if color[v] == WHITE:
                    visit(v)
            color[u] = BLACK

        for u in self.nodes:
            if color[u] == WHITE:
                visit(u)

    def process_event(self, entry: str, payload):
        """Propagate one message from a source port to a sink.

        Returns ``(sink_name, payload, counters_hit)`` where ``counters_hit``
        lists the pass-through counters the event traversed, in order.
        """
        if entry not in self.sources:
            raise ValueError(f"unknown source port {entry!r}")
        name, channel = self.sources[entry]
        counters: list[str] = []
        for _ in range(len(self.nodes) + 1):
            node = self.nodes[name]
            if isinstance(node, Sink):
                return name, payload, counters
            if isinstance(node, PassThroughCounter):
                counters.append(name)
            out_ch, payload = node.step(channel, payload)
            name, channel = self.edges[(name, out_ch)]
        raise RuntimeError("propagation exceeded node count")


@dataclass
class TallyCounters:
    """Per-channel event counts, with warm-up events tracked separately."""

    counts: dict[str, int] = field(default_factory=dict)
    discards: dict[str, int] = field(default_factory=dict)
    total: int = 0
    warmup: int = 0

    def add(self, name: str, discarded: bool):
        book = self.discards if discarded else self.counts
        book[name] = book.get(name, 0) + 1

    def fraction(self, name: str, group: list[str]) -> float:
        denom = sum(self.counts.get(g, 0) for g in group)
        if denom == 0:
            return math.nan
        return self.counts.get(name, 0) / denom


def run_experiment(net: Network, events, warmup: int = 0) -> TallyCounters:
    """Process an iterable of ``(entry_port, payload)`` events sequentially.

    The first ``warmup`` events are recorded in the discard book so that
    conservation (counts + discards = total) stays checkable.
    """
    if warmup < 0:
        raise ValueError("warmup must be >= 0")
    tally = TallyCounters(warmup=warmup)
    k = 0
    for entry, payload in events:
        sink, _, counters = net.process_event(entry, payload)
        discarded = k < warmup
        for c in counters:
            tally.add(c, discarded)
        tally.add(sink, discarded)
        tally.total += 1
        k += 1
    if tally.total == 0:
        raise ValueError("at least one event is required")
    if warmup >= tally.total:
        raise ValueError("warmup must be smaller than the event count")
    return tally


def build_network(scenario: str, rng=None, **params) -> Network:
    """Build one of the known scenario networks by name."""
    from . import optics, scalar

    rng = np.random.default_rng(rng)
    builders = {
        "polarizer": optics.build_polarizer,
        "three-polarizers": optics.build_three_polarizers,
        "beam-splitter": optics.build_beam_splitter,
        "mach-zehnder": optics.build_mach_zehnder,
        "chained-mz": optics.build_chained_mz,
        "three-level": scalar.build_three_level_classifier,
    }
    if scenario not in builders:
        raise ValueError(f"unknown scenario {scenario!r}")
    return builders[scenario](rng=rng, **params)
