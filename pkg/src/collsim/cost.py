"""Latency-bandwidth cost model with per-node lane contention.

Transfer time follows the alpha-beta model: alpha + beta * size. Bandwidth
sharing on a node is a slowdown factor applied to beta only: when more than
k concurrent off-node transfers hit one node, beta scales by their count
over k. Latency is unaffected, and node-local transfers never contend.
Round time is the slowest event (bulk-synchronous); schedule time is the
sum over rounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .machine import MachineShape, node_of
from .schedule import Event, Round, Schedule, is_inter_node


@dataclass(frozen=True)
class CostParams:
    """alpha/beta coefficients per transfer kind plus the lane count.

    k defaults from the machine when building via `params_for`; it is kept
    explicit here so sweeps can vary it for a fixed schedule.
    """

    alpha_inter: float = 1.0
    beta_inter: float = 0.01
    alpha_intra: float = 0.3
    beta_intra: float = 0.002
    k: int = 1

    def __post_init__(self) -> None:
        for name in ("alpha_inter", "beta_inter", "alpha_intra", "beta_intra"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.k < 1:
            raise ValueError("lane count must be >= 1")


def params_for(m: MachineShape, **overrides) -> CostParams:
    """Cost parameters with the lane count taken from the machine."""
    overrides.setdefault("k", m.k)
    return CostParams(**overrides)


@dataclass(frozen=True)
class Bottleneck:
    src: int
    dst: int
    size: int
    factor: float


@dataclass(frozen=True)
class CostReport:
    total_time: float
    per_round: tuple[float, ...]
    per_round_bottleneck: tuple[Bottleneck | None, ...]


def contention_factor(rnd: Round, m: MachineShape, e: Event, k: int) -> float:
    """Slowdown multiplier >= 1 for an event within its round.

    Off-node events share the k lanes of both endpoint nodes equally:
    the factor is max(1, S/k, R/k), where S counts concurrent off-node
    events leaving the source's node and R those entering the
    destination's node. Node-local events never contend.
    """
    if not is_inter_node(m, e):
        return 1.0
    src_node = node_of(m, e.src)
    dst_node = node_of(m, e.dst)
    sends = 0
    recvs = 0
    for other in rnd.events:
        if not is_inter_node(m, other):
            continue
        if node_of(m, other.src) == src_node:
            sends += 1
        if node_of(m, other.dst) == dst_node:
            recvs += 1
    return max(1.0, sends / k, recvs / k)


def event_time(e: Event, factor: float, cp: CostParams, inter: bool) -> float:
    """alpha + (contended) beta * size for one event."""
    if inter:
        return cp.alpha_inter + factor * cp.beta_inter * e.size
    return cp.alpha_intra + cp.beta_intra * e.size


def time_schedule(s: Schedule, m: MachineShape, cp: CostParams) -> CostReport:
    """Bulk-synchronous schedule time: per round the slowest event, summed."""
    per_round = []
    bottlenecks: list[Bottleneck | None] = []
    for rnd in s.rounds:
        sends: dict[int, int] = {}
        recvs: dict[int, int] = {}
        inter_flags = []
        for e in rnd.events:
            inter = is_inter_node(m, e)
            inter_flags.append(inter)
            if inter:
                src_node = node_of(m, e.src)
                dst_node = node_of(m, e.dst)
                sends[src_node] = sends.get(src_node, 0) + 1
                recvs[dst_node] = recvs.get(dst_node, 0) + 1
        worst = 0.0
        worst_event: Bottleneck | None = None
        for e, inter in zip(rnd.events, inter_flags):
            if inter:
                factor = max(
                    1.0,
                    sends[node_of(m, e.src)] / cp.k,
                    recvs[node_of(m, e.dst)] / cp.k,
                )
            else:
                factor = 1.0
            t = event_time(e, factor, cp, inter)
            if worst_event is None or t > worst:
                worst = t
                worst_event = Bottleneck(e.src, e.dst, e.size, factor)
        per_round.append(worst)
        bottlenecks.append(worst_event)
    return CostReport(
        total_time=sum(per_round),
        per_round=tuple(per_round),
        per_round_bottleneck=tuple(bottlenecks),
    )
