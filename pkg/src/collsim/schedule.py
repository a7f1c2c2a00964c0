"""Schedule intermediate representation: chunks, events, rounds, legality, stats."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .machine import MachineShape, node_of


@dataclass(frozen=True)
class Chunk:
    """A data token: the element interval [lo, hi) of rank `origin`'s send buffer."""

    origin: int
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo < self.hi:
            raise ValueError(f"empty or negative chunk interval [{self.lo}, {self.hi})")

    @property
    def size(self) -> int:
        return self.hi - self.lo


def canonical_chunks(chunks: Iterable[Chunk]) -> tuple[Chunk, ...]:
    """Sort by (origin, lo) and merge adjacent or overlapping same-origin intervals."""
    ordered = sorted(chunks, key=lambda ch: (ch.origin, ch.lo, ch.hi))
    merged: list[Chunk] = []
    for ch in ordered:
        if merged and merged[-1].origin == ch.origin and ch.lo <= merged[-1].hi:
            last = merged[-1]
            if ch.hi > last.hi:
                merged[-1] = Chunk(last.origin, last.lo, ch.hi)
        else:
            merged.append(ch)
    return tuple(merged)


@dataclass(frozen=True)
class Event:
    """One point-to-point transfer; a multi-chunk payload counts as one message."""

    src: int
    dst: int
    chunks: tuple[Chunk, ...]

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError(f"event with src == dst == {self.src}")
        if not self.chunks:
            raise ValueError("event with empty payload")
        object.__setattr__(self, "chunks", canonical_chunks(self.chunks))

    @property
    def size(self) -> int:
        return sum(ch.size for ch in self.chunks)


def is_inter_node(m: MachineShape, e: Event) -> bool:
    return node_of(m, e.src) != node_of(m, e.dst)


@dataclass(frozen=True)
class Round:
    """Events intended to execute concurrently; (src, dst) pairs are unique."""

    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.events, key=lambda e: (e.src, e.dst)))
        pairs = [(e.src, e.dst) for e in ordered]
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate (src, dst) pair within a round")
        object.__setattr__(self, "events", ordered)


@dataclass(frozen=True)
class Schedule:
    """Ordered rounds plus metadata about the generating algorithm and parameters."""

    rounds: tuple[Round, ...]
    meta: dict[str, Any] = field(default_factory=dict)


def make_schedule(event_rounds: Sequence[Sequence[Event]], meta: dict[str, Any]) -> Schedule:
    """Assemble a schedule from per-round event lists, dropping empty rounds.

    Validates every src/dst against meta['p'] when present.
    """
    p = meta.get("p")
    rounds = []
    for evs in event_rounds:
        if not evs:
            continue
        if p is not None:
            for e in evs:
                if not (0 <= e.src < p and 0 <= e.dst < p):
                    raise ValueError(f"event {e.src}->{e.dst} outside rank space [0, {p})")
        rounds.append(Round(tuple(evs)))
    return Schedule(rounds=tuple(rounds), meta=dict(meta))


@dataclass(frozen=True)
class LegalityReport:
    """Outcome of a per-round send/receive budget check; first violation recorded."""

    passed: bool
    round_index: int | None = None
    rank: int | None = None
    role: str | None = None
    count: int | None = None


def _budget_check(s: Schedule, send_limit: int, recv_limit: int) -> LegalityReport:
    for i, rnd in enumerate(s.rounds):
        sends: dict[int, int] = {}
        recvs: dict[int, int] = {}
        for e in rnd.events:
            sends[e.src] = sends.get(e.src, 0) + 1
            recvs[e.dst] = recvs.get(e.dst, 0) + 1
        for rank in sorted(sends):
            if sends[rank] > send_limit:
                return LegalityReport(False, i, rank, "send", sends[rank])
        for rank in sorted(recvs):
            if recvs[rank] > recv_limit:
                return LegalityReport(False, i, rank, "recv", recvs[rank])
    return LegalityReport(True)


def check_ported_legality(s: Schedule, m: MachineShape, k: int) -> LegalityReport:
    """Pass iff every rank has at most k sends and k receives in every round."""
    return _budget_check(s, k, k)


def check_lane_step_legality(s: Schedule, m: MachineShape) -> LegalityReport:
    """Pass iff every rank has at most one send and one receive in every round.

    Node-level lane oversubscription is legal here; the cost model penalizes it.
    """
    return _budget_check(s, 1, 1)


@dataclass(frozen=True)
class ScheduleStats:
    rounds: int
    comm_rounds: int
    off_node_elements: int
    on_node_elements: int
    root_out_elements: int
    root_node_out_elements: int
    max_node_concurrency: int

    @property
    def total_elements(self) -> int:
        return self.off_node_elements + self.on_node_elements


def schedule_stats(s: Schedule, m: MachineShape, root: int | None = None) -> ScheduleStats:
    """Measure round counts and transferred volume; root-based counters need `root`."""
    off = on = root_out = root_node_out = 0
    comm_rounds = 0
    max_conc = 0
    root_node = node_of(m, root) if root is not None else None
    for rnd in s.rounds:
        if rnd.events:
            comm_rounds += 1
        touch: dict[int, int] = {}
        for e in rnd.events:
            size = e.size
            if is_inter_node(m, e):
                off += size
                src_node = node_of(m, e.src)
                dst_node = node_of(m, e.dst)
                touch[src_node] = touch.get(src_node, 0) + 1
                touch[dst_node] = touch.get(dst_node, 0) + 1
                if root_node is not None and src_node == root_node:
                    root_node_out += size
            else:
                on += size
            if root is not None and e.src == root:
                root_out += size
        if touch:
            max_conc = max(max_conc, max(touch.values()))
    return ScheduleStats(
        rounds=len(s.rounds),
        comm_rounds=comm_rounds,
        off_node_elements=off,
        on_node_elements=on,
        root_out_elements=root_out,
        root_node_out_elements=root_node_out,
        max_node_concurrency=max_conc,
    )


def dump_lines(s: Schedule) -> list[str]:
    """One `round,src,dst,origin,lo,hi` line per (event, chunk) pair, sorted."""
    records = []
    for i, rnd in enumerate(s.rounds):
        for e in rnd.events:
            for ch in e.chunks:
                records.append((i, e.src, e.dst, ch.origin, ch.lo, ch.hi))
    records.sort()
    return [",".join(str(x) for x in rec) for rec in records]
