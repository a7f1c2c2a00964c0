"""Token-tracking executor and oracle proving a schedule implements its collective.

Data is tracked as origin-tagged element intervals. Execution is round-atomic:
every event is checked against the state before its round, so forwarding data
received in the same round is a fault.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algorithms import CollectiveParams, Op
from .machine import MachineShape
from .schedule import Chunk, Schedule


class MissingData(RuntimeError):
    """An event's source does not hold its payload at the start of the round."""

    def __init__(self, round_index: int, src: int, chunk: Chunk):
        super().__init__(f"round {round_index}: rank {src} does not hold {chunk}")
        self.round_index = round_index
        self.src = src
        self.chunk = chunk


# per rank: origin -> sorted disjoint (lo, hi) intervals
_Held = dict[int, dict[int, list[tuple[int, int]]]]


class ProcState:
    """Per-rank sets of held chunks, kept canonical (merged, sorted)."""

    def __init__(self, p: int):
        self.p = p
        self.held: _Held = {r: {} for r in range(p)}

    def copy(self) -> "ProcState":
        dup = ProcState(self.p)
        dup.held = {r: {o: list(iv) for o, iv in d.items()} for r, d in self.held.items()}
        return dup

    def add(self, rank: int, chunk: Chunk) -> None:
        intervals = self.held[rank].setdefault(chunk.origin, [])
        _insert(intervals, chunk.lo, chunk.hi)

    def holds(self, rank: int, chunk: Chunk) -> bool:
        intervals = self.held[rank].get(chunk.origin)
        if not intervals:
            return False
        return _covers(intervals, chunk.lo, chunk.hi)

    def chunks(self, rank: int) -> tuple[Chunk, ...]:
        out = []
        for origin in sorted(self.held[rank]):
            for lo, hi in self.held[rank][origin]:
                out.append(Chunk(origin, lo, hi))
        return tuple(out)

    def element_count(self, rank: int) -> int:
        return sum(hi - lo for iv in self.held[rank].values() for lo, hi in iv)


def _insert(intervals: list[tuple[int, int]], lo: int, hi: int) -> None:
    # merge [lo, hi) into a sorted disjoint interval list in place
    merged = sorted(intervals + [(lo, hi)])
    out: list[tuple[int, int]] = []
    for a, b in merged:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    intervals[:] = out


def _covers(intervals: list[tuple[int, int]], lo: int, hi: int) -> bool:
    for a, b in intervals:
        if a <= lo and hi <= b:
            return True
        if a > lo:
            break
    return False


def initial_state(params: CollectiveParams, m: MachineShape) -> ProcState:
    """Pre-collective data ownership for broadcast, scatter, or alltoall."""
    st = ProcState(m.p)
    if params.op is Op.BCAST:
        st.add(params.root, Chunk(params.root, 0, params.c))
    elif params.op is Op.SCATTER:
        st.add(params.root, Chunk(params.root, 0, m.p * params.c))
    else:
        for i in range(m.p):
            st.add(i, Chunk(i, 0, m.p * params.c))
    return st


def expected_final(params: CollectiveParams, m: MachineShape) -> dict[int, tuple[Chunk, ...]]:
    """Per-rank chunk sets every correct schedule must deliver (at minimum)."""
    c = params.c
    if params.op is Op.BCAST:
        need = (Chunk(params.root, 0, c),)
        return {i: need for i in range(m.p)}
    if params.op is Op.SCATTER:
        return {i: (Chunk(params.root, i * c, (i + 1) * c),) for i in range(m.p)}
    return {
        i: tuple(Chunk(j, i * c, (i + 1) * c) for j in range(m.p)) for i in range(m.p)
    }


def execute(s: Schedule, st: ProcState) -> ProcState:
    """Run a schedule over a state; receivers gain chunks, senders keep copies.

    Raises MissingData when an event's source lacks its payload at the
    start of the event's round.
    """
    state = st.copy()
    for i, rnd in enumerate(s.rounds):
        for e in rnd.events:
            for ch in e.chunks:
                if not state.holds(e.src, ch):
                    raise MissingData(i, e.src, ch)
        for e in rnd.events:
            for ch in e.chunks:
                state.add(e.dst, ch)
    return state


@dataclass(frozen=True)
class VerifyFailure:
    rank: int
    chunk: Chunk | None
    reason: str  # "missing" | "extra" | "missing-data"


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    failures: tuple[VerifyFailure, ...] = field(default=())


def verify(
    params: CollectiveParams, m: MachineShape, s: Schedule, strict: bool = False
) -> VerifyResult:
    """Check that executing the schedule leaves every rank with its required data.

    Requirements are superset-based: relay ranks may legitimately end up
    holding extra chunks. With strict=True extras are reported as well
    (diagnostic; they do not affect `passed`).
    """
    st = initial_state(params, m)
    try:
        final = execute(s, st)
    except MissingData as fault:
        return VerifyResult(
            False, (VerifyFailure(fault.src, fault.chunk, "missing-data"),)
        )
    failures = []
    required = expected_final(params, m)
    for rank in range(m.p):
        for chunk in required[rank]:
            if not final.holds(rank, chunk):
                failures.append(VerifyFailure(rank, chunk, "missing"))
    result_failures = list(failures)
    if strict:
        for rank in range(m.p):
            needed: dict[int, list[tuple[int, int]]] = {}
            for chunk in required[rank]:
                _insert(needed.setdefault(chunk.origin, []), chunk.lo, chunk.hi)
            for chunk in final.chunks(rank):
                if not _covers(needed.get(chunk.origin, []), chunk.lo, chunk.hi):
                    result_failures.append(VerifyFailure(rank, chunk, "extra"))
    passed = not failures
    return VerifyResult(passed, tuple(result_failures))
