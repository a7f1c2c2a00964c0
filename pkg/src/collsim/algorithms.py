"""Schedule generators: k-ported, full-lane, and adapted k-lane collectives.

Three families share the same building blocks:

* k-ported: divide-and-conquer broadcast/scatter over rank ranges plus a
  round-robin alltoall, assuming each rank can drive k concurrent sends
  and receives.
* full-lane: split one collective on c elements into n per-lane
  sub-collectives framed by node-local scatter/allgather/alltoall phases.
* k-lane: reuse the k-ported pattern at node granularity, with k local
  ranks per node serving as the ports and node-local distribution phases
  in between.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .machine import MachineShape, lane_group, local_index, node_of, node_ranks, rank_at
from .schedule import Chunk, Event, Schedule, canonical_chunks, make_schedule


class InvalidParams(ValueError):
    """Raised for inconsistent generator parameters."""


class EmptyRange(ValueError):
    """Raised when asked to split an empty rank range."""


class Op(enum.Enum):
    BCAST = "bcast"
    SCATTER = "scatter"
    ALLTOALL = "alltoall"


@dataclass(frozen=True)
class CollectiveParams:
    """What a schedule is supposed to accomplish, for the semantic checker.

    c is the total payload for a broadcast and the per-block element count
    for scatter/alltoall.
    """

    op: Op
    c: int
    root: int | None = None
    k: int = 1

    def __post_init__(self) -> None:
        if self.c < 1:
            raise InvalidParams(f"element count must be >= 1, got {self.c}")
        if self.op is not Op.ALLTOALL and self.root is None:
            raise InvalidParams(f"{self.op.value} requires a root rank")


def split_range(s: int, e_excl: int, parts: int) -> list[tuple[int, int]]:
    """Split [s, e_excl) into min(parts, size) contiguous subranges.

    Sizes differ by at most one and larger subranges come first, so the
    result is deterministic.
    """
    if parts < 1:
        raise InvalidParams(f"parts must be >= 1, got {parts}")
    if s >= e_excl:
        raise EmptyRange(f"cannot split empty range [{s}, {e_excl})")
    size = e_excl - s
    parts = min(parts, size)
    q, r = divmod(size, parts)
    out = []
    lo = s
    for i in range(parts):
        hi = lo + q + (1 if i < r else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _ported_tree_rounds(p: int, k: int, root: int) -> list[list[tuple[int, int, tuple[int, int]]]]:
    """Divide-and-conquer round structure shared by broadcast and scatter.

    Every active range splits into k+1 near-equal subranges per round; the
    range's root sends to the first rank of each subrange it does not
    belong to. Returns per round a list of (src, dst, dst_subrange).
    """
    segments = [(0, p, root)]
    rounds = []
    while any(e - s > 1 for s, e, _ in segments):
        events = []
        nxt = []
        for s, e, r in segments:
            if e - s == 1:
                nxt.append((s, e, r))
                continue
            for a, b in split_range(s, e, k + 1):
                if a <= r < b:
                    nxt.append((a, b, r))
                else:
                    events.append((r, a, (a, b)))
                    nxt.append((a, b, a))
        rounds.append(events)
        segments = nxt
    return rounds


def _merge_blocks(blocks: Sequence[Sequence[list[Event]]]) -> list[list[Event]]:
    """Overlay independent round sequences (disjoint rank sets) round by round."""
    if not blocks:
        return []
    out: list[list[Event]] = []
    for i in range(max(len(b) for b in blocks)):
        merged: list[Event] = []
        for b in blocks:
            if i < len(b):
                merged.extend(b[i])
        out.append(merged)
    return out


# ---------------------------------------------------------------------------
# k-ported generators (rank-level; the machine only matters for stats/cost)
# ---------------------------------------------------------------------------


def _check_kported(p: int, k: int, root: int | None, c: int) -> None:
    if p < 1 or k < 1 or c < 1:
        raise InvalidParams(f"need p >= 1, k >= 1, c >= 1, got p={p}, k={k}, c={c}")
    if root is not None and not 0 <= root < p:
        raise InvalidParams(f"root {root} outside [0, {p})")


def kported_bcast(p: int, k: int, root: int, c: int) -> Schedule:
    """Broadcast c elements from root in ceil(log_{k+1} p) rounds.

    Every round, each current local root forwards the full payload to the
    first rank of each subrange of its range that does not contain it.
    """
    _check_kported(p, k, root, c)
    payload = (Chunk(root, 0, c),)
    rounds = [
        [Event(src, dst, payload) for src, dst, _ in rnd]
        for rnd in _ported_tree_rounds(p, k, root)
    ]
    meta = {"algo": "kported_bcast", "op": Op.BCAST.value, "p": p, "k": k, "c": c, "root": root}
    return make_schedule(rounds, meta)


def kported_scatter(p: int, k: int, root: int, c: int) -> Schedule:
    """Scatter block b_i (c elements at offset i*c of root's buffer) to each rank i.

    Same tree as kported_bcast; the send into a subrange carries exactly
    that subrange's blocks, so the root emits (p-1)*c elements in total.
    """
    _check_kported(p, k, root, c)
    rounds = [
        [Event(src, dst, (Chunk(root, a * c, b * c),)) for src, dst, (a, b) in rnd]
        for rnd in _ported_tree_rounds(p, k, root)
    ]
    meta = {"algo": "kported_scatter", "op": Op.SCATTER.value, "p": p, "k": k, "c": c, "root": root}
    return make_schedule(rounds, meta)


def kported_alltoall(p: int, k: int, c: int) -> Schedule:
    """Direct alltoall: in round t each rank sends to the k next ranks.

    Round t (0-based) covers destination offsets t*k+1 .. t*k+k, so
    ceil((p-1)/k) rounds move every non-self block exactly once; the
    self-block stays local with no event.
    """
    _check_kported(p, k, None, c)
    rounds = []
    t = 0
    while t * k < p - 1:
        events = []
        for d in range(t * k + 1, min((t + 1) * k, p - 1) + 1):
            for i in range(p):
                dst = (i + d) % p
                events.append(Event(i, dst, (Chunk(i, dst * c, (dst + 1) * c),)))
        rounds.append(events)
        t += 1
    meta = {"algo": "kported_alltoall", "op": Op.ALLTOALL.value, "p": p, "k": k, "c": c, "root": None}
    return make_schedule(rounds, meta)


# ---------------------------------------------------------------------------
# node-local primitives (operate on an explicit ordered rank list)
# ---------------------------------------------------------------------------


def _check_ranks(ranks: Sequence[int]) -> None:
    if not ranks:
        raise InvalidParams("rank list must be non-empty")
    if len(set(ranks)) != len(ranks):
        raise InvalidParams(f"duplicate ranks in {ranks}")


def _local_bcast_rounds(ranks: Sequence[int], root_pos: int, chunks: tuple[Chunk, ...]) -> list[list[Event]]:
    return [
        [Event(ranks[src], ranks[dst], chunks) for src, dst, _ in rnd]
        for rnd in _ported_tree_rounds(len(ranks), 1, root_pos)
    ]


def _local_scatter_rounds(
    ranks: Sequence[int], root_pos: int, payloads: Sequence[tuple[Chunk, ...]]
) -> list[list[Event]]:
    # payloads[i] is destined to ranks[i]; empty payloads produce no events
    out = []
    for rnd in _ported_tree_rounds(len(ranks), 1, root_pos):
        events = []
        for src, dst, (a, b) in rnd:
            bundle = [ch for i in range(a, b) for ch in payloads[i]]
            if bundle:
                events.append(Event(ranks[src], ranks[dst], tuple(bundle)))
        out.append(events)
    return out


def _local_allgather_rounds(
    ranks: Sequence[int],
    contributions: Sequence[tuple[Chunk, ...]],
    skip: Sequence[set[int]] | None = None,
) -> list[list[Event]]:
    # Dissemination pattern: in round t, position i ships the leading
    # min(2^t, m - 2^t) entries of its gathered window to position i - 2^t,
    # giving ceil(log2 m) rounds with one send and one receive per rank.
    # skip[j] lists positions whose contributions rank j holds already
    # (e.g. left behind by an earlier scatter), so no event re-delivers them.
    m = len(ranks)
    out = []
    t = 0
    while (1 << t) < m:
        w = 1 << t
        cnt = min(w, m - w)
        events = []
        for i in range(m):
            dst = (i - w) % m
            bundle = [
                ch
                for q in range(cnt)
                if skip is None or (i + q) % m not in skip[dst]
                for ch in contributions[(i + q) % m]
            ]
            if bundle:
                events.append(Event(ranks[i], ranks[dst], tuple(bundle)))
        out.append(events)
        t += 1
    return out


def _local_alltoall_rounds(
    ranks: Sequence[int], payloads: Sequence[Sequence[tuple[Chunk, ...]]]
) -> list[list[Event]]:
    # Round-robin offsets 1..m-1; payloads[i][j] goes from ranks[i] to ranks[j].
    m = len(ranks)
    out = []
    for o in range(1, m):
        events = []
        for i in range(m):
            j = (i + o) % m
            if payloads[i][j]:
                events.append(Event(ranks[i], ranks[j], tuple(payloads[i][j])))
        out.append(events)
    return out


def local_bcast(ranks: Sequence[int], root_pos: int, chunks: Sequence[Chunk]) -> Schedule:
    """Binomial broadcast of `chunks` over an ordered rank list."""
    _check_ranks(ranks)
    if not 0 <= root_pos < len(ranks):
        raise InvalidParams(f"root position {root_pos} outside [0, {len(ranks)})")
    if not chunks:
        raise InvalidParams("broadcast payload must be non-empty")
    rounds = _local_bcast_rounds(ranks, root_pos, canonical_chunks(chunks))
    return make_schedule(rounds, {"algo": "local_bcast", "op": Op.BCAST.value})


def local_scatter(ranks: Sequence[int], root_pos: int, payloads: Sequence[Sequence[Chunk]]) -> Schedule:
    """Binomial scatter delivering payloads[i] to ranks[i] from ranks[root_pos]."""
    _check_ranks(ranks)
    if not 0 <= root_pos < len(ranks):
        raise InvalidParams(f"root position {root_pos} outside [0, {len(ranks)})")
    if len(payloads) != len(ranks):
        raise InvalidParams("need one payload entry per rank")
    rounds = _local_scatter_rounds(ranks, root_pos, [canonical_chunks(pl) for pl in payloads])
    return make_schedule(rounds, {"algo": "local_scatter", "op": Op.SCATTER.value})


def local_allgather(ranks: Sequence[int], contributions: Sequence[Sequence[Chunk]]) -> Schedule:
    """Allgather in ceil(log2 len(ranks)) rounds; all ranks end with every contribution."""
    _check_ranks(ranks)
    if len(contributions) != len(ranks):
        raise InvalidParams("need one contribution entry per rank")
    rounds = _local_allgather_rounds(ranks, [canonical_chunks(ct) for ct in contributions])
    return make_schedule(rounds, {"algo": "local_allgather", "op": "allgather"})


def local_alltoall(ranks: Sequence[int], payloads: Sequence[Sequence[Sequence[Chunk]]]) -> Schedule:
    """Round-robin alltoall of payloads[i][j] over an ordered rank list."""
    _check_ranks(ranks)
    if len(payloads) != len(ranks) or any(len(row) != len(ranks) for row in payloads):
        raise InvalidParams("payload matrix must be square over the rank list")
    matrix = [[canonical_chunks(cell) for cell in row] for row in payloads]
    rounds = _local_alltoall_rounds(ranks, matrix)
    return make_schedule(rounds, {"algo": "local_alltoall", "op": Op.ALLTOALL.value})


# ---------------------------------------------------------------------------
# full-lane generators (split the problem across the n lane groups)
# ---------------------------------------------------------------------------


def _check_machine_params(m: MachineShape, root: int | None, c: int) -> None:
    if c < 1:
        raise InvalidParams(f"element count must be >= 1, got {c}")
    if root is not None and not 0 <= root < m.p:
        raise InvalidParams(f"root {root} outside [0, {m.p})")


def _fulllane_meta(algo: str, op: Op, m: MachineShape, c: int, root: int | None) -> dict:
    return {
        "algo": algo,
        "op": op.value,
        "p": m.p,
        "N": m.N,
        "n": m.n,
        "k": m.k,
        "c": c,
        "root": root,
        "placement": m.placement.value,
    }


def fulllane_bcast(m: MachineShape, root: int, c: int) -> Schedule:
    """Broadcast by scattering c over the root node, one broadcast per lane
    group, then an allgather on every node."""
    _check_machine_params(m, root, c)
    root_node = node_of(m, root)
    root_pos = local_index(m, root)
    shares = split_range(0, c, m.n)
    # share j belongs to local index j; lanes beyond c (when c < n) carry nothing
    payloads: list[tuple[Chunk, ...]] = [(Chunk(root, a, b),) for a, b in shares]
    payloads += [()] * (m.n - len(payloads))
    phase1 = _local_scatter_rounds(node_ranks(m, root_node), root_pos, payloads)
    # the scatter leaves each root-node rank holding its whole subtree's
    # shares; the closing allgather must not re-deliver those
    scatter_span: list[set[int]] = [set() for _ in range(m.n)]
    scatter_span[root_pos] = set(range(m.n))
    for rnd in _ported_tree_rounds(m.n, 1, root_pos):
        for _src, dst, (a, b) in rnd:
            scatter_span[dst] = set(range(a, b))
    lane_blocks = []
    for j in range(m.n):
        if payloads[j] and m.N > 1:
            lane_blocks.append(_local_bcast_rounds(lane_group(m, j), root_node, payloads[j]))
    phase2 = _merge_blocks(lane_blocks)
    gather_blocks = []
    if m.n > 1:
        for v in range(m.N):
            skip = scatter_span if v == root_node else None
            gather_blocks.append(_local_allgather_rounds(node_ranks(m, v), payloads, skip))
    phase3 = _merge_blocks(gather_blocks)
    meta = _fulllane_meta("fulllane_bcast", Op.BCAST, m, c, root)
    meta["phase_comm_rounds"] = tuple(
        sum(1 for rnd in ph if rnd) for ph in (phase1, phase2, phase3)
    )
    return make_schedule(phase1 + phase2 + phase3, meta)


def fulllane_scatter(m: MachineShape, root: int, c: int) -> Schedule:
    """Scatter by handing each lane its blocks on the root node, then one
    scatter per lane group; round- and volume-optimal up to one round."""
    _check_machine_params(m, root, c)
    root_node = node_of(m, root)
    lane_payloads = [
        canonical_chunks(Chunk(root, x * c, (x + 1) * c) for x in lane_group(m, j))
        for j in range(m.n)
    ]
    phase1 = _local_scatter_rounds(node_ranks(m, root_node), local_index(m, root), lane_payloads)
    lane_blocks = []
    if m.N > 1:
        for j in range(m.n):
            lane = lane_group(m, j)
            per_rank = [(Chunk(root, x * c, (x + 1) * c),) for x in lane]
            lane_blocks.append(_local_scatter_rounds(lane, root_node, per_rank))
    phase2 = _merge_blocks(lane_blocks)
    meta = _fulllane_meta("fulllane_scatter", Op.SCATTER, m, c, root)
    meta["phase_comm_rounds"] = tuple(sum(1 for rnd in ph if rnd) for ph in (phase1, phase2))
    return make_schedule(phase1 + phase2, meta)


def fulllane_alltoall(m: MachineShape, c: int) -> Schedule:
    """Alltoall in two phases: a node-local alltoall hands each lane member
    the blocks whose destinations share its local index, then each lane
    group exchanges the combined per-node bundles."""
    _check_machine_params(m, None, c)

    def block(origin: int, dst: int) -> Chunk:
        return Chunk(origin, dst * c, (dst + 1) * c)

    local_blocks = []
    if m.n > 1:
        for v in range(m.N):
            ranks = node_ranks(m, v)
            payloads = [
                [
                    tuple(block(ranks[i], x) for x in lane_group(m, jj)) if jj != i else ()
                    for jj in range(m.n)
                ]
                for i in range(m.n)
            ]
            local_blocks.append(_local_alltoall_rounds(ranks, payloads))
    phase1 = _merge_blocks(local_blocks)
    lane_blocks = []
    if m.N > 1:
        for j in range(m.n):
            lane = lane_group(m, j)
            payloads = [
                [
                    tuple(block(q, lane[w]) for q in node_ranks(m, v)) if w != v else ()
                    for w in range(m.N)
                ]
                for v in range(m.N)
            ]
            lane_blocks.append(_local_alltoall_rounds(lane, payloads))
    phase2 = _merge_blocks(lane_blocks)
    meta = _fulllane_meta("fulllane_alltoall", Op.ALLTOALL, m, c, None)
    meta["phase_comm_rounds"] = tuple(sum(1 for rnd in ph if rnd) for ph in (phase1, phase2))
    return make_schedule(phase1 + phase2, meta)


# ---------------------------------------------------------------------------
# adapted k-lane generators (k-ported pattern at node granularity)
# ---------------------------------------------------------------------------


def _check_klane(m: MachineShape, k: int, root: int | None, c: int) -> None:
    _check_machine_params(m, root, c)
    if not 1 <= k <= m.n:
        raise InvalidParams(f"lane parameter must satisfy 1 <= k <= n, got k={k}, n={m.n}")


def _klane_holders(m: MachineShape, k: int, v: int, root: int | None) -> list[int]:
    # Local roots are local indices 0..k-1; on the root node the root rank
    # replaces index k-1 when it sits outside that window.
    if root is not None and node_of(m, root) == v:
        lr = local_index(m, root)
        idxs = list(range(k)) if lr < k else list(range(k - 1)) + [lr]
        return [rank_at(m, v, j) for j in sorted(idxs)]
    return [rank_at(m, v, j) for j in range(k)]


def _fanout_rounds(holders: Sequence[int], targets: Sequence[int], chunks: tuple[Chunk, ...]) -> list[list[Event]]:
    # Contiguous share of targets per holder, binomial broadcast inside each.
    if not targets:
        return []
    parts = [list(targets[a:b]) for a, b in split_range(0, len(targets), len(holders))]
    blocks = [
        _local_bcast_rounds([h] + part, 0, chunks) for h, part in zip(holders, parts)
    ]
    return _merge_blocks(blocks)


def klane_bcast(
    m: MachineShape, k: int, root: int, c: int, full_node_bcast: bool = False
) -> Schedule:
    """Broadcast via the k-ported pattern over nodes, with k local roots per
    node acting as the ports.

    The root first shares the payload with its node's other local roots.
    Inter-node rounds follow the k-ported recursion over node ids; a node's
    sends are issued by its local roots, and idle ports deliver extra
    copies to further local roots of the same targets. A node that still
    has sends ahead completes its k local roots in a node-local round block
    right after its first receipt (the whole node with full_node_bcast).
    The final phase fans each node's payload out to the remaining ranks.
    """
    _check_klane(m, k, root, c)
    payload = (Chunk(root, 0, c),)
    root_node = node_of(m, root)

    rounds: list[list[Event]] = []
    steps = 0
    covered: dict[int, list[int]] = {root_node: [root]}

    root_holders = _klane_holders(m, k, root_node, root)
    init = _fanout_rounds([root], [r for r in root_holders if r != root], payload)
    if init:
        rounds.extend(init)
        steps += 1
    covered[root_node] = list(root_holders)

    vrounds = _ported_tree_rounds(m.N, k, root_node)
    for t, vr in enumerate(vrounds):
        by_src: dict[int, list[tuple[int, tuple[int, int]]]] = {}
        for u, vdst, rng in vr:
            by_src.setdefault(u, []).append((vdst, rng))
        events = []
        receipts: dict[int, tuple[int, int]] = {}  # node -> (copies, subtree size)
        for u in sorted(by_src):
            targets = by_src[u]
            ports = _klane_holders(m, k, u, root)
            port = 0
            for vdst, (a, b) in targets:
                events.append(Event(ports[port], rank_at(m, vdst, 0), payload))
                receipts[vdst] = (1, b - a)
                port += 1
            if not full_node_bcast:
                # idle ports ship extra copies to further local roots of the
                # same targets, cycling in target order
                spares = k - len(targets)
                ti = 0
                for _ in range(spares):
                    for _scan in range(len(targets)):
                        vdst, rng = targets[ti % len(targets)]
                        ti += 1
                        if receipts[vdst][0] < k:
                            break
                    else:
                        break
                    copies, size = receipts[vdst]
                    events.append(Event(ports[port], rank_at(m, vdst, copies), payload))
                    receipts[vdst] = (copies + 1, size)
                    port += 1
        rounds.append(events)
        steps += 1
        for vdst, (copies, _size) in receipts.items():
            covered[vdst] = [rank_at(m, vdst, j) for j in range(copies)]
        block_rounds = []
        for vdst in sorted(receipts):
            copies, size = receipts[vdst]
            if size <= 1:
                continue  # no sends ahead; completed in the final phase
            have = covered[vdst]
            want = node_ranks(m, vdst) if full_node_bcast else _klane_holders(m, k, vdst, root)
            need = [r for r in want if r not in have]
            if need:
                block_rounds.append(_fanout_rounds(have, need, payload))
                covered[vdst] = have + need
        if block_rounds:
            rounds.extend(_merge_blocks(block_rounds))
            steps += 1

    final_start = len(rounds)
    final_blocks = []
    for v in range(m.N):
        have = covered.get(v, [])
        rest = [r for r in node_ranks(m, v) if r not in have]
        if rest:
            final_blocks.append(_fanout_rounds(have, rest, payload))
    rounds.extend(_merge_blocks(final_blocks))

    meta = _fulllane_meta("klane_bcast", Op.BCAST, m, c, root)
    meta["k"] = k
    meta["full_node_bcast"] = full_node_bcast
    meta["inter_rounds"] = len(vrounds)
    if m.N > 1:
        meta["pre_final_steps"] = steps
        meta["final_rounds"] = sum(1 for rnd in rounds[final_start:] if rnd)
    else:
        # a single node has no inter-node portion: it is all final phase
        meta["pre_final_steps"] = 0
        meta["final_rounds"] = sum(1 for rnd in rounds if rnd)
    return make_schedule(rounds, meta)


def klane_scatter(m: MachineShape, k: int, root: int, c: int) -> Schedule:
    """Scatter via the k-ported pattern over nodes with k local ports.

    Bundles for a node cover the blocks of every rank on its subtree's
    nodes. A receiving node's first rank scatters the outbound bundles to
    the other local roots, which then issue the port sends; the final phase
    scatters each node's own blocks locally.
    """
    _check_klane(m, k, root, c)
    root_node = node_of(m, root)

    def bundle(a: int, b: int) -> tuple[Chunk, ...]:
        return canonical_chunks(
            Chunk(root, x * c, (x + 1) * c) for v in range(a, b) for x in node_ranks(m, v)
        )

    vrounds = _ported_tree_rounds(m.N, k, root_node)
    # port assignment: a node's sends within one round take ports 0, 1, ...
    port_chunks: dict[tuple[int, int], list[Chunk]] = {}
    send_plan: list[list[tuple[int, int, int, tuple[int, int]]]] = []
    for vr in vrounds:
        by_src: dict[int, list[tuple[int, tuple[int, int]]]] = {}
        for u, vdst, rng in vr:
            by_src.setdefault(u, []).append((vdst, rng))
        plan = []
        for u in sorted(by_src):
            for port, (vdst, rng) in enumerate(by_src[u]):
                plan.append((u, port, vdst, rng))
                port_chunks.setdefault((u, port), []).extend(bundle(*rng))
        send_plan.append(plan)

    rounds: list[list[Event]] = []
    root_holders = _klane_holders(m, k, root_node, root)
    payloads = [
        canonical_chunks(port_chunks.get((root_node, pos), ()))
        for pos in range(len(root_holders))
    ]
    rounds.extend(
        _local_scatter_rounds(root_holders, root_holders.index(root), payloads)
    )

    for plan in send_plan:
        events = []
        receipts = []
        for u, port, vdst, rng in plan:
            events.append(Event(_klane_holders(m, k, u, root)[port], rank_at(m, vdst, 0), bundle(*rng)))
            receipts.append((vdst, rng))
        rounds.append(events)
        block_rounds = []
        for vdst, (a, b) in sorted(receipts):
            if b - a <= 1:
                continue
            holders = _klane_holders(m, k, vdst, root)
            pl = [canonical_chunks(port_chunks.get((vdst, pos), ())) for pos in range(len(holders))]
            if any(pl[1:]):
                block_rounds.append(_local_scatter_rounds(holders, 0, pl))
        if block_rounds:
            rounds.extend(_merge_blocks(block_rounds))

    final_blocks = []
    for v in range(m.N):
        ranks = node_ranks(m, v)
        if len(ranks) == 1:
            continue
        own = [(Chunk(root, x * c, (x + 1) * c),) for x in ranks]
        root_pos = local_index(m, root) if v == root_node else 0
        final_blocks.append(_local_scatter_rounds(ranks, root_pos, own))
    rounds.extend(_merge_blocks(final_blocks))

    meta = _fulllane_meta("klane_scatter", Op.SCATTER, m, c, root)
    meta["k"] = k
    meta["inter_rounds"] = len(vrounds)
    return make_schedule(rounds, meta)


def klane_alltoall(m: MachineShape, c: int) -> Schedule:
    """Alltoall with one send and one receive per rank per step-round.

    For every node distance d = 1..N-1 there are n step-rounds: in step s,
    the rank at local index j of node v sends its block for local index
    (j+s) mod n of node (v+d) mod N directly to that rank. One node-local
    alltoall phase completes the exchange.
    """
    _check_machine_params(m, None, c)
    rounds: list[list[Event]] = []
    for d in range(1, m.N):
        for s in range(m.n):
            events = []
            for v in range(m.N):
                for j in range(m.n):
                    src = rank_at(m, v, j)
                    dst = rank_at(m, (v + d) % m.N, (j + s) % m.n)
                    events.append(Event(src, dst, (Chunk(src, dst * c, (dst + 1) * c),)))
            rounds.append(events)
    inter_step_rounds = len(rounds)
    local_blocks = []
    if m.n > 1:
        for v in range(m.N):
            ranks = node_ranks(m, v)
            payloads = [
                [
                    (Chunk(ranks[i], ranks[j] * c, ranks[j] * c + c),) if j != i else ()
                    for j in range(m.n)
                ]
                for i in range(m.n)
            ]
            local_blocks.append(_local_alltoall_rounds(ranks, payloads))
    rounds.extend(_merge_blocks(local_blocks))
    meta = _fulllane_meta("klane_alltoall", Op.ALLTOALL, m, c, None)
    meta["inter_step_rounds"] = inter_step_rounds
    return make_schedule(rounds, meta)
