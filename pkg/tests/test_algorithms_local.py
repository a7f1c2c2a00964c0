import pytest

from conftest import pairs

from collsim.algorithms import (
    InvalidParams,
    local_allgather,
    local_alltoall,
    local_bcast,
    local_scatter,
)
from collsim.schedule import Chunk


def test_local_bcast_binomial_trace():
    s = local_bcast([4, 5, 6, 7], 0, [Chunk(0, 0, 3)])
    assert pairs(s) == [{(4, 6)}, {(4, 5), (6, 7)}]


def test_local_bcast_singleton():
    assert local_bcast([9], 0, [Chunk(0, 0, 1)]).rounds == ()


def test_local_bcast_pair_nonzero_root():
    assert pairs(local_bcast([2, 3], 1, [Chunk(0, 0, 2)])) == [{(3, 2)}]


def test_local_bcast_validation():
    with pytest.raises(InvalidParams):
        local_bcast([], 0, [Chunk(0, 0, 1)])
    with pytest.raises(InvalidParams):
        local_bcast([1, 2], 2, [Chunk(0, 0, 1)])
    with pytest.raises(InvalidParams):
        local_bcast([1, 2], 0, [])


def test_local_scatter_mirrors_binomial_tree():
    payloads = [[Chunk(0, i, i + 1)] for i in range(4)]
    s = local_scatter([0, 1, 2, 3], 0, payloads)
    assert pairs(s) == [{(0, 2)}, {(0, 1), (2, 3)}]
    by_pair = {(e.src, e.dst): e.chunks for r in s.rounds for e in r.events}
    assert by_pair[(0, 2)] == (Chunk(0, 2, 4),)


def test_local_scatter_skips_empty_payloads():
    s = local_scatter([0, 1, 2, 3], 0, [[Chunk(0, 0, 1)], [], [], []])
    assert s.rounds == ()


def test_local_allgather_pairwise_exchange():
    s = local_allgather([0, 1], [[Chunk(0, 0, 1)], [Chunk(1, 0, 1)]])
    assert pairs(s) == [{(0, 1), (1, 0)}]


def test_local_allgather_doubling_rounds_and_coverage():
    contributions = [[Chunk(i, 0, 1)] for i in range(4)]
    s = local_allgather([0, 1, 2, 3], contributions)
    assert len(s.rounds) == 2
    # replay deliveries: every rank must end with all four contributions
    held = {r: {r} for r in range(4)}
    for rnd in s.rounds:
        adds = [(e.dst, ch.origin) for e in rnd.events for ch in e.chunks]
        for dst, origin in adds:
            held[dst].add(origin)
    assert all(held[r] == {0, 1, 2, 3} for r in range(4))


@pytest.mark.parametrize("size", range(1, 12))
def test_local_allgather_round_count_any_size(size):
    contributions = [[Chunk(i, 0, 1)] for i in range(size)]
    s = local_allgather(list(range(size)), contributions)
    want = 0
    while (1 << want) < size:
        want += 1
    assert len(s.rounds) == want
    for rnd in s.rounds:
        sends = [e.src for e in rnd.events]
        recvs = [e.dst for e in rnd.events]
        assert len(set(sends)) == len(sends)
        assert len(set(recvs)) == len(recvs)


def test_local_alltoall_pair():
    payloads = [
        [(), (Chunk(0, 1, 2),)],
        [(Chunk(1, 0, 1),), ()],
    ]
    s = local_alltoall([0, 1], payloads)
    assert pairs(s) == [{(0, 1), (1, 0)}]


def test_local_alltoall_round_robin_offsets():
    n = 4
    payloads = [
        [(Chunk(i, j, j + 1),) if i != j else () for j in range(n)] for i in range(n)
    ]
    s = local_alltoall(list(range(n)), payloads)
    assert len(s.rounds) == n - 1
    for o, rnd in enumerate(s.rounds, start=1):
        assert {(e.src, e.dst) for e in rnd.events} == {(i, (i + o) % n) for i in range(n)}


def test_local_alltoall_matrix_shape_checked():
    with pytest.raises(InvalidParams):
        local_alltoall([0, 1], [[()], [(), ()]])
