"""Cluster topology: node/processor shape, lane count, and rank placement."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Placement(enum.Enum):
    """Rule mapping global ranks onto (node, local index) pairs."""

    BLOCK = "block"  # consecutive ranks fill a node before the next one starts
    ROUND_ROBIN = "rr"  # consecutive ranks land on consecutive nodes


class InvalidShape(ValueError):
    """Raised for impossible machine shapes (zero counts, k > n)."""


class RankOutOfRange(IndexError):
    """Raised when a rank is outside [0, p)."""


class IndexOutOfRange(IndexError):
    """Raised when a local index is outside [0, n)."""


@dataclass(frozen=True)
class MachineShape:
    """A cluster of N nodes with n processors each and k lanes per node.

    Immutable after construction; p = N * n is the total rank count.
    """

    N: int
    n: int
    k: int
    placement: Placement = Placement.BLOCK

    def __post_init__(self) -> None:
        if self.N < 1 or self.n < 1:
            raise InvalidShape(f"node/processor counts must be >= 1, got N={self.N}, n={self.n}")
        if not 1 <= self.k <= self.n:
            raise InvalidShape(f"lane count must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def p(self) -> int:
        return self.N * self.n


def build_machine(N: int, n: int, k: int, placement: Placement | str = Placement.BLOCK) -> MachineShape:
    """Validate and build a machine shape; placement accepts 'block'/'rr' strings."""
    if isinstance(placement, str):
        placement = Placement(placement)
    return MachineShape(N=N, n=n, k=k, placement=placement)


def _check_rank(m: MachineShape, r: int) -> None:
    if not 0 <= r < m.p:
        raise RankOutOfRange(f"rank {r} outside [0, {m.p})")


def node_of(m: MachineShape, r: int) -> int:
    """Node id hosting rank r under the machine's placement."""
    _check_rank(m, r)
    if m.placement is Placement.BLOCK:
        return r // m.n
    return r % m.N


def local_index(m: MachineShape, r: int) -> int:
    """Position of rank r among the ranks of its node, in [0, n)."""
    _check_rank(m, r)
    if m.placement is Placement.BLOCK:
        return r % m.n
    return r // m.N


def rank_at(m: MachineShape, node: int, j: int) -> int:
    """Inverse of (node_of, local_index): the rank at local index j of a node."""
    if not 0 <= node < m.N:
        raise IndexOutOfRange(f"node {node} outside [0, {m.N})")
    if not 0 <= j < m.n:
        raise IndexOutOfRange(f"local index {j} outside [0, {m.n})")
    if m.placement is Placement.BLOCK:
        return node * m.n + j
    return j * m.N + node


def lane_group(m: MachineShape, j: int) -> list[int]:
    """All N ranks sharing local index j, one per node, ordered by node id."""
    if not 0 <= j < m.n:
        raise IndexOutOfRange(f"local index {j} outside [0, {m.n})")
    return [rank_at(m, v, j) for v in range(m.N)]


def node_ranks(m: MachineShape, node: int) -> list[int]:
    """Ranks of one node ordered by local index."""
    if not 0 <= node < m.N:
        raise IndexOutOfRange(f"node {node} outside [0, {m.N})")
    return [rank_at(m, node, j) for j in range(m.n)]
