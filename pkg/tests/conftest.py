"""Shared helpers for the test suite."""

from __future__ import annotations

import itertools

GRID_SIZES = (1, 2, 3, 4, 8)


def ceil_log(base: int, x: int) -> int:
    """Smallest t with base**t >= x, by exact integer arithmetic."""
    t, v = 0, 1
    while v < x:
        v *= base
        t += 1
    return t


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def shape_grid():
    """(N, n) pairs used by grid-based properties."""
    return itertools.product(GRID_SIZES, GRID_SIZES)


def roots_for(p: int) -> list[int]:
    return sorted({0, p - 1, p // 2})


def pairs(schedule):
    """Schedule as a list of per-round (src, dst) pair sets."""
    return [{(e.src, e.dst) for e in r.events} for r in schedule.rounds]
