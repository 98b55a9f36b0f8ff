"""Shared test utilities."""

import itertools

from flagherm.flag import algebra, build_flag


def a_root(rank, i, j):
    """alpha_{i,j} (1-based, i<j) in simple-root coordinates."""
    return tuple(1 if i - 1 <= k < j - 1 else 0 for k in range(rank))


def all_flags(family, rank, include_point=False):
    rs, wb = algebra(family, rank)
    for k in range(rank + 1):
        for th in itertools.combinations(range(rank), k):
            f = build_flag(rs, wb, th)
            if include_point or not f.is_point:
                yield f
