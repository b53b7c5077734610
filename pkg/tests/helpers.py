"""Shared test oracles and cached enumerations.

The oracles here are deliberately naive: all set partitions by direct
block assignment, and order relations by definition chasing.  They exist
so the library's cleverer routes have something independent to answer to.
"""

from functools import lru_cache
from typing import Iterator

from nclab import Partition, enumerate_nc, enumerate_ncl, enumerate_ncl_direct, make_partition


def all_set_partitions(n: int) -> Iterator[Partition]:
    """Every set partition of {1..n}, by assigning each element to an
    existing block or a new one (restricted-growth enumeration)."""
    blocks: list[list[int]] = []

    def rec(k: int) -> Iterator[Partition]:
        if k > n:
            yield make_partition(n, [list(b) for b in blocks])
            return
        for b in blocks:
            b.append(k)
            yield from rec(k + 1)
            b.pop()
        blocks.append([k])
        yield from rec(k + 1)
        blocks.pop()

    yield from rec(1)


@lru_cache(maxsize=None)
def nc(n: int) -> tuple:
    return tuple(enumerate_nc(n))


@lru_cache(maxsize=None)
def ncl(n: int) -> tuple:
    return tuple(enumerate_ncl(n))


@lru_cache(maxsize=None)
def ncl_direct(n: int) -> tuple:
    return tuple(enumerate_ncl_direct(n))
