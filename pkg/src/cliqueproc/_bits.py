"""Small helpers for Python-int bitsets."""
from __future__ import annotations

from typing import Iterator


def bits(b: int) -> Iterator[int]:
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


def popcount(b: int) -> int:
    return b.bit_count()


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def components(nbrs: list[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced on ``mask``, as bitsets.

    Ordered by lowest vertex.
    """
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= nbrs[v]
            reach &= rest & ~comp
            comp |= reach
            frontier = reach
        out.append(comp)
        rest &= ~comp
    return out


def cliques_with_empty_extension(nbrs: list[int], mask: int, size: int) -> list[tuple[int, ...]]:
    """Cliques of exactly ``size`` vertices inside ``mask`` having no common
    neighbour inside ``mask``.

    ``size == 0`` returns ``[()]`` iff ``mask`` is empty.
    """
    out: list[tuple[int, ...]] = []

    def rec(clique: tuple[int, ...], later: int, common: int):
        if len(clique) == size:
            if not common:
                out.append(clique)
            return
        need = size - len(clique)
        if popcount(later) < need:
            return
        for v in bits(later):
            later &= ~(1 << v)
            rec(clique + (v,), later & nbrs[v], common & nbrs[v])

    rec((), mask, mask)
    return out


def cliques(nbrs: list[int], mask: int, max_size: int) -> list[list[tuple[int, ...]]]:
    """All cliques inside ``mask`` grouped by size 1..max_size (index 0 = size 1)."""
    out: list[list[tuple[int, ...]]] = [[] for _ in range(max_size)]

    def rec(clique: tuple[int, ...], later: int):
        out[len(clique) - 1].append(clique)
        if len(clique) == max_size:
            return
        for v in bits(later):
            later &= ~(1 << v)
            rec(clique + (v,), later & nbrs[v])

    if max_size <= 0:
        return out
    rest = mask
    for v in bits(mask):
        rest &= ~(1 << v)
        rec((v,), rest & nbrs[v])
    return out
