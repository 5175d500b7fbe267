"""Extension axioms, extension properties relative to a witness pool, and the
set response used in the strategy argument for graphs satisfying Phi_3."""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, iter_bits, to_mask


def has_tuple_extension(g: Graph, tup: Sequence[int], pool: Iterable[int] | int) -> bool:
    """Every subset P of the tuple has a witness z in pool, z not in the tuple,
    whose neighbours among the tuple are exactly P."""
    tup = [int(v) for v in tup]
    if len(set(tup)) != len(tup):
        raise ValueError(f"tuple has repeated vertices: {tup}")
    t_mask = to_mask(tup)
    need = 1 << len(tup)
    seen = set()
    for z in iter_bits(to_mask(pool) & ~t_mask):
        row = g.adj[z]
        seen.add(sum(1 << i for i, v in enumerate(tup) if row >> v & 1))
        if len(seen) == need:
            return True
    return False


def has_s_extension_wrt(g: Graph, s: int, pool: Iterable[int] | int) -> bool:
    """Every s distinct vertices have the extension property w.r.t. pool.

    For 1 <= n < s the answer is False: the axiom quantifies over s vertex
    variables that may coincide, and taking them to cover all of V demands a
    witness adjacent to itself.  The empty graph satisfies every axiom.
    """
    if s < 1:
        raise ValueError("s must be positive")
    if g.n == 0:
        return True
    if g.n < s:
        return False
    pool = to_mask(pool)
    return all(has_tuple_extension(g, t, pool) for t in combinations(range(g.n), s))


def has_s_extension(g: Graph, s: int) -> bool:
    """g satisfies the s-th extension axiom."""
    return has_s_extension_wrt(g, s, g.full)


def duplicator_set_response(h: Graph, y1: int, y2: int) -> frozenset[int]:
    """(N(y1) minus N(y2)) union (N(y2) minus N(y1)), with y1 and y2 removed."""
    if y1 == y2:
        raise ValueError("y1 and y2 must differ")
    mask = (h.adj[y1] ^ h.adj[y2]) & ~(1 << y1) & ~(1 << y2)
    return frozenset(iter_bits(mask))
