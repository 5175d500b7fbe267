"""Maximal cliques, the six clique / independent-set sentences and the G1..G5 classes.

For a vertex set X write "X dominates" when every vertex outside X has a
neighbour in X; the sentence phi_C(X) ("some outside vertex sees nothing in
X") is exactly "X does not dominate".  Then

    phi1: no clique dominates
    phi2: every maximal clique dominates
    phi3: every dominating clique is maximal

Sets range over all subsets, so the empty set counts as a clique; it
dominates only the empty graph.

Two decision routes exist.  ``decide_phi_C`` runs early-exit searches that
never materialise the clique list (dense graphs have far too many maximal
cliques).  ``decide_phi_C_from_cliques`` answers from a full maximal-clique
list using the upward-closure reductions.  Tests check that both agree with
each other and with brute-force MSO evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .graph import Graph, complement, iter_bits, to_mask


def _dominates_mask(g: Graph, x: int) -> bool:
    covered = x
    for v in iter_bits(x):
        covered |= g.adj[v]
    return covered == g.full


def dominates(g: Graph, x: Iterable[int] | int) -> bool:
    return _dominates_mask(g, to_mask(x))


def is_clique(g: Graph, x: Iterable[int] | int) -> bool:
    x = to_mask(x)
    return all(x & ~g.adj[v] == 1 << v for v in iter_bits(x))


def is_maximal_clique(g: Graph, x: Iterable[int] | int) -> bool:
    x = to_mask(x)
    if not is_clique(g, x):
        return False
    return not any(g.adj[u] & x == x for u in iter_bits(g.full & ~x))


def _pick_pivot(adj, p: int, x: int) -> int:
    best, best_count = -1, -1
    for u in iter_bits(p | x):
        c = (p & adj[u]).bit_count()
        if c > best_count:
            best, best_count = u, c
    return best


def _bron_kerbosch(adj, r: int, p: int, x: int) -> Iterator[int]:
    if not p:
        if not x:
            yield r
        return
    pivot = _pick_pivot(adj, p, x)
    for v in iter_bits(p & ~adj[pivot]):
        bit = 1 << v
        yield from _bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v])
        p &= ~bit
        x |= bit


def iter_maximal_cliques(g: Graph) -> Iterator[int]:
    """Maximal cliques as bitmasks, in Bron-Kerbosch discovery order."""
    return _bron_kerbosch(g.adj, 0, g.full, 0)


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques as sorted tuples, listed in lexicographic order.

    The empty graph has one maximal clique, the empty tuple.
    """
    return sorted(tuple(iter_bits(c)) for c in iter_maximal_cliques(g))


def _exists_dominating_clique(g: Graph, allowed: int) -> bool:
    """Is there a nonempty clique inside ``allowed`` that dominates g?  Assumes n >= 1.

    Branch on the undominated vertex with the fewest ways to get dominated;
    after trying candidate v, later branches exclude v.
    """
    adj, full = g.adj, g.full

    def search(covered: int, pool: int) -> bool:
        todo = full & ~covered
        if not todo:
            return True
        best = None
        best_count = None
        for u in iter_bits(todo):
            opts = pool & (adj[u] | 1 << u)
            if not opts:
                return False
            c = opts.bit_count()
            if best_count is None or c < best_count:
                best, best_count = opts, c
                if c == 1:
                    break
        for v in iter_bits(best):
            if search(covered | adj[v] | 1 << v, pool & adj[v]):
                return True
            pool &= ~(1 << v)
        return False

    return search(0, allowed)


def _exists_maximal_clique_within(g: Graph, region: int) -> bool:
    """Is some maximal clique of g (nonempty) contained in ``region``?"""
    adj = g.adj

    def search(p: int, x: int) -> bool:
        if not p:
            return not x
        if any(p & ~adj[u] == 0 for u in iter_bits(x)):
            return False
        pivot = _pick_pivot(adj, p, x)
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            if search(p & adj[v], x & adj[v]):
                return True
            p &= ~bit
            x |= bit
        return False

    if not region:
        return False
    return search(region, g.full & ~region)


def decide_phi_C(g: Graph, j: int) -> bool:
    """Truth value of phi^j_C on g (exact subset semantics)."""
    if j == 1:
        if g.n == 0:
            return False  # the empty set dominates the empty graph
        return not _exists_dominating_clique(g, g.full)
    if j == 2:
        # violated iff some maximal clique misses N[z] entirely for some z
        return not any(
            _exists_maximal_clique_within(g, g.full & ~g.adj[z] & ~(1 << z)) for z in range(g.n)
        )
    if j == 3:
        # violated iff some dominating clique lies inside a neighbourhood N(w)
        return not any(g.adj[w] and _exists_dominating_clique(g, g.adj[w]) for w in range(g.n))
    raise ValueError(f"j must be 1, 2 or 3, got {j}")


def decide_phi_I(g: Graph, j: int) -> bool:
    return decide_phi_C(complement(g), j)


def decide_phi_C_from_cliques(g: Graph, cliques: Iterable[Iterable[int]], j: int) -> bool:
    """Same truth values, read off a complete list of maximal cliques."""
    masks = [to_mask(c) for c in cliques]
    if j == 1:
        return not any(_dominates_mask(g, c) for c in masks)
    if j == 2:
        return all(_dominates_mask(g, c) for c in masks)
    if j == 3:
        return not any(_dominates_mask(g, c & ~(1 << u)) for c in masks for u in iter_bits(c))
    raise ValueError(f"j must be 1, 2 or 3, got {j}")


class Family(str, Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class ClassLabel:
    family: Family
    index: int

    def __str__(self) -> str:
        return f"G{self.index}" if self.family is Family.CLIQUE else f"G{self.index}-ind"


class PartitionError(RuntimeError):
    """Raised if a graph matches zero or several classes; should never happen."""


def class_patterns(phi1: bool, phi2: bool, phi3: bool) -> list[int]:
    """Indices of the classes G1..G5 whose defining combination holds."""
    tests = {
        1: phi1,
        2: not phi1 and not phi2 and phi3,
        3: not phi1 and not phi2 and not phi3,
        4: phi2 and phi3,
        5: phi2 and not phi3,
    }
    return [i for i, ok in tests.items() if ok]


def classify(g: Graph, family: Family | str = Family.CLIQUE) -> ClassLabel:
    family = Family(family)
    h = g if family is Family.CLIQUE else complement(g)
    truth = [decide_phi_C(h, j) for j in (1, 2, 3)]
    hits = class_patterns(*truth)
    if len(hits) != 1:
        raise PartitionError(f"{g!r} matches classes {hits} with truth values {truth}")
    return ClassLabel(family, hits[0])


def _iter_k_cliques(g: Graph, k: int) -> Iterator[int]:
    adj = g.adj

    def extend(r: int, cand: int, need: int) -> Iterator[int]:
        if need == 0:
            yield r
            return
        for v in iter_bits(cand):
            if (cand >> v).bit_count() < need:
                return
            yield from extend(r | 1 << v, cand & adj[v] & ~((2 << v) - 1), need - 1)

    return extend(0, g.full, k)


def count_X1(g: Graph, k: int) -> int:
    """Pairs (C, c): C a maximal k-clique, c outside C with no neighbour in C."""
    if k < 1:
        raise ValueError("k must be positive")
    total = 0
    for c in _iter_k_cliques(g, k):
        if not is_maximal_clique(g, c):
            continue
        total += sum(1 for u in iter_bits(g.full & ~c) if not g.adj[u] & c)
    return total


def count_X2(g: Graph, k: int) -> int:
    """Pairs (C, c): C a dominating k-clique, c outside C adjacent to all of C."""
    if k < 1:
        raise ValueError("k must be positive")
    total = 0
    for c in _iter_k_cliques(g, k):
        if not _dominates_mask(g, c):
            continue
        total += sum(1 for u in iter_bits(g.full & ~c) if g.adj[u] & c == c)
    return total
