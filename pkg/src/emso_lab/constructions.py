"""Deterministic graph constructions: rooted trees, their product, W_a, block graphs.

Labelling conventions (tests refer to vertices by index):

* ``perfect_tree(arity, levels)`` numbers vertices in BFS order, so the
  children of i are arity*i+1 .. arity*i+arity.
* ``tree_product(f1, f2)`` puts f1's vertices first, then f2's shifted by |f1|.
* ``build_W(a)``: path vertices 0..a-1 (0 is the root x, a-1 the far end w),
  then the 4-ary tree in BFS order starting at index a.
* Block graphs: blocks are contiguous; a K_{n,n} block lists its left side
  then its right side; the star lists its centre then its leaves; the kind-3
  universal vertex is the very last vertex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, iter_bits, uniform_stream


@dataclass(frozen=True)
class RootedTree:
    graph: Graph
    root: int
    depth: tuple[int, ...]

    @classmethod
    def from_graph(cls, graph: Graph, root: int) -> "RootedTree":
        if not 0 <= root < graph.n:
            raise ValueError("root out of range")
        depth = [-1] * graph.n
        depth[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in iter_bits(graph.adj[v]):
                if depth[u] < 0:
                    depth[u] = depth[v] + 1
                    queue.append(u)
        if min(depth) < 0 or graph.m != graph.n - 1:
            raise ValueError("graph is not a tree")
        return cls(graph, root, tuple(depth))

    @property
    def n(self) -> int:
        return self.graph.n

    def parent(self, v: int) -> int | None:
        if v == self.root:
            return None
        return next(u for u in iter_bits(self.graph.adj[v]) if self.depth[u] == self.depth[v] - 1)

    def children(self, v: int) -> list[int]:
        return [u for u in iter_bits(self.graph.adj[v]) if self.depth[u] == self.depth[v] + 1]


def path_tree(a: int) -> RootedTree:
    """Path on a vertices rooted at endpoint 0."""
    if a < 1:
        raise ValueError("a path tree needs at least one vertex")
    g = Graph.from_edges(a, [(i, i + 1) for i in range(a - 1)])
    return RootedTree(g, 0, tuple(range(a)))


def perfect_tree(arity: int, levels: int) -> RootedTree:
    """Perfect ``arity``-ary tree with ``levels`` levels (levels=1 is a single vertex)."""
    if levels < 1 or arity < 1:
        raise ValueError("need levels >= 1 and arity >= 1")
    size = sum(arity ** d for d in range(levels))
    edges = [((v - 1) // arity, v) for v in range(1, size)]
    depth = [0] * size
    for v in range(1, size):
        depth[v] = depth[(v - 1) // arity] + 1
    return RootedTree(Graph.from_edges(size, edges), 0, tuple(depth))


def tree_product(f1: RootedTree, f2: RootedTree) -> Graph:
    """F1 . F2: disjoint union plus every cross pair at equal depth."""
    off = f1.n
    edges = list(f1.graph.edges())
    edges += [(u + off, v + off) for u, v in f2.graph.edges()]
    by_depth: dict[int, list[int]] = {}
    for v, d in enumerate(f2.depth):
        by_depth.setdefault(d, []).append(v + off)
    for u, d in enumerate(f1.depth):
        edges += [(u, v) for v in by_depth.get(d, ())]
    return Graph.from_edges(f1.n + f2.n, edges)


def w_order(a: int) -> int:
    """Number of vertices of W_a."""
    return a + (4 ** a - 1) // 3


def w_size(a: int) -> int:
    """Number of edges of W_a."""
    return a + 2 * (4 ** a - 1) // 3 - 2


def build_W(a: int) -> Graph:
    if a < 1:
        raise ValueError("W_a needs a >= 1")
    return tree_product(path_tree(a), perfect_tree(4, a))


@dataclass(frozen=True)
class WLayout:
    """Roles of the vertices of build_W(a)."""
    a: int

    @property
    def n(self) -> int:
        return w_order(self.a)

    @property
    def path(self) -> range:
        return range(self.a)

    @property
    def tree(self) -> range:
        return range(self.a, self.n)

    @property
    def tree_root(self) -> int:
        return self.a

    def depth(self, v: int) -> int:
        if v < self.a:
            return v
        t = v - self.a
        d = 0
        while t:
            t = (t - 1) // 4
            d += 1
        return d

    def child_index(self, v: int) -> int:
        """Position 1..4 of a tree vertex among its siblings (0 for the root)."""
        t = v - self.a
        return 0 if t == 0 else (t - 1) % 4 + 1

    def tree_parent(self, v: int) -> int:
        return (v - self.a - 1) // 4 + self.a


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def paley_graph(q: int) -> Graph:
    """Paley graph on Z_q for a prime q = 1 mod 4."""
    if q % 4 != 1 or q < 5 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise ValueError("q must be a prime congruent to 1 mod 4")
    squares = {(x * x) % q for x in range(1, q)}
    return Graph.from_edges(q, [(u, v) for u, v in combinations(range(q), 2) if (v - u) % q in squares])


def block_partition(kind: int, ell: int, n_block: int) -> list[range]:
    """Vertex ranges of the blocks of build_block_graph, in order."""
    if kind not in (1, 2, 3):
        raise ValueError(f"unknown block graph kind {kind}")
    if ell < 2 or n_block < 1:
        raise ValueError("need ell >= 2 and n_block >= 1")
    size = 2 * n_block
    blocks = [range(i * size, (i + 1) * size) for i in range(ell - 1)]
    start = (ell - 1) * size
    last = {1: size, 2: n_block + 1, 3: size + 1}[kind]
    blocks.append(range(start, start + last))
    return blocks


def build_block_graph(kind: int, ell: int, n_block: int, p: float, seed: int, stream: int = 0) -> Graph:
    """Blocks as described in the module docstring; inter-block pairs are G(n,p)-style.

    Inter-block pairs reuse the G(n,p) pair order: the pair (u, v), u < v, is
    decided by entry i of the same uniform stream sample_gnp would use, so a
    block graph is a G(n,p) sample with the within-block pairs overwritten.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    blocks = block_partition(kind, ell, n_block)
    n = blocks[-1].stop
    iu, iv = np.triu_indices(n, 1)
    present = uniform_stream(seed, stream, len(iu)) < p
    label = np.empty(n, dtype=np.int64)
    for b, r in enumerate(blocks):
        label[r.start:r.stop] = b
    cross = label[iu] != label[iv]
    a = np.zeros((n, n), dtype=bool)
    keep = present & cross
    a[iu[keep], iv[keep]] = True
    for b, r in enumerate(blocks):
        s = r.start
        if b < ell - 1 or kind == 1:
            a[s:s + n_block, s + n_block:s + 2 * n_block] = True
        elif kind == 2:
            a[s, s + 1:s + 1 + n_block] = True
        else:
            a[s:s + n_block, s + n_block:s + 2 * n_block] = True
            a[s:s + 2 * n_block, s + 2 * n_block] = True
    a |= a.T
    return Graph.from_matrix(a)
