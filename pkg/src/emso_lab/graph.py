"""Undirected simple graphs stored as bitset rows, plus seeded G(n,p) sampling.

Vertex v's neighbourhood is the Python int ``adj[v]`` whose bit u is set iff
u ~ v.  Graphs are immutable and hashable, so they can be shared freely
between worker processes and used as dictionary keys.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << int(v)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        """Build from neighbourhood masks, checking symmetry and irreflexivity."""
        n = len(masks)
        full = (1 << n) - 1
        rows = tuple(int(m) for m in masks)
        for v, row in enumerate(rows):
            if row & ~full or row >> v & 1:
                raise ValueError(f"bad neighbourhood for vertex {v}")
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        return cls(n, rows)

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any() or (a != a.T).any():
            raise ValueError("adjacency matrix must be symmetric with empty diagonal")
        return cls(a.shape[0], _rows_from_bool(a))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of g under the bijection v -> perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    rows = [0] * g.n
    for u in range(g.n):
        rows[perm[u]] = to_mask(perm[v] for v in iter_bits(g.adj[u]))
    return Graph(g.n, tuple(rows))


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph, relabelled 0..k-1 in increasing order of the kept vertices."""
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(to_mask(pos[u] for u in iter_bits(g.adj[v]) if u in pos))
    return Graph(len(keep), tuple(rows))


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(offset, tuple(rows))


def _rows_from_bool(a: np.ndarray) -> tuple[int, ...]:
    if a.shape[0] == 0:
        return ()
    packed = np.packbits(a, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def uniform_stream(seed: int, stream: int, size: int) -> np.ndarray:
    """``size`` doubles in [0,1) from substream ``stream`` of ``seed``.

    The substream is PCG64 keyed by SeedSequence(seed, spawn_key=(stream,)).
    Doubles are built from the top 53 bits of each raw 64-bit output, so the
    sequence depends only on integer arithmetic and is the same everywhere.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),))
    bitgen = np.random.PCG64(ss)
    raw = bitgen.random_raw(size)
    return (np.asarray(raw, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def sample_gnp(n: int, p: float, seed: int, stream: int = 0) -> Graph:
    """G(n,p): pairs (u, v), u < v, visited row by row; pair i is an edge iff u_i < p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    iu, iv = np.triu_indices(n, 1)
    present = uniform_stream(seed, stream, len(iu)) < p
    a = np.zeros((n, n), dtype=bool)
    a[iu[present], iv[present]] = True
    a |= a.T
    return Graph(n, _rows_from_bool(a))
