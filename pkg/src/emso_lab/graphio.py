"""Edge-list and graph6 serialisation.

Edge-list text: a header line ``n m`` followed by m lines ``u v`` (0-based,
u < v, sorted lexicographically).  Blank lines and lines starting with ``#``
are ignored on input.
"""
from __future__ import annotations

from pathlib import Path

from .graph import Graph


class GraphFormatError(ValueError):
    pass


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise GraphFormatError("empty edge list")
    try:
        n, m = (int(t) for t in rows[0])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(edges)}")
    if len(set(frozenset(e) for e in edges)) != m:
        raise GraphFormatError("duplicate edge")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in range(30, -1, -6)]


def write_graph6(g: Graph) -> str:
    bits = [g.adj[j] >> i & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    groups = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(c + 63) for c in _encode_n(g.n) + groups)


def read_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if not data or any(not 0 <= d < 64 for d in data):
        raise GraphFormatError("invalid graph6 characters")
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n, body = (data[1] << 12) | (data[2] << 6) | data[3], data[4:]
    elif len(data) >= 8:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        body = data[8:]
    else:
        raise GraphFormatError("truncated graph6 header")
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise GraphFormatError("graph6 body has wrong length")
    bits = [(d >> s) & 1 for d in body for s in range(5, -1, -1)]
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def load_graph(path: str | Path) -> Graph:
    """Read a graph file; ``.g6`` / ``.graph6`` is graph6, anything else edge list."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from None
    if path.suffix in (".g6", ".graph6"):
        return read_graph6(text)
    return read_edge_list(text)


def save_graph(g: Graph, path: str | Path) -> None:
    path = Path(path)
    if path.suffix in (".g6", ".graph6"):
        path.write_text(write_graph6(g) + "\n")
    else:
        path.write_text(write_edge_list(g))
