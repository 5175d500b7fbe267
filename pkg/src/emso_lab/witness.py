"""Graph-level checks for the W_a witness sentences.

``check_phi1_part`` evaluates the seven subformulas of the single-set sentence
directly on a graph, with every degree d(u) and common-neighbour count N(u, v)
taken inside the induced subgraph on X.  Quantified vertices range over X.

Three parts do not hold on any W_a when read literally (see ``repaired``):

* PROD's uniqueness clause reads ``d(v~) >= 7 and v ~ u -> v = v~``, which
  forces X to have a single vertex of degree >= 7.  Repaired: ``v~ ~ u``.
* TREE lets u1 = u2 and demands exactly two common neighbours, which cousins
  in the tree do not have.  Repaired: u1 != u2 and at most two.
* START only asks z2 to have four neighbours.  Repaired: they are also
  neighbours of u.

``check_phi2`` is the twelve-item partition checklist of the many-set
sentence; ``phi2_report`` gives the item-level verdicts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .constructions import WLayout, build_W, w_order
from .graph import Graph, iter_bits, to_mask

PARTS = ("DEG", "PATH", "PROD", "PERFECT", "TREE", "START", "MAX")
DEFAULT_BUDGET = 1 << 22


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DistinguishedVertices:
    x: int
    y1: int
    y2: tuple[int, int, int, int]
    z1: int
    z2: int
    w: int
    h: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.x, self.y1, *self.y2, self.z1, self.z2, self.w, self.h)

    def mapped(self, f) -> "DistinguishedVertices":
        return DistinguishedVertices(f[self.x], f[self.y1], tuple(f[v] for v in self.y2),
                                     f[self.z1], f[self.z2], f[self.w], f[self.h])


def canonical_distinguished(a: int) -> DistinguishedVertices:
    """Roles in build_W(a).  For a = 3 the roles z2 = w and z1 = h coincide."""
    if a < 3:
        raise ValueError("the distinguished vertices need a path of at least 3 vertices")
    return DistinguishedVertices(x=0, y1=a, y2=(a + 1, a + 2, a + 3, a + 4), z1=1, z2=2,
                                 w=a - 1, h=a - 2)


def _popcount(m: int) -> int:
    return bin(m).count("1")


class _Induced:
    """Degrees and common neighbourhoods inside g[X]."""

    def __init__(self, g: Graph, x_mask: int):
        self.g, self.X = g, x_mask
        self.nb = [g.adj[v] & x_mask for v in range(g.n)]
        self.deg = [_popcount(m) for m in self.nb]

    def members(self) -> Iterator[int]:
        return iter_bits(self.X)

    def adj(self, u: int, v: int) -> bool:
        return bool(self.nb[u] >> v & 1)

    def common(self, u: int, v: int) -> int:
        return self.nb[u] & self.nb[v]

    def N(self, u: int, v: int) -> int:
        return _popcount(self.common(u, v))

    def N_deg(self, u: int, v: int, d: int) -> int:
        return sum(1 for t in iter_bits(self.common(u, v)) if self.deg[t] == d)

    def big(self, mask: int) -> int:
        """Vertices of mask with degree >= 7."""
        return sum(1 << t for t in iter_bits(mask) if self.deg[t] >= 7)


def _deg(s: _Induced, dv: DistinguishedVertices) -> bool:
    d = s.deg
    if d[dv.x] != 2 or d[dv.y1] != 5:
        return False
    if any(d[v] < 7 for v in (dv.z2, dv.w, dv.h)):
        return False
    if any(d[v] != 6 for v in (dv.z1, *dv.y2)):
        return False
    for u in s.members():
        if s.adj(u, dv.w) and u != dv.h and d[u] != 2:
            return False
        if not s.adj(u, dv.w) and u not in (dv.x, dv.y1) and d[u] < 6:
            return False
    edges = [(dv.x, dv.y1), (dv.x, dv.z1), (dv.z1, dv.z2), (dv.h, dv.w)]
    edges += [(dv.z1, y) for y in dv.y2] + [(dv.y1, y) for y in dv.y2]
    return all(s.adj(u, v) for u, v in edges) and len(set(dv.y2)) == 4


def _path(s: _Induced, dv: DistinguishedVertices) -> bool:
    for ell in (dv.z2, dv.w):
        if _popcount(s.big(s.nb[ell])) != 1:
            return False
    for u in s.members():
        if s.deg[u] >= 7 and u not in (dv.w, dv.z2) and _popcount(s.big(s.nb[u])) != 2:
            return False
    return True


def _prod(s: _Induced, dv: DistinguishedVertices, repaired: bool) -> bool:
    for y in dv.y2:
        if any(s.deg[u] != 6 for u in iter_bits(s.nb[y]) if u != dv.y1):
            return False
    n_big = _popcount(s.big(s.X))
    for u in s.members():
        if s.deg[u] != 6 or u in dv.y2:
            continue
        big_nb = s.big(s.nb[u])
        if repaired:
            if _popcount(big_nb) != 1:
                return False
        elif not (big_nb and n_big == 1):
            return False
    return True


def _perfect(s: _Induced, dv: DistinguishedVertices) -> bool:
    for u in s.members():
        if s.deg[u] != 6 or u == dv.z1 or u in dv.y2:
            continue
        if not any(_perfect_at(s, dv, u, v) for v in iter_bits(s.big(s.nb[u]))):
            return False
    return True


def _perfect_at(s: _Induced, dv: DistinguishedVertices, u: int, v: int) -> bool:
    def v1_ok(v1):
        guard = (v1 == dv.z1 and v == dv.z2) or (s.deg[v1] >= 7 and v != dv.z2)
        return guard and s.N_deg(v1, u, 6) == 1 and s.N(v1, u) == 2

    def v2_ok(v2):
        if s.deg[v2] < 7 or s.N(v2, u) != 5:
            return False
        if v2 == dv.w:
            return s.N_deg(v2, u, 2) == 4
        return s.N_deg(v2, u, 6) == 4

    return any(v1_ok(t) for t in s.members()) and any(v2_ok(t) for t in s.members())


def _tree(s: _Induced, dv: DistinguishedVertices, repaired: bool) -> bool:
    def kind(u):
        return (s.deg[u] == 6 and u != dv.z1) or (s.deg[u] == 2 and u != dv.x)

    hubs = [v for v in s.members() if v == dv.z1 or s.deg[v] >= 7]
    for v in hubs:
        group = [u for u in iter_bits(s.nb[v]) if kind(u)]
        for u1 in group:
            for u2 in group:
                if repaired and u1 == u2:
                    continue
                n = s.N(u1, u2)
                if s.adj(u1, u2) or (n > 2 if repaired else n != 2):
                    return False
    return True


def _start(s: _Induced, dv: DistinguishedVertices, repaired: bool) -> bool:
    pool = s.nb[dv.z2] & ~(1 << dv.z1)
    for u in iter_bits(s.nb[dv.z1]):
        if s.deg[u] != 6:
            continue
        cand = pool & s.nb[u] if repaired else pool
        if _popcount(cand) < 4:
            return False
    return True


def _max(g: Graph, x_mask: int) -> bool:
    return all(g.adj[v] & x_mask for v in iter_bits(g.full & ~x_mask))


def check_phi1_part(g: Graph, X: Iterable[int] | int, dv: DistinguishedVertices, part: str,
                    repaired: bool = False) -> bool:
    """Truth of one subformula of the single-set witness sentence on (g, X, dv)."""
    if part not in PARTS:
        raise ValueError(f"unknown part {part!r}; expected one of {PARTS}")
    x_mask = to_mask(X)
    if part == "MAX":
        return _max(g, x_mask)
    if any(not x_mask >> v & 1 for v in dv.as_tuple()):
        return False
    s = _Induced(g, x_mask)
    if part == "DEG":
        return _deg(s, dv)
    if part == "PATH":
        return _path(s, dv)
    if part == "PROD":
        return _prod(s, dv, repaired)
    if part == "PERFECT":
        return _perfect(s, dv)
    if part == "TREE":
        return _tree(s, dv, repaired)
    return _start(s, dv, repaired)


def phi1_report(g: Graph, X, dv: DistinguishedVertices, repaired: bool = False) -> dict[str, bool]:
    return {part: check_phi1_part(g, X, dv, part, repaired) for part in PARTS}


def phi1_holds(g: Graph, X, dv: DistinguishedVertices, repaired: bool = False) -> bool:
    return all(check_phi1_part(g, X, dv, part, repaired) for part in PARTS)


def _connected_order(h: Graph) -> list[int]:
    """Pattern vertices, highest degree first, each later one adjacent to an earlier one."""
    start = max(range(h.n), key=lambda v: (h.degree(v), -v))
    order, seen = [start], 1 << start
    while len(order) < h.n:
        frontier = [v for v in range(h.n) if not seen >> v & 1 and h.adj[v] & seen]
        if not frontier:
            frontier = [v for v in range(h.n) if not seen >> v & 1]
        v = max(frontier, key=lambda t: (_popcount(h.adj[t] & seen), h.degree(t), -t))
        order.append(v)
        seen |= 1 << v
    return order


def iter_induced_embeddings(g: Graph, h: Graph, allowed: Iterable[int] | int | None = None,
                            budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """All injective maps f with h ~= g[f(V(h))]; f[v] is the image of pattern vertex v.

    Raises SearchBudgetExceeded after ``budget`` search nodes.
    """
    allowed = g.full if allowed is None else to_mask(allowed)
    if h.n == 0:
        yield ()
        return
    order = _connected_order(h)
    pos = {v: i for i, v in enumerate(order)}
    back_adj = [[pos[u] for u in iter_bits(h.adj[v]) if pos[u] < i] for i, v in enumerate(order)]
    back_non = [[j for j in range(i) if not h.has_edge(order[j], v)] for i, v in enumerate(order)]
    need = [h.degree(v) for v in order]
    ok_deg = [sum(1 << t for t in iter_bits(allowed) if _popcount(g.adj[t] & allowed) >= d)
              for d in need]
    image = [0] * h.n
    nodes = 0

    def extend(i: int, used: int):
        nonlocal nodes
        if i == h.n:
            f = [0] * h.n
            for j, v in enumerate(order):
                f[v] = image[j]
            yield tuple(f)
            return
        cand = ok_deg[i] & ~used
        for j in back_adj[i]:
            cand &= g.adj[image[j]]
        for j in back_non[i]:
            cand &= ~g.adj[image[j]]
        for t in iter_bits(cand):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"more than {budget} search nodes")
            image[i] = t
            yield from extend(i + 1, used | 1 << t)

    yield from extend(0, 0)


def count_induced_copies(g: Graph, h: Graph, dominating: bool = False,
                         budget: int = DEFAULT_BUDGET) -> int:
    """Number of vertex sets inducing a copy of h (optionally also dominating g)."""
    seen = set()
    for f in iter_induced_embeddings(g, h, budget=budget):
        mask = to_mask(f)
        if mask not in seen and (not dominating or _max(g, mask)):
            seen.add(mask)
    return len(seen)


def count_automorphisms(h: Graph, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in iter_induced_embeddings(h, h, budget=budget))


@dataclass(frozen=True)
class Phi1Witness:
    X: frozenset[int]
    embedding: tuple[int, ...]  # image of each vertex of build_W(a)
    dv: DistinguishedVertices | None


def search_phi1_witness(g: Graph, a: int, budget: int = DEFAULT_BUDGET) -> Phi1Witness | None:
    """An induced copy of W_a that dominates g, or None.

    For a >= 4 the result is re-checked against all seven parts in repaired
    form; for a = 3 the distinguished vertices are reported but no W_3
    satisfies DEG (it has a single vertex of degree >= 7).
    """
    h = build_W(a)
    dv0 = canonical_distinguished(a) if a >= 3 else None
    seen = set()
    for f in iter_induced_embeddings(g, h, budget=budget):
        mask = to_mask(f)
        if mask in seen:
            continue
        seen.add(mask)
        if not _max(g, mask):
            continue
        dv = dv0.mapped(f) if dv0 else None
        if a >= 4 and not phi1_holds(g, mask, dv, repaired=True):
            raise AssertionError("induced W_a copy failed the repaired witness formula")
        return Phi1Witness(frozenset(iter_bits(mask)), f, dv)
    return None


@dataclass(frozen=True)
class Phi2Partition:
    X: frozenset[int]
    A: frozenset[int]
    B: frozenset[int]
    W: frozenset[int]
    P: tuple[frozenset[int], frozenset[int], frozenset[int]]
    C: tuple[tuple[frozenset[int], ...], ...]  # C[i][j] for i < 3, j < 4

    def sets(self) -> list[frozenset[int]]:
        return [self.A, self.B, self.W, *self.P] + [c for row in self.C for c in row]

    def moved(self, v: int, target: str) -> "Phi2Partition":
        """Copy with vertex v moved into the set named like 'P1' or 'C23' (C_2^3)."""
        def strip(s):
            return s - {v}

        P = [strip(s) for s in self.P]
        C = [[strip(s) for s in row] for row in self.C]
        A, B, W = strip(self.A), strip(self.B), strip(self.W)
        if target == "A":
            A |= {v}
        elif target == "B":
            B |= {v}
        elif target == "W":
            W |= {v}
        elif target[0] == "P":
            P[int(target[1]) - 1] |= {v}
        elif target[0] == "C":
            C[int(target[1]) - 1][int(target[2]) - 1] |= {v}
        else:
            raise ValueError(f"unknown set {target!r}")
        return Phi2Partition(self.X, A, B, W, tuple(P), tuple(tuple(r) for r in C))


def _order_to_a(n: int) -> int:
    a = 1
    while w_order(a) < n:
        a += 1
    if w_order(a) != n:
        raise ValueError(f"{n} vertices is not the order of any W_a")
    return a


def canonical_phi2_partition(g: Graph, X: Iterable[int] | int,
                             embedding: tuple[int, ...] | None = None) -> Phi2Partition:
    """Partition of X read off an embedding of W_a onto g[X].

    Interior path vertex at depth d goes to P_i and tree vertex at depth d >= 1
    with child index j goes to C_i^j, where i = ((d - 1) mod 3) + 1.
    """
    x_mask = to_mask(X)
    a = _order_to_a(_popcount(x_mask))
    if a < 2:
        raise ValueError("the partition needs a >= 2")
    if embedding is None:
        embedding = next(iter_induced_embeddings(g, build_W(a), allowed=x_mask), None)
        if embedding is None:
            raise ValueError("X does not induce W_a")
    elif to_mask(embedding) != x_mask or not _is_induced_copy(g, build_W(a), embedding):
        raise ValueError("embedding is not an induced copy of W_a onto X")
    lay = WLayout(a)
    P = [set(), set(), set()]
    C = [[set() for _ in range(4)] for _ in range(3)]
    for v in range(1, a - 1):
        P[(v - 1) % 3].add(embedding[v])
    for v in lay.tree:
        d = lay.depth(v)
        if d >= 1:
            C[(d - 1) % 3][lay.child_index(v) - 1].add(embedding[v])
    return Phi2Partition(
        frozenset(iter_bits(x_mask)), frozenset({embedding[0]}), frozenset({embedding[a]}),
        frozenset({embedding[a - 1]}), tuple(frozenset(s) for s in P),
        tuple(tuple(frozenset(s) for s in row) for row in C),
    )


def _is_induced_copy(g: Graph, h: Graph, f: tuple[int, ...]) -> bool:
    if len(set(f)) != h.n:
        return False
    return all(g.has_edge(f[u], f[v]) == h.has_edge(u, v)
               for u in range(h.n) for v in range(u + 1, h.n))


PHI2_ITEMS = ("1", "2", "3", "4", "5", "6", "7", "8", "9", "10",
              "11a", "11b", "11c", "11d", "11e", "11f",
              "12a", "12b", "12c", "12d", "12e")


def phi2_report(g: Graph, part: Phi2Partition) -> dict[str, bool]:
    """Verdict of every item of the partition checklist.

    Items that speak of "the only vertex" of A, B or W are false when that set
    is not a singleton.  "A neighbour of the only vertex in W" is read inside X.
    """
    adj = g.adj
    x_mask = to_mask(part.X)
    P = [to_mask(s) for s in part.P]
    C = [[to_mask(s) for s in row] for row in part.C]
    Pm = P[0] | P[1] | P[2]
    Crow = [r[0] | r[1] | r[2] | r[3] for r in C]
    Cm = Crow[0] | Crow[1] | Crow[2]
    single = all(len(s) == 1 for s in (part.A, part.B, part.W))
    out = {"1": _max(g, x_mask)}

    masks = [to_mask(s) for s in part.sets()]
    union, disjoint = 0, True
    for m in masks:
        disjoint &= not (union & m)
        union |= m
    out["2"] = disjoint and union == x_mask
    out["3"] = single
    if not single:
        out.update({k: False for k in PHI2_ITEMS if k not in out})
        return out
    a, b, w = next(iter(part.A)), next(iter(part.B)), next(iter(part.W))
    wm = 1 << w
    prev, nxt = (lambda i: (i - 1) % 3), (lambda i: (i + 1) % 3)
    cells = [(i, j, c) for i in range(3) for j in range(4) for c in iter_bits(C[i][j])]
    has = lambda v, m: bool(adj[v] & m)  # noqa: E731
    one = lambda v, m: _popcount(adj[v] & m) == 1  # noqa: E731

    out["4"] = g.has_edge(a, b)
    out["5"] = not adj[a] & (wm | P[1] | P[2] | Cm)
    out["6"] = not adj[b] & (wm | Pm | Crow[1] | Crow[2])
    out["7"] = all(one(c, wm | Pm) and adj[c] & (wm | Pm) & (wm | P[i]) for i, j, c in cells)

    def item8(c):
        if not (adj[c] & P[0] & adj[a]):
            return False
        return all(any(has(p2, adj[c] & P[0]) for c2 in iter_bits(adj[c] & C[1][jt])
                       for p2 in iter_bits(adj[c2] & P[1])) for jt in range(4))

    out["8"] = all(item8(c) for i, j, c in cells if i == 0 and g.has_edge(c, b))
    out["9"] = all(
        any(has(c2, P[prev(i)] & adj[w]) for c2 in iter_bits(adj[c] & Crow[prev(i)]))
        for i, j, c in cells if g.has_edge(c, w))

    def item10(i, c, p):
        back = any(has(p1, adj[c] & Crow[prev(i)]) for p1 in iter_bits(adj[p] & P[prev(i)]))
        fwd = all(any(has(c2, P[nxt(i)] & adj[p]) for c2 in iter_bits(adj[c] & C[nxt(i)][jt]))
                  for jt in range(4))
        return back and fwd

    out["10"] = all(item10(i, c, p) for i, j, c in cells
                    if not g.has_edge(c, b) and not adj[c] & adj[w] & x_mask
                    for p in iter_bits(adj[c] & P[i]))
    out["11a"] = one(a, P[0])
    out["11b"] = any(has(w, P[i]) for i in range(3)) and one(w, Pm)
    out["11c"] = all(one(p, P[1]) and not has(p, P[2]) for p in iter_bits(P[0] & adj[a]))
    out["11d"] = all(one(p, P[prev(i)]) and not has(p, P[nxt(i)])
                     for i in range(3) for p in iter_bits(P[i] & adj[w]))
    out["11e"] = all(one(p, P[t]) for i in range(3) for p in iter_bits(P[i])
                     if not g.has_edge(p, a) and not g.has_edge(p, w)
                     for t in range(3) if t != i)
    out["11f"] = all(not adj[p] & P[i] for i in range(3) for p in iter_bits(P[i]))
    out["12a"] = all(one(b, C[0][j]) for j in range(4))
    out["12b"] = all(one(c, C[1][jt]) and not has(c, C[2][jt])
                     for i, j, c in cells if i == 0 and g.has_edge(c, b) for jt in range(4))
    out["12c"] = all(has(c, Crow[prev(i)]) and one(c, Cm)
                     for i, j, c in cells if g.has_edge(c, w))
    out["12d"] = all(one(c, Crow[prev(i)]) and all(one(c, C[nxt(i)][jt]) for jt in range(4))
                     for i, j, c in cells if not g.has_edge(c, b) and not g.has_edge(c, w))
    out["12e"] = all(not adj[c] & C[i][j] for i, j, c in cells)
    return out


def check_phi2(g: Graph, part: Phi2Partition) -> bool:
    return all(phi2_report(g, part).values())
