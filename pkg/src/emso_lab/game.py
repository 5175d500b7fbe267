"""Exact solver for the three-round set-then-two-vertices Ehrenfeucht game EHR(A, B).

Round 1: Spoiler picks X in A, Duplicator answers Y in B.  Rounds 2 and 3:
Spoiler picks a vertex in either graph, Duplicator answers in the other.
Duplicator wins iff adjacency, equality and membership agree on the two
pairs of chosen vertices.

Two vertex rounds reduce to a signature comparison.  For a coloured vertex v
let T(v) be the set of triples (colour(u), u ~ v, u = v) over all u.  A
position (a, b) survives the last round iff colour and T agree, so
Duplicator survives both vertex rounds from (X, Y) iff the sets
{(colour(v), T(v))} of the two coloured graphs coincide.  ``solve_ehr_naive``
plays the full game tree instead and serves as the reference.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .graph import Graph, iter_bits
from .logic import Formula, evaluate, to_text

SPOILER = "Spoiler"
DUPLICATOR = "Duplicator"
DEFAULT_BUDGET = 1 << 24


class GameBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Move:
    round: int
    player: str
    side: str  # "A" or "B"
    choice: frozenset[int] | int


@dataclass(frozen=True)
class GameOutcome:
    winner: str
    trace: tuple[Move, ...] | None = None


def vertex_types(g: Graph, s: int) -> list[int]:
    """Per vertex, a 9-bit code: colour bit, then the 8-bit set of triples T(v)."""
    full = g.full
    out = []
    for v in range(g.n):
        row = g.adj[v]
        non = full & ~row & ~(1 << v)
        col = s >> v & 1
        t = 1 << (col << 2 | 1)  # (colour(v), non-adjacent, equal)
        if row & s:
            t |= 1 << (1 << 2 | 1 << 1)
        if row & ~s:
            t |= 1 << (1 << 1)
        if non & s:
            t |= 1 << (1 << 2)
        if non & ~s:
            t |= 1 << 0
        out.append(col << 8 | t)
    return out


def signature(g: Graph, s: int) -> frozenset[int]:
    return frozenset(vertex_types(g, s))


def _check(a: Graph, b: Graph, budget: int) -> None:
    if a.n < 1 or b.n < 1:
        raise ValueError("both graphs need at least one vertex")
    cost = (1 << a.n) * (1 << b.n)
    if cost > budget:
        raise GameBudgetExceeded(f"2^{a.n} * 2^{b.n} = {cost} exceeds budget {budget}")


def _final_ok(a: Graph, x: int, b: Graph, y: int, pairs: Sequence[tuple[int, int]]) -> bool:
    (x1, y1), (x2, y2) = pairs
    return (
        a.has_edge(x1, x2) == b.has_edge(y1, y2)
        and (x1 == x2) == (y1 == y2)
        and all((x >> xi & 1) == (y >> yi & 1) for xi, yi in pairs)
    )


def replay(a: Graph, b: Graph, trace: Sequence[Move]) -> str:
    """Winner of the finished play recorded in trace."""
    sets = {}
    picks: list[dict[str, int]] = []
    for mv in trace:
        if mv.round == 1:
            sets[mv.side] = sum(1 << v for v in mv.choice)
        else:
            if mv.player == SPOILER:
                picks.append({})
            picks[-1][mv.side] = mv.choice
    if len(picks) != 2 or set(sets) != {"A", "B"}:
        raise ValueError("trace is not a complete play")
    pairs = [(p["A"], p["B"]) for p in picks]
    return DUPLICATOR if _final_ok(a, sets["A"], b, sets["B"], pairs) else SPOILER


def _vertex_round_trace(a, x, b, y, spoiler_wins: bool) -> list[Move]:
    """A deterministic line of play for the two vertex rounds."""
    ta, tb = vertex_types(a, x), vertex_types(b, y)
    moves: list[Move] = []
    if not spoiler_wins:
        b1 = tb.index(ta[0])
        ta2 = _relative_types(a, x, 0)
        tb2 = _relative_types(b, y, b1)
        b2 = tb2.index(ta2[0])
        return [
            Move(2, SPOILER, "A", 0), Move(2, DUPLICATOR, "B", b1),
            Move(3, SPOILER, "A", 0), Move(3, DUPLICATOR, "B", b2),
        ]
    missing_a = [v for v in range(a.n) if ta[v] not in set(tb)]
    if missing_a:
        v1, side = missing_a[0], "A"
        w1 = 0
    else:
        v1 = next(v for v in range(b.n) if tb[v] not in set(ta))
        side, w1 = "B", 0
    moves += [Move(2, SPOILER, side, v1), Move(2, DUPLICATOR, "B" if side == "A" else "A", w1)]
    if side == "A":
        ra, rb = _relative_types(a, x, v1), _relative_types(b, y, w1)
    else:
        ra, rb = _relative_types(a, x, w1), _relative_types(b, y, v1)
    only_a = [u for u in range(a.n) if ra[u] not in set(rb)]
    only_b = [u for u in range(b.n) if rb[u] not in set(ra)]
    if only_a:
        moves += [Move(3, SPOILER, "A", only_a[0]), Move(3, DUPLICATOR, "B", 0)]
    elif only_b:
        moves += [Move(3, SPOILER, "B", only_b[0]), Move(3, DUPLICATOR, "A", 0)]
    else:  # the colours of the first pair already differ
        moves += [Move(3, SPOILER, side, v1), Move(3, DUPLICATOR, moves[1].side, w1)]
    return moves


def _relative_types(g: Graph, s: int, v: int) -> list[tuple[int, int, int]]:
    return [(s >> u & 1, int(g.has_edge(u, v)), int(u == v)) for u in range(g.n)]


def solve_ehr(a: Graph, b: Graph, budget: int = DEFAULT_BUDGET, trace: bool = False,
              symmetric: bool = False) -> GameOutcome:
    """Winner of EHR(a, b) under optimal play.

    With ``symmetric=True`` Spoiler may play the set round in either graph;
    this is an extension, not the game as defined above.
    """
    _check(a, b, budget)
    sig_b = {}
    for y in range(1 << b.n):
        sig_b.setdefault(signature(b, y), y)
    sig_a = {}
    for x in range(1 << a.n):
        sig_a.setdefault(signature(a, x), x)
    bad_x = next((x for s, x in sig_a.items() if s not in sig_b), None)
    bad_y = None
    if symmetric and bad_x is None:
        bad_y = next((y for s, y in sig_b.items() if s not in sig_a), None)
    winner = SPOILER if bad_x is not None or bad_y is not None else DUPLICATOR
    if not trace:
        return GameOutcome(winner)
    if bad_x is not None:
        x, y = bad_x, 0
        first = [Move(1, SPOILER, "A", frozenset(iter_bits(x))), Move(1, DUPLICATOR, "B", frozenset())]
    elif bad_y is not None:
        x, y = 0, bad_y
        first = [Move(1, SPOILER, "B", frozenset(iter_bits(y))), Move(1, DUPLICATOR, "A", frozenset())]
    else:
        x, y = 0, sig_b[signature(a, 0)]
        first = [Move(1, SPOILER, "A", frozenset()), Move(1, DUPLICATOR, "B", frozenset(iter_bits(y)))]
    moves = first + _vertex_round_trace(a, x, b, y, winner == SPOILER)
    return GameOutcome(winner, tuple(moves))


def solve_ehr_naive(a: Graph, b: Graph, symmetric: bool = False, budget: int = 1 << 12) -> str:
    """Full game-tree search; only for tiny graphs."""
    _check(a, b, budget)

    @lru_cache(maxsize=None)
    def vertex_game(x: int, y: int, pairs: tuple) -> bool:
        if len(pairs) == 2:
            return _final_ok(a, x, b, y, pairs)
        for va in range(a.n):
            if not any(vertex_game(x, y, pairs + ((va, vb),)) for vb in range(b.n)):
                return False
        for vb in range(b.n):
            if not any(vertex_game(x, y, pairs + ((va, vb),)) for va in range(a.n)):
                return False
        return True

    ys, xs = range(1 << b.n), range(1 << a.n)
    dup = all(any(vertex_game(x, y, ()) for y in ys) for x in xs)
    if symmetric:
        dup = dup and all(any(vertex_game(x, y, ()) for x in xs) for y in ys)
    return DUPLICATOR if dup else SPOILER


@dataclass
class Theorem1Report:
    winner: str
    differing: list[tuple[int, str, bool, bool]] = field(default_factory=list)

    @property
    def violation(self) -> bool:
        """Duplicator wins yet some catalog sentence differs."""
        return self.winner == DUPLICATOR and bool(self.differing)

    @property
    def forward_failures(self) -> list[tuple[int, str, bool, bool]]:
        """Differences with the sentence true in A and false in B."""
        return [d for d in self.differing if d[2] and not d[3]]


def verify_theorem1(a: Graph, b: Graph, catalog: Sequence[Formula], budget: int = DEFAULT_BUDGET,
                    symmetric: bool = False) -> Theorem1Report:
    outcome = solve_ehr(a, b, budget=budget, symmetric=symmetric)
    report = Theorem1Report(outcome.winner)
    for i, f in enumerate(catalog):
        va, vb = evaluate(a, f), evaluate(b, f)
        if va != vb:
            report.differing.append((i, to_text(f), va, vb))
    return report
