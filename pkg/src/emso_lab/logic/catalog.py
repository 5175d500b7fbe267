"""Random members of the class of sentences  exists X. phi(X)  with phi first-order
of quantifier depth <= 2 over the vertex variables x and y."""
from __future__ import annotations

import random

from .ast import Adj, BinOp, Eq, Formula, Member, Not, Quant, quantifier_depth, size, to_text
from .builtins import builtin

VERTEX_VARS = ("x", "y")
SEEDED = ("not_phiC1", "not_phiC2", "not_phiC3")


def _atom(rng: random.Random, scope: tuple[str, ...]) -> Formula:
    a, b = rng.choice(scope), rng.choice(scope)
    kind = rng.randrange(3)
    if kind == 0:
        return Member("X", a)
    if kind == 1:
        return Adj(a, b)
    return Eq(a, b)


def _gen(rng: random.Random, scope: tuple[str, ...], depth_left: int, budget: int) -> Formula:
    free = [v for v in VERTEX_VARS if v not in scope]
    can_quant = depth_left > 0 and free and budget >= 2
    choices = []
    if scope:
        choices += ["atom"] * 3
    if (scope and budget >= 2) or (can_quant and budget >= 3):
        choices += ["not"]
    if budget >= 3 and (scope or can_quant):
        choices += ["bin"] * 3
    if can_quant:
        choices += ["quant"] * 3
    pick = rng.choice(choices)
    if pick == "atom":
        return _atom(rng, scope)
    if pick == "not":
        return Not(_gen(rng, scope, depth_left, budget - 1))
    if pick == "bin":
        left_budget = rng.randint(1, budget - 2)
        if not scope:
            left_budget = max(left_budget, 2)
            if budget - 1 - left_budget < 2:
                return Not(_gen(rng, scope, depth_left, budget - 1))
        op = rng.choice(("&", "|", "->", "<->"))
        return BinOp(op, _gen(rng, scope, depth_left, left_budget), _gen(rng, scope, depth_left, budget - 1 - left_budget))
    var = rng.choice(free)
    kind = rng.choice(("exists", "forall"))
    return Quant(kind, var, _gen(rng, scope + (var,), depth_left - 1, budget - 1))


def in_e12(f: Formula) -> bool:
    """One leading existential set quantifier over X, FO part of depth <= 2 on x, y."""
    if not (isinstance(f, Quant) and f.monadic and f.kind == "exists" and f.var == "X"):
        return False
    d = quantifier_depth(f)
    return d.set_depth == 1 and d.fo_depth <= 2 and _vertex_vars(f.body) <= set(VERTEX_VARS)


def _vertex_vars(f: Formula) -> set[str]:
    if isinstance(f, (Adj, Eq)):
        return {f.left, f.right}
    if isinstance(f, Member):
        return {f.var}
    if isinstance(f, Not):
        return _vertex_vars(f.body)
    if isinstance(f, BinOp):
        return _vertex_vars(f.left) | _vertex_vars(f.right)
    return ({f.var} if not f.monadic else set()) | _vertex_vars(f.body)


def catalog_e12(count: int, size_bound: int = 12, seed: int = 0, include_seeded: bool = True) -> list[Formula]:
    """``count`` distinct sentences (distinct printed forms), reproducible from ``seed``.

    The existential rewrites of the three negated clique sentences come first
    when ``include_seeded`` is set; they are larger than typical random members
    and are not subject to ``size_bound``.
    """
    if size_bound < 3:
        raise ValueError("size_bound must be at least 3 (set quantifier, vertex quantifier, atom)")
    rng = random.Random(seed)
    out: list[Formula] = []
    seen: set[str] = set()
    if include_seeded:
        for name in SEEDED:
            f = builtin(name)
            seen.add(to_text(f))
            out.append(f)
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count + 1000:
            raise RuntimeError(f"could only generate {len(out)} distinct sentences within size {size_bound}")
        body = _gen(rng, (), 2, rng.randint(2, size_bound - 1))
        f = Quant("exists", "X", body, True)
        text = to_text(f)
        if text in seen or size(f) > size_bound or not in_e12(f):
            continue
        seen.add(text)
        out.append(f)
    return out[:count]
