"""Brute-force model checking of formulas on graphs.

``evaluate`` turns a formula into a boolean numpy array with one axis per
variable in scope (a vertex axis has length n, a set axis length 2^n, a
variable fixed by the caller's assignment length 1) and reduces quantified
axes with any/all.  ``evaluate_naive`` is a plain recursive interpreter kept
as an independent reference.
"""
from __future__ import annotations

from math import prod
from typing import Mapping

import numpy as np

from ..graph import Graph, to_mask
from .ast import Adj, BinOp, Eq, Formula, LogicError, Member, Not, free_variables, is_set_var

DEFAULT_BUDGET = 1 << 24


class EvalBudgetExceeded(LogicError):
    pass


class UnassignedVariableError(LogicError):
    pass


def _normalise(g: Graph, f: Formula, assignment: Mapping | None) -> dict[str, int]:
    assignment = dict(assignment or {})
    missing = free_variables(f) - set(assignment)
    if missing:
        raise UnassignedVariableError(f"no value for free variables {sorted(missing)}")
    out = {}
    for name, value in assignment.items():
        if is_set_var(name):
            mask = to_mask(value)
            if mask >> g.n:
                raise ValueError(f"set {name} mentions vertices outside 0..{g.n - 1}")
            out[name] = mask
        else:
            if not 0 <= int(value) < g.n:
                raise ValueError(f"vertex {name}={value} out of range")
            out[name] = int(value)
    return out


def _peak_cells(f: Formula, sizes: list[int], set_size: int, n: int) -> int:
    here = prod(sizes) if sizes else 1
    if isinstance(f, (Adj, Eq, Member)):
        return here
    if isinstance(f, Not):
        return _peak_cells(f.body, sizes, set_size, n)
    if isinstance(f, BinOp):
        return max(_peak_cells(f.left, sizes, set_size, n), _peak_cells(f.right, sizes, set_size, n))
    return _peak_cells(f.body, sizes + [set_size if f.monadic else n], set_size, n)


class _Tables:
    def __init__(self, g: Graph, need_sets: bool):
        self.n = g.n
        self.adj = g.to_matrix()
        self.eq = np.eye(g.n, dtype=bool)
        if need_sets:
            codes = np.arange(1 << g.n, dtype=np.int64)[:, None]
            self.member = ((codes >> np.arange(g.n, dtype=np.int64)) & 1).astype(bool)
        else:
            self.member = None


def _uses_sets(f: Formula) -> bool:
    if isinstance(f, Member):
        return True
    if isinstance(f, (Adj, Eq)):
        return False
    if isinstance(f, Not):
        return _uses_sets(f.body)
    if isinstance(f, BinOp):
        return _uses_sets(f.left) or _uses_sets(f.right)
    return f.monadic or _uses_sets(f.body)


def _place(t: np.ndarray, ia: int, ib: int, ndim: int) -> np.ndarray:
    shape = [1] * ndim
    if ia == ib:
        t = np.diagonal(t)
        shape[ia] = t.shape[0]
        return t.reshape(shape)
    if ia > ib:
        t, ia, ib = t.T, ib, ia
    shape[ia], shape[ib] = t.shape
    return t.reshape(shape)


def _atom(tab: np.ndarray, scope, a: str, b: str) -> np.ndarray:
    names = [s[0] for s in scope]
    ia = len(names) - 1 - names[::-1].index(a)
    ib = len(names) - 1 - names[::-1].index(b)
    fixed_a, fixed_b = scope[ia][1], scope[ib][1]
    t = tab
    if fixed_a is not None:
        t = t[[fixed_a], :]
    if fixed_b is not None:
        t = t[:, [fixed_b]]
    return _place(t, ia, ib, len(scope))


def _tensor(f: Formula, scope: list, tabs: _Tables) -> np.ndarray:
    if isinstance(f, Adj):
        return _atom(tabs.adj, scope, f.left, f.right)
    if isinstance(f, Eq):
        return _atom(tabs.eq, scope, f.left, f.right)
    if isinstance(f, Member):
        return _atom(tabs.member, scope, f.set_var, f.var)
    if isinstance(f, Not):
        return ~_tensor(f.body, scope, tabs)
    if isinstance(f, BinOp):
        a = _tensor(f.left, scope, tabs)
        b = _tensor(f.right, scope, tabs)
        if f.op == "&":
            return a & b
        if f.op == "|":
            return a | b
        if f.op == "->":
            return ~a | b
        return a == b
    body = _tensor(f.body, scope + [(f.var, None)], tabs)
    length = (1 << tabs.n) if f.monadic else tabs.n
    body = np.broadcast_to(body, body.shape[:-1] + (length,))
    return body.any(axis=-1) if f.kind == "exists" else body.all(axis=-1)


def evaluate(g: Graph, f: Formula, assignment: Mapping | None = None, budget: int = DEFAULT_BUDGET) -> bool:
    """Truth of f on g; free variables take their values from ``assignment``.

    Set values may be given as iterables of vertices or as bitmasks.  Raises
    EvalBudgetExceeded if some intermediate table would exceed ``budget`` cells.
    """
    values = _normalise(g, f, assignment)
    need_sets = _uses_sets(f)
    set_size = 1 << g.n if need_sets else 0
    peak = _peak_cells(f, [1] * len(values), set_size, g.n)
    if need_sets:
        peak = max(peak, set_size * g.n)
    if peak > budget:
        raise EvalBudgetExceeded(f"evaluation needs {peak} cells, budget is {budget}")
    tabs = _Tables(g, need_sets)
    scope = list(values.items())
    out = _tensor(f, scope, tabs)
    return bool(out.reshape(-1)[0]) if out.size else bool(out.all())


def evaluate_naive(g: Graph, f: Formula, assignment: Mapping | None = None) -> bool:
    """Recursive reference interpreter; exponential in the number of set quantifiers."""
    env = _normalise(g, f, assignment)
    return _naive(g, f, env)


def _naive(g: Graph, f: Formula, env: dict[str, int]) -> bool:
    if isinstance(f, Adj):
        return g.has_edge(env[f.left], env[f.right])
    if isinstance(f, Eq):
        return env[f.left] == env[f.right]
    if isinstance(f, Member):
        return bool(env[f.set_var] >> env[f.var] & 1)
    if isinstance(f, Not):
        return not _naive(g, f.body, env)
    if isinstance(f, BinOp):
        a = _naive(g, f.left, env)
        if f.op == "&":
            return a and _naive(g, f.right, env)
        if f.op == "|":
            return a or _naive(g, f.right, env)
        if f.op == "->":
            return (not a) or _naive(g, f.right, env)
        return a == _naive(g, f.right, env)
    domain = range(1 << g.n) if f.monadic else range(g.n)
    want = f.kind == "exists"
    for value in domain:
        if _naive(g, f.body, {**env, f.var: value}) == want:
            return want
    return not want
