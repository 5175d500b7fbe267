"""Formula trees for first-order graph logic with monadic set variables.

Vertex variables are lowercase identifiers, set variables start uppercase.
Nodes are frozen dataclasses, so structural equality and hashing come for free.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Union


class LogicError(ValueError):
    pass


@dataclass(frozen=True)
class Adj:
    left: str
    right: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Member:
    set_var: str
    var: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


BINARY_OPS = ("&", "|", "->", "<->")


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise LogicError(f"unknown connective {self.op!r}")


@dataclass(frozen=True)
class Quant:
    kind: str  # "exists" or "forall"
    var: str
    body: "Formula"
    monadic: bool = False  # True for set quantifiers

    def __post_init__(self):
        if self.kind not in ("exists", "forall"):
            raise LogicError(f"unknown quantifier {self.kind!r}")


Formula = Union[Adj, Eq, Member, Not, BinOp, Quant]


def And(*parts: Formula) -> Formula:
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = BinOp("&", f, out)
    return out


def Or(*parts: Formula) -> Formula:
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = BinOp("|", f, out)
    return out


def Implies(a: Formula, b: Formula) -> Formula:
    return BinOp("->", a, b)


def Iff(a: Formula, b: Formula) -> Formula:
    return BinOp("<->", a, b)


def Exists(var: str, body: Formula) -> Formula:
    return Quant("exists", var, body, var[0].isupper())


def Forall(var: str, body: Formula) -> Formula:
    return Quant("forall", var, body, var[0].isupper())


def is_set_var(name: str) -> bool:
    return name[:1].isupper()


class QuantifierDepth(NamedTuple):
    set_depth: int
    fo_depth: int


@lru_cache(maxsize=4096)
def _depths(f: Formula) -> tuple[int, int, int]:
    """(set depth, FO depth, combined depth) of the longest quantifier chains."""
    if isinstance(f, (Adj, Eq, Member)):
        return 0, 0, 0
    if isinstance(f, Not):
        return _depths(f.body)
    if isinstance(f, BinOp):
        a, b = _depths(f.left), _depths(f.right)
        return max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2])
    s, v, t = _depths(f.body)
    return (s + 1, v, t + 1) if f.monadic else (s, v + 1, t + 1)


def quantifier_depth(f: Formula) -> QuantifierDepth:
    s, v, _ = _depths(f)
    return QuantifierDepth(s, v)


def total_depth(f: Formula) -> int:
    """Quantifier depth counting vertex and set quantifiers alike.

    Not set_depth + fo_depth in general: the two maxima may sit on different branches.
    """
    return _depths(f)[2]


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, (Adj, Eq)):
        return frozenset((f.left, f.right))
    if isinstance(f, Member):
        return frozenset((f.set_var, f.var))
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, BinOp):
        return free_variables(f.left) | free_variables(f.right)
    return free_variables(f.body) - {f.var}


def size(f: Formula) -> int:
    if isinstance(f, (Adj, Eq, Member)):
        return 1
    if isinstance(f, (Not, Quant)):
        return 1 + size(f.body)
    return 1 + size(f.left) + size(f.right)


def to_text(f: Formula) -> str:
    """Concrete syntax accepted by the parser; binary nodes are fully parenthesised."""
    if isinstance(f, Adj):
        return f"{f.left} ~ {f.right}"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Member):
        return f"{f.set_var}({f.var})"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{f.body.left} != {f.body.right}"
        return "!" + _wrap(f.body)
    if isinstance(f, BinOp):
        return f"({_wrap(f.left)} {f.op} {_wrap(f.right)})"
    kw = f.kind + ("Set" if f.monadic else "")
    return f"{kw} {f.var}. {to_text(f.body)}"


def _wrap(f: Formula) -> str:
    text = to_text(f)
    if isinstance(f, Quant):
        return f"({text})"
    return text
