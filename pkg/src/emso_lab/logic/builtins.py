"""Named formulas: clique / independent-set predicates of a set X and the six sentences."""
from __future__ import annotations

from functools import lru_cache

from .ast import Formula
from .parser import parse_formula

# Parametric formulas have X free.
_PARAMETRIC = {
    "cl": "forall x. forall y. (X(x) & X(y) & x != y) -> x ~ y",
    "ind": "forall x. forall y. (X(x) & X(y) & x != y) -> !(x ~ y)",
    "phiC": "exists x. !X(x) & (forall y. X(y) -> !(x ~ y))",
    "phiI": "exists x. !X(x) & (forall y. X(y) -> x ~ y)",
    "dom": "forall x. !X(x) -> (exists y. X(y) & x ~ y)",
}
_PARAMETRIC["maxcl"] = f"({_PARAMETRIC['cl']}) & !(exists x. !X(x) & (forall y. X(y) -> x ~ y))"
_PARAMETRIC["maxind"] = f"({_PARAMETRIC['ind']}) & !(exists x. !X(x) & (forall y. X(y) -> !(x ~ y)))"


def _closed(kind: str) -> dict[str, str]:
    p = _PARAMETRIC
    set_pred, max_pred, phi = (
        ("cl", "maxcl", "phiC") if kind == "C" else ("ind", "maxind", "phiI")
    )
    return {
        f"phi{kind}1": f"forallSet X. ({p[set_pred]}) -> ({p[phi]})",
        f"phi{kind}2": f"forallSet X. ({p[max_pred]}) -> !({p[phi]})",
        f"phi{kind}3": f"forallSet X. (({p[set_pred]}) & !({p[phi]})) -> ({p[max_pred]})",
    }


_CLOSED = {**_closed("C"), **_closed("I")}

# Existential rewrites of the negated clique sentences; each has one set
# quantifier and FO depth 2.
_NEGATED = {
    "not_phiC1": f"existsSet X. ({_PARAMETRIC['cl']}) & !({_PARAMETRIC['phiC']})",
    "not_phiC2": f"existsSet X. ({_PARAMETRIC['maxcl']}) & ({_PARAMETRIC['phiC']})",
    "not_phiC3": (
        f"existsSet X. ({_PARAMETRIC['cl']}) & !({_PARAMETRIC['phiC']}) & "
        "(exists x. !X(x) & (forall y. X(y) -> x ~ y))"
    ),
}

NAMES = tuple(sorted({**_PARAMETRIC, **_CLOSED, **_NEGATED}))


def source(name: str) -> str:
    for table in (_PARAMETRIC, _CLOSED, _NEGATED):
        if name in table:
            return table[name]
    raise KeyError(f"unknown builtin {name!r}; known: {', '.join(NAMES)}")


@lru_cache(maxsize=None)
def builtin(name: str) -> Formula:
    text = source(name)
    return parse_formula(text, free=("X",) if name in _PARAMETRIC else ())


def is_parametric(name: str) -> bool:
    return name in _PARAMETRIC
