"""Recursive-descent parser for the ASCII formula syntax.

    formula  := iff
    iff      := implies ("<->" implies)*
    implies  := or ("->" implies)?
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := "!" unary | quantifier | "(" formula ")" | atom
    quantifier := ("exists" | "forall") var "." formula
                | ("existsSet" | "forallSet") SetVar "." formula
    atom     := var "~" var | var "=" var | var "!=" var | SetVar "(" var ")"

A quantifier body extends as far right as possible.  Lowercase identifiers
are vertex variables, identifiers starting uppercase are set variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .ast import Adj, BinOp, Eq, Formula, LogicError, Member, Not, Quant, is_set_var


class ParseError(LogicError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class UnboundVariableError(ParseError):
    pass


class ShadowingError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(<->|->|!=|[!&|~=().])|([A-Za-z_][A-Za-z0-9_]*))")
_KEYWORDS = {"exists", "forall", "existsSet", "forallSet"}


@dataclass
class _Tok:
    kind: str  # "sym", "id", "kw" or "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            break
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            toks.append(_Tok("sym", m.group(1), start))
        else:
            word = m.group(2)
            toks.append(_Tok("kw" if word in _KEYWORDS else "id", word, start))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, free: Iterable[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.scope: list[str] = list(free)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None, cls=ParseError):
        tok = tok or self.peek()
        shown = repr(tok.value) if tok.kind != "end" else "end of input"
        raise cls(f"{message} (found {shown})", tok.pos, self.text)

    def expect(self, value: str) -> _Tok:
        tok = self.peek()
        if tok.kind != "sym" or tok.value != value:
            self.error(f"expected {value!r}")
        return self.next()

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek().kind != "end":
            self.error("unexpected trailing input")
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.at("<->"):
            self.next()
            f = BinOp("<->", f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.at("->"):
            self.next()
            return BinOp("->", f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.next()
            f = BinOp("|", f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.next()
            f = BinOp("&", f, self.unary())
        return f

    def at(self, sym: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.value == sym

    def unary(self) -> Formula:
        tok = self.peek()
        if self.at("!"):
            self.next()
            return Not(self.unary())
        if self.at("("):
            self.next()
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind == "kw":
            return self.quantifier()
        if tok.kind == "id":
            return self.atom()
        self.error("expected a formula")

    def quantifier(self) -> Formula:
        kw = self.next()
        monadic = kw.value.endswith("Set")
        var = self.peek()
        if var.kind != "id":
            self.error("expected a variable after quantifier")
        if is_set_var(var.value) != monadic:
            want = "set variable (uppercase)" if monadic else "vertex variable (lowercase)"
            self.error(f"{kw.value} needs a {want}", var)
        if var.value in self.scope:
            self.error(f"variable {var.value!r} is already bound", var, ShadowingError)
        self.next()
        self.expect(".")
        self.scope.append(var.value)
        body = self.iff()
        self.scope.pop()
        return Quant(kw.value.removesuffix("Set"), var.value, body, monadic)

    def use(self, tok: _Tok, want_set: bool) -> str:
        if is_set_var(tok.value) != want_set:
            kind = "set" if want_set else "vertex"
            self.error(f"expected a {kind} variable", tok)
        if tok.value not in self.scope:
            self.error(f"unbound variable {tok.value!r}", tok, UnboundVariableError)
        return tok.value

    def atom(self) -> Formula:
        first = self.next()
        if is_set_var(first.value):
            if not self.at("("):
                self.error(f"incomplete atom {first.value!r}: expected '('", first)
            self.next()
            var = self.peek()
            if var.kind != "id":
                self.error("expected a vertex variable")
            self.next()
            self.expect(")")
            return Member(self.use(first, True), self.use(var, False))
        op = self.peek()
        if op.kind != "sym" or op.value not in ("~", "=", "!="):
            self.error(f"incomplete atom {first.value!r}: expected '~', '=' or '!='", first)
        self.next()
        second = self.peek()
        if second.kind != "id":
            self.error("expected a vertex variable")
        self.next()
        a, b = self.use(first, False), self.use(second, False)
        if op.value == "~":
            return Adj(a, b)
        if op.value == "=":
            return Eq(a, b)
        return Not(Eq(a, b))


def parse_formula(text: str, free: Iterable[str] = ()) -> Formula:
    """Parse text whose free variables must be among ``free``."""
    return _Parser(text, free).parse()


def parse_sentence(text: str) -> Formula:
    """Parse a closed formula."""
    return parse_formula(text, ())
