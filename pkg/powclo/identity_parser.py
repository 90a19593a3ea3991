# -*- coding: utf-8 -*-
"""Identity expressions: ``term = term`` over a signature.

    identity := term "=" term
    term     := sym "(" term ("," term)* ")" | var
    var      := [a-z][a-z0-9]*
    sym      := [a-z][a-z0-9]* | "+"

Variables are numbered by first occurrence, left to right.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import pyparsing as pp

from .algebra import App, Identity, Signature, Term, Var
from .errors import ArityMismatch, IdentitySyntaxError, UnknownSymbol

__all__ = ("IdentityExpr", "parse_identity")


class _Name:
    def __init__(self, s: str, loc: int, toks: pp.ParseResults) -> None:
        self.name = toks[0]
        self.line = pp.lineno(loc, s)
        self.col = pp.col(loc, s)


class _Call:
    def __init__(self, s: str, loc: int, toks: pp.ParseResults) -> None:
        self.symbol = toks[0]
        self.args = list(toks[1:])
        self.line = pp.lineno(loc, s)
        self.col = pp.col(loc, s)


def _make_grammar() -> pp.ParserElement:
    ident = pp.Regex(r"[a-z][a-z0-9]*")
    sym = ident | pp.Literal("+")
    lpar, rpar, comma, equals = (pp.Suppress(c) for c in "(),=")

    term = pp.Forward()
    call = sym + lpar + term + pp.ZeroOrMore(comma + term) + rpar
    call.set_parse_action(_Call)
    var = ident.copy().set_parse_action(_Name)
    term <<= call | var
    return term + equals + term


_IDENTITY = _make_grammar()


class _Resolver:
    """Turns parse nodes into terms, checking symbols against the signature."""

    def __init__(self, signature: Signature) -> None:
        self.signature = signature
        self.numbering: Dict[str, int] = {}

    def resolve(self, node: object) -> Term:
        if isinstance(node, _Name):
            return Var(self.numbering.setdefault(node.name, len(self.numbering)))
        assert isinstance(node, _Call)
        if node.symbol not in self.signature.arities:
            raise UnknownSymbol(node.symbol, line=node.line, col=node.col)
        expected = self.signature.arities[node.symbol]
        if expected != len(node.args):
            raise ArityMismatch(node.symbol, expected, len(node.args), line=node.line, col=node.col)
        return App(node.symbol, tuple(self.resolve(arg) for arg in node.args))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(sorted(self.numbering, key=self.numbering.__getitem__))


def _parse(grammar: pp.ParserElement, src: str) -> List[object]:
    try:
        return list(grammar.parse_string(src, parse_all=True))
    except pp.ParseBaseException as exc:
        raise IdentitySyntaxError(exc.msg, exc.lineno, exc.col) from None


def parse_identity(src: str, sig: Signature) -> Identity:
    lhs, rhs = _parse(_IDENTITY, src)
    resolver = _Resolver(sig)
    left = resolver.resolve(lhs)
    right = resolver.resolve(rhs)
    return Identity(left, right, resolver.names)



@dataclass(frozen=True)
class IdentityExpr:
    """An identity together with the text it was parsed from."""

    source: str
    identity: Identity

    @classmethod
    def parse(cls, source: str, sig: Signature) -> "IdentityExpr":
        return cls(source, parse_identity(source, sig))
