import json
from pathlib import Path

import pytest

from powclo.algebra import App, Signature, Var, holds_identity
from powclo.errors import ArityMismatch, IdentitySyntaxError, UnknownSymbol
from powclo.identity_parser import IdentityExpr, parse_identity

_CORPUS = json.loads((Path(__file__).resolve().parent / "data" / "identity_corpus.json").read_text(encoding="utf-8"))
SIG = Signature(tuple((symbol, arity) for symbol, arity in _CORPUS["signature"]), extended=True)


def _cases(kind):
    return [pytest.param(case, id=repr(case["source"])) for case in _CORPUS["cases"] if case["kind"] == kind]


@pytest.mark.parametrize("case", _cases("ok"))
def test_valid_identities(case):
    ident = parse_identity(case["source"], SIG)
    assert ident.render() == case["render"]
    assert list(ident.names) == case["variables"]
    assert ident.variables() == list(range(len(case["variables"])))


@pytest.mark.parametrize("case", _cases("syntax"))
def test_syntax_errors(case):
    with pytest.raises(IdentitySyntaxError) as info:
        parse_identity(case["source"], SIG)
    assert info.value.line >= 1
    assert info.value.exit_code == 2


@pytest.mark.parametrize("case", _cases("unknown"))
def test_unknown_symbols(case):
    with pytest.raises(UnknownSymbol) as info:
        parse_identity(case["source"], SIG)
    assert info.value.symbol == case["symbol"]
    assert (info.value.line, info.value.col) == (case["line"], case["col"])


@pytest.mark.parametrize("case", _cases("arity"))
def test_arity_mismatches(case):
    with pytest.raises(ArityMismatch) as info:
        parse_identity(case["source"], SIG)
    err = info.value
    assert (err.symbol, err.expected, err.got) == (case["symbol"], case["expected"], case["got"])
    assert (err.line, err.col) == (case["line"], case["col"])


def test_corpus_size():
    assert len(_CORPUS["cases"]) == 50


def test_variables_are_numbered_by_first_occurrence():
    ident = parse_identity("m(y,x) = m(x,z)", SIG)
    assert ident.lhs == App("m", (Var(0), Var(1)))
    assert ident.rhs == App("m", (Var(1), Var(2)))
    assert ident.var_name(2) == "z"


def test_nested_terms_of_mixed_arity():
    ident = parse_identity("f(b, s(a), b) = a", SIG)
    assert ident.lhs == App("f", (Var(0), App("s", (Var(1),)), Var(0)))
    assert ident.rhs == Var(1)
    assert ident.var_name(0) == "b"
    with pytest.raises(IdentitySyntaxError):
        parse_identity("f(b, s(a), b)", SIG)


def test_join_needs_an_extended_signature(sl2):
    with pytest.raises(UnknownSymbol):
        parse_identity("+(x,y) = x", sl2.signature)


def test_parsed_identities_evaluate(sl3v):
    expr = IdentityExpr.parse("m(x, m(x, y)) = m(x, y)", sl3v.signature)
    assert expr.source.startswith("m(x,")
    assert holds_identity(sl3v, expr.identity)
