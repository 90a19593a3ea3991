import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from powclo import fixtures
from powclo.algebra import (
    JOIN,
    App,
    FiniteAlgebra,
    Identity,
    Partition,
    Signature,
    Var,
    associative_identity,
    classify_mode,
    commutative_identity,
    entropic_identity,
    enumerate_endomorphisms,
    enumerate_terms,
    eval_term,
    generate_subalgebra,
    holds_identity,
    idempotent_identity,
    identity_witness,
    is_homomorphism,
    is_linear_identity,
    is_mode,
    quotient_algebra,
    render_term,
    term_depth,
)
from powclo.errors import (
    ArityMismatch,
    CapExceeded,
    NotACongruence,
    SignatureError,
    UnboundVariable,
    UnknownSymbol,
)


def test_tables_are_read_only(sl3v):
    with pytest.raises(ValueError):
        sl3v.tables["m"][0, 0] = 1


def test_table_leaving_the_carrier_is_rejected():
    with pytest.raises(SignatureError):
        FiniteAlgebra("bad", 2, Signature((("m", 2),)), {"m": [0, 1, 1, 2]})


def test_join_symbol_is_reserved():
    with pytest.raises(SignatureError):
        Signature(((JOIN, 2),))
    assert Signature(((JOIN, 2),), extended=True).arity(JOIN) == 2


def test_apply_and_flat_table(sl3v):
    assert sl3v.apply("m", (1, 2)) == 0
    assert sl3v.flat_table("m") == [0, 0, 0, 0, 1, 0, 0, 0, 2]
    with pytest.raises(ArityMismatch):
        sl3v.apply("m", (1,))
    with pytest.raises(UnknownSymbol):
        sl3v.table("q")


def test_eval_term_vectorised(sl3v):
    t = App("m", (Var(0), Var(1)))
    xs = np.array([0, 1, 1, 2])
    ys = np.array([1, 1, 2, 2])
    assert eval_term(sl3v, t, {0: xs, 1: ys}).tolist() == [0, 1, 0, 2]
    assert eval_term(sl3v, t, {0: 1, 1: 1}) == 1
    with pytest.raises(UnboundVariable):
        eval_term(sl3v, t, {0: 1})


def test_identity_witness_is_least(z2):
    assert identity_witness(z2, idempotent_identity("m")) == {0: 1}
    assert identity_witness(z2, commutative_identity("m")) is None


def test_laws_of_fixtures(sl3v, lz2, z2):
    assert holds_identity(sl3v, associative_identity("m"))
    assert holds_identity(lz2, associative_identity("m"))
    assert not holds_identity(lz2, commutative_identity("m"))
    assert holds_identity(z2, entropic_identity("m", 2, "m", 2))


def test_linearity_is_syntactic():
    assert is_linear_identity(associative_identity("m"))
    assert is_linear_identity(commutative_identity("m"))
    assert not is_linear_identity(idempotent_identity("m"))


def test_identity_cap():
    alg = fixtures.sl3v()
    with pytest.raises(CapExceeded):
        identity_witness(alg, associative_identity("m"), cap=10)


def test_modes(sl2, sl3v, lz2, lzrz, z2):
    assert is_mode(sl2) and is_mode(sl3v) and is_mode(lz2) and is_mode(lzrz)
    assert classify_mode(z2) == (False, True)


def test_endomorphisms_of_sl2(sl2):
    assert enumerate_endomorphisms(sl2) == [(0, 0), (0, 1), (1, 1)]
    with pytest.raises(CapExceeded):
        enumerate_endomorphisms(sl2, cap=1)


@pytest.mark.parametrize("name", ["sl2", "sl3v", "lz2", "chain3", "lzrz", "z2"])
def test_endomorphisms_form_a_monoid(name):
    alg = getattr(fixtures, name)()
    endos = enumerate_endomorphisms(alg)
    found = set(endos)
    assert tuple(alg.elements) in found
    for f, g in itertools.product(endos, repeat=2):
        assert tuple(f[g[x]] for x in alg.elements) in found


def test_is_homomorphism(sl3v, sl2):
    assert is_homomorphism(sl3v, sl2, (0, 1, 0))
    assert not is_homomorphism(sl3v, sl2, (0, 1, 1))


def test_generate_subalgebra(sl3v):
    assert generate_subalgebra(sl3v, 0b110) == 0b111
    assert generate_subalgebra(sl3v, 0b010) == 0b010
    assert generate_subalgebra(sl3v, 0) == 0


def test_generate_subalgebra_includes_constants():
    sig = Signature((("e", 0), ("m", 2)))
    alg = FiniteAlgebra("withunit", 2, sig, {"e": [1], "m": [0, 0, 0, 1]})
    assert generate_subalgebra(alg, 0) == 0b10


def test_enumerate_terms_counts():
    sig = Signature((("m", 2),))
    terms = enumerate_terms(sig, 3, 2)
    assert len(terms) == 147
    assert max(term_depth(t) for t in terms) == 2
    assert len(set(terms)) == len(terms)
    with pytest.raises(CapExceeded):
        enumerate_terms(sig, 3, 2, cap=20)


def test_render_term():
    t = App("m", (Var(0), App("m", (Var(1), Var(0)))))
    assert render_term(t, ("x", "y")) == "m(x,m(y,x))"
    assert render_term(t) == "m(x0,m(x1,x0))"


def test_partition_lattice_operations():
    a = Partition.from_labels("aabc")
    b = Partition.from_labels("abbc")
    assert a.blocks == (0, 0, 1, 2)
    assert a.meet(b).is_discrete()
    assert a.join(b).classes() == [[0, 1, 2], [3]]
    assert Partition.discrete(4).refines(a)
    assert a.refines(Partition.total(4))
    assert a.render("wxyz") == "w,x|y|z"
    with pytest.raises(ValueError):
        Partition((1, 0))


def test_quotient_algebra(sl3v):
    part = Partition.from_labels([0, 0, 1])
    q = quotient_algebra(sl3v, part)
    assert q.size == 2
    assert q.labels == ("[0]", "[b]")
    assert q.flat_table("m") == [0, 0, 0, 1]
    with pytest.raises(NotACongruence):
        quotient_algebra(sl3v, Partition.from_labels([0, 1, 1]))


# ---------------------------------------------------------------------------
# Random algebras against a plain interpreter
# ---------------------------------------------------------------------------

@st.composite
def binary_algebras(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    flat = draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=n * n, max_size=n * n))
    return FiniteAlgebra("random", n, Signature((("m", 2),)), {"m": flat})


def terms(variables, depth=3):
    leaves = st.builds(Var, st.integers(min_value=0, max_value=variables - 1))
    if depth == 0:
        return leaves
    inner = terms(variables, depth - 1)
    return st.one_of(leaves, st.builds(lambda a, b: App("m", (a, b)), inner, inner))


def interpret(alg, t, env):
    if isinstance(t, Var):
        return env[t.index]
    a, b = (interpret(alg, arg, env) for arg in t.args)
    return alg.flat_table("m")[a * alg.size + b]


@settings(max_examples=100, deadline=None)
@given(binary_algebras(), terms(2), terms(2))
def test_identity_witness_agrees_with_interpreter(alg, lhs, rhs):
    assert term_depth(lhs) <= 3 and term_depth(rhs) <= 3
    ident = Identity(lhs, rhs)
    variables = ident.variables()
    expected = None
    for values in itertools.product(alg.elements, repeat=len(variables)):
        env = dict(zip(variables, values))
        if interpret(alg, lhs, env) != interpret(alg, rhs, env):
            expected = env
            break
    assert identity_witness(alg, ident) == expected


@settings(max_examples=60, deadline=None)
@given(binary_algebras(), st.integers(min_value=0, max_value=15), st.integers(min_value=0, max_value=15))
def test_generate_subalgebra_is_a_closure(alg, a, b):
    a &= (1 << alg.size) - 1
    b &= (1 << alg.size) - 1
    ga = generate_subalgebra(alg, a)
    assert ga & a == a
    assert generate_subalgebra(alg, ga) == ga
    assert generate_subalgebra(alg, a | b) & ga == ga
