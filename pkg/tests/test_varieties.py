import itertools

import pytest

from powclo import subsets
from powclo.algebra import JOIN, Signature, holds_identity
from powclo.errors import CapExceeded, PowcloError
from powclo.identity_parser import parse_identity
from powclo.varieties import (
    IdentityCatalogue,
    free_semilattice,
    free_semilattice_operator,
    power_preserves,
    separating_family,
)


def test_free_semilattice_elements():
    fp = free_semilattice(3)
    alg = fp.algebra
    assert alg.size == 7
    assert alg.labels[:4] == ("{x}", "{y}", "{x,y}", "{z}")
    assert fp.generators == (0, 1, 3)
    assert alg.apply("m", [0, 3]) == 4
    assert holds_identity(alg, parse_identity("m(x,m(y,z)) = m(m(x,y),z)", alg.signature))


def test_free_semilattice_caps():
    with pytest.raises(CapExceeded):
        free_semilattice(5)
    with pytest.raises(CapExceeded):
        free_semilattice(3, cap=2)
    with pytest.raises(PowcloError):
        free_semilattice(0)


def test_operators_on_a_two_member_family():
    t = subsets.from_elements([0, 5])  # {{x}, {y,z}}
    assert t == 33
    c1 = free_semilattice_operator(3, 1)
    c2 = free_semilattice_operator(3, 2)
    assert subsets.elements(c1(t)) == [0, 5, 6]
    assert subsets.elements(c2(t)) == [0, 2, 4, 5, 6]
    assert c1(t) != c2(t)


def test_separating_family():
    t = separating_family(3)
    assert t == 33
    assert free_semilattice_operator(3, 1)(t) != free_semilattice_operator(3, 2)(t)
    with pytest.raises(PowcloError):
        separating_family(2)


def test_first_two_operators_first_differ_on_a_split_pair():
    c1 = free_semilattice_operator(3, 1)
    c2 = free_semilattice_operator(3, 2)
    assert next(code for code in range(1 << 7) if c1(code) != c2(code)) == 12


def test_four_operators_are_pairwise_distinct():
    ops = [free_semilattice_operator(3, i) for i in (1, 2, 3, 4)]
    for a, b in itertools.combinations(ops, 2):
        assert a.table != b.table, (a.name, b.name)
    for c in ops:
        assert c(0) == 0


def test_operator_index_is_checked():
    with pytest.raises(PowcloError):
        free_semilattice_operator(2, 5)


def test_catalogue_for_a_plain_semilattice(sl3v):
    catalogue = IdentityCatalogue.for_signature(sl3v.signature)
    assert catalogue.names == ("associativity of m", "commutativity of m", "idempotency of m")
    assert catalogue.holding_in(sl3v) == catalogue.names
    with pytest.raises(KeyError):
        catalogue.identity("stammered")


def test_catalogue_mixed_laws(p_sl2):
    sig = Signature((("m", 2), (JOIN, 2)), extended=True)
    catalogue = IdentityCatalogue.for_signature(sig)
    assert "stammered" in catalogue.names
    holding = catalogue.holding_in(p_sl2.algebra)
    assert "idempotency of +" in holding
    assert "commutativity of m" in holding
    assert "stammered" not in holding


def test_power_loses_idempotency(sl3v):
    ident = IdentityCatalogue.for_signature(sl3v.signature).identity("idempotency of m")
    result = power_preserves(sl3v, ident)
    assert result.holds_in_base
    assert not result.holds_in_power
    assert result.witness == {"x": "{a,b}"}


def test_power_keeps_commutativity(sl3v):
    ident = parse_identity("m(x,y) = m(y,x)", sl3v.signature)
    result = power_preserves(sl3v, ident)
    assert result.holds_in_base and result.holds_in_power
    assert result.as_dict()["witness"] is None
