import itertools

import pytest

from powclo import fixtures, subsets
from powclo.algebra import Partition, enumerate_endomorphisms
from powclo.closures import closure_from_congruence
from powclo.congruences import (
    all_congruences,
    all_congruences_by_partitions,
    as_congruence,
    congruence_violation,
    convexity_violation,
    delta_lift,
    delta_quotient,
    fully_invariant_congruences,
    is_congruence,
    is_fully_invariant,
    lift_equiv,
    principal_congruence,
    quotient_power,
    rho_congruence,
    tilde,
    tilde_partition,
)
from powclo.errors import CapExceeded, NotACongruence, NotAMode, TildeMismatch
from powclo.power import build_extended_power


def test_congruences_of_sl3v(sl3v):
    cons = all_congruences(sl3v)
    assert [c.render() for c in cons] == ["0|a|b", "0,a|b", "0,b|a", "0,a,b"]
    assert cons == all_congruences_by_partitions(sl3v)


def test_congruences_of_the_power_of_sl2(p_sl2):
    cons = all_congruences(p_sl2.algebra)
    assert len(cons) == 4
    assert cons[0].partition.is_discrete()
    assert cons[-1].partition.is_total()
    assert cons == all_congruences_by_partitions(p_sl2.algebra)


def test_congruence_caps(p_sl3v):
    with pytest.raises(CapExceeded):
        all_congruences(p_sl3v.algebra, cap=5)
    with pytest.raises(CapExceeded):
        all_congruences_by_partitions(p_sl3v.algebra, cap=5)


def test_principal_congruence(sl3v, z2):
    assert principal_congruence(sl3v, 1, 2).partition.is_total()
    assert principal_congruence(sl3v, 0, 1).render() == "0,a|b"
    assert principal_congruence(z2, 0, 1).partition.is_total()


def test_violation_witness(sl3v):
    part = Partition.from_labels([0, 1, 1])
    witness = congruence_violation(sl3v, part)
    assert witness is not None and witness["symbol"] == "m"
    assert not is_congruence(sl3v, part)
    with pytest.raises(NotACongruence):
        as_congruence(sl3v, part)


def test_fully_invariant_congruences_of_sl3v(sl3v):
    endos = enumerate_endomorphisms(sl3v)
    invariant = fully_invariant_congruences(sl3v, all_congruences(sl3v), endos)
    # swapping a and b moves 0,a|b to 0,b|a
    assert [c.render() for c in invariant] == ["0|a|b", "0,a,b"]


def test_tilde_restricts_to_singletons(p_sl3v):
    for theta in all_congruences(p_sl3v.algebra):
        restricted = tilde(p_sl3v, theta)
        assert restricted.partition.size == 3
        assert is_congruence(p_sl3v.base, restricted.partition)


def test_lift_equiv_restricts_back(sl3v, p_sl3v):
    for alpha in all_congruences(sl3v):
        lifted = lift_equiv(p_sl3v, alpha.partition)
        assert lifted.algebra is p_sl3v.algebra
        assert tilde_partition(p_sl3v, lifted.partition) == alpha.partition


def test_delta_round_trip_over_identity(sl3v, p_sl3v):
    alpha = all_congruences(sl3v)[0]
    qp = quotient_power(p_sl3v, alpha)
    assert qp.power.size == 7
    for theta in all_congruences(p_sl3v.algebra):
        if not tilde_partition(p_sl3v, theta.partition).is_discrete():
            continue
        down = delta_quotient(p_sl3v, theta, alpha, qp)
        assert delta_lift(p_sl3v, down, alpha, qp).partition == theta.partition


def test_delta_round_trip_over_a_proper_congruence(sl3v, p_sl3v):
    alpha = all_congruences(sl3v)[1]
    qp = quotient_power(p_sl3v, alpha)
    assert qp.power.size == 3
    over = [t for t in all_congruences(p_sl3v.algebra) if tilde_partition(p_sl3v, t.partition) == alpha.partition]
    assert over
    for theta in over:
        down = delta_quotient(p_sl3v, theta, alpha, qp)
        assert delta_lift(p_sl3v, down, alpha, qp).partition == theta.partition


def test_delta_rejects_mismatched_tilde(sl3v, p_sl3v):
    alpha = all_congruences(sl3v)[0]
    total = all_congruences(p_sl3v.algebra)[-1]
    with pytest.raises(TildeMismatch):
        delta_quotient(p_sl3v, total, alpha)
    qp = quotient_power(p_sl3v, alpha)
    with pytest.raises(TildeMismatch):
        delta_lift(p_sl3v, all_congruences(qp.power.algebra)[-1], alpha, qp)


def test_rho_on_a_mode(p_sl3v):
    rho = rho_congruence(p_sl3v)
    assert rho.partition.count == 6
    # {a,b} and {0,a,b} generate the same subalgebra
    assert rho.partition.related(5, 6)
    assert is_fully_invariant(p_sl3v.algebra, rho, enumerate_endomorphisms(p_sl3v.algebra))


def test_rho_needs_a_mode(z2):
    with pytest.raises(NotAMode):
        rho_congruence(build_extended_power(z2))


@pytest.mark.parametrize("name", ["sl3v", "lzrz", "chain3"])
def test_congruences_form_a_lattice(name):
    alg = getattr(fixtures, name)()
    parts = {c.partition for c in all_congruences(alg)}
    for a, b in itertools.product(parts, repeat=2):
        assert a.meet(b) in parts
        assert a.join(b) in parts


def test_congruences_of_a_power_form_a_lattice(p_sl2, p_sl3v):
    for pa in (p_sl2, p_sl3v):
        parts = {c.partition for c in all_congruences(pa.algebra)}
        for a, b in itertools.product(parts, repeat=2):
            assert a.meet(b) in parts
            assert a.join(b) in parts


def test_congruence_classes_of_a_power_are_convex(p_sl3v):
    n = p_sl3v.base.size
    for theta in all_congruences(p_sl3v.algebra):
        for r, q in itertools.product(subsets.nonempty(n), repeat=2):
            top = r | q
            if not theta.partition.related(r - 1, top - 1):
                continue
            for extra in subsets.submasks(q):
                assert theta.partition.related(r - 1, (r | extra) - 1)
        assert convexity_violation(p_sl3v, theta.partition) is None


def test_convexity_violation_names_the_gap(p_sl3v):
    # {0} glued to {0,a,b} only
    part = Partition.from_labels([0, 1, 2, 3, 4, 5, 0])
    witness = convexity_violation(p_sl3v, part)
    assert witness is not None and witness.startswith("R=")


@pytest.mark.parametrize("name", ["sl2", "sl3v", "chain3"])
def test_lifted_congruence_closes_to_blocks(name):
    alg = getattr(fixtures, name)()
    pa = build_extended_power(alg)
    for alpha in all_congruences(alg):
        closure = closure_from_congruence(pa, lift_equiv(pa, alpha.partition))
        classes = alpha.partition.classes()
        for code in subsets.nonempty(alg.size):
            expected = subsets.from_elements(
                x for block in classes if any(code >> y & 1 for y in block) for x in block
            )
            assert closure(code) == expected
        assert closure(0) == 0
