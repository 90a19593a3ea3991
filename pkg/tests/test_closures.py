import pytest

from powclo import subsets
from powclo.algebra import holds_identity, idempotent_identity
from powclo.closures import (
    ClosureOperator,
    ClosureOrder,
    check_conditions,
    closed_set_algebra,
    closure_from_congruence,
    closure_kernel,
    compare_closures,
    compatibility_check,
    congruence_from_closure,
    join_closures,
    meet_closures,
    separation_check,
)
from powclo.congruences import all_congruences, is_congruence, lift_equiv
from powclo.errors import ClosureAxiomError, Condition241Failed
from powclo.generators import SinkSpec, sink_closure_operator


def test_axioms_are_checked():
    with pytest.raises(ClosureAxiomError, match="extensive"):
        ClosureOperator(1, (0, 0))
    with pytest.raises(ClosureAxiomError, match="monotone"):
        ClosureOperator(2, (1, 1, 2, 3))
    assert ClosureOperator.identity(2).closed_sets() == [0, 1, 2, 3]
    assert ClosureOperator.constant_top(2).table == (0, 3, 3, 3)
    assert not ClosureOperator.constant_top(2, keep_empty=False).empty_preserving


def test_from_closed_sets_intersects():
    c = ClosureOperator.from_closed_sets(3, [0b011, 0b110])
    assert c(0b010) == 0b010
    assert c(0b001) == 0b011
    assert c(0b101) == 0b111


def test_extreme_congruences_give_extreme_operators(p_sl3v):
    cons = all_congruences(p_sl3v.algebra)
    bottom = closure_from_congruence(p_sl3v, cons[0])
    top = closure_from_congruence(p_sl3v, cons[-1])
    assert bottom.table == ClosureOperator.identity(3).table
    assert top.table == ClosureOperator.constant_top(3).table


def test_round_trip_on_sl2(p_sl2):
    cons = all_congruences(p_sl2.algebra)
    for theta in cons:
        c = closure_from_congruence(p_sl2, theta)
        assert c.empty_preserving
        assert congruence_from_closure(p_sl2, c).partition == theta.partition
        assert closure_from_congruence(p_sl2, congruence_from_closure(p_sl2, c)).table == c.table


def test_containment_criterion(p_sl3v):
    for theta in all_congruences(p_sl3v.algebra):
        c = closure_from_congruence(p_sl3v, theta)
        for q in subsets.nonempty(3):
            for r in subsets.nonempty(3):
                inside = subsets.is_subset(q, c(r))
                assert inside == theta.partition.related((q | r) - 1, r - 1)


def test_kernel_of_an_incompatible_operator_lives_on_the_union_reduct(p_sl3v):
    c = ClosureOperator.from_closed_sets(3, [0, 0b001])
    assert compatibility_check(p_sl3v, c).status == "fail"
    kernel = congruence_from_closure(p_sl3v, c)
    assert kernel.algebra.signature.symbols == ("+",)


def test_conditions_for_the_identity_operator(p_sl3v):
    report = check_conditions(p_sl3v, ClosureOperator.identity(3))
    assert report.in_clo_fi
    assert report.passed("separation")
    assert report.check("term_stability").status == "skipped"
    assert report.passed("lift_stability")


def test_conditions_for_a_congruence_that_is_not_fully_invariant(sl3v, p_sl3v):
    alpha = all_congruences(sl3v)[1]
    c = closure_from_congruence(p_sl3v, lift_equiv(p_sl3v, alpha.partition))
    report = check_conditions(p_sl3v, c)
    assert report.in_clo
    assert report.check("substitution").status == "fail"
    assert report.check("substitution").witness
    assert separation_check(p_sl3v, c).status == "fail"


def test_order_join_and_meet(p_sl3v):
    ident = ClosureOperator.identity(3)
    top = ClosureOperator.constant_top(3)
    assert compare_closures(p_sl3v, ident, top) is ClosureOrder.ABOVE
    assert compare_closures(p_sl3v, top, ident) is ClosureOrder.BELOW
    assert compare_closures(p_sl3v, top, top) is ClosureOrder.EQUAL
    assert join_closures(p_sl3v, [ident, top]).table == ident.table
    assert meet_closures([ident, top]).table == top.table


def test_join_keeps_a_congruence_kernel(p_sl3v):
    ops = [closure_from_congruence(p_sl3v, t) for t in all_congruences(p_sl3v.algebra)]
    for a in ops:
        for b in ops:
            joined = join_closures(p_sl3v, [a, b])
            assert is_congruence(p_sl3v.algebra, closure_kernel(joined))


def test_closed_set_algebra_of_a_congruence_operator(sl3v, p_sl3v):
    for theta in all_congruences(p_sl3v.algebra):
        alg = closed_set_algebra(sl3v, closure_from_congruence(p_sl3v, theta))
        assert alg.size == len({closure_from_congruence(p_sl3v, theta)(x) for x in subsets.nonempty(3)})
    whole = closed_set_algebra(sl3v, ClosureOperator.identity(3))
    assert whole.size == 7


def test_closed_set_algebra_rejects_an_incompatible_operator(z2):
    c = ClosureOperator.from_closed_sets(2, [0, 0b01])
    with pytest.raises(Condition241Failed):
        closed_set_algebra(z2, c)


def test_closed_set_algebra_of_subalgebra_generation_is_idempotent(sl3v):
    alg = closed_set_algebra(sl3v, sink_closure_operator(sl3v, SinkSpec(frozenset())))
    assert holds_identity(alg, idempotent_identity("m"))
