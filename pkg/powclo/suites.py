# -*- coding: utf-8 -*-
"""Named verification suites.

Each suite re-checks one correspondence or worked example exhaustively on
small fixtures and returns a :class:`SuiteReport`. A claim passes with the
bounds it was checked under, fails with a witness, or is skipped with the
cap that stopped it.
"""
from __future__ import annotations

import functools
import itertools
import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import config, fixtures, subsets
from .algebra import (
    JOIN,
    FiniteAlgebra,
    Partition,
    Signature,
    enumerate_endomorphisms,
    generate_subalgebra,
    holds_identity,
    idempotent_identity,
    is_linear_identity,
    is_mode,
    quotient_algebra,
    semilattice_ordered_violation,
)
from .closures import (
    PARTIAL,
    ClosureOperator,
    check_conditions,
    closed_set_algebra,
    closure_from_congruence,
    closure_kernel,
    compatibility_check,
    congruence_from_closure,
    empty_preserving_check,
    join_closures,
    lift_stability_check,
    separation_check,
    substitution_check,
)
from .congruences import (
    Congruence,
    all_congruences,
    all_congruences_by_partitions,
    congruence_violation,
    convexity_violation,
    delta_lift,
    delta_quotient,
    is_fully_invariant,
    quotient_power,
    rho_congruence,
    tilde,
    tilde_partition,
)
from .errors import CapExceeded, Condition241Failed, PowcloError, UnknownSuite
from .generators import (
    NSemigroupSpec,
    SinkSpec,
    closure_algebra_violations,
    is_n_semigroup,
    meet_sink_operators,
    n_closed_chain,
    n_closure_operator,
    r_closure,
    r_closure_operator,
    sink_closure_operator,
)
from .identity_parser import parse_identity
from .power import (
    PowerAlgebra,
    build_extended_power,
    build_relational_power,
    complex_image,
    graph_structure,
    lift_is_endomorphism,
    sample_endomorphisms,
)
from .reports import ClaimRecord, SuiteReport
from .varieties import (
    IdentityCatalogue,
    free_semilattice,
    free_semilattice_operator,
    power_preserves,
    separating_family,
)

__all__ = ("SuiteConfig", "SUITES", "SUITE_ALIASES", "suite_names", "resolve_suite", "run_suite")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteConfig:
    base: Optional[FiniteAlgebra] = None
    k: int = 3
    seed: int = 0
    depth_bound: int = 2
    identity: Optional[str] = None


SuiteFn = Callable[[SuiteConfig], SuiteReport]
SUITES: Dict[str, SuiteFn] = {}
SUITE_ALIASES: Dict[str, str] = {}


def _suite(name: str, alias: str) -> Callable[[SuiteFn], SuiteFn]:
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        SUITE_ALIASES[alias] = name
        return fn

    return register


def suite_names() -> List[str]:
    return sorted(SUITES)


def resolve_suite(name: str) -> str:
    name = SUITE_ALIASES.get(name, name)
    if name not in SUITES:
        known = ", ".join(suite_names())
        raise UnknownSuite(f"unknown suite {name!r}; known suites: {known}")
    return name


def run_suite(name: str, settings: Optional[SuiteConfig] = None) -> SuiteReport:
    name = resolve_suite(name)
    report = SUITES[name](settings or SuiteConfig())
    logger.info(
        "suite %s: %d pass, %d fail, %d skipped",
        name, report.count("pass"), report.count("fail"), report.count("skipped"),
    )
    return report


# ---------------------------------------------------------------------------
# Claim bookkeeping
# ---------------------------------------------------------------------------

def _text(witness: Any) -> Optional[str]:
    if witness is None or isinstance(witness, str):
        return witness
    return json.dumps(witness, ensure_ascii=False, default=str)


class _Claims:
    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.records: List[ClaimRecord] = []
        self.notes: List[str] = []

    def record(
        self,
        claim: str,
        anchor: str,
        ok: bool,
        bounds: Dict[str, Any],
        *,
        witness: Any = None,
        detail: Optional[str] = None,
    ) -> None:
        status = "pass" if ok else "fail"
        if not ok and witness is None:
            witness = detail or claim
        self.records.append(
            ClaimRecord(claim=claim, anchor=anchor, status=status, witness=_text(witness), detail=detail, bounds=bounds)
        )
        logger.debug("[%s] %s: %s", self.suite, claim, status)

    @contextmanager
    def guard(self, claim: str, anchor: str) -> Iterator[None]:
        """Caps turn into a skipped claim; violated properties into a failed one."""
        try:
            yield
        except CapExceeded as exc:
            logger.warning("[%s] %s skipped: %s", self.suite, claim, exc)
            self.records.append(
                ClaimRecord(
                    claim=claim, anchor=anchor, status="skipped", detail=str(exc),
                    bounds={"cap": exc.cap, "what": exc.what, "size": exc.size},
                )
            )
        except PowcloError as exc:
            if exc.exit_code != 1:
                raise
            self.records.append(
                ClaimRecord(
                    claim=claim, anchor=anchor, status="fail", detail=str(exc),
                    witness=_text(exc.witness) or str(exc), bounds={},
                )
            )

    def report(self) -> SuiteReport:
        return SuiteReport(suite=self.suite, claims=self.records, notes=self.notes)


def _base(settings: SuiteConfig, default: Callable[[], FiniteAlgebra]) -> FiniteAlgebra:
    return settings.base if settings.base is not None else default()


def _power_congruences(base: FiniteAlgebra) -> Tuple[PowerAlgebra, List[Congruence]]:
    cap = config.CAPS.congruence_power_base
    if base.size > cap:
        raise CapExceeded(f"congruences of P({base.name})", base.size, cap)
    pa = build_extended_power(base)
    return pa, all_congruences(pa.algebra, cap=pa.size)


def _all_pass(pa: PowerAlgebra, c: ClosureOperator) -> Tuple[bool, Optional[str]]:
    """In Clo: empty preserving and compatible with every complex operation."""
    for check in (empty_preserving_check(pa, c), compatibility_check(pa, c)):
        if check.status != "pass":
            return False, f"{check.name}: {check.witness or check.reason}"
    return True, None


# ---------------------------------------------------------------------------
# Congruences and closure operators
# ---------------------------------------------------------------------------

@_suite("roundtrip", "thm3_6")
def _roundtrip(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl2)
    claims = _Claims("roundtrip")
    anchor = "congruence -> closure operator -> congruence is the identity, and back"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        oracle = all_congruences_by_partitions(pa.algebra)
        same = [c.partition for c in cons] == [c.partition for c in oracle]
        claims.record(
            "join-closure enumeration agrees with the partition scan", "independent enumeration", same,
            {"power_size": pa.size, "partitions_scanned": "all"},
            witness=None if same else f"{len(cons)} by join-closure, {len(oracle)} by scan",
            detail=f"{len(cons)} congruences",
        )
        passed = 0
        for i, theta in enumerate(cons):
            c = closure_from_congruence(pa, theta)
            back = congruence_from_closure(pa, c)
            again = closure_from_congruence(pa, back)
            ok = back.partition == theta.partition and again.table == c.table
            passed += int(ok)
            claims.record(
                f"round trip #{i}", anchor, ok, {"subsets": 1 << base.size},
                witness=None if ok else f"kernel of C is {back.render()}", detail=theta.render(),
            )
        claims.record(
            "round trips", anchor, passed == len(cons), {"congruences": len(cons)},
            detail=f"{passed}/{len(cons)} round-trips",
        )
    return claims.report()


@_suite("closure_laws", "lem3_2")
def _closure_laws(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("closure_laws")
    anchor = "the operator of a congruence is an empty-preserving compatible closure operator with a congruence kernel"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        for i, theta in enumerate(cons):
            with claims.guard(f"C for congruence #{i}", anchor):
                c = closure_from_congruence(pa, theta)
                ok, witness = _all_pass(pa, c)
                kernel_witness = congruence_violation(pa.algebra, closure_kernel(c))
                if ok and kernel_witness is not None:
                    ok, witness = False, kernel_witness
                claims.record(
                    f"C for congruence #{i}", anchor, ok,
                    {"subsets": 1 << base.size, "operations": list(base.signature.symbols)},
                    witness=witness, detail=theta.render(),
                )
    return claims.report()


@_suite("containment", "lem3_5")
def _containment(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("containment")
    anchor = "Q inside C(R) iff Q + R is related to R"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        codes = np.arange(1, 1 << base.size, dtype=np.int64)
        q, r = codes[:, None], codes[None, :]
        for i, theta in enumerate(cons):
            c = closure_from_congruence(pa, theta)
            block = theta.partition.as_array()
            inside = (q & ~c.as_array()[r]) == 0
            related = block[(q | r) - 1] == block[r - 1]
            bad = np.argwhere(inside != related)
            witness = None
            if bad.size:
                a, b = (int(v) for v in bad[0])
                witness = f"Q={pa.label(a)}, R={pa.label(b)}"
            claims.record(
                f"congruence #{i}", anchor, witness is None, {"pairs": int(codes.size) ** 2},
                witness=witness, detail=theta.render(),
            )
            convex = convexity_violation(pa, theta.partition)
            claims.record(
                f"classes of congruence #{i} are convex", "R ~ R + Q and R <= S <= R + Q give R ~ S",
                convex is None, {"pairs": int(codes.size) ** 2}, witness=convex, detail=theta.render(),
            )
    return claims.report()


@_suite("full_invariance", "thm3_12")
def _full_invariance(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("full_invariance")
    anchor = "fully invariant congruences match operators closed under substitution"
    with claims.guard(f"endomorphisms of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        endos = enumerate_endomorphisms(pa.algebra)
        base_endos = enumerate_endomorphisms(pa.base)
        bounds = {"endomorphisms": len(endos), "coverage": "full"}
        claims.record(
            "lifted base endomorphisms are power endomorphisms", "f+ is an endomorphism",
            all(lift_is_endomorphism(pa, f) for f in base_endos), {"base_endomorphisms": len(base_endos)},
        )
        separating_congruences = 0
        separating_operators = 0
        for i, theta in enumerate(cons):
            c = closure_from_congruence(pa, theta)
            invariant = is_fully_invariant(pa.algebra, theta, endos)
            sub = substitution_check(pa, c, endos, "full")
            ok = invariant == (sub.status == "pass")
            witness = None
            if not ok:
                witness = sub.witness if invariant else "substitution holds for a congruence that is not fully invariant"
            claims.record(
                f"congruence #{i}", anchor, ok, bounds, witness=witness,
                detail=f"{theta.render()} fully invariant: {invariant}",
            )
            if invariant:
                lift = lift_stability_check(pa, c, base_endos)
                claims.record(
                    f"congruence #{i} is stable under lifted base endomorphisms", "f+(C(T)) inside C(f+(T))",
                    lift.status == "pass", lift.bounds, witness=lift.witness,
                )
                if tilde_partition(pa, theta.partition).is_discrete():
                    separating_congruences += 1
                if separation_check(pa, c).status == "pass":
                    separating_operators += 1
        claims.record(
            "separating fully invariant congruences and operators correspond",
            "one-to-one on singleton-separating members", separating_congruences == separating_operators,
            {"congruences": len(cons)}, detail=f"{separating_congruences} congruences, {separating_operators} operators",
        )
    return claims.report()


@_suite("tilde_meets", "lem3_13")
def _tilde_meets(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("tilde_meets")
    anchor = "restriction to singletons commutes with meets"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        restricted = all(tilde(pa, theta).partition.size == base.size for theta in cons)
        claims.record(
            "restrictions of power congruences are base congruences", "restriction of a congruence",
            restricted, {"congruences": len(cons)},
        )
        rng = np.random.default_rng(settings.seed)
        sampled = [Partition.from_labels(rng.integers(0, pa.size, size=pa.size).tolist()) for _ in range(64)]
        families = [
            ("pairs of congruences", list(itertools.combinations([c.partition for c in cons], 2))),
            ("triples of congruences", list(itertools.combinations([c.partition for c in cons], 3))),
            ("pairs of sampled equivalences", list(itertools.combinations(sampled, 2))),
        ]
        for label, combos in families:
            witness = None
            for combo in combos:
                lhs = tilde_partition(pa, functools.reduce(Partition.meet, combo))
                rhs = functools.reduce(Partition.meet, [tilde_partition(pa, p) for p in combo])
                if lhs != rhs:
                    witness = [p.render(pa.algebra.labels) for p in combo]
                    break
            claims.record(
                label, anchor, witness is None, {"combinations": len(combos), "seed": settings.seed},
                witness=witness,
            )
    return claims.report()


def _quotient_data(pa: PowerAlgebra, cons: Sequence[Congruence]):
    for alpha in all_congruences(pa.base):
        qp = quotient_power(pa, alpha)
        over = [t for t in cons if tilde_partition(pa, t.partition) == alpha.partition]
        psis = [
            p for p in all_congruences(qp.power.algebra)
            if tilde_partition(qp.power, p.partition).is_discrete()
        ]
        yield alpha, qp, over, psis


@_suite("delta_roundtrip", "thm3_14")
def _delta_roundtrip(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("delta_roundtrip")
    with claims.guard(f"congruences of P({base.name})", "transport along a base congruence"):
        pa, cons = _power_congruences(base)
        for alpha, qp, over, psis in _quotient_data(pa, cons):
            witness = None
            for theta in over:
                back = delta_lift(pa, delta_quotient(pa, theta, alpha, qp), alpha, qp)
                if back.partition != theta.partition:
                    witness = theta.render()
                    break
            claims.record(
                f"alpha={alpha.render()}: lifting the transported congruence returns it",
                "Theta = Delta(delta(Theta))", witness is None, {"congruences": len(over)}, witness=witness,
            )
            witness = None
            for psi in psis:
                again = delta_quotient(pa, delta_lift(pa, psi, alpha, qp), alpha, qp)
                if again.partition != psi.partition:
                    witness = psi.render()
                    break
            claims.record(
                f"alpha={alpha.render()}: transporting the lifted congruence returns it",
                "psi = delta(Delta(psi))", witness is None, {"congruences": len(psis)}, witness=witness,
            )
    return claims.report()


@_suite("delta_counts", "cor3_17")
def _delta_counts(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("delta_counts")
    anchor = "congruences over alpha, separating quotient congruences and separating quotient operators correspond"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        for alpha, qp, over, psis in _quotient_data(pa, cons):
            operators = set()
            for psi in psis:
                c = closure_from_congruence(qp.power, psi)
                ok, _ = _all_pass(qp.power, c)
                if ok and separation_check(qp.power, c).status == "pass":
                    operators.add(c.table)
            counts = (len(over), len(psis), len(operators))
            claims.record(
                f"alpha={alpha.render()}", anchor, len(set(counts)) == 1,
                {"quotient_power_size": qp.power.size}, detail="{} / {} / {}".format(*counts),
            )
    return claims.report()


@_suite("separation", "lem3_15")
def _separation(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("separation")
    anchor = "singletons stay apart iff their closures differ"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        for i, theta in enumerate(cons):
            c = closure_from_congruence(pa, theta)
            discrete = tilde_partition(pa, theta.partition).is_discrete()
            separates = separation_check(pa, c).status == "pass"
            kernel_discrete = tilde_partition(pa, closure_kernel(c)).is_discrete()
            ok = discrete == separates == kernel_discrete
            claims.record(
                f"congruence #{i}", anchor, ok, {"pairs": base.size * (base.size - 1) // 2},
                detail=f"{theta.render()} separating: {discrete}",
            )
        rng = np.random.default_rng(settings.seed)
        witness = None
        trials = 64
        for _ in range(trials):
            family = [int(code) for code in rng.integers(0, 1 << base.size, size=3)]
            c = ClosureOperator.from_closed_sets(base.size, family)
            separates = separation_check(pa, c).status == "pass"
            if separates != tilde_partition(pa, closure_kernel(c)).is_discrete():
                witness = [base.format_subset(code) for code in family]
                break
        claims.record(
            "sampled closure operators", anchor, witness is None, {"operators": trials, "seed": settings.seed},
            witness=witness,
        )
    return claims.report()


@_suite("quotient_roundtrip", "thm5_8")
def _quotient_roundtrip(settings: SuiteConfig) -> SuiteReport:
    base = _base(settings, fixtures.sl3v)
    claims = _Claims("quotient_roundtrip")
    anchor = "closure operator -> kernel -> lift -> transport -> closure operator is the identity"
    with claims.guard(f"congruences of P({base.name})", anchor):
        pa, cons = _power_congruences(base)
        for alpha, qp, _, psis in _quotient_data(pa, cons):
            witness = None
            for psi in psis:
                c = closure_from_congruence(qp.power, psi)
                kernel = congruence_from_closure(qp.power, c)
                again = delta_quotient(pa, delta_lift(pa, kernel, alpha, qp), alpha, qp)
                if closure_from_congruence(qp.power, again).table != c.table:
                    witness = c.name
                    break
            claims.record(
                f"alpha={alpha.render()}", anchor, witness is None, {"operators": len(psis)}, witness=witness,
            )
    return claims.report()


@_suite("generation", "ex3_8")
def _generation(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("generation")
    anchor = "equal generated subalgebras is a fully invariant congruence on a mode's power algebra"
    bases = [settings.base] if settings.base is not None else list(fixtures.mode_fixtures().values())
    for base in bases:
        with claims.guard(f"{base.name}: equal generation", anchor):
            pa = build_extended_power(base)
            rho = rho_congruence(pa)
            try:
                endos = enumerate_endomorphisms(pa.algebra)
                coverage = "full"
            except CapExceeded:
                endos = sample_endomorphisms(pa, seed=settings.seed)
                coverage = PARTIAL
                claims.notes.append(f"{base.name}: endomorphisms sampled, {PARTIAL}")
            bounds = {"endomorphisms": len(endos), "coverage": coverage}
            claims.record(
                f"{base.name}: fully invariant", anchor, is_fully_invariant(pa.algebra, rho, endos), bounds,
                detail=rho.render(),
            )
            c = closure_from_congruence(pa, rho)
            codes = list(subsets.nonempty(base.size))
            wrong = next((code for code in codes if c(code) != generate_subalgebra(base, code)), None)
            claims.record(
                f"{base.name}: its operator is subalgebra generation", "C(T) = <T>", wrong is None,
                {"subsets": len(codes)}, witness=None if wrong is None else base.format_subset(wrong),
            )
            same = c.table == sink_closure_operator(base, SinkSpec(frozenset())).table
            claims.record(
                f"{base.name}: its operator is the empty sink operator", "an empty-sink is a subalgebra", same,
                {"subsets": 1 << base.size},
            )
            report = check_conditions(pa, c, endos=endos, endo_coverage=coverage)
            claims.record(
                f"{base.name}: compatible and closed under substitution", anchor, report.in_clo_fi, bounds,
                witness=None if report.in_clo_fi else report.render_text(),
            )
    return claims.report()


# ---------------------------------------------------------------------------
# Free semilattices and varieties
# ---------------------------------------------------------------------------

_VARIETY_NAMES = (
    ("stammered", "stammered semilattices"),
    ("absorption m over +", "distributive lattices"),
    ("distributive bisemilattice", "distributive bisemilattices"),
)


def _variety_of(identities: Sequence[str]) -> str:
    for name, variety in _VARIETY_NAMES:
        if name in identities:
            return variety
    return "semilattice ordered semilattices"


@_suite("free_semilattice_operators", "ex5_10")
def _free_semilattice_operators(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("free_semilattice_operators")
    anchor = "four fully invariant separating operators on a free semilattice"
    k = settings.k
    with claims.guard(f"free semilattice on {k} generators", anchor):
        fp = free_semilattice(k)
        base = fp.algebra
        pa = build_extended_power(base, cap=base.size)
        ops = [free_semilattice_operator(k, i) for i in (1, 2, 3, 4)]

        for a, b in itertools.combinations(ops, 2):
            diff = next((code for code in range(1 << base.size) if a(code) != b(code)), None)
            claims.record(
                f"{a.name} differs from {b.name}", anchor, diff is not None, {"subsets": 1 << base.size},
                detail=None if diff is None else f"T={base.format_subset(diff)}",
            )
        if k >= 3:
            t = separating_family(k)
            c1, c2 = (base.format_subset(c(t)) for c in ops[:2])
            claims.record(
                "C1 and C2 separate the first generator from the rest", anchor, ops[0](t) != ops[1](t),
                {"families": 1}, detail=f"T={base.format_subset(t)}: C1(T)={c1}, C2(T)={c2}",
            )

        base_endos = enumerate_endomorphisms(base)
        try:
            endos = enumerate_endomorphisms(pa.algebra)
            coverage = "full"
        except CapExceeded:
            endos = sample_endomorphisms(pa, fp, seed=settings.seed)
            coverage = PARTIAL
        for c in ops:
            report = check_conditions(
                pa, c, fp, settings.depth_bound,
                endos=endos, endo_coverage=coverage, base_endos=base_endos, seed=settings.seed,
            )
            for check in report.checks:
                if check.status == "skipped":
                    claims.records.append(
                        ClaimRecord(
                            claim=f"{c.name}: {check.name}", anchor=anchor, status="skipped",
                            detail=check.reason, bounds={"cap": check.reason},
                        )
                    )
                    continue
                claims.record(
                    f"{c.name}: {check.name}", anchor, check.status == "pass", check.bounds, witness=check.witness,
                )

        catalogue: Optional[IdentityCatalogue] = None
        found: List[Tuple[str, ...]] = []
        for c in ops:
            quotient = quotient_algebra(pa.algebra, closure_kernel(c), name=f"{pa.algebra.name}/{c.name}")
            if catalogue is None:
                catalogue = IdentityCatalogue.for_signature(quotient.signature)
            violation = semilattice_ordered_violation(quotient)
            product_laws = [f"{law} of m" for law in ("associativity", "commutativity", "idempotency")]
            identities = catalogue.holding_in(quotient)
            missing = [law for law in product_laws if law not in identities]
            claims.record(
                f"{c.name}: quotient is a semilattice ordered semilattice", "the operation reduct lies in the variety",
                violation is None and not missing, {"quotient_size": quotient.size},
                witness=violation or missing or None,
            )
            found.append(identities)
            claims.notes.append(f"{c.name}: {quotient.size} classes, {_variety_of(identities)}")
        distinct = len(set(found)) == len(found)
        claims.record(
            "quotients satisfy pairwise distinct catalogue identities", "four distinct subvarieties",
            distinct, {"identities": len(catalogue.entries) if catalogue else 0},
            detail="; ".join(f"{c.name}: {', '.join(ids)}" for c, ids in zip(ops, found)),
        )

        witness = None
        for a, b in itertools.combinations(ops, 2):
            joined = join_closures(pa, [a, b])
            ok, problem = _all_pass(pa, joined)
            if not ok or separation_check(pa, joined).status != "pass":
                witness = f"{joined.name}: {problem or 'separation'}"
                break
        claims.record(
            "pairwise joins stay compatible and separating", "joins of fully invariant operators", witness is None,
            {"pairs": 6}, witness=witness,
        )
        claims.notes.append("that there are exactly four such operators is cited, not machine-checked")
    return claims.report()


@_suite("linearity", "cor4_5")
def _linearity(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("linearity")
    anchor = "linear identities survive the power construction"
    if settings.identity is not None:
        bases = [_base(settings, fixtures.sl3v)]
    elif settings.base is not None:
        bases = [settings.base]
    else:
        bases = list(fixtures.base_fixtures().values())
    for base in bases:
        if settings.identity is not None:
            idents = [(settings.identity, parse_identity(settings.identity, base.signature))]
        else:
            idents = [(name, ident) for name, _, ident in IdentityCatalogue.for_signature(base.signature).entries]
        for name, ident in idents:
            with claims.guard(f"{base.name}: {name}", anchor):
                result = power_preserves(base, ident)
                linear = is_linear_identity(ident)
                witness = None
                if result.witness is not None:
                    witness = ", ".join(f"{v}={label}" for v, label in result.witness.items())
                if not result.holds_in_base:
                    ok, detail = True, "fails in the base"
                elif result.holds_in_power:
                    ok, detail = True, "preserved"
                elif linear:
                    ok, detail = False, "linear identity lost in the power algebra"
                else:
                    ok, detail = True, "not preserved, as expected for a non-linear identity"
                claims.record(
                    f"{base.name}: {name}", anchor, ok,
                    {"power_size": (1 << base.size) - 1, "linear": linear}, witness=witness, detail=detail,
                )
    return claims.report()


def _semilattice_tables(n: int) -> List[np.ndarray]:
    pairs = list(itertools.combinations(range(n), 2))
    elements = np.arange(n)
    found = []
    for values in itertools.product(range(n), repeat=len(pairs)):
        table = np.diag(elements).astype(np.int64)
        np.fill_diagonal(table, elements)
        for (a, b), v in zip(pairs, values):
            table[a, b] = table[b, a] = v
        # (ab)c = a(bc)
        if np.array_equal(table[table[:, :, None], np.arange(n)[None, None, :]], table[np.arange(n)[:, None, None], table[None, :, :]]):
            found.append(table)
    return found


def _semilattice_ordered_semilattices(max_size: int) -> List[FiniteAlgebra]:
    sig = Signature((("m", 2), (JOIN, 2)), extended=True)
    found = []
    for n in range(1, max_size + 1):
        tables = _semilattice_tables(n)
        for i, m in enumerate(tables):
            for j, join in enumerate(tables):
                alg = FiniteAlgebra(f"S{n}.{i}.{j}", n, sig, {"m": m, JOIN: join})
                if semilattice_ordered_violation(alg) is None:
                    found.append(alg)
    return found


def _homomorphisms(src: FiniteAlgebra, dst: FiniteAlgebra) -> np.ndarray:
    """Every map src -> dst commuting with the binary operations, one per row."""
    maps = np.indices((dst.size,) * src.size).reshape(src.size, -1).T
    keep = np.ones(len(maps), dtype=bool)
    for symbol in src.signature.symbols:
        table = src.tables[symbol]
        lhs = maps[:, table]
        rhs = dst.tables[symbol][maps[:, :, None], maps[:, None, :]]
        keep &= (lhs == rhs).all(axis=(1, 2))
    return maps[keep]


@_suite("freeness", "free4_1")
def _freeness(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("freeness")
    anchor = "each generator assignment extends to exactly one homomorphism"
    with claims.guard("free semilattice on 2 generators", anchor):
        fp = free_semilattice(2)
        pa = build_extended_power(fp.algebra)
        gens = [pa.singleton(g) for g in fp.generators]
        targets = _semilattice_ordered_semilattices(3)
        claims.notes.append(f"{len(targets)} semilattice ordered semilattices on at most 3 elements")
        for target in targets:
            homs = _homomorphisms(pa.algebra, target)
            counts: Dict[Tuple[int, ...], int] = {}
            for h in homs:
                key = tuple(int(h[g]) for g in gens)
                counts[key] = counts.get(key, 0) + 1
            assignments = list(itertools.product(range(target.size), repeat=len(gens)))
            bad = next((a for a in assignments if counts.get(a, 0) != 1), None)
            claims.record(
                target.name, anchor, bad is None,
                {"assignments": len(assignments), "maps": target.size ** pa.size},
                witness=None if bad is None else f"generators -> {list(bad)}: {counts.get(bad, 0)} extensions",
                detail=f"m={target.flat_table('m')}, +={target.flat_table(JOIN)}",
            )
    return claims.report()


# ---------------------------------------------------------------------------
# Sinks, r-closed subsets and closed n-semigroups
# ---------------------------------------------------------------------------

@_suite("sink_meets", "thm6_7")
def _sink_meets(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("sink_meets")
    anchor = "the meet of two sink operators is the sink operator of the union"
    bases = [settings.base] if settings.base is not None else [fixtures.chain3(), fixtures.lzrz()]
    for base in bases:
        with claims.guard(f"{base.name}: sink operators", anchor):
            pa = build_extended_power(base)
            omega = [symbol for symbol, arity in base.signature.ops if arity > 0]
            gammas = [frozenset(g) for r in range(len(omega) + 1) for g in itertools.combinations(omega, r)]
            for g1, g2 in itertools.combinations_with_replacement(gammas, 2):
                record = meet_sink_operators(base, SinkSpec(g1), SinkSpec(g2), pa)
                label = f"{base.name}: {SinkSpec(g1).label} and {SinkSpec(g2).label}"
                bounds = {"subsets": 1 << base.size, "operators": len(gammas)}
                claims.record(label, anchor, record.meet_is_union_operator, bounds, witness=record.witness)
                claims.record(
                    f"{label}: order bounds", "empty sink greatest, full sink least, join below intersection",
                    record.empty_sink_greatest and record.full_sink_least and record.join_below_intersection,
                    bounds, detail=f"join equals intersection operator: {record.join_equals_intersection}",
                )
            witness = None
            for gamma in gammas:
                c = sink_closure_operator(base, SinkSpec(gamma))
                for symbol, arity in base.signature.ops:
                    for codes in itertools.product(subsets.nonempty(base.size), repeat=arity):
                        lhs = c(complex_image(base, symbol, codes))
                        rhs = complex_image(base, symbol, [c(x) for x in codes])
                        if lhs != rhs and witness is None:
                            witness = f"{SinkSpec(gamma).label}: {symbol}{tuple(base.format_subset(x) for x in codes)}"
            claims.record(
                f"{base.name}: sink closure commutes with complex operations", "<w(X..)> = w(<X>..) on modes",
                witness is None, {"gammas": len(gammas)}, witness=witness,
            )
    return claims.report()


def _rescan_r_closure(alg: FiniteAlgebra, r: int, seed: int) -> int:
    """Re-scan every implication until nothing changes."""
    table = alg.table(alg.signature.symbols[0])
    ones: List[Optional[int]] = list(range(alg.size)) + [None]

    def mul(p: Optional[int], q: Optional[int]) -> Optional[int]:
        if p is None:
            return q
        if q is None:
            return p
        return int(table[p, q])

    current = seed
    changed = True
    while changed:
        changed = False
        for p, q in itertools.product(ones, repeat=2):
            for us in itertools.product(range(alg.size), repeat=r):
                if all(current >> mul(mul(p, u), q) & 1 for u in us):
                    v = mul(mul(p, functools.reduce(mul, us)), q)
                    if not current >> v & 1:
                        current |= 1 << v
                        changed = True
    return current


@_suite("closed_subsets", "closed6")
def _closed_subsets(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("closed_subsets")
    for base in (fixtures.lz2(), fixtures.sl2()):
        for r in (1, 2, 3):
            anchor = "r-closed subsets"
            with claims.guard(f"{base.name}: r={r}", anchor):
                seeds = range(1 << base.size)
                wrong = next((s for s in seeds if r_closure(base, r, s) != _rescan_r_closure(base, r, s)), None)
                claims.record(
                    f"{base.name}: r={r} agrees with the re-scan", anchor, wrong is None, {"seeds": len(seeds)},
                    witness=None if wrong is None else base.format_subset(wrong),
                )
                # a ClosureAxiomError here is recorded as a failed claim
                c = r_closure_operator(base, r)
                closed = c.closed_sets()
                meet = next(((a, b) for a in closed for b in closed if a & b not in closed), None)
                claims.record(
                    f"{base.name}: r={r}-closed subsets are closed under intersection", anchor, meet is None,
                    {"closed_sets": len(closed)},
                    witness=None if meet is None else [base.format_subset(x) for x in meet],
                )
                same = c.table == ClosureOperator.from_closed_sets(base.size, closed).table
                claims.record(
                    f"{base.name}: r={r} closure is the least closed superset", anchor, same, {"seeds": len(seeds)},
                )

    spec = NSemigroupSpec("f", 3)
    for source in (fixtures.sl2(), fixtures.sl3v(), fixtures.chain3()):
        alg = fixtures.derived_ternary(source)
        anchor = "closed n-semigroups"
        with claims.guard(f"{alg.name}: closed 3-semigroups", anchor):
            claims.record(f"{alg.name}: is a 3-semigroup", "bracketing laws", is_n_semigroup(alg, spec), {"tuples": alg.size ** 5})
            seeds = range(1 << alg.size)
            chains = {s: n_closed_chain(alg, spec, s) for s in seeds}
            ascending = all(
                subsets.is_subset(a, b) for chain in chains.values() for a, b in zip(chain, chain[1:])
            ) and all(subsets.is_subset(s, chains[s][-1]) for s in seeds)
            claims.record(f"{alg.name}: chains ascend", anchor, ascending, {"seeds": len(seeds)})
            c = n_closure_operator(alg, spec)
            monotone = all(
                subsets.is_subset(c(s), c(t)) for s in seeds for t in seeds if subsets.is_subset(s, t)
            )
            claims.record(f"{alg.name}: monotone in the seed", anchor, monotone, {"seeds": len(seeds)})
            witness = None
            for xs in itertools.product(subsets.nonempty(alg.size), repeat=3):
                lhs = complex_image(alg, "f", [c(x) for x in xs])
                if not subsets.is_subset(lhs, c(complex_image(alg, "f", xs))):
                    witness = [alg.format_subset(x) for x in xs]
                    break
            claims.record(
                f"{alg.name}: f([X1],[X2],[X3]) inside [f(X1,X2,X3)]", anchor, witness is None,
                {"triples": ((1 << alg.size) - 1) ** 3}, witness=witness,
            )
            if is_mode(alg):
                wrong = next((s for s in seeds if c(s) != generate_subalgebra(alg, s)), None)
                claims.record(
                    f"{alg.name}: closed subsemigroups are subalgebras", "entropic idempotent case", wrong is None,
                    {"seeds": len(seeds)}, witness=None if wrong is None else alg.format_subset(wrong),
                )
            closed = closed_set_algebra(alg, c)
            claims.record(
                f"{alg.name}: algebra of closed sets is idempotent", anchor,
                holds_identity(closed, idempotent_identity("f", 3)), {"closed_sets": closed.size},
            )
    claims.notes.append(f"MAJ2 is a 3-semigroup: {is_n_semigroup(fixtures.majority3(), spec)}")
    return claims.report()


# ---------------------------------------------------------------------------
# Power constructions
# ---------------------------------------------------------------------------

@_suite("relational_lift", "ex2_3")
def _relational_lift(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("relational_lift")
    anchor = "the power of an operation graph restricts to the complex operation"
    bases = [settings.base] if settings.base is not None else list(fixtures.base_fixtures().values())
    for base in bases:
        with claims.guard(f"{base.name}: relational power", anchor):
            lifted = build_relational_power(graph_structure(base))
            witness = None
            for symbol, arity in base.signature.ops:
                table = lifted.tables[symbol]
                for codes in itertools.product(range(1 << base.size), repeat=arity):
                    if int(table[codes]) != complex_image(base, symbol, codes):
                        witness = f"{symbol}{tuple(base.format_subset(x) for x in codes)}"
                        break
            claims.record(
                f"{base.name}: graph relations give the complex operations", anchor, witness is None,
                {"subsets": 1 << base.size}, witness=witness,
            )
            violation = semilattice_ordered_violation(lifted)
            claims.record(
                f"{base.name}: relational power is semilattice ordered", "distributes over union",
                violation is None, {"size": lifted.size}, witness=violation,
            )
    return claims.report()


@_suite("closed_set_algebras", "ex2_4")
def _closed_set_algebras(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("closed_set_algebras")
    anchor = "closed sets of a compatible operator form a semilattice ordered algebra"
    bases = [settings.base] if settings.base is not None else [fixtures.sl2(), fixtures.sl3v(), fixtures.lz2()]
    for base in bases:
        with claims.guard(f"{base.name}: closed-set algebras", anchor):
            pa, cons = _power_congruences(base)
            for i, theta in enumerate(cons):
                with claims.guard(f"{base.name}: congruence #{i}", anchor):
                    closed = closed_set_algebra(base, closure_from_congruence(pa, theta))
                    claims.record(
                        f"{base.name}: congruence #{i}", anchor, True, {"closed_sets": closed.size},
                        detail=theta.render(),
                    )
    group = fixtures.z2()
    broken = ClosureOperator.from_closed_sets(group.size, [0, subsets.from_elements([0])])
    try:
        closed_set_algebra(group, broken)
        claims.record("Z2: operator closing {1} to everything is rejected", anchor, False, {},
                      witness="accepted an incompatible operator")
    except Condition241Failed as exc:
        claims.record(
            "Z2: operator closing {1} to everything is rejected", anchor, True, {"subsets": 1 << group.size},
            detail=str(exc),
        )
    return claims.report()


@_suite("closure_algebras", "ex2_6")
def _closure_algebras(settings: SuiteConfig) -> SuiteReport:
    claims = _Claims("closure_algebras")
    anchor = "closure algebra axioms"
    cases = [
        (fixtures.sierpinski_closure_algebra(), True),
        (fixtures.constant_top_closure_algebra(), False),
    ]
    identity = fixtures.sierpinski_closure_algebra()
    tables = dict(identity.tables)
    tables["c"] = np.arange(identity.size)
    cases.append((FiniteAlgebra("identity", identity.size, identity.signature, tables, identity.labels), True))
    for alg, expected in cases:
        violations = closure_algebra_violations(alg, 0)
        ok = (not violations) == expected
        claims.record(
            f"{alg.name}: {'passes' if expected else 'fails'}", anchor, ok, {"elements": alg.size},
            witness=None if ok else violations or "all axioms hold",
            detail="; ".join(f"{law} at {where}" for law, where in violations) or "all axioms hold",
        )
    return claims.report()
