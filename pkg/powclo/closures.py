# -*- coding: utf-8 -*-
"""Closure operators as full subset tables, and their translation to and from congruences.

A closure operator on a carrier of ``n`` elements is stored as the tuple of
its values on all ``2**n`` subset codes, the empty set included. On a finite
carrier every closure operator is algebraic, so that condition is recorded in
reports as holding trivially.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import config, subsets
from .algebra import (
    JOIN,
    FiniteAlgebra,
    FreePresentation,
    Partition,
    Var,
    enumerate_endomorphisms,
    enumerate_terms,
    eval_term,
    semilattice_ordered_violation,
)
from .congruences import Congruence, congruence_violation
from .errors import (
    CapExceeded,
    ClosureAxiomError,
    Condition241Failed,
    HasConstants,
    InvariantViolation,
    SizeMismatch,
)
from .power import PowerAlgebra, complex_image, lift_map, sample_endomorphisms
from .reports import ConditionCheck, ConditionReport

__all__ = (
    "ClosureOperator",
    "ClosureOrder",
    "closure_kernel",
    "closure_from_congruence",
    "congruence_from_closure",
    "check_conditions",
    "empty_preserving_check",
    "compatibility_check",
    "substitution_check",
    "separation_check",
    "lift_stability_check",
    "term_stability_check",
    "compare_closures",
    "join_closures",
    "meet_closures",
    "closed_set_algebra",
)

logger = logging.getLogger(__name__)

ALGEBRAIC_NOTE = "algebraic: holds trivially on a finite carrier"
PARTIAL = "partial: necessary condition only"


def _axiom_violation(n: int, table: Sequence[int]) -> Optional[Tuple[str, str]]:
    values = np.asarray(table, dtype=np.int64)
    codes = np.arange(1 << n, dtype=np.int64)
    outside = np.flatnonzero((values < 0) | (values >= 1 << n))
    if outside.size:
        return "well defined", f"T={subsets.format_subset(int(outside[0]))}"
    checks: List[Tuple[str, np.ndarray]] = [
        ("extensive", (codes & ~values) != 0),
        ("idempotent", values[values] != values),
    ]
    for bit in range(n):
        grown = codes | (1 << bit)
        checks.append(("monotone", (values & ~values[grown]) != 0))
    first: Optional[Tuple[int, str]] = None
    for law, bad in checks:
        hits = np.flatnonzero(bad)
        if hits.size and (first is None or hits[0] < first[0]):
            first = (int(hits[0]), law)
    if first is None:
        return None
    code, law = first
    return law, f"T={subsets.format_subset(code)}, C(T)={subsets.format_subset(int(values[code]))}"


@dataclass(frozen=True)
class ClosureOperator:
    size: int
    table: Tuple[int, ...]
    name: str = field(default="C", compare=False)

    def __post_init__(self) -> None:
        table = tuple(int(v) for v in self.table)
        if len(table) != 1 << self.size:
            raise ClosureAxiomError(f"{self.name}: table needs {1 << self.size} entries, got {len(table)}")
        object.__setattr__(self, "table", table)
        violation = _axiom_violation(self.size, table)
        if violation is not None:
            law, witness = violation
            raise ClosureAxiomError(f"{self.name} is not {law}", witness=witness)

    def __call__(self, code: int) -> int:
        return self.table[code]

    @property
    def empty_preserving(self) -> bool:
        return self.table[0] == 0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def closed_sets(self) -> List[int]:
        return [code for code, value in enumerate(self.table) if code == value]

    def renamed(self, name: str) -> "ClosureOperator":
        return ClosureOperator(self.size, self.table, name)

    @classmethod
    def identity(cls, n: int) -> "ClosureOperator":
        return cls(n, tuple(range(1 << n)), "id")

    @classmethod
    def constant_top(cls, n: int, keep_empty: bool = True) -> "ClosureOperator":
        top = subsets.full(n)
        return cls(n, tuple(0 if keep_empty and code == 0 else top for code in range(1 << n)), "top")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int], name: str = "C") -> "ClosureOperator":
        return cls(n, tuple(fn(code) for code in range(1 << n)), name)

    @classmethod
    def from_closed_sets(cls, n: int, family: Iterable[int], name: str = "C") -> "ClosureOperator":
        """Intersection of the members above each subset; the full carrier is always closed."""
        top = subsets.full(n)
        closed = set(family) | {top}
        table = []
        for code in range(1 << n):
            value = top
            for c in closed:
                if subsets.is_subset(code, c):
                    value &= c
            table.append(value)
        return cls(n, tuple(table), name)


def closure_kernel(c: ClosureOperator) -> Partition:
    """Nonempty subsets (at power index ``code - 1``) grouped by their closure."""
    return Partition.from_labels(c(code) for code in subsets.nonempty(c.size))


# ---------------------------------------------------------------------------
# Congruence <-> closure operator
# ---------------------------------------------------------------------------

def closure_from_congruence(pa: PowerAlgebra, theta: Congruence, name: Optional[str] = None) -> ClosureOperator:
    """C(T) = {a | U + {a} ~ U for some nonempty U inside T}; C(empty) = empty."""
    n = pa.base.size
    if theta.partition.size != pa.size:
        raise SizeMismatch(f"congruence of {theta.partition.size} elements for {pa.algebra.name}")
    block = np.concatenate(([-1], theta.partition.as_array()))  # indexed by code
    codes = np.arange(1 << n, dtype=np.int64)
    table = np.zeros(1 << n, dtype=np.int64)
    for a in range(n):
        same = block[codes | (1 << a)] == block[codes]
        table |= np.where(same & (codes != 0), 1 << a, 0)
    for bit in range(n):
        mask = (codes >> bit) & 1 == 1
        table[mask] |= table[codes[mask] ^ (1 << bit)]
    return ClosureOperator(n, tuple(table.tolist()), name or f"C[{theta.render()}]")


def congruence_from_closure(pa: PowerAlgebra, c: ClosureOperator) -> Congruence:
    """Equal-closure kernel; on the union reduct when it is not compatible with the operations."""
    if c.size != pa.base.size:
        raise SizeMismatch(f"{c.name} acts on {c.size} elements, {pa.base.name} has {pa.base.size}")
    part = closure_kernel(c)
    witness = congruence_violation(pa.algebra, part)
    if witness is None:
        return Congruence(part, pa.algebra)
    if c.empty_preserving and compatibility_check(pa, c).status == "pass":
        raise InvariantViolation(f"kernel of {c.name} is not a congruence", witness=witness)
    return Congruence(part, pa.union_reduct())


# ---------------------------------------------------------------------------
# Side conditions
# ---------------------------------------------------------------------------

def empty_preserving_check(pa: PowerAlgebra, c: ClosureOperator) -> ConditionCheck:
    bounds = {"subsets": "empty set"}
    if c.empty_preserving:
        return ConditionCheck(name="empty_preserving", status="pass", bounds=bounds)
    return ConditionCheck(
        name="empty_preserving", status="fail", bounds=bounds,
        witness=f"C({{}}) = {pa.base.format_subset(c(0))}",
    )


def compatibility_check(pa: PowerAlgebra, c: ClosureOperator) -> ConditionCheck:
    """w(C(T1),..,C(Tk)) inside C(w(T1,..,Tk)) for every operation and nonempty Ti."""
    name = "compatibility"
    base = pa.base
    m = pa.size
    ctable = c.as_array()
    closed_index = ctable[1:] - 1
    checked = []
    for symbol, arity in base.signature.ops:
        if m ** arity > config.CAPS.identity_assignments:
            return ConditionCheck(
                name=name, status="skipped",
                reason=f"cap identity_assignments={config.CAPS.identity_assignments} exceeded by {symbol}",
            )
        table = pa.algebra.tables[symbol]
        lhs = table[np.ix_(*([closed_index] * arity))] + 1
        rhs = ctable[table + 1]
        bad = np.argwhere((lhs & ~rhs) != 0)
        if bad.size:
            args = ", ".join(pa.label(int(i)) for i in bad[0])
            return ConditionCheck(name=name, status="fail", witness=f"{symbol}({args})", bounds={"operation": symbol})
        checked.append(symbol)
    return ConditionCheck(name=name, status="pass", bounds={"operations": checked, "arguments": "all nonempty"})


def substitution_check(
    pa: PowerAlgebra, c: ClosureOperator, endos: Sequence[Sequence[int]], coverage: str
) -> ConditionCheck:
    """phi({r}) inside C(phi(T)) for every endomorphism phi, nonempty T and r in C(T)."""
    name = "substitution"
    ctable = c.as_array()
    closed_codes = ctable[1:]
    singles = np.asarray(pa.singleton_index, dtype=np.int64)
    bounds = {"endomorphisms": len(endos), "coverage": coverage}
    for f in endos:
        phi = np.asarray(f, dtype=np.int64)
        c_phi = ctable[phi + 1]
        images = phi[singles] + 1
        for r in pa.base.elements:
            bad = (((closed_codes >> r) & 1) == 1) & ((images[r] & ~c_phi) != 0)
            if bad.any():
                t = int(np.flatnonzero(bad)[0])
                return ConditionCheck(
                    name=name, status="fail", bounds=bounds,
                    witness=f"phi={[pa.label(int(v)) for v in phi]}, T={pa.label(t)}, r={pa.base.label(r)}",
                )
    return ConditionCheck(name=name, status="pass", bounds=bounds)


def separation_check(pa: PowerAlgebra, c: ClosureOperator) -> ConditionCheck:
    n = pa.base.size
    bounds = {"pairs": n * (n - 1) // 2}
    for a in range(n):
        for b in range(a + 1, n):
            if c(1 << a) == c(1 << b):
                return ConditionCheck(
                    name="separation", status="fail", bounds=bounds,
                    witness=f"C({{{pa.base.label(a)}}}) = C({{{pa.base.label(b)}}})",
                )
    return ConditionCheck(name="separation", status="pass", bounds=bounds)


def lift_stability_check(pa: PowerAlgebra, c: ClosureOperator, base_endos: Sequence[Sequence[int]]) -> ConditionCheck:
    """f+(C(T)) inside C(f+(T)) for every base endomorphism f."""
    bounds = {"base_endomorphisms": len(base_endos), "coverage": "full"}
    for f in base_endos:
        for code in subsets.nonempty(c.size):
            if lift_map(f, c(code)) & ~c(lift_map(f, code)):
                return ConditionCheck(
                    name="lift_stability", status="fail", bounds=bounds,
                    witness=f"f={list(f)}, T={pa.base.format_subset(code)}",
                )
    return ConditionCheck(name="lift_stability", status="pass", bounds=bounds)


def _minimal_generating_sets(c: ClosureOperator) -> Dict[int, List[int]]:
    """Per element v, the inclusion-minimal nonempty Q with v in C(Q)."""
    found: Dict[int, List[int]] = {v: [] for v in range(c.size)}
    for q in sorted(subsets.nonempty(c.size), key=lambda code: (subsets.size(code), code)):
        closure = c(q)
        for v in subsets.elements(closure):
            if not any(subsets.is_subset(smaller, q) for smaller in found[v]):
                found[v].append(q)
    return found


def term_stability_check(
    pa: PowerAlgebra,
    c: ClosureOperator,
    fp: Optional[FreePresentation],
    depth_bound: int,
    assignment_size: Optional[int],
) -> ConditionCheck:
    """s in C(Q) implies s(P) inside C(union of q(P), q in Q), over bounded terms and assignments."""
    name = "term_stability"
    if fp is None:
        return ConditionCheck(name=name, status="skipped", reason="no free presentation supplied")
    base = pa.base
    if fp.algebra is not base and not fp.algebra.same_as(base):
        return ConditionCheck(name=name, status="skipped", reason="free presentation is not the base algebra")
    gens = len(fp.generators)
    try:
        terms = enumerate_terms(base.signature, gens, depth_bound)
    except CapExceeded as exc:
        return ConditionCheck(name=name, status="skipped", reason=f"cap terms={exc.cap} exceeded")

    limit = config.CAPS.termstab_assignments
    by_size = lambda s: [i for i in range(pa.size) if subsets.size(i + 1) <= s]  # noqa: E731
    if assignment_size is None:
        assignment_size = base.size
        while assignment_size > 1 and len(by_size(assignment_size)) ** gens > limit:
            assignment_size -= 1
    pool = np.asarray(by_size(assignment_size), dtype=np.int64)
    total = len(pool) ** gens
    if total > limit:
        return ConditionCheck(name=name, status="skipped", reason=f"cap termstab_assignments={limit} exceeded")

    grid = pool[np.indices((len(pool),) * gens).reshape(gens, -1)]
    env = dict(enumerate(grid))
    shape = (grid.shape[1],)
    ctable = c.as_array()
    q_values = [np.broadcast_to(eval_term(pa.algebra, fp.representative(q), env), shape) + 1 for q in base.elements]
    minimal = _minimal_generating_sets(c)
    bounds = {
        "term_depth": depth_bound,
        "terms": len(terms),
        "assignment_subset_size": assignment_size,
        "assignments": total,
        "Q": "all nonempty (inclusion-minimal sets decide)",
        "q_instantiation": "canonical representatives",
    }
    for s in terms:
        value = int(eval_term(fp.algebra, s, fp.env))
        s_values = np.broadcast_to(eval_term(pa.algebra, s, env), shape) + 1
        for q_set in minimal[value]:
            union = np.zeros(shape, dtype=np.int64)
            for q in subsets.elements(q_set):
                union = union | q_values[q]
            bad = np.flatnonzero((s_values & ~ctable[union]) != 0)
            if bad.size:
                pos = int(bad[0])
                assignment = {
                    fp.render(Var(i)): pa.label(int(grid[i][pos])) for i in range(gens)
                }
                return ConditionCheck(
                    name=name, status="fail", bounds=bounds,
                    witness=f"s={fp.render(s)}, Q={base.format_subset(q_set)}, P={assignment}",
                )
    return ConditionCheck(name=name, status="pass", bounds=bounds)


def check_conditions(
    pa: PowerAlgebra,
    c: ClosureOperator,
    fp: Optional[FreePresentation] = None,
    depth_bound: int = 2,
    *,
    endos: Optional[Sequence[Sequence[int]]] = None,
    endo_coverage: str = "full",
    base_endos: Optional[Sequence[Sequence[int]]] = None,
    assignment_size: Optional[int] = None,
    sample_size: int = 64,
    seed: int = 0,
) -> ConditionReport:
    """Decide every side condition within recorded bounds.

    ``endos`` (with its ``endo_coverage`` tag) and ``base_endos`` may be passed
    in when many operators share one power algebra.
    """
    if c.size != pa.base.size:
        raise SizeMismatch(f"{c.name} acts on {c.size} elements, {pa.base.name} has {pa.base.size}")
    checks = [empty_preserving_check(pa, c), compatibility_check(pa, c)]

    if endos is None:
        try:
            endos = enumerate_endomorphisms(pa.algebra)
            endo_coverage = "full"
        except CapExceeded as exc:
            if fp is None:
                endos = None
                checks.append(ConditionCheck(name="substitution", status="skipped", reason=f"cap endomorphisms={exc.cap} exceeded"))
            else:
                endos = sample_endomorphisms(pa, fp, size=sample_size, seed=seed)
                endo_coverage = PARTIAL
                logger.warning("%s: endomorphisms sampled, substitution is a necessary check only", pa.algebra.name)
    if endos is not None:
        checks.append(substitution_check(pa, c, endos, endo_coverage))

    checks.append(separation_check(pa, c))
    checks.append(term_stability_check(pa, c, fp, depth_bound, assignment_size))

    if base_endos is None:
        try:
            base_endos = enumerate_endomorphisms(pa.base)
        except CapExceeded as exc:
            checks.append(ConditionCheck(name="lift_stability", status="skipped", reason=f"cap endomorphisms={exc.cap} exceeded"))
    if base_endos is not None:
        checks.append(lift_stability_check(pa, c, base_endos))

    return ConditionReport(operator=c.name, base=pa.base.name, checks=checks, notes=[ALGEBRAIC_NOTE])


# ---------------------------------------------------------------------------
# Order, joins and meets
# ---------------------------------------------------------------------------

class ClosureOrder(str, Enum):
    EQUAL = "="
    BELOW = "<="
    ABOVE = ">="
    INCOMPARABLE = "incomparable"


def compare_closures(pa: PowerAlgebra, c1: ClosureOperator, c2: ClosureOperator) -> ClosureOrder:
    """c1 <= c2 when the kernel of c2 is contained in the kernel of c1."""
    if c1.size != pa.base.size or c2.size != pa.base.size:
        raise SizeMismatch("closure operators on different carriers")
    k1, k2 = closure_kernel(c1), closure_kernel(c2)
    if k1 == k2:
        return ClosureOrder.EQUAL
    if k2.refines(k1):
        return ClosureOrder.BELOW
    if k1.refines(k2):
        return ClosureOrder.ABOVE
    return ClosureOrder.INCOMPARABLE


def join_closures(pa: PowerAlgebra, cs: Sequence[ClosureOperator]) -> ClosureOperator:
    """Least upper bound: the operator of the intersection of the kernels."""
    if not cs:
        raise ValueError("join of an empty family")
    part = closure_kernel(cs[0])
    for c in cs[1:]:
        part = part.meet(closure_kernel(c))
    alg = pa.algebra if congruence_violation(pa.algebra, part) is None else pa.union_reduct()
    name = "join(" + ", ".join(c.name for c in cs) + ")"
    return closure_from_congruence(pa, Congruence(part, alg), name=name)


def meet_closures(cs: Sequence[ClosureOperator]) -> ClosureOperator:
    """Operator whose closed sets are the sets closed under every member of ``cs``."""
    if not cs:
        raise ValueError("meet of an empty family")
    n = cs[0].size
    table = []
    for code in range(1 << n):
        current = code
        while True:
            nxt = current
            for c in cs:
                nxt = c(nxt)
            if nxt == current:
                break
            current = nxt
        table.append(current)
    return ClosureOperator(n, tuple(table), "meet(" + ", ".join(c.name for c in cs) + ")")


# ---------------------------------------------------------------------------
# Algebra of closed sets
# ---------------------------------------------------------------------------

def closed_set_algebra(base: FiniteAlgebra, c: ClosureOperator) -> FiniteAlgebra:
    """Closed sets C(B), B nonempty, with w_C(X..) = C(w(X..)) and X + Y = C(X | Y)."""
    if base.signature.has_constants():
        raise HasConstants(f"{base.name} has constant operations")
    if c.size != base.size:
        raise SizeMismatch(f"{c.name} acts on {c.size} elements, {base.name} has {base.size}")
    every = range(1 << base.size)
    for symbol, arity in base.signature.ops:
        for codes in itertools.product(every, repeat=arity):
            lhs = complex_image(base, symbol, [c(x) for x in codes])
            if lhs & ~c(complex_image(base, symbol, codes)):
                raise Condition241Failed(
                    f"{c.name} is not compatible with complex {symbol}",
                    witness=[base.format_subset(x) for x in codes],
                )

    carrier = sorted({c(code) for code in subsets.nonempty(base.size)})
    index = {code: i for i, code in enumerate(carrier)}
    size = len(carrier)
    tables: Dict[str, np.ndarray] = {}
    for symbol, arity in base.signature.ops:
        table = np.empty((size,) * arity, dtype=np.int64)
        for idx in itertools.product(range(size), repeat=arity):
            table[idx] = index[c(complex_image(base, symbol, [carrier[i] for i in idx]))]
        tables[symbol] = table
    join = np.empty((size, size), dtype=np.int64)
    for i, x in enumerate(carrier):
        for j, y in enumerate(carrier):
            join[i, j] = index[c(x | y)]
    tables[JOIN] = join
    labels = tuple(base.format_subset(code) for code in carrier)
    alg = FiniteAlgebra(f"{base.name}/{c.name}", size, base.signature.with_join(), tables, labels)

    violation = semilattice_ordered_violation(alg)
    if violation is not None:
        law, witness = violation
        raise InvariantViolation(f"{alg.name} breaks {law}", witness=witness)
    for symbol, arity in base.signature.ops:
        for codes in itertools.product(subsets.nonempty(base.size), repeat=arity):
            lhs = carrier[int(tables[symbol][tuple(index[c(x)] for x in codes)])]
            if lhs != c(complex_image(base, symbol, codes)):
                raise InvariantViolation(
                    f"{symbol}_C(C(B)..) differs from C({symbol}(B..))",
                    witness=[base.format_subset(x) for x in codes],
                )
    for x in subsets.nonempty(base.size):
        for y in subsets.nonempty(base.size):
            if carrier[int(join[index[c(x)], index[c(y)]])] != c(x | y):
                raise InvariantViolation(
                    "C(C(B1) | C(B2)) differs from C(B1 | B2)",
                    witness=[base.format_subset(x), base.format_subset(y)],
                )
    return alg
