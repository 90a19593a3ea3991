# -*- coding: utf-8 -*-
from __future__ import annotations

import itertools
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from . import subsets
from .algebra import (
    JOIN,
    App,
    FiniteAlgebra,
    Identity,
    Var,
    associative_identity,
    commutative_identity,
    generate_subalgebra,
    holds_identity,
    identity_witness,
    idempotent_identity,
    is_mode,
)
from .closures import ClosureOperator, ClosureOrder, compare_closures, join_closures, meet_closures
from .errors import (
    ArityMismatch,
    HasConstants,
    NoLeastElement,
    NotAMode,
    NotASemilattice,
    NotAssociative,
    NotNSemigroup,
    PowcloError,
    SignatureError,
)
from .power import PowerAlgebra, build_extended_power, complex_image

__all__ = (
    "SinkSpec",
    "NSemigroupSpec",
    "SinkMeetRecord",
    "sink_generate",
    "sink_closure_operator",
    "meet_sink_operators",
    "r_closure",
    "r_closure_operator",
    "is_n_semigroup",
    "n_closed_chain",
    "n_closed_generate",
    "n_closure_operator",
    "closure_algebra_violations",
    "check_closure_algebra",
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SinkSpec:
    gamma: FrozenSet[str]

    def validate(self, alg: FiniteAlgebra) -> None:
        for symbol in self.gamma:
            if alg.signature.arity(symbol) == 0:
                raise SignatureError(f"sink symbol {symbol!r} must have positive arity")

    @property
    def label(self) -> str:
        return "{" + ",".join(sorted(self.gamma)) + "}"


@dataclass(frozen=True)
class NSemigroupSpec:
    symbol: str
    n: int

    def validate(self, alg: FiniteAlgebra) -> None:
        if self.n < 2:
            raise SignatureError(f"an n-semigroup needs n >= 2, got {self.n}")
        arity = alg.signature.arity(self.symbol)
        if arity != self.n:
            raise ArityMismatch(self.symbol, arity, self.n)


# ---------------------------------------------------------------------------
# Sinks
# ---------------------------------------------------------------------------

def sink_generate(alg: FiniteAlgebra, spec: SinkSpec, seed: int) -> int:
    """Least subalgebra above ``seed`` absorbing every operation of gamma in every argument."""
    if alg.signature.has_constants():
        raise HasConstants(f"{alg.name} has constant operations")
    spec.validate(alg)
    if seed == 0:
        return 0
    everything = subsets.full(alg.size)
    current = seed
    while True:
        current = generate_subalgebra(alg, current)
        absorbed = current
        for symbol in sorted(spec.gamma):
            arity = alg.signature.arity(symbol)
            for i in range(arity):
                args = [everything] * arity
                args[i] = current
                absorbed |= complex_image(alg, symbol, args)
        if absorbed == current:
            return current
        current = absorbed


def sink_closure_operator(alg: FiniteAlgebra, spec: SinkSpec) -> ClosureOperator:
    return ClosureOperator.from_function(
        alg.size, lambda code: sink_generate(alg, spec, code), f"sink{spec.label}"
    )


@dataclass(frozen=True)
class SinkMeetRecord:
    gamma1: Tuple[str, ...]
    gamma2: Tuple[str, ...]
    meet_is_union_operator: bool
    empty_sink_greatest: bool
    full_sink_least: bool
    join_below_intersection: bool
    join_equals_intersection: bool  # observed, never required
    witness: Optional[str] = None

    @property
    def holds(self) -> bool:
        return (
            self.meet_is_union_operator
            and self.empty_sink_greatest
            and self.full_sink_least
            and self.join_below_intersection
        )

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def meet_sink_operators(
    alg: FiniteAlgebra, spec1: SinkSpec, spec2: SinkSpec, pa: Optional[PowerAlgebra] = None
) -> SinkMeetRecord:
    if not is_mode(alg):
        raise NotAMode(f"{alg.name} is not idempotent and entropic")
    spec1.validate(alg)
    spec2.validate(alg)
    pa = build_extended_power(alg) if pa is None else pa
    omega = [symbol for symbol, arity in alg.signature.ops if arity > 0]
    operators: Dict[FrozenSet[str], ClosureOperator] = {}
    for r in range(len(omega) + 1):
        for gamma in itertools.combinations(omega, r):
            key = frozenset(gamma)
            operators[key] = sink_closure_operator(alg, SinkSpec(key))

    c1, c2 = operators[spec1.gamma], operators[spec2.gamma]
    witness = None
    meet = meet_closures([c1, c2])
    union_op = operators[spec1.gamma | spec2.gamma]
    meet_ok = meet.table == union_op.table
    if not meet_ok:
        code = next(x for x in range(len(meet.table)) if meet(x) != union_op(x))
        witness = f"T={alg.format_subset(code)}: meet gives {alg.format_subset(meet(code))}, union sink gives {alg.format_subset(union_op(code))}"

    below = (ClosureOrder.EQUAL, ClosureOrder.BELOW)
    c_empty, c_full = operators[frozenset()], operators[frozenset(omega)]
    greatest = all(compare_closures(pa, c, c_empty) in below for c in operators.values())
    least = all(compare_closures(pa, c_full, c) in below for c in operators.values())
    joined = join_closures(pa, [c1, c2])
    order = compare_closures(pa, joined, operators[spec1.gamma & spec2.gamma])
    return SinkMeetRecord(
        gamma1=tuple(sorted(spec1.gamma)),
        gamma2=tuple(sorted(spec2.gamma)),
        meet_is_union_operator=meet_ok,
        empty_sink_greatest=greatest,
        full_sink_least=least,
        join_below_intersection=order in below,
        join_equals_intersection=order is ClosureOrder.EQUAL,
        witness=witness,
    )


# ---------------------------------------------------------------------------
# r-closed subsets of a semigroup
# ---------------------------------------------------------------------------

def _sole_binary(alg: FiniteAlgebra, symbol: Optional[str]) -> str:
    if symbol is not None:
        if alg.signature.arity(symbol) != 2:
            raise ArityMismatch(symbol, alg.signature.arity(symbol), 2)
        return symbol
    binary = [s for s, arity in alg.signature.ops if arity == 2]
    if len(binary) != 1:
        raise SignatureError(f"{alg.name}: expected exactly one binary operation, found {binary}")
    return binary[0]


def r_closure(alg: FiniteAlgebra, r: int, seed: int, symbol: Optional[str] = None) -> int:
    """Least r-closed superset of ``seed``; p and q range over the semigroup with a neutral element adjoined."""
    symbol = _sole_binary(alg, symbol)
    if r < 1:
        raise PowcloError(f"r must be at least 1, got {r}")
    if not holds_identity(alg, associative_identity(symbol)):
        raise NotAssociative(f"{symbol} is not associative on {alg.name}")
    n = alg.size
    one = n
    table = alg.flat_table(symbol)

    def mul(p: int, q: int) -> int:
        if p == one:
            return q
        if q == one:
            return p
        return table[p * n + q]

    current = seed
    while True:
        grown = current
        for p in range(n + 1):
            for q in range(n + 1):
                units = [u for u in range(n) if current >> mul(mul(p, u), q) & 1]
                if not units:
                    continue
                words = set(units)
                for _ in range(r - 1):
                    words = {mul(w, u) for w in words for u in units}
                for w in words:
                    grown |= 1 << mul(mul(p, w), q)
        if grown == current:
            return current
        current = grown


def r_closure_operator(alg: FiniteAlgebra, r: int, symbol: Optional[str] = None) -> ClosureOperator:
    return ClosureOperator.from_function(alg.size, lambda code: r_closure(alg, r, code, symbol), f"r{r}-closed")


# ---------------------------------------------------------------------------
# n-semigroups
# ---------------------------------------------------------------------------

def _bracketing(symbol: str, n: int, i: int) -> App:
    xs = [Var(j) for j in range(2 * n - 1)]
    inner = App(symbol, tuple(xs[i:i + n]))
    return App(symbol, tuple(xs[:i]) + (inner,) + tuple(xs[i + n:]))


def is_n_semigroup(alg: FiniteAlgebra, spec: NSemigroupSpec) -> bool:
    spec.validate(alg)
    first = _bracketing(spec.symbol, spec.n, 0)
    return all(
        holds_identity(alg, Identity(first, _bracketing(spec.symbol, spec.n, i)))
        for i in range(1, spec.n)
    )


def _contraction(alg: FiniteAlgebra, spec: NSemigroupSpec, current: int) -> int:
    """Elements f(f(p, f(u)), q) whose premises f(f(p, u_i), q) all lie in ``current``."""
    a, n = alg.size, spec.n
    table = alg.tables[spec.symbol]
    inner = table.reshape(a ** (n - 1), a)   # (p, x) -> f(p, x)
    outer = table.reshape(a, a ** (n - 1))   # (y, q) -> f(y, q)
    wrapped = outer[inner]                   # (p, x, q) -> f(f(p, x), q)
    member = np.asarray([current >> v & 1 for v in range(a)], dtype=bool)
    found = 0
    for p in range(wrapped.shape[0]):
        for q in range(wrapped.shape[2]):
            units = subsets.from_elements(np.flatnonzero(member[wrapped[p, :, q]]).tolist())
            if not units:
                continue
            for w in subsets.elements(complex_image(alg, spec.symbol, [units] * n)):
                found |= 1 << int(wrapped[p, w, q])
    return found


def n_closed_chain(alg: FiniteAlgebra, spec: NSemigroupSpec, seed: int) -> List[int]:
    """X[0] = f-closure of the seed, X[k+1] = X[k] plus its contraction, until stable."""
    if not is_n_semigroup(alg, spec):
        raise NotNSemigroup(f"{spec.symbol} is not an associative {spec.n}-ary operation on {alg.name}")
    f_only = alg.reduct([spec.symbol])
    chain = [generate_subalgebra(f_only, seed)]
    while True:
        nxt = chain[-1] | _contraction(alg, spec, chain[-1])
        if nxt == chain[-1]:
            logger.debug("%s: closed %d-semigroup chain of length %d", alg.name, spec.n, len(chain))
            return chain
        chain.append(nxt)


def n_closed_generate(alg: FiniteAlgebra, spec: NSemigroupSpec, seed: int) -> int:
    if seed == 0:
        return 0
    f_only = alg.reduct([spec.symbol])
    current = seed
    while True:
        top = n_closed_chain(alg, spec, current)[-1]
        if generate_subalgebra(f_only, top) == top:
            return top
        current = top


def n_closure_operator(alg: FiniteAlgebra, spec: NSemigroupSpec) -> ClosureOperator:
    return ClosureOperator.from_function(
        alg.size, lambda code: n_closed_generate(alg, spec, code), f"closed-{spec.n}-semigroup"
    )


# ---------------------------------------------------------------------------
# Closure algebras
# ---------------------------------------------------------------------------

def closure_algebra_violations(s: FiniteAlgebra, zero: int, c: str = "c") -> List[Tuple[str, str]]:
    """Every failed closure-algebra axiom with a witness; the join must be a semilattice with least ``zero``."""
    join = s.table(JOIN)
    for law in (associative_identity(JOIN), commutative_identity(JOIN), idempotent_identity(JOIN)):
        witness = identity_witness(s, law)
        if witness is not None:
            raise NotASemilattice(f"{s.name}: {law.render()} fails", witness=witness)
    if not np.array_equal(join[zero], np.arange(s.size)):
        raise NoLeastElement(f"{s.label(zero)} is not the least element of {s.name}")

    closure = s.table(c)
    found: List[Tuple[str, str]] = []
    if int(closure[zero]) != zero:
        found.append(("c(0) = 0", f"c({s.label(zero)}) = {s.label(int(closure[zero]))}"))
    additive = closure[join] != join[np.ix_(closure, closure)]
    if additive.any():
        x, y = (int(v) for v in np.argwhere(additive)[0])
        found.append(("c(s1 + s2) = c(s1) + c(s2)", f"s1={s.label(x)}, s2={s.label(y)}"))
    elements = np.arange(s.size)
    extensive = join[elements, closure] != closure
    if extensive.any():
        x = int(np.flatnonzero(extensive)[0])
        found.append(("s <= c(s)", f"s={s.label(x)}"))
    idempotent = closure[closure] != closure
    if idempotent.any():
        x = int(np.flatnonzero(idempotent)[0])
        found.append(("c(c(s)) = c(s)", f"s={s.label(x)}"))
    return found


def check_closure_algebra(s: FiniteAlgebra, zero: int, c: str = "c") -> bool:
    return not closure_algebra_violations(s, zero, c)
