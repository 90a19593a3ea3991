# -*- coding: utf-8 -*-
"""Extended power algebras (complex operations plus union) and the relational lifting."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from . import config, subsets
from .algebra import (
    JOIN,
    FiniteAlgebra,
    FreePresentation,
    Signature,
    Term,
    enumerate_endomorphisms,
    eval_term,
    is_homomorphism,
    semilattice_ordered_violation,
)
from .errors import (
    ArityMismatch,
    CapExceeded,
    EmptyArgument,
    HasConstants,
    InvariantViolation,
    SignatureError,
)

__all__ = (
    "PowerAlgebra",
    "Relation",
    "RelationStructure",
    "complex_op",
    "complex_image",
    "build_extended_power",
    "lift_map",
    "lift_endomorphism",
    "lift_is_endomorphism",
    "singleton_embedding_holds",
    "graph_structure",
    "build_relational_power",
    "term_power_eval",
    "sample_endomorphisms",
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PowerAlgebra:
    """``algebra`` has one element per nonempty subset: code ``c`` sits at index ``c - 1``."""

    base: FiniteAlgebra
    algebra: FiniteAlgebra

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def singleton_index(self) -> Tuple[int, ...]:
        return tuple((1 << a) - 1 for a in self.base.elements)

    def singleton(self, a: int) -> int:
        return (1 << a) - 1

    @staticmethod
    def index_of(code: int) -> int:
        if code <= 0:
            raise EmptyArgument("the empty set is not an element of the power algebra")
        return code - 1

    @staticmethod
    def code_of(index: int) -> int:
        return index + 1

    def label(self, index: int) -> str:
        return self.base.format_subset(index + 1)

    def union_reduct(self) -> FiniteAlgebra:
        return self.algebra.reduct([JOIN], name=f"{self.algebra.name}[+]")

    def omega_reduct(self) -> FiniteAlgebra:
        return self.algebra.reduct(self.base.signature.symbols, name=f"{self.algebra.name}[omega]")


# ---------------------------------------------------------------------------
# Complex operations
# ---------------------------------------------------------------------------

def complex_image(base: FiniteAlgebra, symbol: str, codes: Sequence[int]) -> int:
    """``{w(a1..ak) | ai in Ai}``; the empty set whenever some argument is empty."""
    table = base.table(symbol)
    if table.ndim != len(codes):
        raise ArityMismatch(symbol, table.ndim, len(codes))
    if not codes:
        return 1 << int(table[()])
    members = [subsets.elements(code) for code in codes]
    if any(not m for m in members):
        return 0
    values = np.unique(table[np.ix_(*members)])
    return subsets.from_elements(values.tolist())


def complex_op(base: FiniteAlgebra, symbol: str, args: Sequence[int]) -> int:
    table = base.table(symbol)
    if table.ndim != len(args):
        raise ArityMismatch(symbol, table.ndim, len(args))
    if any(code == 0 for code in args):
        raise EmptyArgument(f"complex {symbol} applied to the empty set")
    return complex_image(base, symbol, args)


def build_extended_power(base: FiniteAlgebra, cap: Optional[int] = None) -> PowerAlgebra:
    if base.signature.extended:
        raise SignatureError(f"{base.name} already carries {JOIN!r}")
    if base.signature.has_constants():
        raise HasConstants(f"{base.name} has constant operations; its power algebra is not defined here")
    cap = config.CAPS.power_base if cap is None else cap
    if base.size > cap:
        raise CapExceeded(f"power algebra of {base.name}", base.size, cap)

    m = (1 << base.size) - 1
    tables = {}
    for symbol, arity in base.signature.ops:
        table = np.empty((m,) * arity, dtype=np.int64)
        for idx in itertools.product(range(m), repeat=arity):
            table[idx] = complex_image(base, symbol, [i + 1 for i in idx]) - 1
        tables[symbol] = table
    codes = np.arange(1, m + 1, dtype=np.int64)
    tables[JOIN] = (codes[:, None] | codes[None, :]) - 1
    labels = tuple(base.format_subset(int(c)) for c in codes)
    alg = FiniteAlgebra(f"P({base.name})", m, base.signature.with_join(), tables, labels)

    violation = semilattice_ordered_violation(alg)
    if violation is not None:
        law, witness = violation
        raise InvariantViolation(f"{alg.name} breaks {law}", witness=witness)
    logger.debug("built %s with %d elements", alg.name, m)
    return PowerAlgebra(base, alg)


# ---------------------------------------------------------------------------
# Lifted maps
# ---------------------------------------------------------------------------

def lift_map(f: Sequence[int], code: int) -> int:
    return subsets.from_elements(f[x] for x in subsets.elements(code))


def lift_endomorphism(pa: PowerAlgebra, f: Sequence[int]) -> Tuple[int, ...]:
    """``f+`` as a self-map of the power carrier indices."""
    return tuple(lift_map(f, i + 1) - 1 for i in range(pa.size))


def lift_is_endomorphism(pa: PowerAlgebra, f: Sequence[int]) -> bool:
    return is_homomorphism(pa.algebra, pa.algebra, lift_endomorphism(pa, f))


def singleton_embedding_holds(pa: PowerAlgebra) -> bool:
    return is_homomorphism(pa.base, pa.algebra, pa.singleton_index)


# ---------------------------------------------------------------------------
# Relational lifting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    symbol: str
    arity: int  # tuple length; the lifted operation takes arity - 1 arguments
    tuples: FrozenSet[Tuple[int, ...]]


@dataclass(frozen=True)
class RelationStructure:
    name: str
    size: int
    relations: Tuple[Relation, ...]

    def __post_init__(self) -> None:
        symbols = [rel.symbol for rel in self.relations]
        if len(set(symbols)) != len(symbols):
            raise SignatureError(f"{self.name}: duplicate relation symbols")
        for rel in self.relations:
            if rel.symbol == JOIN:
                raise SignatureError(f"{JOIN!r} is reserved for the join of power algebras")
            if rel.arity < 1:
                raise SignatureError(f"{self.name}: relation {rel.symbol!r} needs arity >= 1")
            for tup in rel.tuples:
                if len(tup) != rel.arity or not all(0 <= v < self.size for v in tup):
                    raise SignatureError(f"{self.name}: bad tuple {tup} in {rel.symbol!r}")


def graph_structure(alg: FiniteAlgebra) -> RelationStructure:
    """Each operation as the relation of its graph ``(a1, .., ak, w(a1..ak))``."""
    relations = []
    for symbol, arity in alg.signature.omega().ops:
        flat = alg.flat_table(symbol)
        tuples = frozenset(
            args + (flat[pos],) for pos, args in enumerate(itertools.product(alg.elements, repeat=arity))
        )
        relations.append(Relation(symbol, arity + 1, tuples))
    return RelationStructure(alg.name, alg.size, tuple(relations))


def build_relational_power(rs: RelationStructure, cap: Optional[int] = None) -> FiniteAlgebra:
    """All ``2**n`` subsets (the empty set at index 0) with one ``f_R`` per relation and union."""
    cap = config.CAPS.power_base if cap is None else cap
    if rs.size > cap:
        raise CapExceeded(f"relational power of {rs.name}", rs.size, cap)
    count = 1 << rs.size
    ops: List[Tuple[str, int]] = []
    tables = {}
    for rel in rs.relations:
        k = rel.arity - 1
        table = np.zeros((count,) * k, dtype=np.int64)
        for codes in itertools.product(range(count), repeat=k):
            out = 0
            for tup in rel.tuples:
                if all(codes[i] >> tup[i] & 1 for i in range(k)):
                    out |= 1 << tup[k]
            table[codes] = out
        ops.append((rel.symbol, k))
        tables[rel.symbol] = table
    codes = np.arange(count, dtype=np.int64)
    tables[JOIN] = codes[:, None] | codes[None, :]
    ops.append((JOIN, 2))
    labels = tuple(subsets.format_subset(int(c)) for c in codes)
    return FiniteAlgebra(f"PR({rs.name})", count, Signature(tuple(ops), extended=True), tables, labels)


# ---------------------------------------------------------------------------
# Terms over subsets
# ---------------------------------------------------------------------------

def term_power_eval(pa: PowerAlgebra, t: Term, env: Mapping[int, int]) -> int:
    limit = 1 << pa.base.size
    indices = {}
    for var, code in env.items():
        if not 0 < code < limit:
            raise EmptyArgument(f"variable x{var} must be a nonempty subset")
        indices[var] = code - 1
    return int(eval_term(pa.algebra, t, indices)) + 1


def sample_endomorphisms(
    pa: PowerAlgebra,
    fp: Optional[FreePresentation] = None,
    size: int = 64,
    seed: int = 0,
    cap: Optional[int] = None,
) -> List[Tuple[int, ...]]:
    """A verified, seeded sample of power-algebra endomorphisms.

    Lifts of base endomorphisms come first. With a free presentation, random
    assignments of subsets to the generators are extended along the
    representatives and kept only when they pass ``is_homomorphism``.
    """
    rng = np.random.default_rng(seed)
    base = pa.base
    cap = config.CAPS.endomorphisms if cap is None else cap
    if base.size <= cap:
        base_endos = enumerate_endomorphisms(base, cap=cap)
    elif fp is not None:
        base_endos = []
        for images in itertools.product(base.elements, repeat=len(fp.generators)):
            env = dict(enumerate(images))
            f = tuple(int(eval_term(base, fp.representative(e), env)) for e in base.elements)
            if is_homomorphism(base, base, f):
                base_endos.append(f)
    else:
        base_endos = []

    found: Set[Tuple[int, ...]] = set()
    if base_endos:
        picks = rng.choice(len(base_endos), size=min(size, len(base_endos)), replace=False)
        found.update(lift_endomorphism(pa, base_endos[int(i)]) for i in sorted(picks))

    if fp is not None:
        join = pa.algebra.tables[JOIN]
        for _ in range(size):
            chosen = rng.integers(0, pa.size, size=len(fp.generators))
            env = {i: int(v) for i, v in enumerate(chosen)}
            on_singletons = [int(eval_term(pa.algebra, fp.representative(e), env)) for e in base.elements]
            phi = []
            for index in range(pa.size):
                members = subsets.elements(index + 1)
                value = on_singletons[members[0]]
                for e in members[1:]:
                    value = int(join[value, on_singletons[e]])
                phi.append(value)
            if is_homomorphism(pa.algebra, pa.algebra, phi):
                found.add(tuple(phi))
    logger.info("%s: sampled %d endomorphisms (seed %d)", pa.algebra.name, len(found), seed)
    return sorted(found)
