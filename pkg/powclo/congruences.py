# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import config, subsets
from .algebra import FiniteAlgebra, Partition, UnionFind, generate_subalgebra, is_mode, quotient_algebra
from .errors import (
    CapExceeded,
    IllDefined,
    InvariantViolation,
    NotACongruence,
    NotAMode,
    SizeMismatch,
    TildeMismatch,
)
from .power import PowerAlgebra, build_extended_power

__all__ = (
    "Congruence",
    "QuotientPower",
    "congruence_violation",
    "is_congruence",
    "as_congruence",
    "principal_congruence",
    "all_congruences",
    "all_congruences_by_partitions",
    "is_fully_invariant",
    "fully_invariant_congruences",
    "convexity_violation",
    "tilde_partition",
    "tilde",
    "lift_equiv",
    "quotient_power",
    "delta_quotient",
    "delta_lift",
    "rho_congruence",
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Congruence:
    partition: Partition
    algebra: FiniteAlgebra = field(compare=False, repr=False)

    def render(self) -> str:
        return self.partition.render(self.algebra.labels)


def _rep_of(part: Partition) -> np.ndarray:
    return np.asarray(part.representatives(), dtype=np.int64)[part.as_array()]


def congruence_violation(alg: FiniteAlgebra, part: Partition) -> Optional[Dict[str, object]]:
    """First operation, argument tuple and related tuple whose images fall in different blocks."""
    if part.size != alg.size:
        raise SizeMismatch(f"partition of {part.size} elements for {alg.name} of size {alg.size}")
    block = part.as_array()
    rep_of = _rep_of(part)
    for symbol, arity in alg.signature.ops:
        mapped = block[alg.tables[symbol]]
        for axis in range(arity):
            bad = np.argwhere(mapped != np.take(mapped, rep_of, axis=axis))
            if bad.size:
                args = [int(v) for v in bad[0]]
                other = list(args)
                other[axis] = int(rep_of[args[axis]])
                return {
                    "symbol": symbol,
                    "args": [alg.label(a) for a in args],
                    "related_args": [alg.label(a) for a in other],
                }
    return None


def is_congruence(alg: FiniteAlgebra, part: Partition) -> bool:
    return congruence_violation(alg, part) is None


def as_congruence(alg: FiniteAlgebra, part: Partition) -> Congruence:
    witness = congruence_violation(alg, part)
    if witness is not None:
        raise NotACongruence(f"{part.render(alg.labels)} is not a congruence of {alg.name}", witness=witness)
    return Congruence(part, alg)


def principal_congruence(alg: FiniteAlgebra, a: int, b: int) -> Congruence:
    uf = UnionFind(alg.size)
    uf.union(a, b)
    rounds = 0
    while True:
        rounds += 1
        part = Partition.from_labels(uf.find(x) for x in alg.elements)
        block = part.as_array()
        rep_of = _rep_of(part)
        changed = False
        for symbol, arity in alg.signature.ops:
            table = alg.tables[symbol]
            for axis in range(arity):
                moved = np.take(table, rep_of, axis=axis)
                diff = block[table] != block[moved]
                if diff.any():
                    for p, q in zip(table[diff].tolist(), moved[diff].tolist()):
                        changed |= uf.union(p, q)
        if not changed:
            logger.debug("Cg(%d,%d) on %s stable after %d rounds", a, b, alg.name, rounds)
            return Congruence(part, alg)


def _canonical_key(con: Congruence) -> Tuple[int, Tuple[int, ...]]:
    return (-con.partition.count, con.partition.blocks)


def all_congruences(alg: FiniteAlgebra, cap: Optional[int] = None) -> List[Congruence]:
    """Join-closure of the principal congruences; identity first, total last."""
    cap = config.CAPS.congruences if cap is None else cap
    if alg.size > cap:
        raise CapExceeded(f"congruences of {alg.name}", alg.size, cap)
    principals: Dict[Partition, Congruence] = {}
    for a in alg.elements:
        for b in range(a + 1, alg.size):
            con = principal_congruence(alg, a, b)
            principals.setdefault(con.partition, con)

    bottom = Partition.discrete(alg.size)
    found: Dict[Partition, Congruence] = {bottom: Congruence(bottom, alg)}
    frontier = [bottom]
    while frontier:
        current = frontier.pop()
        for generator in principals:
            joined = current.join(generator)
            if joined not in found:
                found[joined] = Congruence(joined, alg)
                frontier.append(joined)
    logger.info("%s: %d congruences (%d principal)", alg.name, len(found), len(principals))
    return sorted(found.values(), key=_canonical_key)


def _set_partitions(n: int) -> Iterator[Partition]:
    """Restricted growth strings in lexicographic order."""
    labels = [0] * n

    def extend(i: int, top: int) -> Iterator[Partition]:
        if i == n:
            yield Partition(tuple(labels))
            return
        for value in range(top + 2):
            labels[i] = value
            yield from extend(i + 1, max(top, value))

    yield from extend(1, 0)


def all_congruences_by_partitions(alg: FiniteAlgebra, cap: Optional[int] = None) -> List[Congruence]:
    """Independent oracle: filter every partition of the carrier."""
    cap = config.CAPS.partition_oracle if cap is None else cap
    if alg.size > cap:
        raise CapExceeded(f"partition scan of {alg.name}", alg.size, cap)
    found = [Congruence(p, alg) for p in _set_partitions(alg.size) if is_congruence(alg, p)]
    return sorted(found, key=_canonical_key)


def is_fully_invariant(alg: FiniteAlgebra, c: Congruence, endos: Sequence[Sequence[int]]) -> bool:
    block = c.partition.as_array()
    rep_of = _rep_of(c.partition)
    for f in endos:
        image = np.asarray(f, dtype=np.int64)
        if not np.array_equal(block[image], block[image[rep_of]]):
            return False
    return True


def fully_invariant_congruences(
    alg: FiniteAlgebra, cons: Sequence[Congruence], endos: Sequence[Sequence[int]]
) -> List[Congruence]:
    return [c for c in cons if is_fully_invariant(alg, c, endos)]


# ---------------------------------------------------------------------------
# Relations between the base and its power algebra
# ---------------------------------------------------------------------------

def convexity_violation(pa: PowerAlgebra, part: Partition) -> Optional[str]:
    """First R inside S inside R + Q with R related to R + Q but not to S."""
    if part.size != pa.size:
        raise SizeMismatch(f"partition of {part.size} elements for {pa.algebra.name}")
    block = part.blocks
    for r in subsets.nonempty(pa.base.size):
        for q in subsets.nonempty(pa.base.size):
            top = r | q
            if block[r - 1] != block[top - 1]:
                continue
            for extra in subsets.submasks(top & ~r):
                if block[(r | extra) - 1] != block[r - 1]:
                    return f"R={pa.label(r - 1)}, S={pa.label((r | extra) - 1)}, R+Q={pa.label(top - 1)}"
    return None


def tilde_partition(pa: PowerAlgebra, part: Partition) -> Partition:
    """Restriction to singletons, for any equivalence on the power carrier."""
    if part.size != pa.size:
        raise SizeMismatch(f"partition of {part.size} elements for {pa.algebra.name}")
    return Partition.from_labels(part.blocks[i] for i in pa.singleton_index)


def tilde(pa: PowerAlgebra, theta: Congruence) -> Congruence:
    part = tilde_partition(pa, theta.partition)
    witness = congruence_violation(pa.base, part)
    if witness is not None:
        raise InvariantViolation(f"restriction of {theta.render()} to singletons is not a congruence", witness=witness)
    return Congruence(part, pa.base)


def lift_equiv(pa: PowerAlgebra, theta_base: Partition) -> Congruence:
    """X ~ Y iff every x in X is related to some y in Y and vice versa.

    The result lives on the power algebra when ``theta_base`` is a base
    congruence, otherwise on its union reduct.
    """
    block = theta_base.blocks
    keys = [subsets.from_elements(block[x] for x in subsets.elements(i + 1)) for i in range(pa.size)]
    part = Partition.from_labels(keys)
    if is_congruence(pa.base, theta_base):
        witness = congruence_violation(pa.algebra, part)
        if witness is not None:
            raise InvariantViolation("lifted base congruence is not a congruence of the power algebra", witness=witness)
        return Congruence(part, pa.algebra)
    return Congruence(part, pa.union_reduct())


@dataclass(frozen=True, eq=False)
class QuotientPower:
    """The power algebra of ``base/alpha`` and the index map ``B -> B^alpha``."""

    alpha: Congruence
    power: PowerAlgebra
    image: Tuple[int, ...]


def quotient_power(pa: PowerAlgebra, alpha: Congruence) -> QuotientPower:
    quotient = quotient_algebra(pa.base, alpha.partition, name=f"{pa.base.name}/alpha")
    power = build_extended_power(quotient, cap=max(quotient.size, 1))
    block = alpha.partition.blocks
    image = tuple(
        subsets.from_elements(block[x] for x in subsets.elements(i + 1)) - 1 for i in range(pa.size)
    )
    return QuotientPower(alpha, power, image)


def delta_quotient(
    pa: PowerAlgebra, psi: Congruence, alpha: Congruence, qp: Optional[QuotientPower] = None
) -> Congruence:
    """Transport ``psi`` to the power algebra of ``base/alpha``; every preimage choice is checked."""
    if tilde_partition(pa, psi.partition) != alpha.partition:
        raise TildeMismatch(f"restriction of {psi.render()} to singletons differs from alpha")
    qp = quotient_power(pa, alpha) if qp is None else qp
    labels: List[Optional[int]] = [None] * qp.power.size
    origin: List[int] = [0] * qp.power.size
    for index in range(pa.size):
        target = qp.image[index]
        label = psi.partition.blocks[index]
        if labels[target] is None:
            labels[target] = label
            origin[target] = index
        elif labels[target] != label:
            raise IllDefined(
                "delta is not well defined",
                witness=[pa.label(origin[target]), pa.label(index)],
            )
    part = Partition.from_labels(labels)
    witness = congruence_violation(qp.power.algebra, part)
    if witness is not None:
        raise InvariantViolation("transported relation is not a congruence", witness=witness)
    return Congruence(part, qp.power.algebra)


def delta_lift(
    pa: PowerAlgebra, psi: Congruence, alpha: Congruence, qp: Optional[QuotientPower] = None
) -> Congruence:
    """B ~ C iff B^alpha and C^alpha are psi-related."""
    qp = quotient_power(pa, alpha) if qp is None else qp
    if not tilde_partition(qp.power, psi.partition).is_discrete():
        raise TildeMismatch(f"{psi.render()} does not separate singletons of {qp.power.algebra.name}")
    part = Partition.from_labels(psi.partition.blocks[qp.image[i]] for i in range(pa.size))
    witness = congruence_violation(pa.algebra, part)
    if witness is not None:
        raise InvariantViolation("pulled-back relation is not a congruence", witness=witness)
    return Congruence(part, pa.algebra)


def rho_congruence(pa: PowerAlgebra) -> Congruence:
    """Subsets related when they generate the same subalgebra."""
    if not is_mode(pa.base):
        raise NotAMode(f"{pa.base.name} is not idempotent and entropic")
    part = Partition.from_labels(generate_subalgebra(pa.base, i + 1) for i in range(pa.size))
    witness = congruence_violation(pa.algebra, part)
    if witness is not None:
        raise InvariantViolation("equal-generation relation is not a congruence", witness=witness)
    return Congruence(part, pa.algebra)
