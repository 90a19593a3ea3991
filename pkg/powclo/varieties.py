# -*- coding: utf-8 -*-
"""Identity catalogue, free semilattices and their four fully invariant closure operators."""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from . import config, subsets
from .algebra import (
    JOIN,
    App,
    FiniteAlgebra,
    FreePresentation,
    Identity,
    Signature,
    Term,
    Var,
    entropic_identity,
    identity_witness,
)
from .closures import ClosureOperator
from .errors import CapExceeded, PowcloError
from .identity_parser import parse_identity
from .power import build_extended_power

__all__ = (
    "GENERATOR_NAMES",
    "IdentityCatalogue",
    "PowerPreservation",
    "free_semilattice",
    "free_semilattice_operator",
    "separating_family",
    "power_preserves",
)

logger = logging.getLogger(__name__)

GENERATOR_NAMES = ("x", "y", "z", "w")


# ---------------------------------------------------------------------------
# Catalogue
# ---------------------------------------------------------------------------

def _binary_laws(s: str) -> List[Tuple[str, str]]:
    return [
        (f"associativity of {s}", f"{s}(x,{s}(y,z)) = {s}({s}(x,y),z)"),
        (f"commutativity of {s}", f"{s}(x,y) = {s}(y,x)"),
        (f"idempotency of {s}", f"{s}(x,x) = x"),
    ]


def _mixed_laws(m: str, j: str) -> List[Tuple[str, str]]:
    return [
        (f"entropic {m}/{j}", f"{m}({j}(x,y),{j}(z,w)) = {j}({m}(x,z),{m}(y,w))"),
        ("distributive bisemilattice", f"{j}(x,{m}(y,z)) = {m}({j}(x,y),{j}(x,z))"),
        ("stammered", f"{m}(x,y) = {j}(x,y)"),
        (f"absorption {m} over {j}", f"{m}(x,{j}(x,y)) = x"),
        (f"absorption {j} over {m}", f"{j}(x,{m}(x,y)) = x"),
    ]


@dataclass(frozen=True)
class IdentityCatalogue:
    """Named identities parsed against one signature."""

    signature: Signature
    entries: Tuple[Tuple[str, str, Identity], ...]

    @classmethod
    def for_signature(cls, sig: Signature, product: str = "m", join: str = JOIN) -> "IdentityCatalogue":
        sources: List[Tuple[str, str]] = []
        binary = [symbol for symbol, arity in sig.ops if arity == 2]
        for symbol in binary:
            sources.extend(_binary_laws(symbol))
        entries = [(name, src, parse_identity(src, sig)) for name, src in sources]
        for symbol, arity in sig.ops:
            if arity > 2:
                entries.append(
                    (f"entropic {symbol}/{symbol}", "", entropic_identity(symbol, arity, symbol, arity))
                )
        if product in binary and join in binary:
            entries.extend((name, src, parse_identity(src, sig)) for name, src in _mixed_laws(product, join))
        return cls(sig, tuple(entries))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _, _ in self.entries)

    def identity(self, name: str) -> Identity:
        for entry_name, _, ident in self.entries:
            if entry_name == name:
                return ident
        raise KeyError(name)

    def holding_in(self, alg: FiniteAlgebra) -> Tuple[str, ...]:
        return tuple(name for name, _, ident in self.entries if identity_witness(alg, ident) is None)


# ---------------------------------------------------------------------------
# Free semilattices
# ---------------------------------------------------------------------------

def _left_combed(symbol: str, gens: List[int]) -> Term:
    term: Term = Var(gens[0])
    for g in gens[1:]:
        term = App(symbol, (term, Var(g)))
    return term


def free_semilattice(k: int, symbol: str = "m", cap: Optional[int] = None) -> FreePresentation:
    """Nonempty subsets of k generators under union; element ``i`` is subset code ``i + 1``."""
    cap = config.CAPS.free_generators if cap is None else cap
    if k < 1:
        raise PowcloError(f"a free semilattice needs at least one generator, got {k}")
    if k > min(cap, len(GENERATOR_NAMES)):
        raise CapExceeded("free semilattice generators", k, min(cap, len(GENERATOR_NAMES)))
    m = (1 << k) - 1
    codes = np.arange(1, m + 1, dtype=np.int64)
    table = (codes[:, None] | codes[None, :]) - 1
    names = GENERATOR_NAMES[:k]
    labels = tuple(subsets.format_subset(int(c), names) for c in codes)
    alg = FiniteAlgebra(f"FSL({k})", m, Signature(((symbol, 2),)), {symbol: table}, labels)
    generators = tuple((1 << g) - 1 for g in range(k))
    representatives = tuple(_left_combed(symbol, subsets.elements(int(c))) for c in codes)
    return FreePresentation(alg, generators, representatives, names)


def _operator_member(i: int, family: List[int], r: int) -> bool:
    union = 0
    for t in family:
        union |= t
    if i == 1:
        covered = 0
        for t in family:
            if subsets.is_subset(t, r):
                covered |= t
        return covered == r
    above = any(subsets.is_subset(t, r) for t in family)
    inside = subsets.is_subset(r, union)
    if i == 2:
        return above and inside
    if i == 3:
        return inside
    return above


def free_semilattice_operator(k: int, i: int, cap: Optional[int] = None) -> ClosureOperator:
    """One of the four closure operators on the free semilattice over k generators.

    With T a family of generator subsets and r a generator subset:
    1: r is a union of members of T;
    2: some member of T lies inside r and r lies inside the union of T;
    3: r lies inside the union of T;
    4: some member of T lies inside r.

    C1 and C2 already differ on the family from :func:`separating_family`,
    {{x},{y,z}} when k is 3.
    """
    if i not in (1, 2, 3, 4):
        raise PowcloError(f"operator index must be 1..4, got {i}")
    fp = free_semilattice(k, cap=cap)
    n = fp.algebra.size

    def close(code: int) -> int:
        family = [e + 1 for e in subsets.elements(code)]
        if not family:
            return 0
        return subsets.from_elements(e for e in range(n) if _operator_member(i, family, e + 1))

    return ClosureOperator.from_function(n, close, f"C{i}")


def separating_family(k: int) -> int:
    """The family {{x}, {y,...}} of the first generator and all the others."""
    if k < 3:
        raise PowcloError(f"a separating family needs at least 3 generators, got {k}")
    rest = ((1 << k) - 1) ^ 1
    return subsets.from_elements([0, rest - 1])


# ---------------------------------------------------------------------------
# Preservation under the power construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerPreservation:
    identity: str
    holds_in_base: bool
    holds_in_power: bool
    witness: Optional[Dict[str, str]] = None

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def power_preserves(base: FiniteAlgebra, ident: Identity, cap: Optional[int] = None) -> PowerPreservation:
    """Evaluate ``ident`` in ``base`` and in the operation reduct of its extended power algebra."""
    pa = build_extended_power(base, cap=cap)
    in_base = identity_witness(base, ident) is None
    found = identity_witness(pa.omega_reduct(), ident)
    witness = None
    if found is not None:
        witness = {ident.var_name(v): pa.label(index) for v, index in found.items()}
        logger.info("%s fails in %s at %s", ident.render(), pa.algebra.name, witness)
    return PowerPreservation(ident.render(), in_base, found is None, witness)
