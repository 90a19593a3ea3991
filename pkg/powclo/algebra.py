# -*- coding: utf-8 -*-
"""Finite algebras as numpy operation tables, plus terms and identities over them.

Carrier elements are the integers ``0..n-1``. An operation of arity ``k`` is an
integer array of shape ``(n,) * k``; its C-order ravel is the row-major flat
table of the JSON algebra format.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from . import config, subsets
from .errors import (
    ArityMismatch,
    CapExceeded,
    InvariantViolation,
    NotACongruence,
    SignatureError,
    SizeMismatch,
    UnboundVariable,
    UnknownSymbol,
)

__all__ = (
    "JOIN",
    "Signature",
    "FiniteAlgebra",
    "Var",
    "App",
    "Term",
    "Identity",
    "Partition",
    "UnionFind",
    "FreePresentation",
    "ModeClass",
    "term_variables",
    "term_depth",
    "render_term",
    "check_term",
    "eval_term",
    "identity_witness",
    "holds_identity",
    "is_linear_identity",
    "associative_identity",
    "commutative_identity",
    "idempotent_identity",
    "entropic_identity",
    "distributive_identity",
    "enumerate_endomorphisms",
    "is_homomorphism",
    "generate_subalgebra",
    "classify_mode",
    "is_mode",
    "quotient_algebra",
    "enumerate_terms",
    "semilattice_ordered_violation",
)

logger = logging.getLogger(__name__)

JOIN = "+"
_CHUNK = 1 << 20


# ---------------------------------------------------------------------------
# Signatures and algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    ops: Tuple[Tuple[str, int], ...]
    extended: bool = False  # may carry the join symbol "+"

    def __post_init__(self) -> None:
        ops = tuple((str(symbol), int(arity)) for symbol, arity in self.ops)
        object.__setattr__(self, "ops", ops)
        symbols = [symbol for symbol, _ in ops]
        if len(set(symbols)) != len(symbols):
            raise SignatureError(f"duplicate operation symbols in {symbols}")
        for symbol, arity in ops:
            if not symbol:
                raise SignatureError("empty operation symbol")
            if arity < 0:
                raise SignatureError(f"negative arity for {symbol!r}")
        if JOIN in symbols and not self.extended:
            raise SignatureError(f"{JOIN!r} is reserved for the join of power algebras")

    @cached_property
    def arities(self) -> Dict[str, int]:
        return dict(self.ops)

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(symbol for symbol, _ in self.ops)

    def arity(self, symbol: str) -> int:
        try:
            return self.arities[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def has_constants(self) -> bool:
        return any(arity == 0 for _, arity in self.ops)

    def omega(self) -> "Signature":
        """The signature without the join."""
        return Signature(tuple(op for op in self.ops if op[0] != JOIN))

    def with_join(self) -> "Signature":
        return Signature(self.omega().ops + ((JOIN, 2),), extended=True)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    name: str
    size: int
    signature: Signature
    tables: Mapping[str, np.ndarray]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise SignatureError(f"{self.name}: carrier must be nonempty")
        fixed: Dict[str, np.ndarray] = {}
        for symbol, arity in self.signature.ops:
            if symbol not in self.tables:
                raise SignatureError(f"{self.name}: missing table for {symbol!r}")
            table = np.asarray(self.tables[symbol], dtype=np.int64)
            if table.size != self.size ** arity:
                raise SignatureError(
                    f"{self.name}: table of {symbol!r} has {table.size} entries, expected {self.size ** arity}"
                )
            table = table.reshape((self.size,) * arity).copy()
            if table.min() < 0 or table.max() >= self.size:
                raise SignatureError(f"{self.name}: table of {symbol!r} leaves the carrier")
            table.setflags(write=False)
            fixed[symbol] = table
        extra = set(self.tables) - set(fixed)
        if extra:
            raise SignatureError(f"{self.name}: tables for undeclared symbols {sorted(extra)}")
        object.__setattr__(self, "tables", fixed)
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != self.size or len(set(labels)) != self.size:
                raise SignatureError(f"{self.name}: labels must name each element once")
            object.__setattr__(self, "labels", labels)

    @property
    def elements(self) -> range:
        return range(self.size)

    def table(self, symbol: str) -> np.ndarray:
        try:
            return self.tables[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        table = self.table(symbol)
        if table.ndim != len(args):
            raise ArityMismatch(symbol, table.ndim, len(args))
        return int(table[tuple(args)])

    def flat_table(self, symbol: str) -> List[int]:
        return self.table(symbol).ravel().tolist()

    def label(self, element: int) -> str:
        return self.labels[element] if self.labels else str(element)

    def format_subset(self, code: int) -> str:
        return subsets.format_subset(code, self.labels)

    def reduct(self, symbols: Iterable[str], name: Optional[str] = None) -> "FiniteAlgebra":
        keep = set(symbols)
        ops = tuple(op for op in self.signature.ops if op[0] in keep)
        return FiniteAlgebra(
            name or self.name,
            self.size,
            Signature(ops, extended=JOIN in keep),
            {symbol: self.tables[symbol] for symbol, _ in ops},
            self.labels,
        )

    def same_as(self, other: "FiniteAlgebra") -> bool:
        """Equal carrier size, signature and tables (names and labels ignored)."""
        if self.size != other.size or self.signature.ops != other.signature.ops:
            return False
        return all(np.array_equal(self.tables[s], other.tables[s]) for s in self.signature.symbols)


# ---------------------------------------------------------------------------
# Terms and identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: Tuple["Term", ...] = ()


Term = Union[Var, App]


def term_variables(t: Term) -> List[int]:
    found = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            found.add(node.index)
        else:
            stack.extend(node.args)
    return sorted(found)


def _occurrences(t: Term) -> Counter:
    counts: Counter = Counter()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            counts[node.index] += 1
        else:
            stack.extend(node.args)
    return counts


def term_depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max((term_depth(arg) for arg in t.args), default=0)


def render_term(t: Term, names: Optional[Sequence[str]] = None) -> str:
    if isinstance(t, Var):
        if names is not None and t.index < len(names):
            return names[t.index]
        return f"x{t.index}"
    return f"{t.symbol}(" + ",".join(render_term(arg, names) for arg in t.args) + ")"


def check_term(signature: Signature, t: Term) -> None:
    """Raise UnknownSymbol / ArityMismatch for the first bad application."""
    if isinstance(t, Var):
        return
    arity = signature.arity(t.symbol)
    if arity != len(t.args):
        raise ArityMismatch(t.symbol, arity, len(t.args))
    for arg in t.args:
        check_term(signature, arg)


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def variables(self) -> List[int]:
        return sorted(set(term_variables(self.lhs)) | set(term_variables(self.rhs)))

    def var_name(self, index: int) -> str:
        return render_term(Var(index), self.names)

    def render(self) -> str:
        return f"{render_term(self.lhs, self.names)} = {render_term(self.rhs, self.names)}"


Value = Union[int, np.ndarray]


def eval_term(alg: FiniteAlgebra, t: Term, env: Mapping[int, Value]) -> Value:
    """Evaluate bottom-up. ``env`` values may be ints or equally shaped index arrays."""
    if isinstance(t, Var):
        try:
            return env[t.index]
        except KeyError:
            raise UnboundVariable(f"variable x{t.index} has no value") from None
    table = alg.table(t.symbol)
    if table.ndim != len(t.args):
        raise ArityMismatch(t.symbol, table.ndim, len(t.args))
    values = tuple(eval_term(alg, arg, env) for arg in t.args)
    out = table[values]
    return int(out) if np.ndim(out) == 0 else out


def identity_witness(
    alg: FiniteAlgebra, ident: Identity, cap: Optional[int] = None
) -> Optional[Dict[int, int]]:
    """Lexicographically least assignment separating both sides, or None if the identity holds."""
    check_term(alg.signature, ident.lhs)
    check_term(alg.signature, ident.rhs)
    variables = ident.variables()
    k, n = len(variables), alg.size
    total = n ** k
    cap = config.CAPS.identity_assignments if cap is None else cap
    if total > cap:
        raise CapExceeded("identity assignments", total, cap)
    if k == 0:
        same = eval_term(alg, ident.lhs, {}) == eval_term(alg, ident.rhs, {})
        return None if same else {}

    if total <= _CHUNK:
        heads: Iterable[Optional[int]] = [None]
        free = variables
    else:
        heads = range(n)
        free = variables[1:]
    grid = np.indices((n,) * len(free)).reshape(len(free), -1) if free else np.zeros((0, 1), dtype=np.int64)
    shape = (grid.shape[1],)
    for head in heads:
        env: Dict[int, Value] = dict(zip(free, grid))
        if head is not None:
            env[variables[0]] = head
        left = np.broadcast_to(eval_term(alg, ident.lhs, env), shape)
        right = np.broadcast_to(eval_term(alg, ident.rhs, env), shape)
        bad = np.flatnonzero(left != right)
        if bad.size:
            pos = int(bad[0])
            witness = {v: int(row[pos]) for v, row in zip(free, grid)}
            if head is not None:
                witness[variables[0]] = head
            return dict(sorted(witness.items()))
    return None


def holds_identity(alg: FiniteAlgebra, ident: Identity, cap: Optional[int] = None) -> bool:
    return identity_witness(alg, ident, cap) is None


def is_linear_identity(ident: Identity) -> bool:
    return all(count <= 1 for side in (ident.lhs, ident.rhs) for count in _occurrences(side).values())


# Named laws, shared by mode classification and the identity catalogue.

def associative_identity(symbol: str) -> Identity:
    x, y, z = Var(0), Var(1), Var(2)
    return Identity(App(symbol, (x, App(symbol, (y, z)))), App(symbol, (App(symbol, (x, y)), z)), ("x", "y", "z"))


def commutative_identity(symbol: str) -> Identity:
    x, y = Var(0), Var(1)
    return Identity(App(symbol, (x, y)), App(symbol, (y, x)), ("x", "y"))


def idempotent_identity(symbol: str, arity: int = 2) -> Identity:
    return Identity(App(symbol, (Var(0),) * arity), Var(0), ("x",))


def entropic_identity(first: str, n: int, second: str, m: int) -> Identity:
    """``first`` applied to the rows of an n x m matrix of variables equals ``second`` applied to its columns."""
    cell = lambda i, j: Var(i * m + j)  # noqa: E731
    lhs = App(first, tuple(App(second, tuple(cell(i, j) for j in range(m))) for i in range(n)))
    rhs = App(second, tuple(App(first, tuple(cell(i, j) for i in range(n))) for j in range(m)))
    return Identity(lhs, rhs)


def distributive_identity(symbol: str, arity: int, coordinate: int, join: str = JOIN) -> Identity:
    """``symbol`` distributes over ``join`` in ``coordinate``; the extra variable is index ``arity``."""
    xs = [Var(i) for i in range(arity)]
    y = Var(arity)
    spread = list(xs)
    spread[coordinate] = App(join, (xs[coordinate], y))
    swapped = list(xs)
    swapped[coordinate] = y
    return Identity(App(symbol, tuple(spread)), App(join, (App(symbol, tuple(xs)), App(symbol, tuple(swapped)))))


def semilattice_ordered_violation(alg: FiniteAlgebra, join: str = JOIN) -> Optional[Tuple[str, Dict[int, int]]]:
    """First failed law of a semilattice-ordered algebra with join ``join``, or None."""
    if join not in alg.tables:
        raise UnknownSymbol(join)
    laws: List[Tuple[str, Identity]] = [
        (f"associativity of {join}", associative_identity(join)),
        (f"commutativity of {join}", commutative_identity(join)),
        (f"idempotency of {join}", idempotent_identity(join)),
    ]
    for symbol, arity in alg.signature.ops:
        if symbol == join:
            continue
        for coordinate in range(arity):
            laws.append(
                (f"distributivity of {symbol} over {join} in argument {coordinate + 1}",
                 distributive_identity(symbol, arity, coordinate, join))
            )
    for name, law in laws:
        witness = identity_witness(alg, law)
        if witness is not None:
            return name, witness
    return None


# ---------------------------------------------------------------------------
# Maps and generated substructures
# ---------------------------------------------------------------------------

def enumerate_endomorphisms(alg: FiniteAlgebra, cap: Optional[int] = None) -> List[Tuple[int, ...]]:
    """All self-maps commuting with every operation, in lexicographic order.

    Backtracking assigns images to 0, 1, ... in turn; a table constraint is
    tested as soon as every element it mentions has an image.
    """
    cap = config.CAPS.endomorphisms if cap is None else cap
    n = alg.size
    if n > cap:
        raise CapExceeded(f"endomorphisms of {alg.name}", n, cap)

    checks: List[List[Tuple[List[int], Tuple[int, ...], int]]] = [[] for _ in range(n)]
    for symbol, arity in alg.signature.ops:
        flat = alg.flat_table(symbol)
        for pos, args in enumerate(itertools.product(range(n), repeat=arity)):
            result = flat[pos]
            checks[max(args + (result,))].append((flat, args, result))

    image = [0] * n
    found: List[Tuple[int, ...]] = []

    def consistent(i: int) -> bool:
        for flat, args, result in checks[i]:
            idx = 0
            for a in args:
                idx = idx * n + image[a]
            if flat[idx] != image[result]:
                return False
        return True

    def extend(i: int) -> None:
        if i == n:
            found.append(tuple(image))
            return
        for value in range(n):
            image[i] = value
            if consistent(i):
                extend(i + 1)

    extend(0)
    logger.debug("%s: %d endomorphisms", alg.name, len(found))
    return found


def is_homomorphism(src: FiniteAlgebra, dst: FiniteAlgebra, f: Sequence[int]) -> bool:
    """Does ``f`` commute with every operation of ``src`` (looked up by symbol in ``dst``)?"""
    image = np.asarray(f, dtype=np.int64)
    if image.shape != (src.size,):
        raise SizeMismatch(f"map has {image.size} entries, {src.name} has {src.size} elements")
    if image.size and (image.min() < 0 or image.max() >= dst.size):
        return False
    for symbol, arity in src.signature.ops:
        target = dst.table(symbol)
        if target.ndim != arity:
            raise ArityMismatch(symbol, arity, target.ndim)
        lhs = image[src.tables[symbol]]
        rhs = target[np.ix_(*([image] * arity))] if arity else target[()]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def generate_subalgebra(alg: FiniteAlgebra, seed: int) -> int:
    """Least superset of ``seed`` closed under every operation (constants included)."""
    current = seed
    for symbol, arity in alg.signature.ops:
        if arity == 0:
            current |= 1 << int(alg.tables[symbol][()])
    while True:
        members = subsets.elements(current)
        grown = current
        for symbol, arity in alg.signature.ops:
            if arity == 0 or not members:
                continue
            values = np.unique(alg.tables[symbol][np.ix_(*([members] * arity))])
            grown |= subsets.from_elements(values.tolist())
        if grown == current:
            return current
        current = grown


class ModeClass(NamedTuple):
    idempotent: bool
    entropic: bool


def classify_mode(alg: FiniteAlgebra) -> ModeClass:
    n = alg.size
    diagonal = np.arange(n)
    idempotent = True
    for symbol, arity in alg.signature.ops:
        table = alg.tables[symbol]
        if arity == 0:
            ok = n == 1
        else:
            ok = bool(np.array_equal(table[(diagonal,) * arity], diagonal))
        if not ok:
            idempotent = False
            break
    ops = alg.signature.ops
    entropic = all(
        holds_identity(alg, entropic_identity(s1, k1, s2, k2))
        for i, (s1, k1) in enumerate(ops)
        for (s2, k2) in ops[i:]
    )
    return ModeClass(idempotent, entropic)


def is_mode(alg: FiniteAlgebra) -> bool:
    mode = classify_mode(alg)
    return mode.idempotent and mode.entropic


def enumerate_terms(
    signature: Signature, variables: int, depth: int, cap: Optional[int] = None
) -> List[Term]:
    """Every term of depth <= ``depth`` over ``x0..x(variables-1)``, by depth then structure."""
    cap = config.CAPS.terms if cap is None else cap
    terms: List[Term] = [Var(i) for i in range(variables)]
    newest = set(terms)
    for level in range(1, depth + 1):
        fresh: List[Term] = []
        for symbol, arity in signature.ops:
            if arity == 0:
                if level == 1:
                    fresh.append(App(symbol, ()))
                continue
            for args in itertools.product(terms, repeat=arity):
                if not any(arg in newest for arg in args):
                    continue
                fresh.append(App(symbol, args))
                if len(terms) + len(fresh) > cap:
                    raise CapExceeded(f"terms of depth {depth}", len(terms) + len(fresh), cap)
        terms.extend(fresh)
        newest = set(fresh)
    return terms


# ---------------------------------------------------------------------------
# Partitions and quotients
# ---------------------------------------------------------------------------

class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class Partition:
    """Block label per element, labels numbered by first occurrence."""

    blocks: Tuple[int, ...]

    def __post_init__(self) -> None:
        blocks = tuple(int(b) for b in self.blocks)
        seen = -1
        for label in blocks:
            if label > seen + 1 or label < 0:
                raise ValueError(f"partition labels {blocks} are not in first-occurrence form")
            seen = max(seen, label)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable]) -> "Partition":
        numbering: Dict[Hashable, int] = {}
        return cls(tuple(numbering.setdefault(label, len(numbering)) for label in labels))

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]], n: int) -> "Partition":
        labels: List[Optional[int]] = [None] * n
        for i, block in enumerate(classes):
            for x in block:
                if labels[x] is not None:
                    raise ValueError(f"element {x} listed twice")
                labels[x] = i
        if any(label is None for label in labels):
            raise ValueError("classes do not cover the carrier")
        return cls.from_labels(labels)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def count(self) -> int:
        return max(self.blocks, default=-1) + 1

    def is_discrete(self) -> bool:
        return self.count == self.size

    def is_total(self) -> bool:
        return self.count <= 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.blocks, dtype=np.int64)

    def classes(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.count)]
        for x, label in enumerate(self.blocks):
            out[label].append(x)
        return out

    def representatives(self) -> Tuple[int, ...]:
        return tuple(block[0] for block in self.classes())

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def refines(self, other: "Partition") -> bool:
        """Every block of self lies inside a block of other."""
        if self.size != other.size:
            raise SizeMismatch("partitions of different carriers")
        target: Dict[int, int] = {}
        return all(target.setdefault(a, b) == b for a, b in zip(self.blocks, other.blocks))

    def meet(self, other: "Partition") -> "Partition":
        if self.size != other.size:
            raise SizeMismatch("partitions of different carriers")
        return Partition.from_labels(zip(self.blocks, other.blocks))

    def join(self, other: "Partition") -> "Partition":
        if self.size != other.size:
            raise SizeMismatch("partitions of different carriers")
        uf = UnionFind(self.size)
        for part in (self, other):
            for block in part.classes():
                for x in block[1:]:
                    uf.union(block[0], x)
        return Partition.from_labels(uf.find(x) for x in range(self.size))

    def render(self, labels: Optional[Sequence[str]] = None) -> str:
        name = (lambda x: labels[x]) if labels else str
        return "|".join(",".join(name(x) for x in block) for block in self.classes())


def quotient_algebra(alg: FiniteAlgebra, part: Partition, name: Optional[str] = None) -> FiniteAlgebra:
    """Blocks in canonical order; each operation read off representatives and re-verified."""
    if part.size != alg.size:
        raise SizeMismatch(f"partition of {part.size} elements for {alg.name} of size {alg.size}")
    block = part.as_array()
    reps = np.asarray(part.representatives(), dtype=np.int64)
    tables: Dict[str, np.ndarray] = {}
    for symbol, arity in alg.signature.ops:
        mapped = block[alg.tables[symbol]]
        if arity == 0:
            tables[symbol] = mapped
            continue
        table = mapped[np.ix_(*([reps] * arity))]
        expected = table[np.ix_(*([block] * arity))]
        bad = np.argwhere(mapped != expected)
        if bad.size:
            args = tuple(int(v) for v in bad[0])
            raise NotACongruence(
                f"{symbol} is not well defined on the blocks of {part.render(alg.labels)}",
                witness={"symbol": symbol, "args": [alg.label(a) for a in args]},
            )
        tables[symbol] = table
    labels = tuple("[" + alg.label(int(r)) + "]" for r in reps)
    return FiniteAlgebra(name or f"{alg.name}/~", part.count, alg.signature, tables, labels)


# ---------------------------------------------------------------------------
# Free presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FreePresentation:
    """A finite free algebra with a canonical term per element over its generators."""

    algebra: FiniteAlgebra
    generators: Tuple[int, ...]
    representatives: Tuple[Term, ...]
    generator_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        alg = self.algebra
        if len(self.representatives) != alg.size:
            raise InvariantViolation(f"{alg.name}: need one representative per element")
        env = self.env
        for element, term in enumerate(self.representatives):
            value = eval_term(alg, term, env)
            if value != element:
                raise InvariantViolation(
                    f"{alg.name}: representative {render_term(term, self.generator_names)} "
                    f"evaluates to {alg.label(value)}, not {alg.label(element)}"
                )

    @property
    def env(self) -> Dict[int, int]:
        return dict(enumerate(self.generators))

    def representative(self, element: int) -> Term:
        return self.representatives[element]

    def render(self, t: Term) -> str:
        return render_term(t, self.generator_names)
