# -*- coding: utf-8 -*-
"""Small named algebras used by the suites, the CLI sample files and the tests."""
from __future__ import annotations

import itertools
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from .algebra import JOIN, FiniteAlgebra, Signature

__all__ = (
    "binary_algebra",
    "sl2",
    "sl3v",
    "lz2",
    "chain3",
    "lzrz",
    "z2",
    "majority3",
    "derived_ternary",
    "sierpinski_closure_algebra",
    "constant_top_closure_algebra",
    "mode_fixtures",
    "base_fixtures",
    "BY_NAME",
)


def binary_algebra(
    name: str,
    n: int,
    fn: Callable[[int, int], int],
    symbol: str = "m",
    labels: Optional[Sequence[str]] = None,
) -> FiniteAlgebra:
    table = np.array([[fn(a, b) for b in range(n)] for a in range(n)], dtype=np.int64)
    return FiniteAlgebra(name, n, Signature(((symbol, 2),)), {symbol: table}, tuple(labels) if labels else None)


def sl2() -> FiniteAlgebra:
    """The 2-element meet semilattice 0 < 1."""
    return binary_algebra("SL2", 2, min)


def sl3v() -> FiniteAlgebra:
    """The V-shaped meet semilattice: a and b meet at 0."""
    return binary_algebra("SL3V", 3, lambda a, b: a if a == b else 0, labels=("0", "a", "b"))


def lz2() -> FiniteAlgebra:
    return binary_algebra("LZ2", 2, lambda a, b: a)


def chain3() -> FiniteAlgebra:
    return binary_algebra("chain3", 3, min)


def lzrz() -> FiniteAlgebra:
    """{0,1} with a left-zero p and a right-zero q."""
    left = np.array([[a for _ in range(2)] for a in range(2)], dtype=np.int64)
    right = np.array([[b for b in range(2)] for _ in range(2)], dtype=np.int64)
    return FiniteAlgebra("LZRZ", 2, Signature((("p", 2), ("q", 2))), {"p": left, "q": right})


def z2() -> FiniteAlgebra:
    """The 2-element group under addition."""
    return binary_algebra("Z2", 2, lambda a, b: (a + b) % 2)


def majority3() -> FiniteAlgebra:
    table = np.zeros((2, 2, 2), dtype=np.int64)
    for a, b, c in itertools.product(range(2), repeat=3):
        table[a, b, c] = 1 if a + b + c >= 2 else 0
    return FiniteAlgebra("MAJ2", 2, Signature((("f", 3),)), {"f": table})


def derived_ternary(alg: FiniteAlgebra, symbol: str = "m", target: str = "f") -> FiniteAlgebra:
    """f(a,b,c) = (a.b).c over a binary operation."""
    m = alg.table(symbol)
    table = m[m[:, :, None], np.arange(alg.size)[None, None, :]]
    return FiniteAlgebra(f"{alg.name}^3", alg.size, Signature(((target, 3),)), {target: table}, alg.labels)


# ---------------------------------------------------------------------------
# Closure algebras on the subsets of {x, y}
# ---------------------------------------------------------------------------

_XY_LABELS = ("{}", "{x}", "{y}", "{x,y}")


def _subset_closure_algebra(name: str, closure: Sequence[int]) -> FiniteAlgebra:
    codes = np.arange(4, dtype=np.int64)
    tables: Dict[str, np.ndarray] = {
        "c": np.asarray(closure, dtype=np.int64),
        JOIN: codes[:, None] | codes[None, :],
    }
    return FiniteAlgebra(name, 4, Signature((("c", 1), (JOIN, 2)), extended=True), tables, _XY_LABELS)


def sierpinski_closure_algebra() -> FiniteAlgebra:
    """Topological closure of the Sierpinski space: the open sets are {}, {x}, {x,y}."""
    return _subset_closure_algebra("sierpinski", (0, 3, 2, 3))


def constant_top_closure_algebra() -> FiniteAlgebra:
    return _subset_closure_algebra("constant-top", (3, 3, 3, 3))


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def mode_fixtures() -> Dict[str, FiniteAlgebra]:
    return {alg.name: alg for alg in (sl2(), sl3v(), chain3(), lzrz())}


def base_fixtures() -> Dict[str, FiniteAlgebra]:
    return {alg.name: alg for alg in (sl2(), sl3v(), lz2(), chain3(), lzrz(), z2())}


BY_NAME: Dict[str, Callable[[], FiniteAlgebra]] = {
    "SL2": sl2,
    "SL3V": sl3v,
    "LZ2": lz2,
    "chain3": chain3,
    "LZRZ": lzrz,
    "Z2": z2,
    "MAJ2": majority3,
}
