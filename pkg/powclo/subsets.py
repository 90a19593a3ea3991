# -*- coding: utf-8 -*-
"""Subsets of a carrier {0..n-1} as int bitmasks (element i <-> bit i)."""
from __future__ import annotations

from typing import Iterable, Iterator, List, Optional, Sequence

__all__ = (
    "full",
    "from_elements",
    "elements",
    "size",
    "singleton",
    "is_subset",
    "nonempty",
    "submasks",
    "format_subset",
    "parse_elements",
)


def full(n: int) -> int:
    return (1 << n) - 1


def from_elements(items: Iterable[int]) -> int:
    code = 0
    for item in items:
        code |= 1 << item
    return code


def elements(code: int) -> List[int]:
    out: List[int] = []
    i = 0
    while code:
        if code & 1:
            out.append(i)
        code >>= 1
        i += 1
    return out


def size(code: int) -> int:
    return code.bit_count()


def singleton(a: int) -> int:
    return 1 << a


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def nonempty(n: int) -> range:
    return range(1, 1 << n)


def submasks(code: int) -> Iterator[int]:
    """Nonempty submasks of ``code`` in decreasing order."""
    sub = code
    while sub:
        yield sub
        sub = (sub - 1) & code


def format_subset(code: int, labels: Optional[Sequence[str]] = None) -> str:
    names = [labels[i] if labels else str(i) for i in elements(code)]
    return "{" + ",".join(names) + "}"


def parse_elements(text: str, n: int, labels: Optional[Sequence[str]] = None) -> int:
    """Read ``"0,2"`` or ``"a,b"`` (labels) into a subset code; empty text is the empty set."""
    code = 0
    for raw in text.replace("{", "").replace("}", "").split(","):
        token = raw.strip()
        if not token:
            continue
        if labels and token in labels:
            code |= 1 << labels.index(token)
            continue
        try:
            value = int(token)
        except ValueError:
            raise ValueError(f"unknown element {token!r}") from None
        if not 0 <= value < n:
            raise ValueError(f"element {value} outside carrier of size {n}")
        code |= 1 << value
    return code
