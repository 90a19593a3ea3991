# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Any, Optional

__all__ = (
    "PowcloError",
    "ConfigError",
    "CapExceeded",
    "SignatureError",
    "UnknownSymbol",
    "ArityMismatch",
    "UnboundVariable",
    "HasConstants",
    "EmptyArgument",
    "SizeMismatch",
    "NotACongruence",
    "NotAMode",
    "NotAssociative",
    "NotNSemigroup",
    "NotASemilattice",
    "NoLeastElement",
    "TildeMismatch",
    "IllDefined",
    "Condition241Failed",
    "ClosureAxiomError",
    "InvariantViolation",
    "IdentitySyntaxError",
    "AlgebraFileError",
    "UnknownSuite",
)


class PowcloError(Exception):
    """Base error. ``exit_code`` is what the command line reports for it."""

    exit_code = 2

    def __init__(self, message: str, *, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.witness = witness


class ConfigError(PowcloError):
    pass


class CapExceeded(PowcloError):
    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class SignatureError(PowcloError):
    pass


class UnknownSymbol(SignatureError):
    def __init__(self, symbol: str, *, line: Optional[int] = None, col: Optional[int] = None) -> None:
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"unknown operation symbol {symbol!r}{where}")
        self.symbol = symbol
        self.line = line
        self.col = col


class ArityMismatch(SignatureError):
    def __init__(
        self,
        symbol: str,
        expected: int,
        got: int,
        *,
        line: Optional[int] = None,
        col: Optional[int] = None,
    ) -> None:
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{symbol!r} takes {expected} argument(s), got {got}{where}")
        self.symbol = symbol
        self.expected = expected
        self.got = got
        self.line = line
        self.col = col


class UnboundVariable(PowcloError):
    pass


class HasConstants(SignatureError):
    pass


class EmptyArgument(PowcloError):
    pass


class SizeMismatch(PowcloError):
    pass


class NotACongruence(PowcloError):
    exit_code = 1


class NotAMode(PowcloError):
    pass


class NotAssociative(PowcloError):
    pass


class NotNSemigroup(PowcloError):
    pass


class NotASemilattice(PowcloError):
    pass


class NoLeastElement(PowcloError):
    pass


class TildeMismatch(PowcloError):
    pass


class IllDefined(PowcloError):
    exit_code = 1


class Condition241Failed(PowcloError):
    exit_code = 1


class ClosureAxiomError(PowcloError):
    exit_code = 1


class InvariantViolation(PowcloError):
    """A construction produced something its own laws rule out."""

    exit_code = 1


class IdentitySyntaxError(PowcloError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class AlgebraFileError(PowcloError):
    pass


class UnknownSuite(PowcloError):
    pass
