# -*- coding: utf-8 -*-
"""JSON algebra files.

    {
      "name": "SL3V",
      "carrier": 3,
      "labels": ["0", "a", "b"],
      "ops": [{"symbol": "m", "arity": 2, "table": [0, 0, 0, 0, 1, 0, 0, 0, 2]}],
      "relations": []
    }

Tables are flattened row-major; relations list their tuples.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from .algebra import FiniteAlgebra, Signature
from .errors import AlgebraFileError, PowcloError
from .power import Relation, RelationStructure

__all__ = ("OpSpec", "RelationSpec", "AlgebraFile", "load_algebra_file", "dump_algebra_json", "dump_algebra_file")

logger = logging.getLogger(__name__)


class OpSpec(BaseModel):
    symbol: str
    arity: int = Field(ge=0)
    table: List[int]


class RelationSpec(BaseModel):
    symbol: str
    arity: int = Field(ge=1)
    tuples: List[List[int]] = Field(default_factory=list)


class AlgebraFile(BaseModel):
    name: str
    carrier: int = Field(ge=1)
    ops: List[OpSpec] = Field(default_factory=list)
    relations: List[RelationSpec] = Field(default_factory=list)
    labels: Optional[List[str]] = None
    extended: bool = False

    @field_validator("ops")
    @classmethod
    def _distinct_symbols(cls, ops: List[OpSpec]) -> List[OpSpec]:
        symbols = [op.symbol for op in ops]
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate operation symbols {symbols}")
        return ops

    def to_algebra(self) -> FiniteAlgebra:
        signature = Signature(tuple((op.symbol, op.arity) for op in self.ops), extended=self.extended)
        tables = {op.symbol: op.table for op in self.ops}
        return FiniteAlgebra(self.name, self.carrier, signature, tables, tuple(self.labels) if self.labels else None)

    def to_relation_structure(self) -> RelationStructure:
        relations = tuple(
            Relation(rel.symbol, rel.arity, frozenset(tuple(t) for t in rel.tuples)) for rel in self.relations
        )
        return RelationStructure(self.name, self.carrier, relations)

    @classmethod
    def from_algebra(cls, alg: FiniteAlgebra) -> "AlgebraFile":
        return cls(
            name=alg.name,
            carrier=alg.size,
            ops=[OpSpec(symbol=s, arity=a, table=alg.flat_table(s)) for s, a in alg.signature.ops],
            labels=list(alg.labels) if alg.labels else None,
            extended=alg.signature.extended,
        )


def load_algebra_file(path: Union[str, Path]) -> AlgebraFile:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise AlgebraFileError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    try:
        spec = AlgebraFile.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise AlgebraFileError(f"{path}: {where}: {first['msg']}") from None
    try:
        spec.to_algebra()
        if spec.relations:
            spec.to_relation_structure()
    except PowcloError as exc:
        raise AlgebraFileError(f"{path}: {exc}", witness=exc.witness) from None
    logger.debug("loaded %s from %s", spec.name, path)
    return spec


def dump_algebra_json(alg: FiniteAlgebra) -> str:
    return AlgebraFile.from_algebra(alg).model_dump_json(indent=2, exclude_none=True)


def dump_algebra_file(alg: FiniteAlgebra, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_algebra_json(alg) + "\n", encoding="utf-8")
    logger.info("wrote %s to %s", alg.name, path)
