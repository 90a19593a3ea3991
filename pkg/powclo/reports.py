# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

__all__ = ("Status", "ConditionCheck", "ConditionReport", "ClaimRecord", "SuiteReport")

Status = Literal["pass", "fail", "skipped"]


class ConditionCheck(BaseModel):
    name: str
    status: Status
    witness: Optional[str] = None
    reason: Optional[str] = None
    bounds: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _consistent(self) -> "ConditionCheck":
        if self.status == "fail" and not self.witness:
            raise ValueError(f"{self.name}: a failed check needs a witness")
        if self.status == "pass" and not self.bounds:
            raise ValueError(f"{self.name}: a passed check needs its bounds")
        if self.status == "skipped" and not self.reason:
            raise ValueError(f"{self.name}: a skipped check needs a reason")
        return self


class ConditionReport(BaseModel):
    operator: str
    base: str
    checks: List[ConditionCheck]
    notes: List[str] = Field(default_factory=list)

    def check(self, name: str) -> ConditionCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def passed(self, name: str) -> bool:
        return self.check(name).status == "pass"

    @property
    def in_clo(self) -> bool:
        return self.passed("empty_preserving") and self.passed("compatibility")

    @property
    def in_clo_fi(self) -> bool:
        return self.in_clo and self.passed("substitution")

    @property
    def in_clo_fi0(self) -> bool:
        return self.in_clo_fi and self.passed("separation") and self.passed("term_stability")

    def render_text(self) -> str:
        lines = [f"{self.operator} on {self.base}"]
        for item in self.checks:
            line = f"  {item.name:<17} {item.status}"
            if item.witness:
                line += f"  witness: {item.witness}"
            if item.reason:
                line += f"  ({item.reason})"
            lines.append(line)
        lines.extend(f"  note: {note}" for note in self.notes)
        return "\n".join(lines)


class ClaimRecord(BaseModel):
    claim: str
    anchor: str
    status: Status
    witness: Optional[str] = None
    detail: Optional[str] = None
    bounds: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _consistent(self) -> "ClaimRecord":
        if self.status == "pass" and not self.bounds:
            raise ValueError(f"{self.claim}: a passed claim needs its bounds")
        if self.status == "skipped" and "cap" not in self.bounds:
            raise ValueError(f"{self.claim}: a skipped claim carries the exceeded cap")
        if self.status == "fail" and not self.witness:
            raise ValueError(f"{self.claim}: a failed claim needs a witness")
        return self


class SuiteReport(BaseModel):
    suite: str
    claims: List[ClaimRecord]
    notes: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(claim.status != "fail" for claim in self.claims)

    def count(self, status: str) -> int:
        return sum(1 for claim in self.claims if claim.status == status)

    def render_text(self) -> str:
        lines = [f"[suite] {self.suite}"]
        for claim in self.claims:
            line = f"  [{claim.status}] {claim.claim}"
            if claim.detail:
                line += f": {claim.detail}"
            lines.append(line)
            if claim.witness:
                lines.append(f"      witness: {claim.witness}")
        lines.extend(f"  note: {note}" for note in self.notes)
        lines.append(
            f"[report] {self.count('pass')} pass, {self.count('fail')} fail, {self.count('skipped')} skipped"
        )
        return "\n".join(lines)
