# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
import os
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

__all__ = ("Caps", "DEFAULT_CAPS", "CAPS", "load_caps", "configure")

logger = logging.getLogger(__name__)

load_dotenv()


class Caps(BaseModel):
    """Enumeration ceilings. Every capped call also takes an explicit ``cap=``."""

    endomorphisms: int = Field(8, ge=1)
    power_base: int = Field(4, ge=1)
    congruence_power_base: int = Field(3, ge=1)
    congruences: int = Field(10, ge=1)
    partition_oracle: int = Field(7, ge=1)
    free_generators: int = Field(4, ge=1)
    termstab_assignments: int = Field(300_000, ge=1)
    terms: int = Field(5_000, ge=1)
    identity_assignments: int = Field(1 << 28, ge=1)


DEFAULT_CAPS = Caps()


def _parse_pairs(raw: str) -> Dict[str, int]:
    pairs: Dict[str, int] = {}
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise ConfigError(f"POWCLO_CAPS entry {chunk!r} is not key=value")
        key = key.strip()
        if key not in Caps.model_fields:
            raise ConfigError(f"POWCLO_CAPS: unknown cap {key!r}")
        try:
            pairs[key] = int(value.strip())
        except ValueError:
            raise ConfigError(f"POWCLO_CAPS: {key} must be an integer, got {value.strip()!r}") from None
    return pairs


def load_caps(raw: Optional[str] = None) -> Caps:
    """Caps from ``raw`` or the ``POWCLO_CAPS`` environment variable."""
    if raw is None:
        raw = os.environ.get("POWCLO_CAPS", "")
    pairs = _parse_pairs(raw)
    try:
        caps = Caps(**pairs)
    except ValidationError as exc:
        raise ConfigError(f"POWCLO_CAPS: {exc.errors()[0]['msg']}") from None
    for key, value in pairs.items():
        if value > getattr(DEFAULT_CAPS, key):
            logger.warning("cap %s raised to %d (default %d); potentially slow", key, value, getattr(DEFAULT_CAPS, key))
    return caps


# Defaults until configure() reads POWCLO_CAPS.
CAPS = DEFAULT_CAPS


def configure(raw: Optional[str] = None) -> Caps:
    """Load the caps and make them current. Raises ConfigError on a bad ``POWCLO_CAPS``."""
    global CAPS
    CAPS = load_caps(raw)
    return CAPS
