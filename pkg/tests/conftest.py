from __future__ import annotations

from pathlib import Path

import pytest

from powclo import fixtures
from powclo.algebra import FiniteAlgebra
from powclo.power import PowerAlgebra, build_extended_power

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def algebras_dir() -> Path:
    return ROOT / "algebras"


@pytest.fixture
def data_dir() -> Path:
    return Path(__file__).resolve().parent / "data"


@pytest.fixture
def sl2() -> FiniteAlgebra:
    return fixtures.sl2()


@pytest.fixture
def sl3v() -> FiniteAlgebra:
    return fixtures.sl3v()


@pytest.fixture
def lz2() -> FiniteAlgebra:
    return fixtures.lz2()


@pytest.fixture
def chain3() -> FiniteAlgebra:
    return fixtures.chain3()


@pytest.fixture
def lzrz() -> FiniteAlgebra:
    return fixtures.lzrz()


@pytest.fixture
def z2() -> FiniteAlgebra:
    return fixtures.z2()


@pytest.fixture
def p_sl2(sl2: FiniteAlgebra) -> PowerAlgebra:
    return build_extended_power(sl2, cap=4)


@pytest.fixture
def p_sl3v(sl3v: FiniteAlgebra) -> PowerAlgebra:
    return build_extended_power(sl3v, cap=4)
