import logging

import pytest

from powclo import config
from powclo.config import DEFAULT_CAPS, load_caps
from powclo.errors import ConfigError


def test_empty_string_gives_defaults():
    assert load_caps("") == DEFAULT_CAPS
    assert load_caps(" , ") == DEFAULT_CAPS


def test_pairs_override_defaults():
    caps = load_caps("power_base=3, endomorphisms = 6")
    assert caps.power_base == 3
    assert caps.endomorphisms == 6
    assert caps.congruences == DEFAULT_CAPS.congruences


def test_environment_is_read(monkeypatch):
    monkeypatch.setenv("POWCLO_CAPS", "terms=100")
    assert load_caps().terms == 100


@pytest.mark.parametrize("raw", ["power_base", "colours=3", "power_base=four", "power_base=0"])
def test_bad_caps(raw):
    with pytest.raises(ConfigError):
        load_caps(raw)


def test_raising_a_cap_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="powclo.config"):
        caps = load_caps("power_base=6")
    assert caps.power_base == 6
    assert "power_base raised to 6" in caplog.text


def test_lowering_a_cap_is_silent(caplog):
    with caplog.at_level(logging.WARNING, logger="powclo.config"):
        load_caps("power_base=2")
    assert caplog.records == []


def test_configure_makes_the_caps_current(monkeypatch):
    monkeypatch.setattr(config, "CAPS", DEFAULT_CAPS)
    caps = config.configure("power_base=2")
    assert config.CAPS is caps
    assert caps.power_base == 2


def test_configure_keeps_the_current_caps_on_error(monkeypatch):
    monkeypatch.setattr(config, "CAPS", DEFAULT_CAPS)
    with pytest.raises(ConfigError):
        config.configure("colours=3")
    assert config.CAPS is DEFAULT_CAPS
