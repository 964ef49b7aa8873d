import pytest

from src import config


def test_defaults_when_unset(monkeypatch):
    monkeypatch.delenv("ISING_ORDER_BOUND", raising=False)
    assert config._int_setting("ISING_ORDER_BOUND", 1024) == 1024
    monkeypatch.setenv("ISING_ORDER_BOUND", "  ")
    assert config._int_setting("ISING_ORDER_BOUND", 1024) == 1024


def test_values_are_read_from_environment(monkeypatch):
    monkeypatch.setenv("ISING_ELEMENT_LIMIT", "500")
    monkeypatch.setenv("ISING_ORACLE_GAMMA", "0.25")
    assert config._int_setting("ISING_ELEMENT_LIMIT", 10) == 500
    assert config._float_setting("ISING_ORACLE_GAMMA", 0.125) == 0.25


@pytest.mark.parametrize("raw", ["ten", "0", "-3"])
def test_malformed_integer_setting(monkeypatch, raw):
    monkeypatch.setenv("ISING_ORACLE_STEPS", raw)
    with pytest.raises(ValueError, match="ISING_ORACLE_STEPS"):
        config._int_setting("ISING_ORACLE_STEPS", 4096, minimum=8)


def test_malformed_float_setting(monkeypatch):
    monkeypatch.setenv("ISING_ORACLE_GAMMA", "an eighth")
    with pytest.raises(ValueError, match="ISING_ORACLE_GAMMA"):
        config._float_setting("ISING_ORACLE_GAMMA", 0.125)
