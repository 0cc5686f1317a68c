from pathlib import Path

import pytest

from src import config


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    for key in ("PERMMOB_RECURSIVE_CAP", "PERMMOB_DENSITY_CAP", "PERMMOB_THREADS", "PERMMOB_ENGINE", "PERMMOB_CACHE_PATH"):
        monkeypatch.delenv(key, raising=False)
    assert config.recursive_cap() == 16
    assert config.density_cap() == 9
    assert config.default_threads() == 1
    assert config.get_engine() == "recursive"
    assert config.get_cache_path() == Path("outputs/mobius_cache.json")


def test_blank_value_falls_back_to_default(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PERMMOB_GROWTH_CAP", "  ")
    assert config.growth_cap() == 60


def test_invalid_caps(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PERMMOB_DOWNSET_CAP", "lots")
    with pytest.raises(ValueError, match="PERMMOB_DOWNSET_CAP"):
        config.downset_cap()
    monkeypatch.setenv("PERMMOB_DOWNSET_CAP", "0")
    with pytest.raises(ValueError, match="positive"):
        config.downset_cap()
    monkeypatch.setenv("PERMMOB_DOWNSET_CAP", " 12 ")
    assert config.downset_cap() == 12


def test_engine_choice(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PERMMOB_ENGINE", "Hall")
    assert config.get_engine() == "hall"
    monkeypatch.setenv("PERMMOB_ENGINE", "fastest")
    with pytest.raises(ValueError, match="PERMMOB_ENGINE"):
        config.get_engine()


def test_cache_path_from_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv("PERMMOB_CACHE_PATH", str(tmp_path / "c.json"))
    assert config.get_cache_path() == tmp_path / "c.json"
