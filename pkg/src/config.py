"""Runtime configuration: size guards, engine choice and cache location, read from .env."""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load .env from project root (parent of src/) so it works when run as python -m src.run
_project_root = Path(__file__).resolve().parent.parent
load_dotenv(_project_root / ".env")

ENGINE_VERSION = "permmob-1.0"
ENGINES = ("recursive", "hall", "zeta")

DEFAULT_CACHE_PATH = "outputs/mobius_cache.json"

# key -> default; every cap is a positive integer
_INT_DEFAULTS: dict[str, int] = {
    "PERMMOB_DOWNSET_CAP": 22,
    "PERMMOB_CHAIN_CAP": 40,
    "PERMMOB_RECURSIVE_CAP": 16,
    "PERMMOB_DENSITY_CAP": 9,
    "PERMMOB_ADJACENCY_CAP": 11,
    "PERMMOB_GROWTH_CAP": 60,
    "PERMMOB_OSC_CAP": 2_000_000,
    "PERMMOB_REDUCTION_CAP": 12,
    "PERMMOB_THREADS": 1,
}


def _int_setting(key: str) -> int:
    raw = os.getenv(key)
    if raw is None or not raw.strip():
        return _INT_DEFAULTS[key]
    try:
        value = int(raw.strip())
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}. Fix or remove it in .env.") from None
    if value < 1:
        raise ValueError(f"{key} must be positive, got {value}. Fix or remove it in .env.")
    return value


def downset_cap() -> int:
    return _int_setting("PERMMOB_DOWNSET_CAP")


def chain_cap() -> int:
    return _int_setting("PERMMOB_CHAIN_CAP")


def recursive_cap() -> int:
    return _int_setting("PERMMOB_RECURSIVE_CAP")


def density_cap() -> int:
    return _int_setting("PERMMOB_DENSITY_CAP")


def adjacency_cap() -> int:
    return _int_setting("PERMMOB_ADJACENCY_CAP")


def growth_cap() -> int:
    return _int_setting("PERMMOB_GROWTH_CAP")


def oscillation_cap() -> int:
    return _int_setting("PERMMOB_OSC_CAP")


def reduction_cap() -> int:
    return _int_setting("PERMMOB_REDUCTION_CAP")


def default_threads() -> int:
    return _int_setting("PERMMOB_THREADS")


def get_engine() -> str:
    """Return the engine used by principal_mobius (recursive, hall or zeta)."""
    engine = (os.getenv("PERMMOB_ENGINE") or "recursive").strip().lower()
    if engine not in ENGINES:
        raise ValueError(
            f"PERMMOB_ENGINE must be one of {', '.join(ENGINES)}, got {engine!r}. "
            "Set PERMMOB_ENGINE=recursive in .env (hall and zeta are oracles for small intervals)."
        )
    return engine


def get_cache_path() -> Path:
    """Cache file from PERMMOB_CACHE_PATH; relative paths resolve against the working directory."""
    return Path(os.getenv("PERMMOB_CACHE_PATH") or DEFAULT_CACHE_PATH)
