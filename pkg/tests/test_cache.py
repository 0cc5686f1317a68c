import json
from pathlib import Path

from src.cache import ResultCache, pair_key
from src.schemas import MobiusResult, OscillationDescriptor


def test_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "cache" / "mobius_cache.json"
    cache = ResultCache(path)
    assert cache.load() == "missing"
    cache.put((1,), (2, 4, 1, 3), MobiusResult(value=-3, method="inc_osc"))
    assert cache.dirty
    cache.save()
    assert not cache.dirty

    again = ResultCache(path)
    assert again.load() == "loaded"
    assert len(again) == 1
    entry = again.get((1,), (2, 4, 1, 3))
    assert entry is not None
    assert (entry.value, entry.method) == (-3, "inc_osc")


def test_symmetric_pairs_share_a_key() -> None:
    assert pair_key((1,), (2, 4, 1, 3)) == pair_key((1,), (3, 1, 4, 2))
    assert pair_key((1,), (2, 4, 1, 3)) != pair_key((1,), (2, 4, 1, 3), "hall")


def test_descriptor_key() -> None:
    key = pair_key((1,), OscillationDescriptor(shape="W", n=100_000))
    assert key == "1|W_100000|auto"


def test_tampered_file_is_corrupt(tmp_path: Path) -> None:
    path = tmp_path / "mobius_cache.json"
    cache = ResultCache(path)
    cache.put((1,), (2, 4, 1, 3), MobiusResult(value=-3, method="inc_osc"))
    cache.save()
    data = json.loads(path.read_text(encoding="utf-8"))
    key = next(iter(data["entries"]))
    data["entries"][key]["value"] = 7
    path.write_text(json.dumps(data), encoding="utf-8")
    reloaded = ResultCache(path)
    assert reloaded.load() == "corrupt"
    assert len(reloaded) == 0


def test_unreadable_file_is_corrupt(tmp_path: Path) -> None:
    path = tmp_path / "mobius_cache.json"
    path.write_text("{not json", encoding="utf-8")
    assert ResultCache(path).load() == "corrupt"


def test_version_mismatch(tmp_path: Path) -> None:
    path = tmp_path / "mobius_cache.json"
    path.write_text(json.dumps({"version": "permmob-0.1", "checksum": "", "entries": {}}), encoding="utf-8")
    assert ResultCache(path).load() == "version_mismatch"
