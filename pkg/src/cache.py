"""Persistent result cache for the CLI: canonical (lower, upper) text -> value and method."""
import hashlib
import json
from pathlib import Path
from typing import Dict, Literal, Optional, Sequence, Union

from pydantic import ValidationError

from src import config
from src.mobius_engines import joint_key
from src.perm_core import format_permutation
from src.schemas import CacheEntry, CacheFile, MobiusResult, OscillationDescriptor

LoadStatus = Literal["loaded", "missing", "corrupt", "version_mismatch"]
Operand = Union[Sequence[int], OscillationDescriptor]


def checksum(entries: Dict[str, CacheEntry]) -> str:
    canonical = json.dumps({k: v.model_dump() for k, v in entries.items()}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def pair_key(lower: Operand, upper: Operand, method: str = "auto") -> str:
    """Joint canonical form for explicit pairs; descriptors are keyed by name."""
    if isinstance(lower, OscillationDescriptor) or isinstance(upper, OscillationDescriptor):
        parts = [f"{x.shape}_{x.n}" if isinstance(x, OscillationDescriptor) else format_permutation(x) for x in (lower, upper)]
    else:
        parts = [format_permutation(x) for x in joint_key(lower, upper)]
    return f"{parts[0]}|{parts[1]}|{method}"


class ResultCache:
    def __init__(self, path: Path) -> None:
        self.path = path
        self.entries: Dict[str, CacheEntry] = {}
        self.dirty = False

    def load(self) -> LoadStatus:
        if not self.path.exists():
            return "missing"
        try:
            stored = CacheFile.model_validate_json(self.path.read_text(encoding="utf-8"))
        except (ValidationError, ValueError):
            return "corrupt"
        if stored.version != config.ENGINE_VERSION:
            # a version bump clears the cache
            return "version_mismatch"
        if stored.checksum != checksum(stored.entries):
            return "corrupt"
        self.entries = dict(stored.entries)
        return "loaded"

    def get(self, lower: Operand, upper: Operand, method: str = "auto") -> Optional[CacheEntry]:
        return self.entries.get(pair_key(lower, upper, method))

    def put(self, lower: Operand, upper: Operand, result: MobiusResult, method: str = "auto") -> None:
        self.entries[pair_key(lower, upper, method)] = CacheEntry(value=result.value, method=result.method)
        self.dirty = True

    def save(self) -> Path:
        ordered = dict(sorted(self.entries.items()))
        payload = CacheFile(version=config.ENGINE_VERSION, checksum=checksum(ordered), entries=ordered)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(payload.model_dump_json(indent=2), encoding="utf-8")
        self.dirty = False
        return self.path

    def __len__(self) -> int:
        return len(self.entries)
