"""Helpers: run ids, output folders and permutation arguments."""
import uuid
from datetime import datetime, timezone
from pathlib import Path

from src.errors import PermutationParseError
from src.perm_core import Permutation, parse_permutation


def generate_run_id() -> str:
    """UTC timestamp plus a short random suffix, so run folders sort by start time."""
    stamp = datetime.now(tz=timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
    return f"{stamp}-{uuid.uuid4().hex[:8]}"


def ensure_output_dir(base_out: str | Path, run_id: str) -> Path:
    out_dir = Path(base_out) / run_id
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def read_permutation_arg(text: str) -> Permutation:
    """
    Parse a permutation argument. "@path" reads it from a file instead: lines starting
    with "#" are ignored and the rest are joined, so a long permutation can be wrapped.
    """
    if not text.startswith("@"):
        return parse_permutation(text)
    p = Path(text[1:])
    if not p.is_file():
        raise PermutationParseError(f"Permutation file not found: {p}")
    lines = [line.strip() for line in p.read_text(encoding="utf-8").splitlines()]
    body = " ".join(line for line in lines if line and not line.startswith("#"))
    return parse_permutation(body)
