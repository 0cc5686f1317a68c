"""
The Permutation value type and its text format.

Text format: digits concatenated when n <= 9 ("2413"), comma-separated otherwise
("2,21,4,19,..."). The parser accepts both, plus whitespace separators, and "ε"/"e"/"" for
the empty permutation.
"""
import re
from typing import Any, Iterable, Sequence

from pydantic_core import core_schema

from src.errors import PermutationParseError

EMPTY_TEXT = "ε"
_EMPTY_ALIASES = {"", "ε", "e", "eps", "epsilon"}
_SEPARATORS = re.compile(r"[,\s]+")


class Permutation(tuple):
    """One-line notation of a bijection on {1..n}; n = 0 is the empty permutation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] | str = ()) -> "Permutation":
        if isinstance(values, Permutation):
            return values
        if isinstance(values, str):
            return parse_permutation(values)
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise PermutationParseError(f"Not a permutation of 1..{len(vals)}: {vals}")
        return tuple.__new__(cls, vals)

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation('{format_permutation(self)}')"

    @classmethod
    def __get_pydantic_core_schema__(cls, source: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            _coerce,
            serialization=core_schema.plain_serializer_function_ser_schema(format_permutation),
        )

    @classmethod
    def __get_pydantic_json_schema__(cls, schema: Any, handler: Any) -> dict[str, Any]:
        return {"type": "string", "description": "Permutation in one-line text form, e.g. 2413 or 2,10,1,..."}


def make(values: Iterable[int]) -> Permutation:
    """Wrap values already known to be a permutation (no validation; internal hot paths)."""
    return tuple.__new__(Permutation, values)


def _coerce(value: Any) -> Permutation:
    if isinstance(value, Permutation):
        return value
    return Permutation(value)


def parse_permutation(text: str) -> Permutation:
    """Parse text form. Raises PermutationParseError on anything that is not a permutation."""
    t = text.strip()
    if t in _EMPTY_ALIASES:
        return make(())
    if _SEPARATORS.search(t):
        tokens = [tok for tok in _SEPARATORS.split(t) if tok]
    else:
        tokens = list(t)
    if not all(tok.isdigit() for tok in tokens):
        raise PermutationParseError(f"Cannot parse permutation: {text!r}")
    vals = [int(tok) for tok in tokens]
    if sorted(vals) != list(range(1, len(vals) + 1)):
        raise PermutationParseError(f"Not a permutation of 1..{len(vals)}: {text!r}")
    return make(vals)


def format_permutation(p: Sequence[int]) -> str:
    if len(p) == 0:
        return EMPTY_TEXT
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def standardize(seq: Sequence[int]) -> Permutation:
    """The permutation order-isomorphic to a sequence of distinct integers."""
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for rank, idx in enumerate(order, 1):
        out[idx] = rank
    return make(out)
