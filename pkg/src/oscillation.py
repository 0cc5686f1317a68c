"""
μ[σ, π] for increasing oscillations π, from placement inequalities alone.

The inversion graph of an increasing oscillation is a path whose vertices alternate
between a bottom row and a top row; W_n starts at a bottom vertex, M_n at a top one.
Sum-indecomposable patterns are the sub-paths, so a pattern is fixed by its length L and
its start colour (no colour for 1 and 21). A ⊕-sum of r copies fits in π when the greedy
packing ends by position E_r = f1 + L − 1 + (r − 1)·step, and each flanking 1 costs two
more points. Nothing of length above a few points is ever materialized.
"""
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src import config
from src.errors import NotContainedError, SizeGuardError
from src.families import increasing_oscillation, recognize_oscillation
from src.perm_core import format_permutation, make, sum_components
from src.schemas import ContributingEntry, ContributingSet, OscillationDescriptor, ShapeDescriptor

Colour = Optional[str]  # "B", "T", or None for 1 and 21
Shape = Tuple[Colour, int]  # (start colour, length)

SHAPE_OF_TYPE = {"W": "B", "M": "T"}
TYPE_OF_SHAPE = {"B": "W", "T": "M"}
LISTING_CAP = 2000
# int64 partial sums stay below 2**63 comfortably up to this length
_INT64_SAFE_LENGTH = 2_500_000


# --- Shape descriptors ---

def shape_of(d: OscillationDescriptor) -> ShapeDescriptor:
    n = d.n
    if n == 1:
        raise ValueError("1 is not a shape (it never contributes)")
    if n == 2:
        return ShapeDescriptor(shape="21")
    if d.shape == "W":
        return ShapeDescriptor(shape="tower", k=n // 2 - 1) if n % 2 == 0 else ShapeDescriptor(shape="tower+1", k=(n - 1) // 2)
    if n % 2:
        return ShapeDescriptor(shape="1+tower", k=(n - 1) // 2)
    return ShapeDescriptor(shape="1+tower+1", k=(n - 2) // 2)


def shape_length(s: ShapeDescriptor) -> int:
    return {
        "21": 2,
        "tower": 2 * s.k + 2,
        "tower+1": 2 * s.k + 1,
        "1+tower": 2 * s.k + 1,
        "1+tower+1": 2 * s.k + 2,
    }[s.shape]


def descriptor_of(s: ShapeDescriptor) -> OscillationDescriptor:
    kind = "M" if s.shape in ("1+tower", "1+tower+1") else "W"
    return OscillationDescriptor(shape=kind, n=shape_length(s))


def _shape_colour(s: ShapeDescriptor) -> Colour:
    if s.shape == "21":
        return None
    return SHAPE_OF_TYPE[descriptor_of(s).shape]


# --- Placement inequalities ---

def _first(alpha_colour: Colour, pi_colour: str) -> int:
    return 1 if alpha_colour is None or alpha_colour == pi_colour else 2


def _step(length: int) -> int:
    return length + 1 if length <= 2 or length % 2 else length + 2


def _end(alpha: Shape, pi_colour: str, copies: int) -> int:
    colour, length = alpha
    return _first(colour, pi_colour) + length - 1 + (copies - 1) * _step(length)


def shape_contains(small: Shape, big: Shape) -> bool:
    """Containment between two sub-path shapes."""
    s_colour, k = small
    b_colour, length = big
    if k > length:
        return False
    if s_colour is None:
        return True
    if b_colour is None:
        return False
    return _first(s_colour, b_colour) + k - 1 <= length


def oscillation_weight(sigma: Shape, alpha: Shape, pi_colour: str, m: int) -> Tuple[int, int]:
    """(w, r) of alpha inside the oscillation of colour pi_colour and length m."""
    r = 1
    while _end(alpha, pi_colour, r) + 4 <= m:
        r += 1
    end = _end(alpha, pi_colour, r)
    if not shape_contains(sigma, alpha) or end > m:
        return 0, r
    if end + 2 > m:
        return 1, r
    if _end(alpha, pi_colour, r + 1) > m:
        return -1, r
    return 0, r


def sigma_shape(sigma: Union[Sequence[int], OscillationDescriptor]) -> Optional[Shape]:
    """Shape of a sum-indecomposable σ, or None if no oscillation contains it."""
    if isinstance(sigma, OscillationDescriptor):
        if sigma.n <= 2:
            return (None, sigma.n)
        return (SHAPE_OF_TYPE[sigma.shape], sigma.n)
    p = make(sigma)
    if len(p) == 0:
        raise ValueError("sigma must be non-empty")
    if len(sum_components(p)) > 1:
        raise ValueError(f"sigma must be sum indecomposable, got {format_permutation(p)}")
    if len(p) <= 2:
        return (None, len(p))
    d = recognize_oscillation(p)
    if d is None:
        return None
    return (SHAPE_OF_TYPE[d.shape], d.n)


def k_bounds(
    sigma: Union[Sequence[int], OscillationDescriptor], shape: str, pi: OscillationDescriptor
) -> Optional[Tuple[int, int]]:
    """(smallest k whose shape contains σ, largest k whose shape fits in π), or None if empty."""
    sig = sigma_shape(sigma)
    if sig is None:
        return None
    pi_colour = SHAPE_OF_TYPE[pi.shape]
    if shape == "21":
        alpha = (None, 2)
        ok = shape_contains(sig, alpha) and _end(alpha, pi_colour, 1) <= pi.n
        return (1, 1) if ok else None
    lo: Optional[int] = None
    hi: Optional[int] = None
    k = 1
    while True:
        s = ShapeDescriptor(shape=shape, k=k)
        alpha = (_shape_colour(s), shape_length(s))
        if alpha[1] > pi.n:
            break
        if lo is None and shape_contains(sig, alpha):
            lo = k
        if _end(alpha, pi_colour, 1) <= pi.n:
            hi = k
        k += 1
    if lo is None or hi is None or lo > hi:
        return None
    return lo, hi


# --- Values ---

def _push(acc: np.ndarray, start: int, step: int, amount: int, skip: Optional[int] = None) -> None:
    if skip is not None and start == skip:
        start += step
    if start < acc.shape[0]:
        acc[start::step] += amount


def oscillation_values(sigma: Union[Sequence[int], OscillationDescriptor], n: int) -> Dict[Tuple[str, int], int]:
    """μ[σ, W_m] and μ[σ, M_m] for every 1 <= m <= n, keyed ("W", m) / ("M", m)."""
    cap = config.oscillation_cap()
    if n > cap:
        raise SizeGuardError(f"Refusing an oscillation sweep to length {n} (PERMMOB_OSC_CAP={cap})")
    sig = sigma_shape(sigma)
    values: Dict[Tuple[str, int], int] = {}
    if sig is None:
        return {(t, m): 0 for m in range(1, n + 1) for t in ("W", "M")}
    k = sig[1]
    dtype = np.int64 if n <= _INT64_SAFE_LENGTH else object
    acc = {c: np.zeros(n + 1, dtype=dtype) for c in ("B", "T")}

    for length in range(1, n + 1):
        shapes: List[Shape] = [(None, length)] if length <= 2 else [("B", length), ("T", length)]
        for alpha in shapes:
            if length < k or not shape_contains(sig, alpha):
                val = 0
            elif length == k:
                val = 1
            elif length == k + 1:
                val = -1
            elif length == 3:
                val = 1
            else:
                val = int(acc[alpha[0]][length])
            if alpha[0] is None:
                values[("W", length)] = values[("M", length)] = val
            else:
                values[(TYPE_OF_SHAPE[alpha[0]], length)] = val
            if val == 0 or length == 1:
                continue
            step = _step(length)
            for pi_colour in ("B", "T"):
                first_end = _end(alpha, pi_colour, 1)
                if length == 2:
                    _push(acc[pi_colour], first_end + 1, step, -val)
                    _push(acc[pi_colour], first_end + 2, step, val)
                    continue
                skip = length if _first(alpha[0], pi_colour) == 1 else None
                for d, sign in ((0, -1), (1, -1), (2, 1), (3, 1)):
                    _push(acc[pi_colour], first_end + d, step, sign * val, skip)
    return values


def inc_osc_mobius(sigma: Union[Sequence[int], OscillationDescriptor], pi: OscillationDescriptor) -> int:
    if pi.n < 4:
        raise ValueError(f"pi must be an increasing oscillation of length >= 4, got {pi.n}")
    sig = sigma_shape(sigma)
    pi_shape: Shape = (SHAPE_OF_TYPE[pi.shape], pi.n)
    if sig is None or not shape_contains(sig, pi_shape):
        raise NotContainedError(f"sigma is not contained in {pi.shape}_{pi.n}")
    return oscillation_values(sigma, pi.n)[(pi.shape, pi.n)]


def oscillation_contributing_set(
    sigma: Union[Sequence[int], OscillationDescriptor], pi: OscillationDescriptor
) -> ContributingSet:
    """The nonzero-weight shapes for (σ, π), with their μ values and the resulting μ[σ, π]."""
    if pi.n > LISTING_CAP:
        raise SizeGuardError(f"Refusing to list the contributing set of an oscillation of length {pi.n}")
    sig = sigma_shape(sigma)
    lo = increasing_oscillation(sigma) if isinstance(sigma, OscillationDescriptor) else make(sigma)
    if sig is None or not shape_contains(sig, (SHAPE_OF_TYPE[pi.shape], pi.n)):
        raise NotContainedError(f"{format_permutation(lo)} is not contained in {pi.shape}_{pi.n}")
    values = oscillation_values(sigma, pi.n - 1)
    pi_colour = SHAPE_OF_TYPE[pi.shape]
    entries: List[ContributingEntry] = []
    total = 0
    for length in range(2, pi.n):
        shapes: List[Shape] = [(None, 2)] if length == 2 else [("B", length), ("T", length)]
        for alpha in shapes:
            w, r = oscillation_weight(sig, alpha, pi_colour, pi.n)
            if w == 0:
                continue
            d = OscillationDescriptor(shape="W" if alpha[0] in (None, "B") else "M", n=length)
            value = values[(d.shape, length)]
            total += value * w
            entries.append(
                ContributingEntry(
                    alpha=increasing_oscillation(d), weight=w, r=r, shape=shape_of(d), mobius=value
                )
            )
    return ContributingSet(sigma=lo, pi_length=pi.n, entries=entries, value=-total)
