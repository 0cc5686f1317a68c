"""Recursions for a sum- or skew-decomposable upper bound, with inner values from a callback."""
from typing import Callable, Optional, Sequence

from src.mobius_engines import empty_lower_value, mobius_recursive
from src.perm_core import Permutation, direct_sum, make, reverse, sum_components, skew_components

MobiusFn = Callable[[Permutation, Permutation], int]


def _oracle(lower: Permutation, upper: Permutation) -> int:
    return mobius_recursive(lower, upper).value


def _tail(parts: Sequence[Permutation], start: int) -> Permutation:
    """⊕ of parts[start:]; ε when start runs past the end."""
    out = make(())
    for part in parts[start:]:
        out = direct_sum(out, part)
    return out


def _head(parts: Sequence[Permutation], stop: int) -> Permutation:
    return _tail(parts[:stop], 0)


def _leading(parts: Sequence[Permutation], target: Permutation) -> int:
    count = 0
    for part in parts:
        if part != target:
            break
        count += 1
    return count


def _sum_case(sigma: Permutation, pi_parts: Sequence[Permutation], mu: MobiusFn) -> int:
    sigma_parts = sum_components(sigma)
    one = make((1,))
    if pi_parts[0] == one:
        k = _leading(pi_parts, one)
        ell = _leading(sigma_parts, one)
        if k - 1 > ell:
            return 0
        rest = _tail(pi_parts, k)
        if k - 1 == ell:
            return -mu(_tail(sigma_parts, k - 1), rest)
        return mu(_tail(sigma_parts, k), rest) - mu(_tail(sigma_parts, k - 1), rest)

    first = pi_parts[0]
    k = _leading(pi_parts, first)
    total = 0
    for i in range(1, len(sigma_parts) + 1):
        left = mu(_head(sigma_parts, i), first)
        if left == 0:
            continue
        right = _tail(sigma_parts, i)
        total += left * sum(mu(right, _tail(pi_parts, j)) for j in range(1, k + 1))
    return total


def bjjs_decomposable(sigma: Sequence[int], pi: Sequence[int], mu: Optional[MobiusFn] = None) -> Optional[int]:
    """μ[σ, π] when π is sum or skew decomposable; None when π is strongly indecomposable."""
    lo, hi = make(sigma), make(pi)
    inner = mu or _oracle

    def guarded(a: Permutation, b: Permutation) -> int:
        if len(a) == 0:
            return empty_lower_value(b)
        return inner(a, b)

    if len(hi) < 2:
        return None
    if len(lo) == 0:
        return empty_lower_value(hi)
    parts = sum_components(hi)
    if len(parts) > 1:
        return _sum_case(lo, parts, guarded)
    if len(skew_components(hi)) > 1:
        # reversal turns ⊖ into ⊕ and preserves μ when applied to both bounds
        return _sum_case(reverse(lo), sum_components(reverse(hi)), guarded)
    return None
