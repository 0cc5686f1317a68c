"""
Contributing sets: μ[σ, π] = −Σ μ[σ, α]·w(σ, α, π) over sum-indecomposable α in [σ, π).

The weight looks only at ⊕-powers of α flanked by single points, at the smallest power r
for which 1 ⊕ (⊕^r α) ⊕ 1 no longer fits in π.
"""
from typing import Callable, List, Optional, Sequence

from src.errors import NotContainedError
from src.mobius_engines import mobius_recursive
from src.perm_core import Permutation, contains, direct_sum, format_permutation, make, sum_components
from src.poset_core import interval
from src.schemas import ContributingEntry, ContributingSet

MobiusFn = Callable[[Permutation, Permutation], int]

ONE = make((1,))


def sum_power(alpha: Sequence[int], r: int) -> Permutation:
    out = make(())
    for _ in range(r):
        out = direct_sum(out, alpha)
    return out


def weight(sigma: Sequence[int], alpha: Sequence[int], pi: Sequence[int]) -> tuple[int, int]:
    """(w, r) for one sum-indecomposable alpha."""
    r = 1
    while contains(direct_sum(direct_sum(ONE, sum_power(alpha, r)), ONE), pi):
        r += 1
    power = sum_power(alpha, r)
    if not (contains(sigma, power) and contains(power, pi)):
        return 0, r
    left = contains(direct_sum(ONE, power), pi)
    right = contains(direct_sum(power, ONE), pi)
    if not left and not right:
        return 1, r
    if left and right and not contains(sum_power(alpha, r + 1), pi):
        return -1, r
    return 0, r


def _oracle(lower: Permutation, upper: Permutation) -> int:
    return mobius_recursive(lower, upper).value


def _is_reverse_identity(p: Sequence[int]) -> bool:
    return tuple(p) == tuple(range(len(p), 0, -1))


def contributing_set(sigma: Sequence[int], pi: Sequence[int], mu: Optional[MobiusFn] = None) -> ContributingSet:
    lo, hi = make(sigma), make(pi)
    if len(lo) == 0 or len(sum_components(lo)) != 1:
        raise ValueError(f"sigma must be sum indecomposable, got {format_permutation(lo)}")
    if len(hi) <= 3:
        raise ValueError(f"the contributing-set recursion needs |pi| > 3, got {len(hi)}")
    if len(sum_components(hi)) != 1 or _is_reverse_identity(hi):
        raise ValueError(f"pi must be sum indecomposable and not decreasing, got {format_permutation(hi)}")
    if not contains(lo, hi):
        raise NotContainedError(f"{format_permutation(lo)} is not contained in {format_permutation(hi)}")

    inner = mu or _oracle
    entries: List[ContributingEntry] = []
    total = 0
    for alpha in interval(lo, hi).elements:
        if alpha == hi or alpha == ONE or len(sum_components(alpha)) != 1:
            continue
        w, r = weight(lo, alpha, hi)
        if w == 0:
            continue
        value = inner(lo, alpha)
        total += value * w
        entries.append(ContributingEntry(alpha=alpha, weight=w, r=r, mobius=value))
    return ContributingSet(sigma=lo, pi_length=len(hi), entries=entries, value=-total)
