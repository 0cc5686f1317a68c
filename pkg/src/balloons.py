"""
Balloons and wedges.

In ballgen{i,j}(α, β) the points coming from α are red and those from β are blue.
Every permutation below a balloon is classified by how its embeddings use those colours;
the Möbius value of the balloon is minus the sum over its proper reductions plus a
correction, and the correction vanishes on wedges.
"""
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Set

from src import config
from src.errors import NotContainedError, SizeGuardError
from src.families import balloon, wedge
from src.mobius_engines import mobius_recursive
from src.perm_core import Permutation, contains, delete_point, format_permutation, make, occurrences, standardize
from src.poset_core import enumerate_chains, interval
from src.schemas import BalloonCorrection, BalloonSpec, ContainmentClass, WedgeSpec

MobiusFn = Callable[[Permutation, Permutation], int]

ONE = make((1,))
EMPTY = make(())
P2413 = make((2, 4, 1, 3))


def _oracle(lower: Permutation, upper: Permutation) -> int:
    return mobius_recursive(lower, upper).value


def _rank(p: Permutation) -> tuple:
    return (len(p), tuple(p))


# --- 2413-balloons ---

def is_2413_balloon(p: Sequence[int]) -> Optional[Permutation]:
    """The inner β when p is the 2413-balloon of a non-empty β."""
    n = len(p)
    if n < 5 or p[0] != 2 or p[1] != n or p[-2] != 1 or p[-1] != n - 1:
        return None
    return make(v - 2 for v in p[2:-2])


def balloon_2413_mobius(beta: Sequence[int], mu: Optional[MobiusFn] = None) -> int:
    b = make(beta)
    if len(b) == 0:
        raise ValueError("a 2413-balloon needs a non-empty beta")
    if b == ONE:
        return 4
    if b == P2413:
        return -6
    inner = (mu or _oracle)(ONE, b)
    if is_2413_balloon(b) is not None:
        return 2 * inner
    return inner


def is_10_balloon(p: Sequence[int]) -> Optional[Permutation]:
    """The inner γ when p = ballgen{1,0}(2413, γ)."""
    n = len(p)
    if n < 5 or p[0] != n - 2 or p[-3] != n or p[-2] != n - 3 or p[-1] != n - 1:
        return None
    return make(p[1:-3])


# --- Classification ---

def _colours(spec: BalloonSpec) -> tuple[list[int], list[int]]:
    """(red positions, blue positions), 0-based, in the materialized balloon."""
    blue = list(range(spec.i, spec.i + len(spec.beta)))
    red = [pos for pos in range(len(spec.alpha) + len(spec.beta)) if not spec.i <= pos < spec.i + len(spec.beta)]
    return red, blue


def classify_containment(sigma: Sequence[int], spec: BalloonSpec) -> ContainmentClass:
    pi = balloon(spec)
    lo = make(sigma)
    red, blue = _colours(spec)
    red_set = set(red)
    cores: Set[Permutation] = set()
    complete_core: Optional[Permutation] = None
    all_blue = True
    found = False
    for occ in occurrences(lo, pi):
        found = True
        used_blue = [pos for pos in occ if pos not in red_set]
        core = standardize([pi[pos] for pos in used_blue]) if used_blue else EMPTY
        cores.add(core)
        if len(occ) - len(used_blue) == len(red):
            complete_core = core
        if len(used_blue) != len(blue):
            all_blue = False
    if not found:
        raise NotContainedError(f"{format_permutation(lo)} is not contained in {format_permutation(pi)}")

    ordered = sorted(cores, key=_rank)
    if complete_core is not None:
        return ContainmentClass(kind="complete", minimal_core=complete_core, embedding_cores=ordered)
    if all_blue:
        return ContainmentClass(kind="proper_reduction", minimal_core=spec.beta, embedding_cores=ordered)
    for zeta in ordered:
        if all(other == zeta or (len(zeta) < len(other) and contains(zeta, other)) for other in ordered):
            return ContainmentClass(kind="matryoshka", minimal_core=zeta, embedding_cores=ordered)
    return ContainmentClass(kind="defective", embedding_cores=ordered)


# --- Reductions and wedges ---

def proper_reductions(spec: BalloonSpec) -> List[Permutation]:
    """σ < π from red-point deletions whose every embedding keeps the whole blue block."""
    cap = config.reduction_cap()
    if len(spec.alpha) > cap:
        raise SizeGuardError(f"Refusing reduction enumeration for |alpha| = {len(spec.alpha)} (PERMMOB_REDUCTION_CAP={cap})")
    pi = balloon(spec)
    red, blue = _colours(spec)
    without_blue = [delete_point(pi, b) for b in blue]
    candidates: Set[Permutation] = set()
    for size in range(1, len(red) + 1):
        for dropped in combinations(red, size):
            gone = set(dropped)
            candidates.add(standardize([v for pos, v in enumerate(pi) if pos not in gone]))
    kept = [c for c in candidates if not any(contains(c, host) for host in without_blue)]
    return sorted(kept, key=_rank)


def proper_reductions_wedge(spec: WedgeSpec) -> List[Permutation]:
    return proper_reductions(spec.as_balloon())


def wedge_mobius(spec: WedgeSpec, mu: Optional[MobiusFn] = None) -> int:
    inner = mu or _oracle
    if len(spec.alpha) == 1:
        # a one-point alpha makes the wedge a plain (skew) sum
        return inner(ONE, wedge(spec))
    return -sum(inner(ONE, lam) for lam in proper_reductions_wedge(spec))


def as_wedge(p: Sequence[int]) -> Optional[WedgeSpec]:
    """Wedge form with the largest β (2 <= |β| <= n - 2) whose values are the top ones, contiguous in position."""
    n = len(p)
    position = [0] * (n + 1)
    for pos, v in enumerate(p):
        position[v] = pos
    best: Optional[WedgeSpec] = None
    lo_pos = hi_pos = position[n]
    for m in range(1, n - 1):
        if m > 1:
            v = n - m + 1
            lo_pos, hi_pos = min(lo_pos, position[v]), max(hi_pos, position[v])
        if m >= 2 and hi_pos - lo_pos == m - 1:
            beta = standardize(p[lo_pos : hi_pos + 1])
            alpha = make(list(p[:lo_pos]) + list(p[hi_pos + 1 :]))
            best = WedgeSpec(alpha=alpha, beta=beta, k=lo_pos)
    return best


# --- Correction term ---

def balloon_mobius_with_correction(spec: BalloonSpec, mu: Optional[MobiusFn] = None) -> BalloonCorrection:
    """
    μ[1, π] as −Σ μ(λ) over the proper reductions plus a correction read off the chains of [1, π].

    Every chain c has a pivot ψ_c, its largest element that is not complete, and a
    second-highest element κ_c. Chains with κ_c a proper reduction form R, the remaining chains
    with a matryoshka pivot form M, and everything else forms G. The R chains sum to
    −Σ μ(λ), the M chains cancel, and the correction is the Hall sum over G.
    """
    if len(spec.alpha) < 2:
        raise ValueError("the chain partition needs |alpha| >= 2 (a single red point makes 1 complete)")
    pi = balloon(spec)
    cap = config.recursive_cap()
    if len(pi) > cap:
        raise SizeGuardError(f"Refusing the balloon correction for |pi| = {len(pi)} (PERMMOB_RECURSIVE_CAP={cap})")
    inner = mu or _oracle
    iv = interval(ONE, pi)
    top = len(iv.elements) - 1
    kinds = [classify_containment(x, spec).kind if idx != top else "complete" for idx, x in enumerate(iv.elements)]

    sums = {"R": 0, "M": 0, "G": 0}
    count = 0
    for chain in enumerate_chains(iv):
        count += 1
        # 1 is never complete here, so every chain has a pivot
        pivot = next(idx for idx in reversed(chain.indices) if kinds[idx] != "complete")
        if kinds[chain.indices[-2]] == "proper_reduction":
            part = "R"
        elif kinds[pivot] == "matryoshka":
            part = "M"
        else:
            part = "G"
        sums[part] += (-1) ** chain.length

    reductions = sorted((x for x, kind in zip(iv.elements, kinds) if kind == "proper_reduction"), key=_rank)
    reduction_sum = sum(inner(ONE, lam) for lam in reductions)
    return BalloonCorrection(
        value=sums["G"] - reduction_sum,
        reduction_sum=reduction_sum,
        correction=sums["G"],
        reductions=reductions,
        reduction_chain_sum=sums["R"],
        matryoshka_chain_sum=sums["M"],
        chains=count,
    )
