"""
Permutation algebra: containment, embeddings, sums/interleaves, decompositions,
interval and adjacency detectors, inflation and the 8-symmetry group.

Positions reported to callers are 1-based; internal helpers work 0-based.
"""
from itertools import islice, permutations
from typing import Iterator, List, Literal, Optional, Sequence, Tuple

from src.permutation import Permutation, format_permutation, make, parse_permutation, standardize  # noqa: F401
from src.schemas import AdjacencyReport, Embedding, SumDecomposition

EMPTY = make(())
ONE = make((1,))

SYMMETRY_NAMES = ("id", "r", "c", "rc", "i", "ri", "ci", "rci")

SumKind = Literal["direct", "skew"]


# --- Containment ---

def _bounds(pattern: Sequence[int]) -> Tuple[List[int], List[int]]:
    """For each index t, the earlier index holding the nearest smaller / larger value (-1 if none)."""
    lo: List[int] = []
    hi: List[int] = []
    for t, v in enumerate(pattern):
        best_lo, best_hi = -1, -1
        for s in range(t):
            w = pattern[s]
            if w < v and (best_lo < 0 or w > pattern[best_lo]):
                best_lo = s
            elif w > v and (best_hi < 0 or w < pattern[best_hi]):
                best_hi = s
        lo.append(best_lo)
        hi.append(best_hi)
    return lo, hi


def _search(pattern: Sequence[int], host: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Yield 0-based position tuples of every occurrence, in lexicographic order."""
    k, n = len(pattern), len(host)
    if k == 0:
        yield ()
        return
    if k > n:
        return
    lo, hi = _bounds(pattern)
    chosen = [0] * k

    def place(t: int, start: int) -> Iterator[Tuple[int, ...]]:
        if t == k:
            yield tuple(chosen)
            return
        pv = pattern[t]
        # host value must leave room for the pattern values below and above it
        low = pv - 1
        if lo[t] >= 0:
            low = max(low, host[chosen[lo[t]]])
        high = n - (k - pv) + 1
        if hi[t] >= 0:
            high = min(high, host[chosen[hi[t]]])
        if high - low < 2:
            return
        for pos in range(start, n - (k - t) + 1):
            v = host[pos]
            if low < v < high:
                chosen[t] = pos
                yield from place(t + 1, pos + 1)

    yield from place(0, 0)


def occurrences(pattern: Sequence[int], host: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Lazy 0-based occurrences; enumerate_embeddings is the 1-based, validated view."""
    return _search(pattern, host)


def contains(pattern: Sequence[int], host: Sequence[int]) -> bool:
    """True iff host has a subsequence order-isomorphic to pattern."""
    if len(pattern) > len(host):
        return False
    if len(pattern) == len(host):
        return tuple(pattern) == tuple(host)
    return next(_search(pattern, host), None) is not None


def enumerate_embeddings(pattern: Sequence[int], host: Sequence[int], limit: Optional[int] = None) -> List[Embedding]:
    found = _search(pattern, host)
    if limit is not None:
        found = islice(found, limit)
    return [
        Embedding(positions=[pos + 1 for pos in occ], pattern_length=len(pattern))
        for occ in found
    ]


def count_embeddings(pattern: Sequence[int], host: Sequence[int]) -> int:
    return sum(1 for _ in _search(pattern, host))


# --- Sums and interleaves ---

def direct_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    shift = len(a)
    return make(tuple(a) + tuple(v + shift for v in b))


def skew_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    shift = len(b)
    return make(tuple(v + shift for v in a) + tuple(b))


def _swap_values(p: Sequence[int], x: int, y: int) -> Permutation:
    return make(y if v == x else x if v == y else v for v in p)


def interleave(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """a ⊕ b with the largest value of the a-block exchanged for the smallest of the b-block."""
    if not a or not b:
        raise ValueError("interleave needs two non-empty permutations")
    return _swap_values(direct_sum(a, b), len(a), len(a) + 1)


def skew_interleave(a: Sequence[int], b: Sequence[int]) -> Permutation:
    if not a or not b:
        raise ValueError("skew interleave needs two non-empty permutations")
    return _swap_values(skew_sum(a, b), len(b), len(b) + 1)


# --- Decompositions ---

def sum_components(p: Sequence[int]) -> Tuple[Permutation, ...]:
    """Finest ⊕-decomposition as a tuple of standardized blocks."""
    parts: List[Permutation] = []
    start, running_max = 0, 0
    for i, v in enumerate(p):
        running_max = max(running_max, v)
        if running_max == i + 1:
            parts.append(make(w - start for w in p[start : i + 1]))
            start = i + 1
    return tuple(parts)


def skew_components(p: Sequence[int]) -> Tuple[Permutation, ...]:
    n = len(p)
    parts: List[Permutation] = []
    start, running_min = 0, n + 1
    for i, v in enumerate(p):
        running_min = min(running_min, v)
        if running_min == n - i:
            parts.append(standardize(p[start : i + 1]))
            start = i + 1
    return tuple(parts)


def finest_decomposition(p: Sequence[int], kind: SumKind = "direct") -> SumDecomposition:
    if len(p) == 0:
        raise ValueError("the empty permutation has no sum decomposition")
    parts = sum_components(p) if kind == "direct" else skew_components(p)
    return SumDecomposition(parts=list(parts), kind=kind)


def is_sum_decomposable(p: Sequence[int]) -> bool:
    return len(sum_components(p)) > 1


def is_skew_decomposable(p: Sequence[int]) -> bool:
    return len(skew_components(p)) > 1


def recompose(decomposition: SumDecomposition) -> Permutation:
    combine = direct_sum if decomposition.kind == "direct" else skew_sum
    out: Permutation = EMPTY
    for part in decomposition.parts:
        out = combine(out, part)
    return out


# --- Adjacencies, intervals, simplicity ---

def adjacency_report(p: Sequence[int]) -> AdjacencyReport:
    up: List[int] = []
    down: List[int] = []
    longest = 1 if p else 0
    run, run_dir = 1, 0
    for i in range(len(p) - 1):
        step = p[i + 1] - p[i]
        if step == 1:
            up.append(i + 1)
        elif step == -1:
            down.append(i + 1)
        if step in (1, -1):
            run = run + 1 if step == run_dir else 2
            run_dir = step
        else:
            run, run_dir = 1, 0
        longest = max(longest, run)
    return AdjacencyReport(
        up_positions=up,
        down_positions=down,
        has_triple=longest >= 3,
        longest_monotone_interval=longest,
    )


def find_proper_intervals(p: Sequence[int]) -> List[Tuple[int, int]]:
    """Every (1-based start, length) window with 1 < length < |p| whose values are contiguous."""
    n = len(p)
    found: List[Tuple[int, int]] = []
    for start in range(n):
        lo = hi = p[start]
        for end in range(start + 1, n):
            lo = min(lo, p[end])
            hi = max(hi, p[end])
            length = end - start + 1
            if length == n:
                break
            if hi - lo == length - 1:
                found.append((start + 1, length))
    return found


def is_simple(p: Sequence[int]) -> bool:
    """Only trivial intervals; 1, 12 and 21 count as simple."""
    n = len(p)
    if n <= 2:
        return True
    for start in range(n):
        lo = hi = p[start]
        for end in range(start + 1, n):
            lo = min(lo, p[end])
            hi = max(hi, p[end])
            if end - start + 1 < n and hi - lo == end - start:
                return False
    return True


def interval_copies(phi: Sequence[int], host: Sequence[int]) -> List[int]:
    """1-based start positions of every window of host that is an interval order-isomorphic to phi."""
    m = len(phi)
    if m == 0:
        raise ValueError("interval copies of the empty permutation are not defined")
    target = tuple(phi)
    starts: List[int] = []
    for s in range(len(host) - m + 1):
        window = host[s : s + m]
        low = min(window)
        if max(window) - low != m - 1:
            continue
        if tuple(v - low + 1 for v in window) == target:
            starts.append(s + 1)
    return starts


def contains_interval_copy(phi: Sequence[int], host: Sequence[int]) -> bool:
    return bool(interval_copies(phi, host))


# --- Inflation ---

def inflate(skeleton: Sequence[int], parts: Sequence[Sequence[int]]) -> Permutation:
    """Replace each skeleton point by an interval copy of its part; an empty part deletes the point."""
    if len(parts) != len(skeleton):
        raise ValueError(f"inflate needs {len(skeleton)} parts, got {len(parts)}")
    if all(len(part) == 0 for part in parts):
        raise ValueError("inflate needs at least one non-empty part")
    size_by_value = [0] * (len(skeleton) + 1)
    for v, part in zip(skeleton, parts):
        size_by_value[v] = len(part)
    offset = [0] * (len(skeleton) + 1)
    for v in range(2, len(skeleton) + 1):
        offset[v] = offset[v - 1] + size_by_value[v - 1]
    out: List[int] = []
    for v, part in zip(skeleton, parts):
        out.extend(w + offset[v] for w in part)
    return make(out)


def delete_point(p: Sequence[int], index: int) -> Permutation:
    """Remove the point at 0-based index and standardize."""
    removed = p[index]
    return make(v - 1 if v > removed else v for i, v in enumerate(p) if i != index)


def children(p: Sequence[int]) -> set[Permutation]:
    """Distinct permutations covered by p (one point deleted)."""
    return {delete_point(p, idx) for idx in range(len(p))}


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order."""
    for values in permutations(range(1, n + 1)):
        yield make(values)


# --- Symmetries ---

def reverse(p: Sequence[int]) -> Permutation:
    return make(reversed(p))


def complement(p: Sequence[int]) -> Permutation:
    top = len(p) + 1
    return make(top - v for v in p)


def inverse(p: Sequence[int]) -> Permutation:
    out = [0] * len(p)
    for pos, v in enumerate(p, 1):
        out[v - 1] = pos
    return make(out)


_LETTERS = {"r": reverse, "c": complement, "i": inverse}


def apply_symmetry(name: str, p: Sequence[int]) -> Permutation:
    """Apply a symmetry by name; letters act left to right, so "ri" is inverse(reverse(p))."""
    if name not in SYMMETRY_NAMES:
        raise ValueError(f"Unknown symmetry {name!r}; expected one of {', '.join(SYMMETRY_NAMES)}")
    out = make(p)
    if name == "id":
        return out
    for letter in name:
        out = _LETTERS[letter](out)
    return out


def symmetries(p: Sequence[int]) -> List[Permutation]:
    """The 8 images of p, in SYMMETRY_NAMES order (duplicates kept)."""
    return [apply_symmetry(name, p) for name in SYMMETRY_NAMES]


def canonical(p: Sequence[int]) -> Permutation:
    """Lexicographically least member of the symmetry orbit."""
    return min(symmetries(p))


def orbit(p: Sequence[int]) -> List[Permutation]:
    return sorted(set(symmetries(p)))


def orbit_size(p: Sequence[int]) -> int:
    return len(set(symmetries(p)))


# --- Corners ---

def long_corner(p: Sequence[int]) -> Optional[str]:
    """Name of the long-corner template p matches, or None."""
    n = len(p)
    if n < 3:
        return None
    if p[0] == 1 and p[1] == 2:
        return "1+1+tau"
    if p[0] == n and p[1] == n - 1:
        return "1-1-tau"
    if p[-1] == n and p[-2] == n - 1:
        return "tau+1+1"
    if p[-1] == 1 and p[-2] == 2:
        return "tau-1-1"
    return None


def detect_long_corner(p: Sequence[int]) -> bool:
    return long_corner(p) is not None
