"""
Three independent Möbius engines and the harness that compares them.

- recursive: the defining recursion μ[σ,π] = −Σ_{λ∈[σ,π)} μ[σ,λ], memoized on the joint
  symmetry class of the pair.
- hall: alternating sum of chain counts over the explicit interval.
- zeta: entry (bottom, top) of the inverse zeta matrix.

principal_table is the census oracle: μ[1,p] for every p up to a length, one orbit
representative at a time.
"""
import threading
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src import config
from src.errors import MobiusOverflowError, SizeGuardError
from src.perm_core import (
    SYMMETRY_NAMES,
    Permutation,
    all_permutations,
    apply_symmetry,
    canonical,
    children,
    contains,
    make,
    orbit,
)
from src.poset_core import chain_counts, interval, invert_zeta, zeta_matrix
from src.schemas import CrossCheckReport, MobiusResult

INT63_LIMIT = 2**63

PairKey = Tuple[Permutation, Permutation]


def make_result(value: int, method: str, work: Optional[Dict[str, int]] = None) -> MobiusResult:
    if abs(value) >= INT63_LIMIT:
        raise MobiusOverflowError(f"Möbius value {value} does not fit in a signed 63-bit integer (method {method})")
    return MobiusResult(value=value, method=method, work=dict(work or {}))


def joint_key(lower: Sequence[int], upper: Sequence[int]) -> PairKey:
    """Least (S(lower), S(upper)) over the 8 symmetries S, applied to both at once."""
    return min((apply_symmetry(name, lower), apply_symmetry(name, upper)) for name in SYMMETRY_NAMES)


def empty_lower_value(upper: Sequence[int]) -> int:
    """μ[ε, π]: 1 for π = ε, −1 for π = 1, otherwise 0."""
    if len(upper) == 0:
        return 1
    if len(upper) == 1:
        return -1
    return 0


class MemoStore:
    """Values keyed by the joint canonical pair. Concurrent writers store identical values."""

    def __init__(self) -> None:
        self._values: Dict[PairKey, int] = {}
        self._lock = threading.Lock()
        self.hits = 0

    def get(self, lower: Sequence[int], upper: Sequence[int]) -> Optional[int]:
        key = joint_key(lower, upper)
        with self._lock:
            value = self._values.get(key)
            if value is not None:
                self.hits += 1
        return value

    def put(self, lower: Sequence[int], upper: Sequence[int], value: int) -> None:
        key = joint_key(lower, upper)
        with self._lock:
            self._values[key] = value

    def items(self) -> Iterable[Tuple[PairKey, int]]:
        return list(self._values.items())

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, pair: Tuple[Sequence[int], Sequence[int]]) -> bool:
        return joint_key(*pair) in self._values


# --- Recursive engine ---

@lru_cache(maxsize=200_000)
def _cached_children(p: Permutation) -> frozenset:
    return frozenset(children(p))


@lru_cache(maxsize=4096)
def _strict_patterns(p: Permutation) -> Tuple[Permutation, ...]:
    """Every non-empty pattern of p other than p itself, shortest first."""
    seen = set()
    level = {p}
    while level and len(next(iter(level))) > 1:
        nxt = set()
        for q in level:
            nxt |= _cached_children(q)
        seen |= nxt
        level = nxt
    return tuple(sorted(seen, key=lambda q: (len(q), q)))


def mobius_recursive(lower: Sequence[int], upper: Sequence[int], memo: Optional[MemoStore] = None) -> MobiusResult:
    lo, hi = make(lower), make(upper)
    if not contains(lo, hi):
        return make_result(0, "recursive")
    if lo == hi:
        return make_result(1, "recursive")
    if len(lo) == 0:
        return make_result(empty_lower_value(hi), "recursive")
    cap = config.recursive_cap()
    if len(hi) > cap:
        raise SizeGuardError(f"Refusing the recursive engine for |upper| = {len(hi)} (PERMMOB_RECURSIVE_CAP={cap})")

    store = memo if memo is not None else MemoStore()
    hits_before = store.hits
    visited = 0

    def value(target: Permutation) -> int:
        nonlocal visited
        if target == lo:
            return 1
        cached = store.get(lo, target)
        if cached is not None:
            return cached
        total = 0
        for lam in _strict_patterns(target):
            if len(lam) < len(lo):
                continue
            visited += 1
            if contains(lo, lam):
                total += value(lam)
        store.put(lo, target, -total)
        return -total

    result = value(hi)
    return make_result(result, "recursive", {"elements_visited": visited, "memo_hits": store.hits - hits_before})


# --- Oracle engines ---

def mobius_hall(lower: Sequence[int], upper: Sequence[int]) -> MobiusResult:
    lo, hi = make(lower), make(upper)
    if not contains(lo, hi):
        return make_result(0, "hall")
    iv = interval(lo, hi)
    counts = chain_counts(iv)
    value = sum((-1) ** length * count for length, count in counts.items())
    return make_result(value, "hall", {"elements_visited": len(iv.elements), "chains": sum(counts.values())})


def mobius_zeta(lower: Sequence[int], upper: Sequence[int]) -> MobiusResult:
    lo, hi = make(lower), make(upper)
    if not contains(lo, hi):
        return make_result(0, "zeta")
    iv = interval(lo, hi)
    inverse = invert_zeta(zeta_matrix(iv))
    return make_result(int(inverse[0, -1]), "zeta", {"elements_visited": len(iv.elements)})


def run_engine(name: str, lower: Sequence[int], upper: Sequence[int], memo: Optional[MemoStore] = None) -> MobiusResult:
    if name == "recursive":
        return mobius_recursive(lower, upper, memo)
    if name == "hall":
        return mobius_hall(lower, upper)
    if name == "zeta":
        return mobius_zeta(lower, upper)
    raise ValueError(f"Unknown engine {name!r}; expected one of {', '.join(config.ENGINES)}")


def principal_mobius(p: Sequence[int], memo: Optional[MemoStore] = None) -> MobiusResult:
    """μ[1, p] with the engine named by PERMMOB_ENGINE."""
    if len(p) == 0:
        raise ValueError("the principal Möbius function needs a non-empty permutation")
    return run_engine(config.get_engine(), (1,), p, memo)


def cross_check(lower: Sequence[int], upper: Sequence[int]) -> CrossCheckReport:
    values = {name: run_engine(name, lower, upper).value for name in ("recursive", "hall", "zeta")}
    reference = values["recursive"]
    discrepancies = [
        f"{name}={value} differs from recursive={reference}"
        for name, value in values.items()
        if value != reference
    ]
    return CrossCheckReport(
        lower=make(lower),
        upper=make(upper),
        values=values,
        agree=not discrepancies,
        discrepancies=discrepancies,
    )


# --- Principal table (census oracle) ---

_worker_table: Dict[Permutation, int] = {}


def _init_worker(table: Dict[Permutation, int]) -> None:
    global _worker_table
    _worker_table = table


def _principal_from_table(p: Permutation, table: Dict[Permutation, int]) -> int:
    if len(p) == 1:
        return 1
    total = 0
    for lam in _strict_patterns(p):
        total += table[lam]
    return -total


def _worker_batch(reps: List[Permutation]) -> List[Tuple[Permutation, int]]:
    return [(rep, _principal_from_table(rep, _worker_table)) for rep in reps]


def orbit_representatives(n: int) -> List[Permutation]:
    """Canonical (lexicographically least) member of every symmetry orbit of S_n, sorted."""
    return [p for p in all_permutations(n) if canonical(p) == p]


def principal_table(max_n: int, threads: int = 1) -> Dict[Permutation, int]:
    """μ[1, p] for every permutation of length 1..max_n."""
    cap = config.density_cap()
    if max_n > cap:
        raise SizeGuardError(f"Refusing a principal table to length {max_n} (PERMMOB_DENSITY_CAP={cap})")
    table: Dict[Permutation, int] = {}
    for n in range(1, max_n + 1):
        reps = orbit_representatives(n)
        if threads > 1 and len(reps) > 64:
            chunk = max(1, len(reps) // (threads * 4))
            batches = [reps[i : i + chunk] for i in range(0, len(reps), chunk)]
            with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(table,)) as pool:
                results = [pair for batch in pool.map(_worker_batch, batches) for pair in batch]
        else:
            results = [(rep, _principal_from_table(rep, table)) for rep in reps]
        for rep, value in sorted(results):
            for member in orbit(rep):
                table[member] = value
    return table
