"""
Explicit intervals of the permutation pattern poset.

Elements are kept in rank order (length, then lexicographic) so every matrix built
from an IntervalPoset is upper-triangular and reproducible. Covers inside an interval
are exactly the single-point deletions that stay inside it.
"""
from collections import Counter
from typing import Dict, Iterator, List, Sequence, Set

import networkx as nx
import numpy as np

from src import config
from src.errors import NotContainedError, SizeGuardError
from src.perm_core import EMPTY, Permutation, children, contains, format_permutation, make
from src.schemas import Chain, IntervalPoset


def _rank_key(p: Permutation) -> tuple:
    return (len(p), tuple(p))


def _downset_elements(top: Permutation) -> Set[Permutation]:
    cap = config.downset_cap()
    if len(top) > cap:
        raise SizeGuardError(f"Refusing the downset of a length-{len(top)} permutation (PERMMOB_DOWNSET_CAP={cap})")
    seen: Set[Permutation] = {top}
    level: Set[Permutation] = {top}
    while level and len(next(iter(level))) > 1:
        nxt: Set[Permutation] = set()
        for p in level:
            nxt |= children(p)
        seen |= nxt
        level = nxt
    return seen


def _build(bottom: Permutation, top: Permutation, elements: Set[Permutation]) -> IntervalPoset:
    ordered = sorted(elements, key=_rank_key)
    index = {p: idx for idx, p in enumerate(ordered)}
    covers = []
    for idx, p in enumerate(ordered):
        below = children(p) if len(p) > 0 else set()
        for c in below:
            if c in index:
                covers.append((idx, index[c]))
    covers.sort()
    return IntervalPoset(bottom=bottom, top=top, elements=ordered, covers=covers)


def downset(p: Sequence[int]) -> IntervalPoset:
    """The interval [1, p]."""
    top = make(p)
    if len(top) == 0:
        raise ValueError("downset needs a non-empty permutation")
    return _build(make((1,)), top, _downset_elements(top))


def interval(bottom: Sequence[int], top: Sequence[int]) -> IntervalPoset:
    lo, hi = make(bottom), make(top)
    if not contains(lo, hi):
        raise NotContainedError(f"{format_permutation(lo)} is not contained in {format_permutation(hi)}")
    if len(hi) == 0:
        return IntervalPoset(bottom=lo, top=hi, elements=[EMPTY], covers=[])
    elements = {p for p in _downset_elements(hi) if contains(lo, p)}
    if len(lo) == 0:
        elements.add(EMPTY)
    return _build(lo, hi, elements)


# --- Graph views ---

def hasse_graph(iv: IntervalPoset) -> nx.DiGraph:
    """Cover graph with edges upper -> lower; node attribute 'label' is the permutation text."""
    g = nx.DiGraph()
    for idx, p in enumerate(iv.elements):
        g.add_node(idx, label=format_permutation(p))
    g.add_edges_from(iv.covers)
    return g


def to_dot(iv: IntervalPoset) -> str:
    g = hasse_graph(iv)
    lines = ["digraph interval {", "  rankdir=BT;"]
    for idx, data in g.nodes(data=True):
        lines.append(f'  n{idx} [label="{data["label"]}"];')
    for upper, lower in g.edges():
        lines.append(f"  n{lower} -> n{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _order_dag(iv: IntervalPoset) -> nx.DiGraph:
    """Strict order as a DAG, edges lower -> upper."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(iv.elements)))
    g.add_edges_from((lower, upper) for upper, lower in iv.covers)
    return nx.transitive_closure_dag(g)


# --- Chains ---

def enumerate_chains(iv: IntervalPoset) -> Iterator[Chain]:
    """Every chain from bottom to top (each subset of a maximal chain keeping both ends, once)."""
    cap = config.chain_cap()
    if len(iv.elements) > cap:
        raise SizeGuardError(
            f"Refusing chain enumeration over {len(iv.elements)} elements (PERMMOB_CHAIN_CAP={cap})"
        )
    last = len(iv.elements) - 1
    if last == 0:
        yield Chain(indices=[0])
        return
    for path in nx.all_simple_paths(_order_dag(iv), 0, last):
        yield Chain(indices=list(path))


def chain_counts(iv: IntervalPoset) -> Dict[int, int]:
    """K_i: number of bottom-to-top chains of length i."""
    counts = Counter(chain.length for chain in enumerate_chains(iv))
    return dict(sorted(counts.items()))


# --- Zeta matrix ---

def zeta_matrix(iv: IntervalPoset) -> np.ndarray:
    """Z[x, y] = 1 iff element x <= element y."""
    n = len(iv.elements)
    z = np.zeros((n, n), dtype=np.int64)
    lower_covers: List[List[int]] = [[] for _ in range(n)]
    for upper, lower in iv.covers:
        lower_covers[upper].append(lower)
    for y in range(n):
        z[y, y] = 1
        for c in lower_covers[y]:
            z[:, y] |= z[:, c]
    return z


def invert_zeta(z: np.ndarray) -> np.ndarray:
    """Exact inverse of a unit upper-triangular integer matrix by back-substitution."""
    n = z.shape[0]
    if z.shape != (n, n):
        raise ValueError(f"zeta matrix must be square, got shape {z.shape}")
    if np.any(np.diag(z) != 1) or np.any(np.tril(z, -1) != 0):
        raise ValueError("zeta matrix must be unit upper-triangular in rank order")
    zo = z.astype(object)
    m = np.zeros((n, n), dtype=object)
    identity = np.identity(n, dtype=np.int64).astype(object)
    for x in range(n - 1, -1, -1):
        if x == n - 1:
            m[x, :] = identity[x, :]
        else:
            m[x, :] = identity[x, :] - zo[x, x + 1 :].dot(m[x + 1 :, :])
    return m
