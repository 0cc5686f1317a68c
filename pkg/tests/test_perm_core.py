"""Containment, sums, decompositions, detectors and symmetries."""
from itertools import combinations

import pytest

from src.perm_core import (
    adjacency_report,
    all_permutations,
    apply_symmetry,
    canonical,
    children,
    complement,
    contains,
    count_embeddings,
    delete_point,
    direct_sum,
    enumerate_embeddings,
    find_proper_intervals,
    finest_decomposition,
    inflate,
    interleave,
    interval_copies,
    inverse,
    is_simple,
    long_corner,
    orbit,
    orbit_size,
    recompose,
    reverse,
    skew_components,
    skew_interleave,
    skew_sum,
    standardize,
    sum_components,
)


def _contains_brute(pattern: tuple, host: tuple) -> bool:
    return any(standardize([host[i] for i in idx]) == pattern for idx in combinations(range(len(host)), len(pattern)))


def test_contains_small_cases() -> None:
    assert contains((1, 3, 2), (2, 4, 1, 3))
    assert not contains((1, 2, 3), (2, 4, 1, 3))
    assert contains((), (2, 1))
    assert contains((2, 1), (2, 1))
    assert not contains((1, 2), (2, 1))


def test_contains_matches_subset_filter() -> None:
    for host in all_permutations(5):
        for pattern in all_permutations(3):
            assert contains(pattern, host) == _contains_brute(pattern, host)


def test_embeddings_are_one_based() -> None:
    found = enumerate_embeddings((2, 1), (3, 1, 2))
    assert [e.positions for e in found] == [[1, 2], [1, 3]]
    assert count_embeddings((1, 2), (1, 2, 3)) == 3
    assert len(enumerate_embeddings((1, 2), (1, 2, 3), limit=2)) == 2


def test_count_embeddings_matches_subset_filter() -> None:
    host = (3, 1, 5, 2, 7, 4, 6)
    for pattern in all_permutations(3):
        brute = sum(1 for idx in combinations(range(7), 3) if standardize([host[i] for i in idx]) == pattern)
        assert count_embeddings(pattern, host) == brute


def test_sums_and_interleaves() -> None:
    assert direct_sum((1,), (2, 1)) == (1, 3, 2)
    assert skew_sum((1,), (1, 2)) == (3, 1, 2)
    assert interleave((2, 1), (2, 1)) == (3, 1, 4, 2)
    assert skew_interleave((1, 2), (1, 2)) == complement(interleave((2, 1), (2, 1)))
    with pytest.raises(ValueError):
        interleave((), (1,))


def test_decompositions() -> None:
    assert sum_components((2, 1, 3, 5, 4)) == ((2, 1), (1,), (2, 1))
    assert skew_components((3, 1, 2)) == ((1,), (1, 2))
    d = finest_decomposition((2, 1, 3, 5, 4))
    assert d.kind == "direct"
    assert recompose(d) == (2, 1, 3, 5, 4)
    skew = finest_decomposition((4, 3, 1, 2), kind="skew")
    assert recompose(skew) == (4, 3, 1, 2)
    with pytest.raises(ValueError):
        finest_decomposition(())


def test_intervals_and_simplicity() -> None:
    assert is_simple((2, 4, 1, 3))
    assert is_simple((2, 1))
    assert not is_simple((1, 3, 2))
    assert find_proper_intervals((1, 3, 2)) == [(2, 2)]
    assert interval_copies((2, 1), (1, 3, 2, 4)) == [2]
    simple_5 = [p for p in all_permutations(5) if is_simple(p)]
    assert len(simple_5) == 6


def test_adjacency_report() -> None:
    report = adjacency_report((1, 2, 4, 3))
    assert report.up_positions == [1]
    assert report.down_positions == [3]
    assert report.has_opposing
    assert not report.has_triple
    assert adjacency_report((3, 4, 5, 1, 2)).has_triple
    assert adjacency_report((2, 4, 1, 3)).adjacency_free


def test_inflate_and_deletion() -> None:
    assert inflate((2, 1), [(1, 2), (1,)]) == (2, 3, 1)
    assert inflate((2, 4, 1, 3), [(1, 2), (1,), (1,), (1,)]) == (2, 3, 5, 1, 4)
    assert inflate((1, 2), [(), (2, 1)]) == (2, 1)
    with pytest.raises(ValueError):
        inflate((1, 2), [(1,)])
    assert delete_point((2, 4, 1, 3), 1) == (2, 1, 3)
    assert children((2, 4, 1, 3)) == {(3, 1, 2), (1, 3, 2), (2, 3, 1), (2, 1, 3)}


def test_symmetries() -> None:
    p = (2, 4, 1, 3)
    assert reverse(p) == (3, 1, 4, 2)
    assert complement(p) == (3, 1, 4, 2)
    assert inverse(p) == (3, 1, 4, 2)
    assert canonical((3, 1, 4, 2)) == p
    assert orbit_size(p) == 2
    assert orbit((1, 3, 2)) == [(1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2)]
    assert apply_symmetry("ri", (1, 3, 2)) == (3, 1, 2)
    with pytest.raises(ValueError):
        apply_symmetry("x", p)


def test_orbits_partition_s5() -> None:
    perms = list(all_permutations(5))
    reps = {canonical(p) for p in perms}
    assert sum(orbit_size(r) for r in reps) == len(perms)


def test_long_corner() -> None:
    assert long_corner((1, 2, 4, 3)) == "1+1+tau"
    assert long_corner((4, 3, 1, 2)) == "1-1-tau"
    assert long_corner((2, 1, 3, 4)) == "tau+1+1"
    assert long_corner((3, 4, 2, 1)) == "tau-1-1"
    assert long_corner((2, 4, 1, 3)) is None
