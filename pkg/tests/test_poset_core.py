import numpy as np
import pytest

from src.errors import NotContainedError, SizeGuardError
from src.perm_core import format_permutation
from src.poset_core import chain_counts, downset, enumerate_chains, hasse_graph, interval, invert_zeta, to_dot, zeta_matrix


def test_downset_rank_order() -> None:
    iv = downset((2, 4, 1, 3))
    assert [format_permutation(p) for p in iv.elements] == ["1", "12", "21", "132", "213", "231", "312", "2413"]
    assert iv.bottom == (1,)
    assert iv.top == (2, 4, 1, 3)


def test_interval_bounds() -> None:
    iv = interval((1,), (1, 2, 3))
    assert iv.elements == [(1,), (1, 2), (1, 2, 3)]
    assert sorted(iv.covers) == [(1, 0), (2, 1)]
    with pytest.raises(NotContainedError):
        interval((2, 1), (1, 2, 3))


def test_interval_from_empty() -> None:
    iv = interval((), (1,))
    assert iv.elements == [(), (1,)]
    assert iv.covers == [(1, 0)]


def test_hasse_graph_and_dot() -> None:
    iv = downset((2, 4, 1, 3))
    g = hasse_graph(iv)
    assert g.number_of_nodes() == 8
    assert g.number_of_edges() == len(iv.covers)
    assert g.nodes[7]["label"] == "2413"
    dot = to_dot(iv)
    assert dot.startswith("digraph interval {")
    assert 'label="2413"' in dot


def test_chain_counts_give_the_hall_sum() -> None:
    counts = chain_counts(interval((1,), (1, 2, 3)))
    assert counts == {1: 1, 2: 1}
    iv = downset((2, 4, 1, 3))
    hall = sum((-1) ** length * count for length, count in chain_counts(iv).items())
    assert hall == -3


def test_single_element_interval_has_one_chain() -> None:
    chains = list(enumerate_chains(interval((2, 1), (2, 1))))
    assert len(chains) == 1
    assert chains[0].length == 0


def test_zeta_inverse() -> None:
    iv = interval((1,), (1, 2, 3))
    z = zeta_matrix(iv)
    assert z.tolist() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    m = invert_zeta(z)
    assert [int(v) for v in m[0]] == [1, -1, 0]
    assert int(invert_zeta(zeta_matrix(downset((2, 4, 1, 3))))[0, -1]) == -3


def test_invert_zeta_rejects_bad_matrices() -> None:
    with pytest.raises(ValueError):
        invert_zeta(np.array([[2, 0], [0, 1]]))
    with pytest.raises(ValueError):
        invert_zeta(np.array([[1, 0], [1, 1]]))


def test_size_guards(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PERMMOB_DOWNSET_CAP", "3")
    with pytest.raises(SizeGuardError):
        downset((2, 4, 1, 3))
    monkeypatch.setenv("PERMMOB_DOWNSET_CAP", "22")
    monkeypatch.setenv("PERMMOB_CHAIN_CAP", "3")
    with pytest.raises(SizeGuardError):
        chain_counts(downset((2, 4, 1, 3)))
