"""Balloon and wedge values, containment classes and the correction term."""
import pytest

from src.balloons import (
    as_wedge,
    balloon_2413_mobius,
    balloon_mobius_with_correction,
    classify_containment,
    is_10_balloon,
    is_2413_balloon,
    proper_reductions_wedge,
    wedge_mobius,
)
from src.errors import SizeGuardError
from src.families import balloon, balloon_2413, wedge
from src.mobius_engines import mobius_recursive
from src.perm_core import all_permutations, contains, make, parse_permutation
from src.poset_core import downset
from src.schemas import BalloonSpec, WedgeSpec

ONE = (1,)
W2431 = WedgeSpec(alpha=make((2, 1)), beta=make((2, 1)), k=1)


def _oracle(upper) -> int:
    return mobius_recursive(ONE, upper).value


def test_recognizes_2413_balloons() -> None:
    assert is_2413_balloon((2, 5, 3, 1, 4)) == (1,)
    assert is_2413_balloon(parse_permutation("263415")) == (1, 2)
    assert is_2413_balloon((2, 4, 1, 3)) is None
    assert is_2413_balloon((1, 2, 3, 4, 5)) is None
    for n in (1, 2, 3):
        for beta in all_permutations(n):
            assert is_2413_balloon(balloon_2413(beta)) == beta


def test_recognizes_10_balloons() -> None:
    for gamma in [(1,), (2, 1), (1, 3, 2)]:
        p = balloon(BalloonSpec(alpha=make((2, 4, 1, 3)), beta=make(gamma), i=1, j=0))
        assert is_10_balloon(p) == gamma
    assert is_10_balloon((2, 4, 1, 3)) is None


def test_named_2413_balloon_values() -> None:
    assert balloon_2413_mobius((1,)) == 4
    assert balloon_2413_mobius((1, 2)) == -1
    assert balloon_2413_mobius((1, 3, 2)) == 1
    assert balloon_2413_mobius((2, 4, 1, 3)) == -6
    with pytest.raises(ValueError):
        balloon_2413_mobius(())


def test_2413_balloon_formula_matches_oracle() -> None:
    for n in (1, 2, 3):
        for beta in all_permutations(n):
            assert balloon_2413_mobius(beta) == _oracle(balloon_2413(beta)), beta


@pytest.mark.slow
def test_2413_balloon_formula_matches_oracle_at_length_four() -> None:
    for beta in all_permutations(4):
        assert balloon_2413_mobius(beta) == _oracle(balloon_2413(beta)), beta


def test_custom_inner_mobius_is_used() -> None:
    calls = []

    def mu(lower, upper) -> int:
        calls.append(tuple(upper))
        return mobius_recursive(lower, upper).value

    assert balloon_2413_mobius((1, 3, 2), mu) == 1
    assert calls == [(1, 3, 2)]


def test_classify_containment_in_2431() -> None:
    spec = W2431.as_balloon()
    assert balloon(spec) == (2, 4, 3, 1)
    assert classify_containment((2, 1), spec).kind == "complete"
    assert classify_containment((2, 3, 1), spec).kind == "complete"
    assert classify_containment((1, 3, 2), spec).kind == "proper_reduction"
    assert classify_containment((3, 2, 1), spec).kind == "proper_reduction"
    inner = classify_containment((1, 2), spec)
    assert inner.kind == "matryoshka"
    assert inner.minimal_core == (1,)


@pytest.mark.slow
def test_defective_containment() -> None:
    spec = BalloonSpec(
        alpha=parse_permutation("4,6,3,5,8,9,2,12,10,13,11,7,1"),
        beta=parse_permutation("24137586"),
        i=5,
        j=8,
    )
    result = classify_containment(parse_permutation("4,6,3,5,7,10,8,11,9,2,1"), spec)
    assert result.kind == "defective"
    assert result.minimal_core is None
    # the fourth core is 14253; its inverse 13524 is not a pattern of beta
    assert not contains((1, 3, 5, 2, 4), spec.beta)
    assert set(result.embedding_cores) == {(2, 4, 1, 3), (3, 1, 4, 2), (2, 4, 1, 3, 5), (1, 4, 2, 5, 3)}


def test_wedge_reductions_and_value() -> None:
    assert wedge(W2431) == (2, 4, 3, 1)
    assert proper_reductions_wedge(W2431) == [(1, 3, 2), (3, 2, 1)]
    assert wedge_mobius(W2431) == -1


def _wedges(max_alpha: int, max_beta: int):
    for a in range(1, max_alpha + 1):
        for alpha in all_permutations(a):
            for b in range(1, max_beta + 1):
                for beta in all_permutations(b):
                    for k in range(a + 1):
                        yield WedgeSpec(alpha=alpha, beta=beta, k=k)


def _wider_wedges():
    """Wedges with |alpha|, |beta| <= 4 that _wedges(3, 3) leaves out."""
    for spec in _wedges(4, 4):
        if len(spec.alpha) == 4 or len(spec.beta) == 4:
            yield spec


def _check_wedge_value(spec: WedgeSpec) -> None:
    value = wedge_mobius(spec)
    assert value == _oracle(wedge(spec)), spec
    mu_beta = _oracle(spec.beta)
    if mu_beta == 0:
        assert value == 0, spec
    else:
        assert value % mu_beta == 0, spec


def _assert_no_defective(spec: WedgeSpec) -> None:
    pi = wedge(spec)
    as_balloon = spec.as_balloon()
    for sigma in downset(pi).elements:
        if sigma == pi:
            continue
        assert classify_containment(sigma, as_balloon).kind != "defective", (spec, sigma)


def test_wedge_value_matches_oracle_and_divides() -> None:
    for spec in _wedges(3, 3):
        _check_wedge_value(spec)


@pytest.mark.slow
def test_wedge_value_matches_oracle_and_divides_up_to_four() -> None:
    for spec in _wider_wedges():
        _check_wedge_value(spec)


def test_wedges_have_no_defective_elements() -> None:
    for spec in _wedges(3, 3):
        _assert_no_defective(spec)


@pytest.mark.slow
def test_wedges_of_length_seven_have_no_defective_elements() -> None:
    for spec in _wider_wedges():
        if len(spec.alpha) + len(spec.beta) == 7:
            _assert_no_defective(spec)


@pytest.mark.slow
def test_long_wedges_have_no_defective_elements() -> None:
    alphas = [make((2, 4, 1, 3)), make((3, 1, 4, 2)), make((2, 5, 3, 1, 4)), make((2, 4, 6, 1, 3, 5))]
    betas = [make((1, 3, 2)), make((2, 4, 1, 3)), make((3, 1, 4, 2)), make((2, 5, 3, 1, 4))]
    for alpha in alphas:
        for beta in betas:
            if not 8 <= len(alpha) + len(beta) <= 9:
                continue
            for k in range(len(alpha) + 1):
                _assert_no_defective(WedgeSpec(alpha=alpha, beta=beta, k=k))


def test_correction_on_2431() -> None:
    result = balloon_mobius_with_correction(W2431.as_balloon())
    assert result.value == -1
    assert result.reduction_sum == 1
    assert result.correction == 0
    assert result.reductions == [(1, 3, 2), (3, 2, 1)]
    assert result.reduction_chain_sum == -1
    assert result.matryoshka_chain_sum == 0


def _check_chain_partition(spec: BalloonSpec) -> None:
    result = balloon_mobius_with_correction(spec)
    assert result.value == _oracle(balloon(spec)), spec
    assert result.reduction_chain_sum == -result.reduction_sum, spec
    assert result.matryoshka_chain_sum == 0, spec
    assert result.reduction_chain_sum + result.matryoshka_chain_sum + result.correction == result.value


def _balloon_specs(alpha_lengths, beta_lengths):
    for a in alpha_lengths:
        for alpha in all_permutations(a):
            for b in beta_lengths:
                for beta in all_permutations(b):
                    for i in range(a + 1):
                        for j in range(a + 1):
                            yield BalloonSpec(alpha=alpha, beta=beta, i=i, j=j)


def test_chain_partition_gives_exact_values() -> None:
    for spec in _balloon_specs((2, 3), (1, 2)):
        _check_chain_partition(spec)
    for spec in _balloon_specs((2,), (3,)):
        _check_chain_partition(spec)


@pytest.mark.slow
def test_chain_partition_gives_exact_values_at_length_six() -> None:
    for spec in _balloon_specs((2,), (4,)):
        _check_chain_partition(spec)
    for spec in _balloon_specs((3,), (3,)):
        _check_chain_partition(spec)


def test_correction_needs_two_red_points() -> None:
    with pytest.raises(ValueError, match="alpha"):
        balloon_mobius_with_correction(BalloonSpec(alpha=make((1,)), beta=make((2, 1)), i=0, j=1))


def test_correction_vanishes_on_wedges() -> None:
    for spec in _wedges(3, 2):
        if len(spec.alpha) < 2:
            continue
        assert balloon_mobius_with_correction(spec.as_balloon()).correction == 0, spec


def test_as_wedge() -> None:
    assert as_wedge((2, 4, 3, 1)) == W2431
    assert as_wedge((2, 4, 1, 3)) is None
    for spec in _wedges(2, 3):
        if len(spec.alpha) < 2 or len(spec.beta) < 2:
            continue
        found = as_wedge(wedge(spec))
        assert found is not None
        assert wedge(found) == wedge(spec)


def test_guards(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PERMMOB_REDUCTION_CAP", "1")
    with pytest.raises(SizeGuardError):
        proper_reductions_wedge(W2431)
    monkeypatch.setenv("PERMMOB_RECURSIVE_CAP", "3")
    with pytest.raises(SizeGuardError):
        balloon_mobius_with_correction(W2431.as_balloon())
    with pytest.raises(ValueError):
        BalloonSpec(alpha=make((1,)), beta=make((1,)), i=3, j=0)
