"""Text format and the pydantic bridge for Permutation."""
import pytest

from src.errors import PermutationParseError
from src.permutation import Permutation, format_permutation, parse_permutation, standardize
from src.schemas import ContainmentClass


def test_parse_concatenated_and_comma_forms() -> None:
    assert parse_permutation("2413") == (2, 4, 1, 3)
    assert parse_permutation("2, 4, 1, 3") == (2, 4, 1, 3)
    long = parse_permutation("2,10,1,3,4,5,6,7,8,9")
    assert len(long) == 10
    assert long[1] == 10


def test_format_switches_to_commas_above_nine() -> None:
    assert format_permutation((3, 1, 4, 2)) == "3142"
    assert format_permutation(tuple(range(10, 0, -1))) == "10,9,8,7,6,5,4,3,2,1"
    assert format_permutation(()) == "ε"


@pytest.mark.parametrize("text", ["", "ε", "e", "eps"])
def test_empty_aliases(text: str) -> None:
    assert parse_permutation(text) == ()


@pytest.mark.parametrize("text", ["2213", "24a3", "1,3", "0123", "-1"])
def test_parse_rejects_non_permutations(text: str) -> None:
    with pytest.raises(PermutationParseError):
        parse_permutation(text)


def test_parse_error_is_a_value_error() -> None:
    with pytest.raises(ValueError):
        parse_permutation("112")


def test_constructor_validates() -> None:
    assert Permutation("2413") == Permutation([2, 4, 1, 3])
    with pytest.raises(PermutationParseError):
        Permutation([1, 1])
    assert str(Permutation("315274968")) == "315274968"


def test_round_trip_of_long_text() -> None:
    p = Permutation(list(range(12, 0, -1)))
    assert parse_permutation(format_permutation(p)) == p


def test_standardize() -> None:
    assert standardize([5, 10, 2]) == (2, 3, 1)
    assert standardize([]) == ()


def test_pydantic_validates_and_serializes_text() -> None:
    c = ContainmentClass(kind="complete", minimal_core="21", embedding_cores=[[1], "12"])
    assert c.minimal_core == (2, 1)
    assert isinstance(c.minimal_core, Permutation)
    dumped = c.model_dump(mode="json")
    assert dumped["minimal_core"] == "21"
    assert dumped["embedding_cores"] == ["1", "12"]
