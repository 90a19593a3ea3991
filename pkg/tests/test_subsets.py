import pytest
from hypothesis import given, strategies as st

from powclo import subsets


def test_codes_and_elements():
    assert subsets.full(3) == 0b111
    assert subsets.from_elements([0, 2]) == 0b101
    assert subsets.elements(0b101) == [0, 2]
    assert subsets.size(0b1011) == 3
    assert subsets.singleton(2) == 0b100
    assert list(subsets.nonempty(2)) == [1, 2, 3]


def test_submasks_are_nonempty_and_decreasing():
    assert list(subsets.submasks(0b101)) == [0b101, 0b100, 0b001]
    assert list(subsets.submasks(0)) == []


def test_format_and_parse_with_labels():
    labels = ("0", "a", "b")
    assert subsets.format_subset(0b110, labels) == "{a,b}"
    assert subsets.format_subset(0) == "{}"
    assert subsets.parse_elements("{a,b}", 3, labels) == 0b110
    assert subsets.parse_elements("0, 2", 3) == 0b101
    assert subsets.parse_elements("", 3) == 0


@pytest.mark.parametrize("text", ["c", "3", "-1"])
def test_parse_rejects_elements_outside_the_carrier(text):
    with pytest.raises(ValueError):
        subsets.parse_elements(text, 3, ("0", "a", "b"))


@given(st.integers(min_value=0, max_value=255), st.integers(min_value=0, max_value=255))
def test_is_subset_matches_set_inclusion(a, b):
    assert subsets.is_subset(a, b) == set(subsets.elements(a)).issubset(subsets.elements(b))


@given(st.integers(min_value=0, max_value=1023))
def test_elements_round_trip(code):
    assert subsets.from_elements(subsets.elements(code)) == code
