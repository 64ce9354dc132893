from hypothesis import given, settings
from hypothesis import strategies as st

from draftgame.matching import max_weight_assignment
from draftgame.oracle import enumerate_assignment_value


def test_square_known():
    value, cols = max_weight_assignment([[4, 7], [5, 5]])
    assert value == 12  # 7 for the first row plus 5 for the second
    assert sorted(cols) == [0, 1]


def test_wide_and_tall():
    assert max_weight_assignment([[4, 7, 1]])[0] == 7
    assert max_weight_assignment([[4], [7], [1]])[0] == 7


def test_empty():
    assert max_weight_assignment([])[0] == 0


def test_extra_rows_stay_unmatched():
    value, cols = max_weight_assignment([[0], [3]])
    assert value == 3
    assert cols.count(-1) == 1


def test_exact_on_values_beyond_double_precision():
    big = 5**40
    value, _ = max_weight_assignment([[big, 1], [1, big]])
    assert value == 2 * big  # off by one under float arithmetic


@st.composite
def matrices(draw):
    cols = draw(st.integers(1, 4))
    return draw(
        st.lists(
            st.lists(st.integers(0, 50), min_size=cols, max_size=cols),
            min_size=0,
            max_size=5,
        )
    )


@given(matrices())
@settings(max_examples=80)
def test_matches_exhaustive_enumeration(rows):
    tasks = len(rows[0]) if rows else 0
    expected = enumerate_assignment_value(rows, tasks)
    assert max_weight_assignment(rows)[0] == expected
