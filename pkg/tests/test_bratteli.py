import pytest
from hypothesis import given, strategies as st

from typeb.algebra.presentations import double_factorial_odd
from typeb.bratteli import (
    PartitionPair,
    branching,
    dimension_check,
    format_counts,
    level_vertices,
    partitions,
    path_counts,
)
from typeb.errors import UsageError


def paths_by_dfs(n):
    """Count paths explicitly, level by level, without dynamic programming."""
    counts = {}

    def walk(v, level):
        if level == n:
            counts[v] = counts.get(v, 0) + 1
            return
        allowed = set(level_vertices(level + 1))
        for u in branching(v):
            if u in allowed:
                walk(u, level + 1)

    walk(PartitionPair(), 0)
    return counts


def test_partitions():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions(0) == ((),)


def test_levels_zero_and_one():
    assert path_counts(0) == {PartitionPair(): 1}
    assert {str(v): k for v, k in path_counts(1).items()} == {"(1|)": 1, "(|1)": 1}


def test_level_two_vertices_and_counts():
    got = {str(v): k for v, k in path_counts(2).items()}
    assert got == {"(|)": 2, "(1|1)": 2, "(2|)": 1, "(1,1|)": 1, "(|2)": 1, "(|1,1)": 1}
    assert len(got) == 6


@pytest.mark.parametrize("n", range(9))
def test_sum_of_squares(n):
    assert sum(k * k for k in path_counts(n).values()) == 2 ** n * double_factorial_odd(n)
    assert dimension_check(n)


@pytest.mark.parametrize("n", range(6))
def test_dp_matches_dfs(n):
    dp = {v: k for v, k in path_counts(n).items() if k}
    assert dp == paths_by_dfs(n)


def test_every_vertex_reachable():
    for n in range(7):
        assert all(k > 0 for k in path_counts(n).values())


def test_bound_and_bad_input():
    with pytest.raises(UsageError):
        dimension_check(9)
    with pytest.raises(UsageError):
        PartitionPair((1, 2), ())
    with pytest.raises(UsageError):
        level_vertices(-1)


def test_format_counts():
    assert format_counts(path_counts(1)) == "(|1): 1\n(1|): 1"


@given(st.integers(0, 6), st.data())
def test_branching_symmetric(n, data):
    vs = level_vertices(n)
    v = data.draw(st.sampled_from(vs))
    for u in branching(v):
        assert v in branching(u)
        assert abs(u.size - v.size) == 1
