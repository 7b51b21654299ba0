import random

import pytest
from hypothesis import given, strategies as st

from typeb.braid import (
    BraidWord,
    SignedPermutation,
    concat,
    conjugate,
    coxeter_closure,
    destabilize,
    exponent_sum,
    format_braid,
    free_reduce,
    markov_move,
    parse_braid,
    random_word,
    relation_shuffle,
    signed_permutation,
    stabilize,
)
from typeb.errors import ParseError, UsageError


@st.composite
def words(draw, max_n=4, max_len=10):
    n = draw(st.integers(1, max_n))
    letters = draw(st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from((1, -1))), max_size=max_len))
    return BraidWord(n, tuple(letters))


def test_parse_tokens():
    assert parse_braid("y 1 -1", 2).letters == ((0, 1), (1, 1), (1, -1))


def test_parse_and_reduce_to_empty():
    assert free_reduce(parse_braid("y y y' y'", 1)).letters == ()


def test_parse_out_of_range():
    with pytest.raises(ParseError):
        parse_braid("3", 3)
    with pytest.raises(ParseError):
        parse_braid("1 x", 3)


def test_format_round_trip():
    w = parse_braid("y 2 -1 y'", 3)
    assert parse_braid(format_braid(w), 3) == w


def test_free_reduce_examples():
    assert free_reduce(BraidWord(2, ((1, 1), (1, -1)))).letters == ()
    w = BraidWord(2, ((0, 1), (1, 1)))
    assert free_reduce(w) == w


def test_exponent_sum_examples():
    assert exponent_sum(parse_braid("1 2 -1", 3)) == 1
    assert exponent_sum(parse_braid("y", 1)) == 0
    assert exponent_sum(parse_braid("y 1 y 1", 2)) == 2


def test_signed_permutation_examples():
    assert signed_permutation(BraidWord(3)) == SignedPermutation.identity(3)
    assert signed_permutation(parse_braid("y", 2)).images == (-1, 2)


def test_coxeter_relations_hold_for_images():
    # check the defining relations on the proposed generator images
    n = 4
    ident = SignedPermutation.identity(n)
    g = [signed_permutation(BraidWord(n, ((i, 1),))) for i in range(n)]
    for i in range(n):
        assert g[i] * g[i] == ident
    s0s1 = g[0] * g[1]
    assert s0s1 * s0s1 != ident
    assert s0s1 * s0s1 * s0s1 * s0s1 == ident
    for i in range(1, n - 1):
        assert g[i] * g[i + 1] * g[i] == g[i + 1] * g[i] * g[i + 1]
    for i in range(n):
        for j in range(i + 2, n):
            assert g[i] * g[j] == g[j] * g[i]


@pytest.mark.parametrize("n, order", [(1, 2), (2, 8), (3, 48), (4, 384)])
def test_coxeter_group_order(n, order):
    assert len(coxeter_closure(n)) == order


def test_markov_move_examples():
    assert stabilize(BraidWord(1), 1) == BraidWord(2, ((1, 1),))
    w = parse_braid("y 1 y", 2)
    assert destabilize(stabilize(w, -1)) == w
    assert markov_move(w, "stabilize_pos") == stabilize(w, 1)
    with pytest.raises(UsageError):
        destabilize(w)
    with pytest.raises(UsageError):
        markov_move(w, "conjugate")
    with pytest.raises(UsageError):
        markov_move(w, "twist")


def test_relation_shuffle_reaches_four_term_partner():
    w = parse_braid("y 1 y 1", 2)
    seen = {relation_shuffle(w, 1, s).letters for s in range(200)}
    assert parse_braid("1 y 1 y", 2).letters in seen


def test_shuffle_zero_steps():
    w = parse_braid("y 1 -1 y'", 2)
    assert relation_shuffle(w, 0, 5) == w


def test_conjugate_exponent_sum_random():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 4)
        w = random_word(n, rng.randint(0, 8), rng)
        a = random_word(n, rng.randint(0, 4), rng)
        assert exponent_sum(conjugate(w, a)) == exponent_sum(w)


def test_concat():
    assert concat([parse_braid("1", 2), parse_braid("2", 3)]).strands == 3


@given(words())
def test_free_reduce_preserves_quotient(w):
    r = free_reduce(w)
    assert signed_permutation(r) == signed_permutation(w)
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(r.letters, r.letters[1:]))


@given(words(), st.integers(0, 30), st.integers(0, 10 ** 6))
def test_shuffle_preserves_quotient_and_exponent(w, steps, seed):
    s = relation_shuffle(w, steps, seed)
    assert s.strands == w.strands
    assert signed_permutation(s) == signed_permutation(w)
    assert exponent_sum(s) == exponent_sum(w)


@given(words(), words())
def test_quotient_is_homomorphism(a, b):
    n = max(a.strands, b.strands)
    a, b = a.with_strands(n), b.with_strands(n)
    assert signed_permutation(a * b) == signed_permutation(a) * signed_permutation(b)


@given(words(max_n=3), st.sampled_from((1, -1)))
def test_stabilize_changes_exponent_by_power(w, p):
    assert exponent_sum(stabilize(w, p)) == exponent_sum(w) + p
    assert destabilize(stabilize(w, p)) == w
