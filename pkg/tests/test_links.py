import random

import pytest

from typeb.algebra.presentations import bmw_parameters
from typeb.braid import BraidWord, conjugate, parse_braid, random_word, relation_shuffle, stabilize
from typeb.errors import CapabilityError
from typeb.links import (
    bracket_state_sum,
    default_skein,
    invariance_suite,
    jones_B,
    jones_normalization,
    kauffman_B,
)
from typeb.ring import parse

P = bmw_parameters()
q, lam, q1 = P["q"], P["lam"], P["q1"]


def test_kauffman_unknot():
    assert kauffman_B(BraidWord(1)) == 1


def test_kauffman_wall_loop():
    # the tower solve fixes tr(Y) on B*B_1 (a free moment when B*B_1 is solved alone)
    assert kauffman_B(parse_braid("y", 1)) == q * q1 / (q - lam)


@pytest.mark.parametrize("text, n", [("y 1 y' -1 y", 2), ("", 1), ("y", 1), ("1 1 y", 2)])
def test_kauffman_stabilization(text, n):
    w = parse_braid(text, n)
    k = kauffman_B(w)
    assert kauffman_B(stabilize(w, 1)) == k
    assert kauffman_B(stabilize(w, -1)) == k


def test_kauffman_bound():
    with pytest.raises(CapabilityError):
        kauffman_B(BraidWord(4))


def test_jones_unknot_and_bound():
    assert jones_B(BraidWord(1)) == 1
    # three trivial strands close to a three-component unlink
    c = default_skein().values["c"]
    assert jones_B(BraidWord(3)) == c ** 2
    assert kauffman_B(BraidWord(3)) == P["x"] ** 2
    with pytest.raises(CapabilityError):
        jones_B(BraidWord(7))


def test_jones_trefoil_regression():
    # frozen after agreement with the independent state sum below
    reg = default_skein().registry
    expected = parse("a^-2*b^2 + a^-6*b^6 - a^-8*b^8", reg)
    w = parse_braid("1 1 1", 2)
    assert jones_B(w) == expected
    assert bracket_state_sum(w) == expected


def test_normalization_kills_twists():
    N = jones_normalization(default_skein())
    v = default_skein().values
    assert N.c * N.mu * (v["a"] + v["b"] / v["c"]) == 1


def test_jones_shuffle_and_conjugation():
    rng = random.Random(9)
    for k in range(10):
        n = rng.randint(1, 3)
        w = random_word(n, rng.randint(1, 5), rng)
        j = jones_B(w)
        assert jones_B(relation_shuffle(w, 50, k)) == j
        assert jones_B(conjugate(w, random_word(n, 2, rng))) == j


def test_jones_matches_state_sum_without_wall():
    rng = random.Random(1)
    for _ in range(15):
        n = rng.randint(2, 4)
        w = random_word(n, rng.randint(0, 6), rng, wall=False)
        assert jones_B(w) == bracket_state_sum(w)


def test_appending_crossing_is_not_a_move():
    # negative control: X1 appended without adding a strand changes the invariant
    rng = random.Random(3)
    changed_k = changed_j = 0
    for _ in range(10):
        w = random_word(2, rng.randint(1, 4), rng)
        w2 = BraidWord(2, w.letters + ((1, 1),))
        changed_k += kauffman_B(w) != kauffman_B(w2)
        changed_j += jones_B(w) != jones_B(w2)
    assert changed_k == 10 and changed_j == 10


def test_suite_empty():
    rep = invariance_suite(0, 1)
    assert rep.trials == 0 and rep.ok and not rep.lines


def test_suite_small_and_deterministic():
    a = invariance_suite(15, 4)
    b = invariance_suite(15, 4)
    assert a.ok and a.passes == {"kauffman": 15, "jones": 15}
    assert a.lines == b.lines


def test_suite_chunks_compose():
    full = invariance_suite(6, 8)
    parts = invariance_suite(3, 8).lines + invariance_suite(3, 8, start=3).lines
    assert full.lines == parts


def test_suite_reports_broken_route(monkeypatch):
    import typeb.links as links

    monkeypatch.setattr(links, "jones_B", lambda w: w.strands * links.kauffman_B(BraidWord(1)))
    rep = links.invariance_suite(30, 2, routes=("jones",))
    assert rep.failures["jones"] > 0 and not rep.ok
    assert rep.first_counterexample.startswith("jones:")
