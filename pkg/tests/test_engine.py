import random

import pytest

from typeb.algebra import (
    Presentation,
    compute_basis,
    element_of_word,
    idempotent_presentation,
    present_bmwA,
    present_heckeB,
    present_tlb,
)
from typeb.algebra.presentations import bmw_parameters, double_factorial_odd
from typeb.braid import parse_braid, random_word, relation_shuffle
from typeb.errors import DomainError, NonConfluenceError, UsageError
from typeb.ring import DEFAULT

P = bmw_parameters()
q, lam, q1 = P["q"], P["lam"], P["q1"]
Q, Q0 = DEFAULT.vars("Q", "Q0")


def random_element(table, rng, terms=3):
    acc = table.zero()
    for _ in range(terms):
        k = rng.randrange(table.dimension)
        acc = acc + table.basis_element(k) * rng.randint(-3, 3)
    return acc


def test_idempotent_presentation():
    t = compute_basis(idempotent_presentation())
    assert t.dimension == 2
    g = t.gen("g")
    assert g * g == g


@pytest.mark.parametrize("n, dim", [(1, 2), (2, 8), (3, 48)])
def test_hecke_dims(hecke, n, dim):
    assert hecke[n].dimension == dim


def test_hecke_quadratic(hecke):
    t = hecke[1]
    assert t.basis == [(), ("X0",)]
    X0 = t.gen("X0")
    assert X0 * X0 == X0 * (Q0 - 1) + t.unit * Q0


@pytest.mark.parametrize("n, dim", [(2, 3), (3, 15)])
def test_bmwA_dims(n, dim):
    assert compute_basis(present_bmwA(n)).dimension == dim == double_factorial_odd(n)


def test_bmwA_absorption(bmwA3):
    X1, e1 = bmwA3.gen("X1"), bmwA3.gen("e1")
    assert X1 * e1 == e1 * lam
    assert e1 * X1 == e1 * lam


@pytest.mark.parametrize("n, dim", [(1, 2), (2, 12), (3, 120)])
def test_bbb_dims(bbb, n, dim):
    assert bbb[n].dimension == dim


def test_bbb_relations(bbb):
    t = bbb[2]
    Y, X1, e1 = t.gen("Y"), t.gen("X1"), t.gen("e1")
    assert Y * X1 * Y * e1 == e1
    assert e1 * X1 == e1 * lam
    assert Y * Y == Y * q1 + t.unit / q
    # e_1 is the abbreviation 1 - (X - X^-1)/delta
    Xinv = element_of_word(t, parse_braid("-1", 2))
    assert e1 == t.unit - (X1 - Xinv) / P["delta"]
    assert e1 * e1 == e1 * P["x"]


def test_element_of_word_examples(bbb):
    t = bbb[2]
    assert element_of_word(t, parse_braid("", 2)) == t.unit
    assert element_of_word(t, parse_braid("y y", 2)) == t.gen("Y") * q1 + t.unit * q.inverse()
    assert element_of_word(t, parse_braid("y y'", 2)) == t.unit
    assert element_of_word(t, parse_braid("1 -1", 2)) == t.unit


def test_unit_is_neutral(bbb):
    t = bbb[2]
    rng = random.Random(0)
    for _ in range(10):
        a = random_element(t, rng)
        assert t.unit * a == a == a * t.unit


@pytest.mark.parametrize("which", ["bbb2", "hecke3", "bmwA3"])
def test_associativity(bbb, hecke, bmwA3, which):
    t = {"bbb2": bbb[2], "hecke3": hecke[3], "bmwA3": bmwA3}[which]
    rng = random.Random(3)
    for _ in range(100):
        a, b, c = (random_element(t, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_bbb3_associativity_sample(bbb):
    t = bbb[3]
    rng = random.Random(4)
    for _ in range(10):
        a, b, c = (random_element(t, rng, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("name, n", [("bbb", 2), ("hecke", 3)])
def test_shuffle_preserves_image(bbb, hecke, name, n):
    t = bbb[n] if name == "bbb" else hecke[n]
    rng = random.Random(7)
    for k in range(100):
        w = random_word(n, rng.randint(0, 5), rng)
        s = relation_shuffle(w, rng.randint(1, 12), k)
        assert element_of_word(t, w) == element_of_word(t, s)


def test_tlb_presentation_dims(tlb_tables):
    assert [tlb_tables[n].dimension for n in (1, 2, 3)] == [2, 6, 20]


def test_specialize_keeps_basis(bbb):
    s = bbb[2].specialize({"q": 2, "lam": 3, "q1": 5})
    assert s.basis == bbb[2].basis
    Y = s.gen("Y")
    assert Y * Y == Y * 5 + s.unit / 2


def test_bound_exceeded_raises():
    with pytest.raises(NonConfluenceError):
        compute_basis(present_heckeB(3), bound=10)


def test_rule_direction_checked():
    with pytest.raises(UsageError):
        Presentation("bad", DEFAULT, ("a", "b"), [(("a",), {("b", "b"): 1})])
    with pytest.raises(UsageError):
        Presentation("bad", DEFAULT, ("a",), [(("a", "a"), {("z",): 1})])


def test_missing_inverse():
    t = compute_basis(present_tlb(1))
    with pytest.raises(DomainError):
        t.inverse_of_generator("e0")


def test_dump_lists_basis(bbb):
    text = bbb[1].dump()
    assert text.splitlines()[0] == "# BBB1 dim 2"
    assert "basis 1 [Y]" in text
