import pytest

from typeb.algebra import solve_markov_trace
from typeb.algebra.linalg import AffineSolver, rank_fraction_matrix
from typeb.algebra.presentations import bmw_parameters
from typeb.algebra.trace import check_e_rule, gram_rank, is_nondegenerate
from typeb.errors import InconsistentSystemError
from typeb.ring import DEFAULT

P = bmw_parameters()
q, lam, q1, x = P["q"], P["lam"], P["q1"], P["x"]


@pytest.fixture(scope="module")
def tr2(bbb):
    return solve_markov_trace(bbb[2], [bbb[1]])


def test_single_level_has_one_free_moment(bbb):
    tr = solve_markov_trace(bbb[1])
    assert len(tr.parameters) == 1
    (name,) = tr.parameters
    assert tr.moments[name] == ("Y",)
    assert tr.of_word(()) == 1
    assert tr.of_word(("Y",)) == tr.registry.var(name)


def test_two_level_family_nonempty(tr2):
    assert len(tr2.parameters) >= 1
    assert tr2.of_word(()) == 1


def test_tower_forces_wall_moment(tr2):
    # stabilization on B*B_2 pins down the lower Y-moment
    low = tr2.lower[0]
    assert low.parameters == ()
    assert low.of_word(("Y",)) == q * q1 / (q - lam)


def test_restriction_to_lower_level(bbb, tr2):
    low = tr2.lower[0]
    for w in bbb[1].basis:
        assert tr2.of_word(w) == low.of_word(w)


def test_stabilization_rules(bbb, tr2):
    t = bbb[2]
    low = tr2.lower[0]
    Xinv = t.inverse_of_generator("X1")
    for w in bbb[1].basis:
        img = t.word_element(w)
        assert tr2(t.act_generator(img, "X1")) == low.of_word(w) / (x * lam)
        assert tr2(img * Xinv) == low.of_word(w) * lam / x


def test_central_on_all_basis_pairs(bbb, tr2):
    t = bbb[2]
    for a in t.basis:
        for b in t.basis:
            assert tr2.of_word(a + b) == tr2.of_word(b + a)


def test_e_rule(bbb, tr2):
    assert check_e_rule(tr2, bbb[1])


def test_nondegenerate(tr2):
    assert is_nondegenerate(tr2, seed=1)


def test_perturbed_trace_fails_e_rule(bbb, tr2):
    import dataclasses

    k = bbb[2].index_of(("X1",))
    vals = list(tr2.values)
    vals[k] = vals[k] + 1
    bad = dataclasses.replace(tr2, values=vals)
    assert not check_e_rule(bad, bbb[1])


def test_zero_form_is_degenerate(tr2):
    import dataclasses

    zero = dataclasses.replace(tr2, values=[tr2.registry.zero] * len(tr2.values))
    vals = {n: 2 for n in tr2.registry.names}
    vals.update(q=3, lam=5, q1=7)
    assert gram_rank(zero, vals) == 0
    assert gram_rank(tr2, vals) == tr2.table.dimension


def test_affine_solver_inconsistent():
    a, b = DEFAULT.vars("q", "lam")
    s = AffineSolver(DEFAULT, priority=lambda k: k)
    one = DEFAULT.one
    s.add({0: one, None: -one})
    with pytest.raises(InconsistentSystemError):
        s.add({0: one, None: -one * 2})


def test_rank_fraction_matrix():
    assert rank_fraction_matrix([[1, 2], [2, 4]]) == 1
    assert rank_fraction_matrix([[1, 0], [0, 1]]) == 2
