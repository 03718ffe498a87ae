from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from presekit import config, qp
from presekit.algebra import Quiver, Relation
from presekit.errors import Inadmissible


@pytest.fixture(scope="module")
def spec():
    return config.load_spec("cycpot3")


@pytest.fixture(scope="module")
def quiver(spec):
    return spec.quiver


def terms(rel):
    return Counter({w: c for c, w in rel.terms}) if rel is not None else Counter()


def nonzero(c):
    return Counter({k: v for k, v in c.items() if v})


def brute_derivative(cycles, arrow):
    """Rotate each cycle so that ``arrow`` leads, then strip it."""
    out = Counter()
    for coeff, cycle in cycles:
        n = len(cycle)
        for k in range(n):
            rot = cycle[k:] + cycle[:k]
            if rot[0] == arrow:
                out[rot[1:]] += coeff
    return nonzero(out)


def test_derivatives_of_cba(quiver):
    S = qp.Potential.parse(quiver, "c*b*a")
    assert terms(qp.cyclic_derivative(S, "a")) == Counter({("c", "b"): 1})
    assert terms(qp.cyclic_derivative(S, "b")) == Counter({("a", "c"): 1})
    assert terms(qp.cyclic_derivative(S, "c")) == Counter({("b", "a"): 1})
    assert qp.cyclic_derivative(S, "d") is None


def test_derivative_is_linear_in_coefficient(quiver):
    S = qp.Potential.parse(quiver, "2*c*b*a")
    assert terms(qp.cyclic_derivative(S, "a")) == Counter({("c", "b"): 2})


def test_rotations_are_one_class(quiver):
    reps = {str(qp.Potential.parse(quiver, t)) for t in ("c*b*a", "b*a*c", "a*c*b")}
    assert len(reps) == 1
    assert str(qp.Potential.parse(quiver, "c*b*a") + qp.Potential.parse(quiver, "-1*b*a*c")) == "0"


def test_jacobian_relations_cycpot3(spec):
    rels = qp.jacobian_relations(spec.potential)
    assert sorted((terms(r) for r in rels), key=str) == sorted(
        [Counter({("c", "b"): 1}), Counter({("a", "c"): 1}), Counter({("b", "a"): 1})], key=str)


def test_jacobian_algebra_is_finite_at_bound(spec):
    A = qp.jacobian_algebra(spec.potential, 6)
    assert A.dim == 10
    assert A.check_associative()
    assert A.cartan_matrix() == [[1, 1, 2], [1, 2, 1], [0, 1, 1]]


def test_zero_potential_gives_path_algebra():
    Q = Quiver.from_names(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    S = qp.Potential.from_terms(Q, [])
    assert str(S) == "0" and qp.jacobian_relations(S) == []
    A = qp.jacobian_algebra(S, 4)
    assert A.is_path_algebra() and A.dim == 6


def test_two_cycles_rejected():
    Q = Quiver.from_names(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(Inadmissible):
        qp.Potential.from_terms(Q, [(1, ("b", "a"))])


def test_non_cycles_rejected(quiver):
    with pytest.raises(Inadmissible):
        qp.Potential.parse(quiver, "b*a")


def test_short_derivative_rejected():
    Q = Quiver.from_names(["1"], [("l", "1", "1")])
    S = qp.Potential.from_terms(Q, [(1, ("l", "l"))])
    with pytest.raises(Inadmissible):
        qp.jacobian_relations(S)


def test_both_relations_and_potential_rejected(tmp_path):
    text = (config.fixture_path("cycpot3").read_text()
            + '\n[relations]\nitems = ["c*b"]\n')
    path = tmp_path / "both.toml"
    path.write_text(text)
    with pytest.raises(Inadmissible):
        config.load(path)


# a single-vertex quiver with three loops has many cycles to rotate
LOOPS = Quiver.from_names(["o"], [("p", "o", "o"), ("q", "o", "o"), ("r", "o", "o")])
cycles = st.lists(st.sampled_from("pqr"), min_size=1, max_size=6).map(tuple)
potentials = st.lists(st.tuples(st.integers(-5, 5), cycles), max_size=4)


@settings(max_examples=200, deadline=None)
@given(cycle=cycles, shift=st.integers(0, 5), arrow=st.sampled_from("pqr"))
def test_rotation_invariance(cycle, shift, arrow):
    k = shift % len(cycle)
    rotated = cycle[k:] + cycle[:k]
    one = qp.cyclic_derivative(qp.Potential.from_terms(LOOPS, [(1, cycle)]), arrow)
    two = qp.cyclic_derivative(qp.Potential.from_terms(LOOPS, [(1, rotated)]), arrow)
    assert terms(one) == terms(two)


@settings(max_examples=200, deadline=None)
@given(S=potentials, arrow=st.sampled_from("pqr"))
def test_derivative_matches_brute_force(S, arrow):
    got = terms(qp.cyclic_derivative(qp.Potential.from_terms(LOOPS, S), arrow))
    assert nonzero(got) == brute_derivative(S, arrow)


@settings(max_examples=200, deadline=None)
@given(S=potentials, T=potentials, arrow=st.sampled_from("pqr"))
def test_derivative_is_linear(S, T, arrow):
    PS, PT = qp.Potential.from_terms(LOOPS, S), qp.Potential.from_terms(LOOPS, T)
    lhs = terms(qp.cyclic_derivative(PS + PT, arrow))
    rhs = terms(qp.cyclic_derivative(PS, arrow))
    rhs.update(terms(qp.cyclic_derivative(PT, arrow)))
    assert nonzero(lhs) == nonzero(rhs)


def test_relation_text_round_trip(quiver):
    S = qp.Potential.parse(quiver, "c*b*a")
    assert Relation.parse(str(qp.cyclic_derivative(S, "b"))) == qp.cyclic_derivative(S, "b")
