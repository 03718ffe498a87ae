import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from presekit import present, repmod, rigid
from presekit.errors import NotAlmostComplete, NotRigid
from presekit.present import Presentation

X, Y, Z = 0, 1, 2
seeds = st.integers(0, 2**32 - 1)


def P(A, v):
    return present.projective(A, v)


def S(A, v):
    return present.shifted(A, v)


def coll(*fs):
    return rigid.RigidCollection(tuple(fs))


def assert_maximal_rigid(c, A):
    assert c.is_rigid()
    assert rigid.is_maximal(c)
    assert len(set(c.key)) == A.n


def test_completion_examples(string3, rng):
    assert rigid.completion_pos(P(string3, X), rng).key == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert rigid.completion_pos(present.regular(string3), rng).key == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    c = rigid.completion_pos(S(string3, Z), rng)
    assert (0, 0, -1) in c.key
    assert_maximal_rigid(c, string3)
    c = rigid.completion_neg(S(string3, X), rng)
    assert (-1, 0, 0) in c.key
    assert_maximal_rigid(c, string3)
    shifts = present.direct_sum(*(S(string3, v) for v in range(3)))
    assert rigid.completion_neg(shifts, rng).key == ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
    c = rigid.completion_neg(present.sample(string3, (2, -1, 0), rng), rng)
    assert (2, -1, 0) in c.key
    assert_maximal_rigid(c, string3)


def test_completion_requires_rigid(string3, rng):
    with pytest.raises(NotRigid):
        rigid.completion_pos(repmod.minimal_presentation(repmod.injective(string3, Z)), rng)
    with pytest.raises(NotRigid):
        rigid.completion_neg(present.sample(string3, (1, 0, -1), rng), rng)


def test_is_maximal(string3):
    assert rigid.is_maximal(coll(P(string3, X), P(string3, Y), P(string3, Z)))
    assert not rigid.is_maximal(coll(P(string3, X), P(string3, Y)))
    c = coll(S(string3, X), P(string3, Y), P(string3, Z))
    # E(P_x[1], P_v) = Hom(P_x, P_v) = e_x A e_v, zero off the diagonal here
    assert present.dim_E(S(string3, X), P(string3, Y)) == len(string3.elems(X, Y)) == 0
    assert c.is_rigid() and rigid.is_maximal(c)


def test_complements_examples(string3, a2, rng):
    cm = rigid.complements(coll(P(string3, Y), P(string3, Z)), rng)
    assert (cm.plus.delta, cm.minus.delta) == ((1, 0, 0), (-1, 0, 0))
    assert cm.normal == (1, 0, 0)
    cm = rigid.complements(coll(P(a2, 0)), rng)
    assert {cm.plus.delta, cm.minus.delta} == {(0, 1), (1, -1)}
    cm = rigid.complements(coll(S(a2, 1)), rng)
    assert {cm.plus.delta, cm.minus.delta} == {(-1, 0), (1, -1)}
    for f in (cm.plus, cm.minus):
        assert present.dim_E(f, S(a2, 1)) == present.dim_E(S(a2, 1), f) == 0


def test_complements_rejects(string3, rng):
    with pytest.raises(NotAlmostComplete):
        rigid.complements(coll(P(string3, Y)), rng)
    with pytest.raises(NotAlmostComplete):
        rigid.complements(coll(P(string3, Y), P(string3, Y)), rng)


def test_mutate_examples(string3, a2, rng):
    start = rigid.initial_cluster(string3)
    k = start.key.index((1, 0, 0))
    assert rigid.mutate(start, k, rng).key == ((-1, 0, 0), (0, 0, 1), (0, 1, 0))
    assert rigid.mutate(rigid.mutate(start, k, rng), 0, rng).key == start.key
    # alternate: always mutate the item that was not just introduced
    c, seen, fresh = rigid.initial_cluster(a2), [], None
    for _ in range(10):
        seen.append(c.key)
        k = 0 if c.key[0] != fresh else 1
        m = rigid.mutate(c, k, rng)
        fresh = (set(m.key) - set(c.key)).pop()
        c = m
    assert len(set(seen)) == 5 and seen[5:] == seen[:5]


def test_a2_pentagon_against_compatibility_oracle(a2, rng):
    g = rigid.exchange_graph(a2, rng=rng)
    assert g.closed and len(g.nodes) == 5 and len(g.edges) == 5
    h = nx.Graph(g.edges)
    assert nx.is_connected(h) and all(d == 2 for _, d in h.degree())
    # oracle: clusters are the pairs of rigid indecomposables with E = 0 both ways
    rigid_deltas = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1)]
    fs = {d: present.sample(a2, d, rng) for d in rigid_deltas}
    pairs = {tuple(sorted(p)) for p in itertools.combinations(rigid_deltas, 2)
             if present.dim_E(fs[p[0]], fs[p[1]]) == present.dim_E(fs[p[1]], fs[p[0]]) == 0}
    assert pairs == set(g.nodes)


def test_exchange_graph_depth(string3, rng):
    g0 = rigid.exchange_graph(string3, 0, rng)
    assert len(g0.nodes) == 1 and g0.edges == [] and not g0.closed
    g = rigid.exchange_graph(string3, 2, rng)
    h = nx.Graph(g.edges)
    dist = nx.single_source_shortest_path_length(h, rigid.initial_cluster(string3).key)
    for key in g.nodes:
        assert len(set(key)) == 3
        if dist[key] < 2:
            assert h.degree(key) == 3
    assert (len(g.nodes), len(g.edges)) == (9, 9)


def test_exchange_json_is_stable(a2):
    one = rigid.exchange_graph(a2, rng=np.random.default_rng(1)).dumps()
    two = rigid.exchange_graph(a2, rng=np.random.default_rng(2)).dumps()
    assert one == two


def test_regularize_examples(string3, rng):
    r = rigid.regularize(S(string3, Z))
    assert r.algebra.dim == 4 and r.algebra.quiver.vertices == ("x", "y")
    assert r.algebra.is_path_algebra()
    r = rigid.regularize(P(string3, X))
    assert r.algebra.dim == string3.dim and r.stages == []
    f = Presentation(string3, (Y,), (X,), string3.path("a1").vector.reshape(1, 1, -1))
    r = rigid.regularize(f)
    assert r.algebra.dim == 7
    assert rigid.kernel_elements(r.presentation) == []


@pytest.mark.parametrize("delta", [(2, -1, 0), (0, 1, -2), (0, 0, -1), (2, -1, -2), (1, 0, -2)])
def test_regularized_cokernel_has_pd_at_most_one(string3, delta):
    rng = np.random.default_rng(5)
    f = present.sample(string3, delta, rng)
    assert present.is_rigid(f)
    reg = rigid.regularize(f)
    M = repmod.cokernel(reg.presentation)
    g = repmod.minimal_presentation(M)
    # pd <= 1 means the minimal presentation over the quotient is injective
    assert rigid.kernel_elements(g) == []


@pytest.mark.parametrize("name", ["a2", "string3", "cycpot3"])
@settings(max_examples=12, deadline=None)
@given(seed=seeds, slot=st.integers(0, 2))
def test_mutation_is_an_involution(algebras, name, seed, slot):
    A = algebras[name]
    rng = np.random.default_rng(seed)
    c = rigid.initial_cluster(A)
    for _ in range(int(rng.integers(0, 3))):
        c = rigid.mutate(c, int(rng.integers(0, A.n)), rng)
    k = slot % A.n
    m = rigid.mutate(c, k, rng)
    assert_maximal_rigid(m, A)
    new = (set(m.key) - set(c.key)).pop()
    assert rigid.mutate(m, m.key.index(new), rng).key == c.key


@pytest.mark.parametrize("name", ["a2", "string3", "cycpot3"])
@settings(max_examples=8, deadline=None)
@given(seed=seeds)
def test_complements_separated_and_d_triangle(algebras, name, seed):
    A = algebras[name]
    rng = np.random.default_rng(seed)
    c = rigid.initial_cluster(A)
    for _ in range(int(rng.integers(0, 3))):
        c = rigid.mutate(c, int(rng.integers(0, A.n)), rng)
    cm = rigid.complements(c.without(int(rng.integers(0, A.n))), rng)
    assert cm.plus.delta != cm.minus.delta
    assert rigid.side(cm.normal, cm.plus.delta) == 1 and rigid.side(cm.normal, cm.minus.delta) == -1
    assert cm.e_plus_minus == 0 and cm.d >= 1


@pytest.mark.parametrize("name", ["a2", "string3", "kron3", "yinyang3", "cycpot3"])
@settings(max_examples=8, deadline=None)
@given(seed=seeds, positive=st.booleans())
def test_minimal_cones_complete_to_maximal(algebras, name, seed, positive):
    # brute-force oracle: rigid and maximal via the E-matrix on all pairs
    A = algebras[name]
    rng = np.random.default_rng(seed)
    f = present.shifted(A, int(rng.integers(A.n))) if positive else P(A, int(rng.integers(A.n)))
    c = rigid.completion_pos(f, rng) if positive else rigid.completion_neg(f, rng)
    assert_maximal_rigid(c, A)
    assert f.delta in c.key


def test_minimal_cone_is_rigid_with_source(string3, rng):
    f = S(string3, Z)
    g = present.minimize(rigid.positive_cone(f, [f]))
    assert present.is_rigid(present.direct_sum(f, g))
