"""Iwahori-Weyl groups against brute-force oracles (BFS lengths, subword Bruhat order)."""

import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from locmod import DomainError, make_iwahori_weyl, two_rho_pairing
from locmod.root_data import is_dominant
from oracles import bfs_lengths, omega_sample, subword_leq

GROUPS = [
    ("A1", None), ("A2", None), ("C2", None), ("GL2", None), ("GL3", None),
    ("GSp4", None), ("A2", [1, 0]), ("A3", [2, 1, 0]), ("GL4", [2, 1, 0]),
]


@pytest.mark.parametrize("spec, perm", GROUPS)
def test_length_matches_bfs(iwahori_weyl, spec, perm):
    W = iwahori_weyl(spec, perm)
    radius = 5 if W.num_nodes <= 3 else 4
    dist = bfs_lengths(W, radius)
    elems = list(dist)
    assert W.lengths(elems) == [dist[x] for x in elems]
    assert [W.length(x) for x in elems] == [dist[x] for x in elems]


@pytest.mark.parametrize("spec, perm", GROUPS)
def test_group_laws(iwahori_weyl, spec, perm):
    W = iwahori_weyl(spec, perm)
    sample = list(bfs_lengths(W, 3))[:40]
    e = W.identity()
    for a in sample:
        assert W.multiply(a, W.inverse(a)) == e
        assert W.multiply(e, a) == a
        assert W.length(W.inverse(a)) == W.length(a)
    for a, b, c in itertools.islice(itertools.product(sample[:8], repeat=3), 200):
        assert W.multiply(W.multiply(a, b), c) == W.multiply(a, W.multiply(b, c))
    for s in W.simple_reflections:
        assert W.length(s) == 1
        assert W.multiply(s, s) == e


@pytest.mark.parametrize("spec, perm", GROUPS)
def test_reduced_word_round_trip(iwahori_weyl, spec, perm):
    W = iwahori_weyl(spec, perm)
    for x in bfs_lengths(W, 4):
        word, tau = W.reduced_word(x)
        assert len(word) == W.length(x)
        assert W.length(tau) == 0
        assert W.multiply(W.word_element(word), tau) == x


def test_braid_relations_a2(iwahori_weyl):
    W = iwahori_weyl("A2")
    s = W.simple_reflections
    for i, j in itertools.combinations(range(3), 2):
        assert W.product([s[i], s[j], s[i]]) == W.product([s[j], s[i], s[j]])


def test_translation_lengths():
    W = make_iwahori_weyl("GL2")
    assert W.length(W.translation((1, 0))) == 1
    W = make_iwahori_weyl("GL3")
    assert W.length(W.translation((1, 0, 0))) == 2
    assert W.length(W.translation((1, 1, 1))) == 0


@pytest.mark.parametrize("spec", ["GL2", "GL3", "GSp4", "B2", "C3", "A3"])
def test_dominant_translation_length(iwahori_weyl, spec):
    W = iwahori_weyl(spec)
    rd = W.datum
    for mu in itertools.product(range(-1, 3), repeat=rd.rank):
        if is_dominant(rd, mu) and sum(map(abs, mu)) <= 3:
            assert W.length(W.translation(mu)) == two_rho_pairing(rd, mu)


@pytest.mark.parametrize("spec, perm", [("A1", None), ("A2", None), ("C2", None), ("A2", [1, 0])])
def test_bruhat_matches_subwords(iwahori_weyl, spec, perm):
    W = iwahori_weyl(spec, perm)
    elems = list(bfs_lengths(W, 4))
    for x, y in itertools.product(elems, repeat=2):
        assert W.bruhat_leq(y, x) == subword_leq(W, y, x)


def test_omega_groups(iwahori_weyl):
    assert iwahori_weyl("GL3").omega_group().free_rank == 1
    assert iwahori_weyl("SL3").omega_group().is_trivial
    assert iwahori_weyl({"type": "B", "rank": 2, "lattice": "ad"}).omega_group().order == 2
    G = iwahori_weyl("GL4", [2, 1, 0]).omega_group()
    assert G.free_rank == 0 and G.order == 2


@pytest.mark.parametrize("spec, perm", GROUPS)
def test_omega_elements_have_length_zero(iwahori_weyl, spec, perm):
    W = iwahori_weyl(spec, perm)
    for t in omega_sample(W):
        assert W.length(t) == 0
        for s in W.simple_reflections:
            # tau normalizes the set of simple reflections
            assert W.multiply(W.multiply(t, s), W.inverse(t)) in W.simple_reflections


@pytest.mark.parametrize("spec, nodes", [("GL3", (1,)), ("GL3", (1, 2)), ("GSp4", (0, 2)),
                                         ("C2", (1, 2)), ("A2", (0, 1))])
def test_coset_representatives_by_scan(iwahori_weyl, spec, nodes):
    W = iwahori_weyl(spec)
    P = W.parahoric(nodes)
    for x in list(bfs_lengths(W, 3))[:60]:
        dbl = {W.multiply(W.multiply(p, x), r) for p in P.elements for r in P.elements}
        lo = min(W.length(y) for y in dbl)
        hi = max(W.length(y) for y in dbl)
        mins = [y for y in dbl if W.length(y) == lo]
        maxs = [y for y in dbl if W.length(y) == hi]
        assert mins == [W.double_coset_min_rep(x, P)]
        assert maxs == [W.double_coset_max_rep(x, P)]
        left = {W.multiply(x, p) for p in P.elements}
        lmin = min(left, key=W.length)
        assert W.left_coset_min_rep(x, P) == lmin


def test_parahoric_sizes(iwahori_weyl):
    W = iwahori_weyl("GL3")
    assert len(W.iwahori().elements) == 1
    assert len(W.special_maximal().elements) == 6
    assert len(W.parahoric((0,)).elements) == 2
    W = iwahori_weyl("GSp4")
    assert len(W.special_maximal().elements) == 8


def test_json_round_trip(iwahori_weyl):
    W = iwahori_weyl("GSp4")
    for x in bfs_lengths(W, 2):
        assert W.from_json(W.to_json(x)) == x
    d = W.describe()
    assert d["finite_weyl_order"] == 8


def test_element_validation(iwahori_weyl):
    W = iwahori_weyl("GL2")
    with pytest.raises(DomainError):
        W.translation((1, 0, 0))
    with pytest.raises(DomainError):
        W.simple(5)


@lru_cache(maxsize=None)
def _gsp4():
    return make_iwahori_weyl("GSp4")


@given(st.lists(st.integers(0, 2), max_size=10), st.lists(st.integers(0, 2), max_size=10))
@settings(max_examples=60, deadline=None)
def test_length_subadditive(words_a, words_b):
    W = _gsp4()
    a, b = W.word_element(words_a), W.word_element(words_b)
    ab = W.multiply(a, b)
    assert W.length(ab) <= W.length(a) + W.length(b)
    assert (W.length(ab) - W.length(a) - W.length(b)) % 2 == 0
