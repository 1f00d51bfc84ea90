from math import comb

import pytest

from poset_forge.complex import build_from_graph, glue_facets, link, simplex, validate
from poset_forge.constructions import (APEX, OutOfScope, block_data, build_g, build_g_prime,
                                       expected_restrictions, link_order_key, link_shelling_order,
                                       parallel_graph, synthesize, words, xkd)
from poset_forge.graph import components, is_connected_avoiding
from poset_forge.homology import F2, Q, is_buchsbaum, reduced_betti
from poset_forge.invariants import f_vector, h_from_f, h_prime
from poset_forge.shelling import is_graphical_shelling


def test_words_examples():
    assert set(words(5, 2)) == {"10111", "10011", "10001", "11011", "11001", "11101"}
    assert words(3, 1) == ["100", "110"]
    assert words(3, 3) == [] and words(0, 0) == []


@pytest.mark.parametrize("d", range(1, 11))
def test_word_counts(d):
    for k in range(d):
        ws = words(d, k)
        assert len(ws) == comb(d - 1, k) == len(set(ws))
        assert all(len(block_data(w).blocks) == k + 1 for w in ws)


def test_block_data_examples():
    bd = block_data("10011")
    assert bd.blocks == ("1", "00", "11")
    assert bd.b(3) == 2
    assert bd.block_start == {2, 4} and bd.block_end == {1, 3}
    one = block_data("1111")
    assert one.block_start == one.block_end == frozenset()
    two = block_data("10")
    assert two.blocks == ("1", "0") and two.block_start == {2} and two.block_end == {1}
    with pytest.raises(ValueError):
        block_data("0110")


def test_build_g_13():
    G = build_g(1, 3)
    edges = sorted((min(e.u, e.v), max(e.u, e.v), e.color) for e in G.edges)
    assert edges == [("100", "110", 2), ("100", APEX, 1), ("110", APEX, 3)]


def test_build_g_25():
    G = build_g(2, 5)
    assert len(G.vertices) == 7
    apex_colors = sorted(e.color for e in G.edges if APEX in (e.u, e.v) and "11101" in (e.u, e.v))
    assert apex_colors == [4, 5]


@pytest.mark.parametrize("d", range(3, 9))
def test_g_connected_avoiding_each_color(d):
    for k in range(1, d - 1):
        G = build_g(k, d)
        assert len(G.vertices) == comb(d - 1, k) + 1
        assert all(is_connected_avoiding(G, c) for c in range(1, d + 1))


@pytest.mark.parametrize("d", range(3, 9))
def test_g_prime_edges_flip_one_block(d):
    # Neighbors in G' differ at one position, which sits at a block end of one
    # word and a block start of the other.
    for k in range(1, d - 1):
        for e in build_g_prime(k, d).edges:
            a, b = block_data(e.u), block_data(e.v)
            j = e.color
            assert (j in a.block_end | a.block_start) and (j in b.block_end | b.block_start)
            flipped = e.u[:j - 1] + str(1 - int(e.u[j - 1])) + e.u[j:]
            assert flipped == e.v


def test_parallel_graph_matches_top_word_graph():
    for d in range(2, 7):
        G, H = parallel_graph(d), build_g(d - 1, d)
        assert sorted((e.u, e.v, e.color) for e in G.edges) == \
            sorted((e.u, e.v, e.color) for e in H.edges)


def test_xkd_examples():
    X = xkd(1, 3)
    assert X.n_facets == 3 and tuple(f_vector(X)) == (1, 3, 6, 3)
    assert tuple(reduced_betti(X)) == (0, 0, 1, 0)
    Y = xkd(0, 4)
    b = reduced_betti(Y)
    assert b.beta(0) == 1
    assert tuple(h_prime(h_from_f(f_vector(Y)), b)) == (1, 4, 0, 0, 0)
    Z = xkd(2, 5)
    assert Z.n_facets == 7
    assert tuple(h_prime(h_from_f(f_vector(Z)), reduced_betti(Z))) == (1, 0, 0, 10, 0, 0)
    with pytest.raises(ValueError):
        xkd(3, 3)
    with pytest.raises(ValueError):
        xkd(0, 1)


def test_link_order_13():
    assert link_shelling_order(1, 3, 2) == [APEX, "110", "100"]
    assert [sorted(R) for R in expected_restrictions(1, 3, 2)] == [[], [3], [1]]
    with pytest.raises(ValueError):
        link_shelling_order(1, 3, 4)


@pytest.mark.parametrize("d", range(3, 9))
def test_link_endpoints_total_k(d):
    for k in range(1, d):
        for c in range(1, d + 1):
            for w in words(d, k):
                key = link_order_key(w, c, k)
                assert len(key.restriction) == k


@pytest.mark.parametrize("k,d", [(1, 4), (2, 5), (3, 6), (2, 6), (4, 7)])
def test_link_order_certificate(k, d):
    G = build_g(k, d)
    for c in range(1, d + 1):
        order = link_shelling_order(k, d, c)
        cert = is_graphical_shelling(G, order, colors=G.colors() - {c})
        assert cert is not None
        assert list(cert.restrictions) == expected_restrictions(k, d, c)


def test_synthesize_examples():
    Q_ = synthesize((0, 0, 1, 1), 3)
    b = reduced_betti(Q_)
    assert tuple(b) == (0, 0, 1, 1)
    assert tuple(h_prime(h_from_f(f_vector(Q_)), b)) == (1, 0, 3, 1)
    assert Q_.n_facets == xkd(1, 3).n_facets + xkd(2, 3).n_facets - 1
    assert synthesize((0, 1, 0, 0), 3) == xkd(0, 3).renamed("s0.")
    S = synthesize((0, 0, 0, 0, 0), 4)
    assert S == simplex(4)


def test_synthesize_matches_manual_glue():
    A, B = xkd(1, 3).renamed("s0."), xkd(2, 3).renamed("s1.")
    assert synthesize((0, 0, 1, 1), 3) == glue_facets(A, A.facets[-1], B, B.facets[0])


def test_synthesize_errors():
    with pytest.raises(ValueError):
        synthesize((0, 1, 0), 3)
    with pytest.raises(ValueError):
        synthesize((1, 0, 0, 0), 3)
    with pytest.raises(ValueError):
        synthesize((0, 0, 1, 0), 3, h_prime=(1, 0, 2, 0))
    with pytest.raises(OutOfScope):
        synthesize((0, 0, 1, 0), 3, h_prime=(1, 1, 3, 0))
    assert synthesize((0, 0, 1, 0), 3, h_prime=(1, 0, 3, 0)).n_facets == 3


@pytest.mark.parametrize("betti,d", [((0, 2, 0, 0), 3), ((0, 1, 1, 1), 3), ((0, 0, 2, 0, 1), 4)])
def test_synthesized_complexes_are_buchsbaum(betti, d):
    P = synthesize(betti, d)
    assert validate(P).ok
    for F in (Q, F2):
        assert is_buchsbaum(P, F)
        assert tuple(reduced_betti(P, F)) == betti


def test_x_complex_links_are_restricted_graphs():
    for k, d in [(1, 4), (2, 5)]:
        X = xkd(k, d)
        G = build_g(k, d)
        for c in range(1, d + 1):
            assert link(X, X.face(0, [c])) == build_from_graph(G, set(range(1, d + 1)) - {c})
            assert len(components(G)) == 1
