from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import colored_graphs
from poset_forge.complex import build_from_graph, link, simplex
from poset_forge.constructions import APEX, build_g, xkd
from poset_forge.graph import ColoredMultigraph
from poset_forge.invariants import f_vector, h_from_f
from poset_forge.shelling import (cw_shelling_steps, find_graphical_shelling, h_from_shelling,
                                  is_cw_shelling, is_graphical_shelling, minimal_separators,
                                  separating_family_min)


def test_separator_examples():
    G = build_g(1, 3)
    assert separating_family_min(G, [APEX, "100", "110"], 2, colors={1, 3}) == {1}
    assert separating_family_min(G, [APEX, "100", "110"], 1) == frozenset()
    # Full graph, 100 then alpha: two incomparable minimal separators.
    order = ["100", APEX, "110"]
    assert sorted(map(sorted, minimal_separators(G, order, 2))) == [[1, 2], [1, 3]]
    assert separating_family_min(G, order, 2, oracle=True) is None
    with pytest.raises(IndexError):
        separating_family_min(G, order, 4)


def test_no_unique_minimum_rejects_order():
    assert is_graphical_shelling(build_g(1, 3), ["100", APEX, "110"]) is None


def test_restricted_order_is_a_shelling():
    cert = is_graphical_shelling(build_g(1, 3), ["100", APEX, "110"], colors={1, 3})
    assert cert is not None
    assert cert.restrictions == (frozenset(), frozenset({1}), frozenset({3}))


def test_single_vertex_certificate():
    cert = is_graphical_shelling(ColoredMultigraph(3, ["v"], []), ["v"])
    assert cert.restrictions == (frozenset(),)
    assert tuple(h_from_shelling(cert)) == (1, 0, 0, 0)


def test_link_certificate_x13():
    cert = is_graphical_shelling(build_g(1, 3), [APEX, "110", "100"], colors={1, 3})
    assert [sorted(R) for R in cert.restrictions] == [[], [3], [1]]
    assert tuple(h_from_shelling(cert)) == (1, 2, 0)


def test_bad_order_rejected():
    with pytest.raises(ValueError):
        is_graphical_shelling(build_g(1, 3), [APEX, "100"])


@settings(max_examples=60, deadline=None)
@given(colored_graphs(max_d=4, max_n=5), st.data())
def test_fast_separator_agrees_with_enumeration(G, data):
    order = data.draw(st.permutations(G.vertices))
    for i in range(1, len(order) + 1):
        # oracle=True raises if the two disagree.
        separating_family_min(G, order, i, oracle=True)


@settings(max_examples=40, deadline=None)
@given(colored_graphs(max_d=4, max_n=5), st.data())
def test_separating_sets_are_upward_closed(G, data):
    order = data.draw(st.permutations(G.vertices))
    i = data.draw(st.integers(1, len(order)))
    for S in minimal_separators(G, order, i):
        for c in range(1, G.d + 1):
            bigger = S | {c}
            assert any(T <= bigger for T in minimal_separators(G, order, i))


@settings(max_examples=40, deadline=None)
@given(colored_graphs(max_d=4, max_n=5))
def test_graphical_shelling_gives_cw_shelling(G):
    cert = find_graphical_shelling(G)
    if cert is None:
        return
    P = build_from_graph(G)
    assert is_cw_shelling(P, cert.order)
    assert tuple(h_from_shelling(cert)) == tuple(h_from_f(f_vector(P)))


def test_cw_examples():
    X = xkd(2, 3)
    assert is_cw_shelling(X, X.facets) and is_cw_shelling(X, X.facets[::-1])
    Y = xkd(0, 3)
    assert not any(is_cw_shelling(Y, o) for o in permutations(Y.facets))
    assert is_cw_shelling(simplex(4), ["F"])


def test_cw_steps_report_shared_ridges():
    X = xkd(2, 3)
    steps = cw_shelling_steps(X, X.facets)
    assert steps[0]["shared_ridges"] == []
    assert sorted(steps[1]["shared_ridges"]) == [[1], [2], [3]]


def test_cw_order_must_be_complete():
    with pytest.raises(ValueError):
        is_cw_shelling(xkd(1, 3), [APEX])


@pytest.mark.parametrize("k,d", [(1, 3), (1, 4), (2, 4), (2, 5)])
def test_link_orders_all_shell(k, d):
    X = xkd(k, d)
    G = X.source[0]
    for c in range(1, d + 1):
        L = link(X, X.face(0, [c]))
        cert = find_graphical_shelling(G, colors=G.colors() - {c}, first=APEX)
        assert cert is not None
        assert is_cw_shelling(L, cert.order)
