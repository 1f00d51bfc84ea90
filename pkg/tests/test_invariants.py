from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from poset_forge.complex import simplex
from poset_forge.constructions import xkd
from poset_forge.invariants import (BettiVector, FVector, binomial_identities, f_from_h, f_vector,
                                    h_from_f, h_prime, ns_check, reduced_euler, ridge_profile,
                                    short_simplicial_check)
from poset_forge.verify import expected_betti, expected_h, expected_h_prime


def test_f_vectors():
    assert tuple(f_vector(xkd(1, 3))) == (1, 3, 6, 3)
    assert tuple(f_vector(simplex(4))) == (1, 4, 6, 4, 1)
    assert tuple(f_vector(xkd(2, 3))) == (1, 3, 3, 2)
    assert f_vector(xkd(1, 3)).f(-1) == 1 and f_vector(xkd(1, 3)).f(1) == 6


def test_h_from_f_examples():
    assert tuple(h_from_f((1, 3, 6, 3))) == (1, 0, 3, -1)
    assert tuple(h_from_f((1, 3, 3, 2))) == (1, 0, 0, 1)
    assert tuple(h_from_f(f_vector(simplex(5)))) == (1, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        h_from_f((2, 3))


def test_f_from_h_examples():
    assert tuple(f_from_h((1, 0, 3, -1))) == (1, 3, 6, 3)


@pytest.mark.parametrize("d", range(2, 12))
def test_top_face_numbers_from_h(d):
    for k in range(1, d):
        f = f_from_h(expected_h(k, d))
        assert f.f(d - 1) == 1 + comb(d - 1, k)
        assert f.f(d - 2) == d + d * comb(d - 2, k)


def test_reduced_euler_is_integer():
    chi = reduced_euler((1, 3, 6, 3))
    assert chi == -1 and isinstance(chi, int)
    assert reduced_euler((1, 2)) == 1


def test_h_prime_examples():
    assert tuple(h_prime((1, 0, 3, -1), (0, 0, 1, 0))) == (1, 0, 3, 0)
    assert tuple(h_prime((1, 2, 1, 0), (0, 0, 0, 0))) == (1, 2, 1, 0)
    hp = h_prime((1, 0, 0, 1), (0, 0, 0, 1))
    assert tuple(hp) == (1, 0, 0, 1) and hp[3] == 1
    with pytest.raises(ValueError):
        h_prime((1, 0, 0), (0, 0))


def test_betti_vector_indexing():
    b = BettiVector((0, 0, 1, 0), field="F2")
    assert b.beta(1) == 1 and b.beta(-1) == 0 and b.field == "F2"


def test_short_simplicial_x13():
    rep = short_simplicial_check(xkd(1, 3))
    assert rep.ok
    # i = 2: three links with h_1 = 2 against 2*h_2 + 2*h_1.
    assert rep.link_sums[1] == 6


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_short_simplicial_simplex(d):
    assert short_simplicial_check(simplex(d)).ok


def test_ns_examples():
    for k, d in [(1, 3), (2, 5), (0, 4)]:
        rep = ns_check(expected_h_prime(k, d), expected_betti(k, d))
        assert rep.ok
        assert rep.slacks[k + 1] == 0
    bad = ns_check((1, 0, 2, 0), (0, 0, 1, 0))
    assert not bad.ok and bad.failures == [2]
    good = ns_check((1, 5, 3, 0), (0, 0, 1, 0))
    assert good.ok and good.slacks == {1: 5, 2: 0}


def test_ridge_profiles():
    p = ridge_profile(xkd(1, 3))
    assert (p.A, p.B, p.max_multiplicity) == (3, 3, 2) and p.a_identity
    p = ridge_profile(xkd(2, 3))
    assert (p.A, p.B, p.max_multiplicity) == (0, 3, 2) and p.a_identity
    assert ridge_profile(xkd(3, 6)).max_multiplicity >= 3
    assert ridge_profile(xkd(3, 6)).a_identity is None


@pytest.mark.parametrize("d", range(1, 21))
def test_binomial_identities(d):
    for k in range(d):
        assert binomial_identities(d, k).ok


def test_binomial_identity_range():
    with pytest.raises(ValueError):
        binomial_identities(3, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12).flatmap(
    lambda d: st.lists(st.integers(-50, 50), min_size=d, max_size=d)))
def test_h_f_roundtrip(tail):
    h = (1, *tail)
    f = f_from_h(h)
    assert tuple(h_from_f(f)) == h
    assert isinstance(f, FVector)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10).flatmap(
    lambda d: st.tuples(st.lists(st.integers(-20, 20), min_size=d - 1, max_size=d - 1),
                        st.lists(st.integers(0, 5), min_size=d, max_size=d))))
def test_h_prime_shift_depends_only_on_betti(data):
    tail, betti = data
    d = len(betti)
    b = (0, *betti)
    # Choose h_d so that the top h' agrees with the top Betti number.
    top = b[d] - sum((-1) ** (d - i - 1) * b[i] for i in range(d))
    h = (1, *tail, top)
    hp = h_prime(h, b)
    assert hp[d] == b[d]
    zero = h_prime(h[:-1] + (0,), (0,) * (d + 1))
    assert tuple(zero) == h[:-1] + (0,)
