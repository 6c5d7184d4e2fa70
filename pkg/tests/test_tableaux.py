from itertools import combinations
from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P15, P15_D3_12, P15_DV
from descentsym.permcore import all_perms, descent_set, identity
from descentsym.qsym import partitions
from descentsym.tableaux import (
    ShapeMismatchError, TableauPair, check_tableau, format_tableau, inverse_promote,
    inverse_promote_v, knuth_class, parse_tableau, promote, promote_traced, promote_v,
    restrict_below, rs, rs_inverse, shape, standard_tableaux, superstandard, tableau_descents,
    transpose,
)


def hook_length_count(lam):
    """f^lam by the hook length formula."""
    n = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(n) // hooks


def all_syt(n):
    return [T for lam in partitions(n) for T in standard_tableaux(lam)]


def test_check_tableau():
    assert check_tableau([[1, 2], [3]]) == ((1, 2), (3,))
    for bad in ([[1, 3], [2, 4, 5]], [[2, 1]], [[1, 2], [2]], [[1, 3], [4, 2]]):
        with pytest.raises(ValueError):
            check_tableau(bad)


@pytest.mark.parametrize("n", range(1, 8))
def test_syt_counts(n):
    for lam in partitions(n):
        T = standard_tableaux(lam)
        assert len(T) == len(set(T)) == hook_length_count(lam)
        assert all(check_tableau(t) == t and shape(t) == lam for t in T)


def test_tableau_descents_examples():
    assert tableau_descents(((1, 2, 3, 4),)) == ()
    assert tableau_descents(((1,), (2,), (3,), (4,))) == (1, 2, 3)
    assert {3, 7, 11} <= set(tableau_descents(P15))


def test_rs_examples():
    for n in range(1, 6):
        pair = rs(identity(n))
        assert pair.p == pair.q == (tuple(range(1, n + 1)),)
        pair = rs(tuple(range(n, 0, -1)))
        assert pair.p == pair.q == tuple((i,) for i in range(1, n + 1))
    with pytest.raises(ShapeMismatchError):
        TableauPair(((1, 2),), ((1,), (2,)))


@pytest.mark.parametrize("n", range(1, 8))
def test_rs_bijection_and_descents(n):
    seen = set()
    for pi in all_perms(n):
        pair = rs(pi)
        assert shape(pair.p) == shape(pair.q)
        assert tableau_descents(pair.q) == descent_set(pi)
        if n <= 6:
            assert rs_inverse(pair) == pi
        seen.add((pair.p, pair.q))
    assert len(seen) == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_knuth_class_sizes(n):
    for lam in partitions(n):
        for P in standard_tableaux(lam):
            K = knuth_class(P)
            assert len(K) == hook_length_count(lam)
            assert all(rs(pi).p == P for pi in K)
    assert knuth_class(((1, 2, 3),)) == (identity(3),)


# --- promotion ---------------------------------------------------------------

def test_promote_example():
    out, trace = promote_traced(P15, 3, 12)
    assert out == P15_D3_12
    assert trace.path == ((1, 2), (2, 2), (2, 3), (2, 4))
    assert inverse_promote(P15_D3_12, 3, 12) == P15


def test_promote_v_example():
    assert promote_v(P15, (3, 9, 10)) == P15_DV
    # the stages, largest element of V first
    s1 = promote(P15, 10, 15)
    s2 = promote(s1, 9, 14)
    assert promote(s2, 3, 13) == P15_DV
    assert inverse_promote_v(P15_DV, (3, 9, 10)) == P15
    assert promote_v(P15, ()) == P15


def test_promote_window_errors():
    with pytest.raises(ValueError):
        promote(P15, 5, 3)
    with pytest.raises(ValueError):
        promote(P15, 1, 16)


@pytest.mark.parametrize("n", range(1, 7))
def test_promote_round_trip_and_fixing(n):
    for T in all_syt(n):
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                out = promote(T, a, b)
                assert shape(out) == shape(T)
                assert check_tableau(out) == out
                assert inverse_promote(out, a, b) == T
                assert restrict_below(out, a) == restrict_below(T, a)


@pytest.mark.parametrize("n", range(1, 7))
def test_promote_is_bijection(n):
    for lam in partitions(n):
        syt = standard_tableaux(lam)
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                assert {promote(T, a, b) for T in syt} == set(syt)


@pytest.mark.parametrize("n", range(1, 7))
def test_transpose_commutes(n):
    for T in all_syt(n):
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                assert transpose(promote(T, a, b)) == promote(transpose(T), a, b)


@pytest.mark.parametrize("n", range(1, 7))
def test_u_iff_u_minus_one(n):
    for Q in all_syt(n):
        des = set(tableau_descents(Q))
        for a in range(1, n + 1):
            for b in range(a + 2, n + 1):
                out = set(tableau_descents(promote(Q, a, b)))
                for u in range(a + 1, b):
                    assert (u in des) == (u - 1 in out)


@pytest.mark.parametrize("n", range(1, 7))
def test_v_v_plus_one(n):
    for Q in all_syt(n):
        des = set(tableau_descents(Q))
        for k in range(0, n - 1):
            for u in range(1, k + 2):
                out = promote(promote(Q, u + 1, k + 2), u, k + 1)
                assert (u in des) == (k + 1 in set(tableau_descents(out)))


def test_promote_v_bijection_degree_six():
    for lam in partitions(6):
        syt = set(standard_tableaux(lam))
        for size in range(4):
            for V in combinations(range(1, 7), size):
                assert {promote_v(T, V) for T in syt} == syt


def test_superstandard():
    assert superstandard((3, 2)) == ((1, 2, 3), (4, 5))
    assert superstandard((3, 2)) in standard_tableaux((3, 2))


def test_text_round_trip():
    text = format_tableau(P15)
    assert parse_tableau(text) == P15
    assert parse_tableau("# comment\n1 2\n3\n") == ((1, 2), (3,))


@given(st.permutations(list(range(1, 8))))
def test_rs_round_trip_random(pi):
    assert rs_inverse(rs(tuple(pi))) == tuple(pi)
