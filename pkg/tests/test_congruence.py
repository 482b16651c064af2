import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slatt.congruence import (
    Congruence,
    congruence_closure,
    ji_poset,
    leq_oracle,
    principal_congruence,
)
from slatt.construct import Recipe, apply_recipe, grid, random_recipe
from slatt.lattice import Edge, chain
from slatt.swing import up_transpose

from conftest import A, B, M, O, P, Q, T, E


def naive_principal(K, e) -> frozenset:
    """Pure-Python closure with meets and joins recomputed from the order."""
    n = K.n
    leq = [[bool(K.leq[a, b]) for b in range(n)] for a in range(n)]

    def meet(a, b):
        lower = [x for x in range(n) if leq[x][a] and leq[x][b]]
        return next(x for x in lower if all(leq[y][x] for y in lower))

    def join(a, b):
        upper = [x for x in range(n) if leq[a][x] and leq[b][x]]
        return next(x for x in upper if all(leq[x][y] for y in upper))

    rel = {(a, a) for a in range(n)} | {(e[0], e[1]), (e[1], e[0])}
    while True:
        new = set(rel)
        for a, b in rel:
            for c in range(n):
                new.add((meet(a, c), meet(b, c)))
                new.add((join(a, c), join(b, c)))
        for a, b in list(new):
            for c, d in list(new):
                if b == c:
                    new.add((a, d))
        new |= {(b, a) for a, b in new}
        if new == rel:
            return frozenset(rel)
        rel = new


def as_pairs(con: Congruence) -> frozenset:
    n = len(con.labels)
    return frozenset((a, b) for a in range(n) for b in range(n) if con.same(a, b))


def test_endpoints_collapse(S7):
    for e in S7.edges:
        assert principal_congruence(S7, e).same(*e)


def test_s7_middle_edge(S7):
    con = principal_congruence(S7, (M, T))
    assert set(con.collapsed_edges(S7)) == {E(P, A), E(M, T), E(Q, B)}


def test_grid_edge_strips(G33):
    # Grid congruences are product congruences: an edge collapses exactly the
    # edges that step the same coordinate at the same level.
    lc, rc = 3, 5

    def strip(e):
        lb, lt = (int(G33.rank[G33.meet[x, lc]]) for x in e)
        rb = int(G33.rank[G33.meet[e.bottom, rc]])
        return ("l", lb) if lt != lb else ("r", rb)

    for e in G33.edges:
        got = set(principal_congruence(G33, e).collapsed_edges(G33))
        assert got == {f for f in G33.edges if strip(f) == strip(e)}


@pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (4, 2), (3, 5)])
def test_grid_p_is_antichain(m, n):
    P, _ = ji_poset(grid(m, n))
    assert P.k == (m - 1) + (n - 1)
    assert len(P.maximal) == P.k


def test_s7_poset(S7):
    P, col = ji_poset(S7)
    alpha, beta, gamma = col[E(A, T)], col[E(B, T)], col[E(M, T)]
    assert P.k == 3
    assert P.is_cover(gamma, alpha) and P.is_cover(gamma, beta)
    assert not P.leq[alpha, beta] and not P.leq[beta, alpha]
    assert set(P.maximal) == {alpha, beta}


def test_two_chain():
    P, _ = ji_poset(chain(2))
    assert P.k == 1


def test_leq_oracle(S7):
    assert leq_oracle(S7, E(A, T), E(A, T))
    assert leq_oracle(S7, E(A, T), E(Q, B))
    assert not leq_oracle(S7, E(A, T), E(O, P))


def test_closure_is_compatible(F33):
    for e in F33.edges:
        assert principal_congruence(F33, e).is_compatible(F33)


def test_closure_of_nothing_is_identity(S7):
    assert congruence_closure(S7, []).labels.tolist() == list(range(S7.n))


def test_up_transposition_keeps_congruence(F33):
    for U in F33.edges:
        for R in up_transpose(F33, U):
            assert principal_congruence(F33, U) == principal_congruence(F33, R)


def test_refines(S7):
    small = principal_congruence(S7, (M, T))
    big = principal_congruence(S7, (A, T))
    assert small.refines(big) and not big.refines(small)


@pytest.mark.parametrize(
    "recipe",
    [Recipe((2, 2), (0,)), Recipe((3, 3), (4,)), Recipe((2, 2), (0, 0, 3)), Recipe((3, 2), (0, 1, 1, 0))],
)
def test_matches_naive_closure(recipe):
    K = apply_recipe(recipe)
    for e in K.edges:
        assert as_pairs(principal_congruence(K, e)) == naive_principal(K, e)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_matches_naive_closure_random(seed):
    K = apply_recipe(random_recipe(seed, 4, 4, 2))
    e = K.edges[seed % len(K.edges)]
    assert as_pairs(principal_congruence(K, e)) == naive_principal(K, e)


def test_p_canonical_order(F33):
    coloring = ji_poset(F33)
    keys = [c.collapsed_edges(F33) for c in coloring.congruences]
    assert keys == sorted(keys)
    assert np.array_equal(coloring.P.leq, ji_poset(F33).P.leq)
