import itertools

import numpy as np
import pytest

from slatt.construct import grid
from slatt.lattice import (
    Edge,
    LatticeError,
    MultipleBottoms,
    MultipleTops,
    NotALattice,
    NotRectangular,
    boundary_chains,
    build_lattice,
    chain,
    find_m3,
    four_cells,
    lattice_from_dict,
    validate_rectangular,
    validate_semimodular,
    validate_slim,
)

from conftest import A, B, M, O, P, Q, T

M3 = [[1, 2, 3], [4], [4], [4], []]
N5 = [[1, 2], [3], [4], [4], []]


def test_b2_is_a_lattice():
    K = build_lattice([[1, 2], [3], [3], []])
    assert K.n == 4 and K.bottom == 0 and K.top == 3
    assert K.meet[1, 2] == 0 and K.join[1, 2] == 3


def test_three_chain():
    K = chain(3)
    assert list(K.edges) == [Edge(0, 1), Edge(1, 2)]


def test_two_minimal_upper_bounds_is_not_a_lattice():
    # 1 and 2 are both below 3 and 4, which are incomparable.
    with pytest.raises(NotALattice) as info:
        build_lattice([[1, 2], [3, 4], [3, 4], [5], [5], []])
    # Either {1, 2} has no least upper bound or {3, 4} no greatest lower bound.
    assert set(info.value.pair) in ({1, 2}, {3, 4})
    assert all(str(x) in str(info.value) for x in info.value.pair)


def test_bottoms_and_tops():
    with pytest.raises(MultipleBottoms):
        build_lattice([[2], [2], []])
    with pytest.raises(MultipleTops):
        build_lattice([[1, 2], [], []])


def test_cycle_rejected():
    with pytest.raises(LatticeError):
        build_lattice([[1], [2], [1]])


def test_non_reduced_covers_rejected():
    with pytest.raises(LatticeError):
        build_lattice([[1, 2], [2], []])


def test_lattice_json_round_trip(S7):
    again = lattice_from_dict(S7.to_dict())
    assert again.upper_covers == S7.upper_covers
    with pytest.raises(LatticeError):
        lattice_from_dict({"n": 2})


@pytest.mark.parametrize("K", [grid(3, 3), grid(2, 4), build_lattice(N5), build_lattice(M3)])
def test_lattice_axioms(K):
    idx = range(K.n)
    for a, b in itertools.product(idx, idx):
        assert K.meet[a, b] == K.meet[b, a] and K.join[a, b] == K.join[b, a]
        assert K.meet[a, K.join[a, b]] == a and K.join[a, K.meet[a, b]] == a
    for a, b, c in itertools.product(idx, idx, idx):
        assert K.meet[K.meet[a, b], c] == K.meet[a, K.meet[b, c]]
        assert K.join[K.join[a, b], c] == K.join[a, K.join[b, c]]
    assert all(K.meet[a, a] == a == K.join[a, a] for a in idx)


def test_semimodular(S7):
    assert validate_semimodular(grid(3, 3))
    assert validate_semimodular(S7)
    v = validate_semimodular(build_lattice(N5))
    assert not v and v.witness is not None


def _brute_semimodular(K) -> bool:
    cov = {(e.bottom, e.top) for e in K.edges}
    return all(
        (K.join[a, b] == b) or (b, K.join[a, b]) in cov
        for a in range(K.n)
        for b in range(K.n)
        if (K.meet[a, b], a) in cov
    )


@pytest.mark.parametrize("covers", [M3, N5, [[1, 2], [3], [3], []]])
def test_semimodular_matches_brute_force(covers):
    K = build_lattice(covers)
    assert bool(validate_semimodular(K)) == _brute_semimodular(K)


def test_slim(S7):
    assert validate_slim(S7)
    assert validate_slim(grid(4, 2))
    v = validate_slim(build_lattice(M3))
    assert not v
    assert sorted(v.witness) == [1, 2, 3]
    assert find_m3(build_lattice(M3)) == (1, 2, 3)


def test_rectangular(S7, G33):
    assert validate_rectangular(G33) == (3, 5)
    assert validate_rectangular(S7) == (A, B)
    with pytest.raises(NotRectangular):
        validate_rectangular(chain(3))


def test_four_cells(S7, G33):
    assert len(four_cells(grid(2, 2))) == 1
    assert len(four_cells(G33)) == 4
    got = {(c.bottom, c.left, c.right, c.top) for c in four_cells(S7)}
    assert got == {(O, P, Q, M), (P, A, M, T), (Q, M, B, T)}


def test_cell_incidence(F33):
    cells = four_cells(F33)
    bnd = boundary_chains(F33).boundary_edges
    count = {e: 0 for e in F33.edges}
    for c in cells:
        for e in (c.lower_left, c.lower_right, c.upper_left, c.upper_right):
            count[e] += 1
    assert all(count[e] == (1 if e in bnd else 2) for e in F33.edges)


def test_boundary_chains(S7, F33):
    ch = boundary_chains(grid(2, 2))
    assert ch.left == (0, 1, 3) and ch.right == (0, 2, 3)
    ch = boundary_chains(S7)
    assert ch.left == (O, P, A, T) and ch.right == (O, Q, B, T)
    assert ch.upper_left_edges == [Edge(A, T)] and ch.upper_right_edges == [Edge(B, T)]
    assert len(boundary_chains(F33).left) - 1 == 5


def test_structure_invariants(F33):
    for a in range(F33.n):
        assert len(F33.upper_covers[a]) <= 2
        tops = sum(1 for c in four_cells(F33) if c.top == a)
        assert len(F33.lower_covers[a]) == (1 + tops if a != F33.bottom else 0)


def test_lattice_is_read_only(S7):
    with pytest.raises(ValueError):
        S7.meet[0, 0] = 3
    assert isinstance(S7.leq, np.ndarray)
