import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slatt.congruence import ji_poset
from slatt.construct import grid
from slatt.poset import (
    CROWN_NAMES,
    FinitePoset,
    crown_poset,
    find_cover_embedding,
    four_crown_two_pendant,
    maximal_cover_property,
    no_child_property,
    partition_property,
)

# Negative controls: each poset violates exactly the property it is named for.
ODD_TRIANGLE = FinitePoset.from_covers(6, [(3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)])
PENDANT_CHAIN = FinitePoset.from_covers(2, [(1, 0)])
DIAMOND_CHILD = FinitePoset.from_covers(4, [(1, 0), (2, 0), (3, 1), (3, 2)])


def test_order_validation():
    with pytest.raises(ValueError):
        FinitePoset([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        FinitePoset([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(ValueError):
        FinitePoset([[0]])


def test_covers_are_transitive_reduction():
    P = FinitePoset.from_covers(3, [(0, 1), (1, 2)])
    assert P.covers() == [(0, 1), (1, 2)] and bool(P.leq[0, 2])


def test_partition_s7(S7):
    P, _ = ji_poset(S7)
    v = partition_property(P)
    assert v.ok and v.witness == ((0,), (1,))


def test_partition_antichain(G33):
    P, _ = ji_poset(G33)
    v = partition_property(P)
    assert v.ok and all(v.witness)


def test_partition_odd_triangle():
    assert not partition_property(ODD_TRIANGLE)


def test_partition_single_maximum():
    assert not partition_property(PENDANT_CHAIN)


def test_maximal_cover():
    assert not maximal_cover_property(PENDANT_CHAIN)
    v = maximal_cover_property(PENDANT_CHAIN)
    assert v.witness == 1
    assert maximal_cover_property(FinitePoset(np.eye(4, dtype=bool)))


def test_no_child():
    v = no_child_property(DIAMOND_CHILD)
    assert not v and v.witness == (1, 2, 3, 0)


def test_properties_on_s7(S7):
    P, _ = ji_poset(S7)
    for check in (maximal_cover_property, no_child_property, four_crown_two_pendant):
        assert check(P)


def test_crown_shape():
    R = crown_poset()
    named = {R.names[i] for i in R.maximal}
    assert named == {"a", "b", "c", "d"}
    for x in "pqrsuv":
        assert len(R.upper_covers[CROWN_NAMES.index(x)]) == 2
    for x in "uv":
        assert not R.lower_covers[CROWN_NAMES.index(x)]


def test_crown_embeds_in_itself():
    R = crown_poset()
    v = four_crown_two_pendant(R)
    assert not v
    assert v.witness == {name: i for i, name in enumerate(CROWN_NAMES)}


def test_crown_embeds_in_bigger_poset():
    # An extra element hanging below a does not get in the way.
    R = crown_poset()
    k = R.k
    covers = [(i, j) for i, j in R.covers()] + [(k, 0)]
    P = FinitePoset.from_covers(k + 1, covers)
    phi = find_cover_embedding(R, P)
    assert phi is not None and len(set(phi)) == R.k


def test_crown_needs_maximal_images():
    # Put a new element above b: b is no longer maximal, so no embedding
    # with maxima to maxima exists, but one exists without that constraint.
    R = crown_poset()
    k = R.k
    P = FinitePoset.from_covers(k + 1, R.covers() + [(1, k)])
    assert four_crown_two_pendant(P)
    assert find_cover_embedding(R, P, maximal_to_maximal=False) is not None


def test_grid_properties():
    P, _ = ji_poset(grid(4, 4))
    for check in (partition_property, maximal_cover_property, no_child_property, four_crown_two_pendant):
        assert check(P)


def _brute_partition(P: FinitePoset) -> bool:
    maxima = list(P.maximal)
    if len(maxima) < 2:
        return False
    for labels in itertools.product((0, 1), repeat=len(maxima)):
        if len(set(labels)) < 2:
            continue
        ok = True
        for (u, lu), (w, lw) in itertools.combinations(zip(maxima, labels), 2):
            if lu == lw and (P.cover[:, u] & P.cover[:, w]).any():
                ok = False
                break
        if ok:
            return True
    return False


@st.composite
def posets(draw):
    k = draw(st.integers(min_value=1, max_value=7))
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)) if pairs else st.just([]))
    return FinitePoset.from_covers(k, chosen)


@settings(max_examples=200, deadline=None)
@given(posets())
def test_partition_matches_brute_force(P):
    assert bool(partition_property(P)) == _brute_partition(P)


@settings(max_examples=200, deadline=None)
@given(posets())
def test_checkers_are_total(P):
    for check in (maximal_cover_property, no_child_property):
        v = check(P)
        assert isinstance(v.ok, bool)
