"""Finite posets and the four congruence-order properties.

Every checker here looks only at the abstract poset; none of them consults
a lattice.  Each returns a :class:`~slatt.lattice.Verdict` whose witness
explains the answer (the bipartition for the partition property, the
offending configuration for the others).
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .lattice import Verdict


class FinitePoset:
    """A poset on ``0..k-1`` given by its reflexive order matrix."""

    def __init__(self, leq, names: Sequence[str] | None = None):
        leq = np.array(leq, dtype=bool)
        k = leq.shape[0]
        if leq.shape != (k, k):
            raise ValueError("order matrix must be square")
        if not leq.diagonal().all():
            raise ValueError("order is not reflexive")
        if (leq & leq.T & ~np.eye(k, dtype=bool)).any():
            raise ValueError("order is not antisymmetric")
        if k and ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            raise ValueError("order is not transitive")
        leq.setflags(write=False)
        self.k = k
        self.leq = leq
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(k))
        lt = leq & ~np.eye(k, dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        self.cover = lt & ~between
        self.cover.setflags(write=False)
        self.upper_covers = tuple(tuple(int(j) for j in np.flatnonzero(self.cover[i])) for i in range(k))
        self.lower_covers = tuple(tuple(int(i) for i in np.flatnonzero(self.cover[:, j])) for j in range(k))
        self.maximal = tuple(i for i in range(k) if not self.upper_covers[i])

    @classmethod
    def from_covers(cls, k: int, covers: Iterable[tuple[int, int]], names=None) -> "FinitePoset":
        """Poset generated by ``i < j`` for each pair in ``covers``."""
        rel = np.eye(k, dtype=np.int64)
        for i, j in covers:
            rel[i, j] = 1
        while True:
            nxt = ((rel @ rel) > 0).astype(np.int64)
            if (nxt == rel).all():
                break
            rel = nxt
        return cls(rel.astype(bool), names)

    @classmethod
    def from_named_covers(cls, names: Sequence[str], covers: Iterable[tuple[str, str]]) -> "FinitePoset":
        index = {name: i for i, name in enumerate(names)}
        return cls.from_covers(len(names), [(index[a], index[b]) for a, b in covers], names)

    def __repr__(self) -> str:
        covers = [(self.names[i], self.names[j]) for i, j in self.covers()]
        return f"FinitePoset(k={self.k}, covers={covers})"

    def covers(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.cover)]

    def is_cover(self, i: int, j: int) -> bool:
        return bool(self.cover[i, j])

    def to_dict(self) -> dict:
        return {
            "elements": self.k,
            "leq": self.leq.astype(int).tolist(),
            "maximal": list(self.maximal),
        }


def _label(P: FinitePoset, i: int) -> str:
    return P.names[i]


def partition_property(P: FinitePoset) -> Verdict:
    """Split Max(P) into two nonempty parts with no shared lower cover inside a part.

    Two maximal elements conflict when they have a common lower cover; the
    property holds iff the conflict graph is bipartite and ``|Max| >= 2``.
    The witness is the lexicographically least valid 0/1 labelling of the
    maximal elements (in increasing order), returned as two tuples.
    """
    maxima = list(P.maximal)
    if len(maxima) < 2:
        return Verdict(False, tuple(maxima), "fewer than two maximal elements")
    adj: dict[int, set[int]] = {u: set() for u in maxima}
    for u, w in combinations(maxima, 2):
        if P.cover[:, u].dot(P.cover[:, w]):
            adj[u].add(w)
            adj[w].add(u)
    side: dict[int, int] = {}
    components = []
    for start in maxima:
        if start in side:
            continue
        side[start] = 0
        comp = [start]
        for u in comp:
            for w in sorted(adj[u]):
                if w not in side:
                    side[w] = 1 - side[u]
                    comp.append(w)
                elif side[w] == side[u]:
                    return Verdict(False, (u, w), f"maximal elements {u} and {w} close an odd cycle")
        components.append(comp)
    if all(side[u] == 0 for u in maxima):
        # No conflicts at all: flip the component with the largest minimum.
        for u in components[-1]:
            side[u] = 1
    first = tuple(u for u in maxima if side[u] == 0)
    second = tuple(u for u in maxima if side[u] == 1)
    return Verdict(True, (first, second))


def maximal_cover_property(P: FinitePoset) -> Verdict:
    """An element covered by a maximal element has at least two covers."""
    for v in range(P.k):
        ups = P.upper_covers[v]
        if len(ups) == 1 and ups[0] in P.maximal:
            return Verdict(False, v, f"{_label(P, v)} has the single cover {_label(P, ups[0])}")
    return Verdict(True)


def no_child_property(P: FinitePoset) -> Verdict:
    """No ``z < x, y < u`` (all covers) with ``x != y`` and ``u`` maximal."""
    for u in P.maximal:
        for x, y in combinations(P.lower_covers[u], 2):
            common = set(P.lower_covers[x]) & set(P.lower_covers[y])
            if common:
                z = min(common)
                return Verdict(False, (x, y, z, u), "covers of a maximal element share a lower cover")
    return Verdict(True)


# The four-crown two-pendant poset: a crown a-p-b-q-c-r-d-s-a over four
# maximal elements, with pendants u under (p, r) and v under (q, s).
CROWN_NAMES = ("a", "b", "c", "d", "p", "q", "r", "s", "u", "v")
CROWN_COVERS = (
    ("p", "a"), ("p", "b"), ("q", "b"), ("q", "c"),
    ("r", "c"), ("r", "d"), ("s", "d"), ("s", "a"),
    ("u", "p"), ("u", "r"), ("v", "q"), ("v", "s"),
)


def crown_poset() -> FinitePoset:
    return FinitePoset.from_named_covers(CROWN_NAMES, CROWN_COVERS)


def find_cover_embedding(R: FinitePoset, P: FinitePoset, maximal_to_maximal: bool = True):
    """Backtracking search for a cover-preserving order embedding ``R -> P``.

    Returns a tuple ``phi`` (``phi[i]`` is the image of ``R``'s element ``i``)
    or ``None``.  Elements are placed top-down so each new element is
    constrained by the images of its upper covers.
    """
    order = sorted(range(R.k), key=lambda i: (_depth_from_top(R, i), i))
    pmax = set(P.maximal)
    phi: dict[int, int] = {}
    used: set[int] = set()

    def candidates(i: int) -> Iterable[int]:
        ups = R.upper_covers[i]
        if not ups:
            pool = P.maximal if maximal_to_maximal else range(P.k)
        else:
            pool = set(P.lower_covers[phi[ups[0]]])
            for j in ups[1:]:
                pool &= set(P.lower_covers[phi[j]])
            pool = sorted(pool)
        for c in pool:
            if c in used:
                continue
            if maximal_to_maximal and i in R.maximal and c not in pmax:
                continue
            if len(P.upper_covers[c]) < len(R.upper_covers[i]):
                continue
            yield c

    def consistent(i: int, c: int) -> bool:
        for j, d in phi.items():
            if bool(R.leq[i, j]) != bool(P.leq[c, d]) or bool(R.leq[j, i]) != bool(P.leq[d, c]):
                return False
            if R.cover[i, j] and not P.cover[c, d]:
                return False
            if R.cover[j, i] and not P.cover[d, c]:
                return False
        return True

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for c in candidates(i):
            if consistent(i, c):
                phi[i] = c
                used.add(c)
                if place(pos + 1):
                    return True
                del phi[i]
                used.discard(c)
        return False

    if R.k > P.k:
        return None
    if place(0):
        return tuple(phi[i] for i in range(R.k))
    return None


def _depth_from_top(R: FinitePoset, i: int) -> int:
    ups = R.upper_covers[i]
    return 0 if not ups else 1 + max(_depth_from_top(R, j) for j in ups)


def four_crown_two_pendant(P: FinitePoset, R: FinitePoset | None = None) -> Verdict:
    """No cover-preserving embedding of the crown poset sending its maxima to Max(P)."""
    R = crown_poset() if R is None else R
    phi = find_cover_embedding(R, P)
    if phi is not None:
        return Verdict(False, dict(zip(R.names, phi)), "crown poset embeds")
    return Verdict(True)


PROPERTIES = {
    "partition": partition_property,
    "maximal_cover": maximal_cover_property,
    "no_child": no_child_property,
    "four_crown": four_crown_two_pendant,
}
