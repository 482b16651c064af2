"""Brute-force congruences: the ground truth the swing machinery is checked against.

Congruences are partitions stored as a label per element, the label being
the least element of its block.  The principal congruence of an edge is the
compatibility closure of the partition that merges the edge's endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .lattice import Edge, Lattice
from .poset import FinitePoset


class Congruence:
    """Partition of a lattice's elements, ``labels[x]`` = least element of x's block."""

    __slots__ = ("labels",)

    def __init__(self, labels):
        labels = np.asarray(labels, dtype=np.int64)
        labels.setflags(write=False)
        self.labels = labels

    def __eq__(self, other) -> bool:
        return isinstance(other, Congruence) and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash(self.labels.tobytes())

    def __repr__(self) -> str:
        return f"Congruence({self.blocks()})"

    def same(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, lab in enumerate(self.labels.tolist()):
            out.setdefault(lab, []).append(x)
        return list(out.values())

    def refines(self, other: "Congruence") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        return bool((other.labels[self.labels] == other.labels).all())

    def collapsed_edges(self, K: Lattice) -> tuple[Edge, ...]:
        return tuple(e for e in K.edges if self.same(*e))

    def is_compatible(self, K: Lattice) -> bool:
        lab = self.labels
        reps = lab
        for table in (K.meet, K.join):
            if not (lab[table] == lab[table[reps]]).all():
                return False
        return True


def _merge(labels: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = labels.shape[0]
    idx = np.arange(n)
    rows = np.concatenate([idx, a])
    cols = np.concatenate([labels, b])
    graph = coo_matrix((np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(n, n))
    _, comp = connected_components(graph, directed=False)
    least = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(least, comp, idx)
    return least[comp]


def congruence_closure(K: Lattice, pairs) -> Congruence:
    """Least congruence identifying every pair in ``pairs``."""
    n = K.n
    labels = np.arange(n, dtype=np.int64)
    pairs = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    if pairs.size:
        labels = _merge(labels, pairs[:, 0], pairs[:, 1])
    idx = np.arange(n)
    while True:
        xs = idx[labels != idx]
        if xs.size == 0:
            break
        rs = labels[xs]
        # x and its block representative must stay together under c ^ . and c v .
        lhs = np.concatenate([labels[K.meet[xs]].ravel(), labels[K.join[xs]].ravel()])
        rhs = np.concatenate([labels[K.meet[rs]].ravel(), labels[K.join[rs]].ravel()])
        diff = lhs != rhs
        if not diff.any():
            break
        labels = _merge(labels, lhs[diff], rhs[diff])
    return Congruence(labels)


def principal_congruence(K: Lattice, E) -> Congruence:
    """The congruence generated by collapsing the edge ``E``."""
    return congruence_closure(K, [(E[0], E[1])])


@dataclass(frozen=True)
class Coloring:
    """Edge colors: the order of join-irreducible congruences and each edge's class."""

    P: FinitePoset
    col: dict[Edge, int]
    congruences: tuple[Congruence, ...]

    def __iter__(self):
        # Allows ``P, col = ji_poset(K)``.
        yield self.P
        yield self.col


@lru_cache(maxsize=16)
def ji_poset(K: Lattice) -> Coloring:
    """Join-irreducible congruences as the distinct edge congruences under refinement."""
    by_edge = {e: principal_congruence(K, e) for e in K.edges}
    distinct: dict[Congruence, tuple[Edge, ...]] = {}
    for con in by_edge.values():
        if con not in distinct:
            distinct[con] = con.collapsed_edges(K)
    ordered = sorted(distinct, key=distinct.__getitem__)
    index = {con: i for i, con in enumerate(ordered)}
    k = len(ordered)
    leq = np.zeros((k, k), dtype=bool)
    for i, ci in enumerate(ordered):
        for j, cj in enumerate(ordered):
            leq[i, j] = ci.refines(cj)
    names = [f"c{i}" for i in range(k)]
    P = FinitePoset(leq, names)
    col = {e: index[c] for e, c in by_edge.items()}
    return Coloring(P, col, tuple(ordered))


def leq_oracle(K: Lattice, U, V) -> bool:
    """``con(V) <= con(U)``, decided by congruence closure alone."""
    return principal_congruence(K, V).refines(principal_congruence(K, U))


def oracle_leq_matrix(K: Lattice) -> np.ndarray:
    """``M[i, j]`` iff ``con(edges[j]) <= con(edges[i])``."""
    coloring = ji_poset(K)
    cols = np.array([coloring.col[e] for e in K.edges])
    return coloring.P.leq[cols][:, cols].T.copy()
