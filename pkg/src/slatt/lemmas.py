"""Lattice-level lemma checks used by the survey."""
from __future__ import annotations

from itertools import combinations

from .congruence import ji_poset
from .lattice import Edge, Lattice, Verdict, boundary_chains, four_cells
from .swing import EdgeKind, classify_edges, is_up_perspective, trajectories


def lemma_disjoint_check(K: Lattice) -> Verdict:
    """Distinct edges on the same upper boundary have colors without a common lower cover."""
    chains = boundary_chains(K)
    P, col = ji_poset(K)
    for side in (chains.upper_left_edges, chains.upper_right_edges):
        for X, Y in combinations(side, 2):
            common = set(P.lower_covers[col[X]]) & set(P.lower_covers[col[Y]])
            if common:
                return Verdict(False, (str(X), str(Y)), f"colors of {X} and {Y} share lower cover {min(common)}")
    return Verdict(True)


def lemma_application_check(K: Lattice) -> Verdict:
    """Each normal-up edge climbs, cell by cell, to the upper-left boundary or a steep edge.

    A step goes from the lower-right edge of a 4-cell to its upper-left edge
    and must be an up-perspectivity.
    """
    kinds = classify_edges(K)
    upper_left = set(boundary_chains(K).upper_left_edges)
    climb = {c.lower_right: c.upper_left for c in four_cells(K)}
    for X, kind in kinds.items():
        if kind is not EdgeKind.NORMAL_UP:
            continue
        cur = X
        while kinds[cur] is not EdgeKind.STEEP and cur not in upper_left:
            nxt = climb.get(cur)
            if nxt is None:
                return Verdict(False, str(X), f"climb from {X} is stuck at {cur}")
            if not is_up_perspective(K, cur, nxt):
                return Verdict(False, str(X), f"{cur} is not up-perspective to {nxt}")
            cur = nxt
    return Verdict(True)


def lemma_disj_check(K: Lattice) -> Verdict:
    """Distinct steep edges lie in different trajectories."""
    owner: dict[Edge, int] = {}
    for i, traj in enumerate(trajectories(K)):
        steep = [e for e, k in zip(traj.edges, traj.kinds) if k is EdgeKind.STEEP]
        if len(steep) > 1:
            return Verdict(False, [str(e) for e in steep], "one trajectory holds two steep edges")
        for e in steep:
            owner[e] = i
    if len(set(owner.values())) != len(owner):
        return Verdict(False, sorted(map(str, owner)), "steep edges share a trajectory")
    return Verdict(True)


def trajectory_color_check(K: Lattice) -> Verdict:
    """Color is constant along every trajectory."""
    _, col = ji_poset(K)
    for traj in trajectories(K):
        colors = {col[e] for e in traj.edges}
        if len(colors) != 1:
            return Verdict(False, [str(e) for e in traj.edges], f"trajectory carries colors {sorted(colors)}")
    return Verdict(True)


LEMMAS = {
    "application": lemma_application_check,
    "disj": lemma_disj_check,
    "disjoint": lemma_disjoint_check,
}
