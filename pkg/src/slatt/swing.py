"""Perspectivities, swings, trajectories and the swing-path decision procedure.

Nothing in this module computes a congruence: ``swing_leq`` decides
``con V <= con U`` purely from the lattice's covers, meets and joins, by
searching for a path

    U  (up-perspective)*  R  (down-perspective | swing)*  V.

The corollary patterns (equal colors, covering colors) are path patterns of
the same kind.  Colors are consulted only by ``validate_covnew`` and
``upper_boundary_colors``, which check statements about colors.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .congruence import ji_poset
from .lattice import (
    BoundaryChains,
    Edge,
    Lattice,
    boundary_chains,
    four_cells,
    peak_s7_find,
)


class SwingKind(Enum):
    NONE = "none"
    INTERIOR = "interior"
    EXTERIOR = "exterior"


class EdgeKind(Enum):
    NORMAL_UP = "normal-up"
    NORMAL_DOWN = "normal-down"
    STEEP = "steep"


class ClassificationMismatch(AssertionError):
    pass


class CovnewViolation(AssertionError):
    def __init__(self, equation: int, detail: str):
        self.equation = equation
        super().__init__(f"covnew identity ({equation}) fails: {detail}")


class MaxMismatch(AssertionError):
    pass


# -- single steps --------------------------------------------------------------


def is_up_perspective(K: Lattice, U, R) -> bool:
    """``U`` is up-perspective to ``R``: ``0_U = 1_U ^ 0_R`` and ``1_R = 1_U v 0_R``."""
    return (
        tuple(U) != tuple(R)
        and K.meet[U[1], R[0]] == U[0]
        and K.join[U[1], R[0]] == R[1]
    )


def up_transpose(K: Lattice, U) -> set[Edge]:
    return {R for R in K.edges if is_up_perspective(K, U, R)}


def down_transpose(K: Lattice, U) -> set[Edge]:
    return {R for R in K.edges if is_up_perspective(K, R, U)}


def _position(K: Lattice, e) -> tuple[int, int]:
    downs = K.lower_covers[e[1]]
    return downs.index(e[0]), len(downs)


def _interior(K: Lattice, e) -> bool:
    i, k = _position(K, e)
    return 0 < i < k - 1


def swing_rel(K: Lattice, U, V) -> SwingKind:
    """Swing from ``U`` to ``V``: shared top covering at least three elements,
    ``0_V`` neither left-most nor right-most; interior if ``0_U`` is too."""
    if U[1] != V[1] or len(K.lower_covers[U[1]]) < 3 or not _interior(K, V):
        return SwingKind.NONE
    return SwingKind.INTERIOR if _interior(K, U) else SwingKind.EXTERIOR


# -- trajectories --------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    edges: tuple[Edge, ...]
    top_index: int
    kinds: tuple[EdgeKind, ...]

    @property
    def top_edge(self) -> Edge:
        return self.edges[self.top_index]

    def kind_of(self, e: Edge) -> EdgeKind:
        return self.kinds[self.edges.index(e)]


def _step_right(K: Lattice) -> dict[Edge, Edge]:
    # Crossing a 4-cell from its left side to its right side.
    nxt = {}
    for c in four_cells(K):
        nxt[c.lower_left] = c.upper_right
        nxt[c.upper_left] = c.lower_right
    return nxt


@lru_cache(maxsize=16)
def trajectories(K: Lattice) -> tuple[Trajectory, ...]:
    """Trajectories ordered left to right, each with its edge classification."""
    chains = boundary_chains(K)
    upper_left = set(chains.upper_left_edges)
    upper_right = set(chains.upper_right_edges)
    nxt = _step_right(K)
    has_prev = set(nxt.values())
    out = []
    seen: set[Edge] = set()
    for start in K.edges:
        if start in has_prev:
            continue
        path = [start]
        while path[-1] in nxt:
            path.append(nxt[path[-1]])
        seen.update(path)
        top = max(range(len(path)), key=lambda i: int(K.rank[path[i][1]]))
        kinds = []
        for i, e in enumerate(path):
            if i < top:
                kinds.append(EdgeKind.NORMAL_DOWN)
            elif i > top:
                kinds.append(EdgeKind.NORMAL_UP)
            elif e in upper_left:
                kinds.append(EdgeKind.NORMAL_UP)
            elif e in upper_right:
                kinds.append(EdgeKind.NORMAL_DOWN)
            else:
                kinds.append(EdgeKind.STEEP)
        out.append(Trajectory(tuple(path), top, tuple(kinds)))
    if seen != set(K.edges):
        raise ClassificationMismatch("trajectories do not cover every edge (cyclic cell adjacency)")
    return tuple(out)


def trajectory_of(K: Lattice, e) -> Trajectory:
    for traj in trajectories(K):
        if e in traj.edges:
            return traj
    raise KeyError(e)


@lru_cache(maxsize=16)
def classify_edges(K: Lattice) -> dict[Edge, EdgeKind]:
    """Classify every edge, cross-checking the three characterisations of steepness."""
    chains = boundary_chains(K)
    upper = set(chains.upper_left_edges) | set(chains.upper_right_edges)
    peak_middles = {Edge(s[4], s[6]) for s in peak_s7_find(K)}
    kinds = {}
    for traj in trajectories(K):
        for i, e in enumerate(traj.edges):
            kind = traj.kinds[i]
            by_peak = e in peak_middles
            by_top = i == traj.top_index and e not in upper
            if (kind is EdgeKind.STEEP) != by_peak or by_peak != by_top:
                raise ClassificationMismatch(
                    f"edge {e}: trajectory says {kind.value}, peak middle={by_peak}, "
                    f"non-boundary top={by_top}"
                )
            kinds[e] = kind
    return kinds


def classify_edge(K: Lattice, E) -> EdgeKind:
    return classify_edges(K)[Edge(*E)]


# -- relation matrices ---------------------------------------------------------


def _closure(step: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean relation."""
    rel = step | np.eye(step.shape[0], dtype=bool)
    while True:
        r = rel.astype(np.int32)
        nxt = (r @ r) > 0
        if (nxt == rel).all():
            return rel
        rel = nxt


def _compose(*rels: np.ndarray) -> np.ndarray:
    out = rels[0].astype(np.int32)
    for r in rels[1:]:
        out = ((out @ r.astype(np.int32)) > 0).astype(np.int32)
    return out > 0


class EdgeRelations:
    """Boolean matrices over ``K.edges`` for the relations used in swing paths.

    ``up[i, j]``: edge i is up-perspective to edge j.  ``swing_in`` and
    ``swing_ex`` are the interior and exterior swings (``swing_in`` has
    ``True`` on the diagonal for interior edges, by definition).
    """

    def __init__(self, K: Lattice):
        self.K = K
        self.edges = K.edges
        self.index = {e: i for i, e in enumerate(self.edges)}
        bot = np.array([e.bottom for e in self.edges])
        top = np.array([e.top for e in self.edges])
        self.bot, self.top = bot, top
        m = K.meet[top[:, None], bot[None, :]]
        j = K.join[top[:, None], bot[None, :]]
        up = (m == bot[:, None]) & (j == top[None, :])
        np.fill_diagonal(up, False)
        self.up = up
        self.down = up.T.copy()
        nE = len(self.edges)
        interior = np.array([_interior(K, e) for e in self.edges])
        wide = np.array([len(K.lower_covers[t]) >= 3 for t in top])
        same_top = top[:, None] == top[None, :]
        target = same_top & (wide & interior)[None, :]
        self.swing_in = target & interior[:, None]
        self.swing_ex = target & ~interior[:, None]
        self.up_star = _closure(up)
        self.down_star = self.up_star.T.copy()
        self.descend = self.down | self.swing_in | self.swing_ex
        self.descend_star = _closure(self.descend)
        self.eye = np.eye(nE, dtype=bool)

    def leq_matrix(self) -> np.ndarray:
        """``M[i, j]``: a swing path leads from edge i to edge j."""
        return _compose(self.up_star, self.descend_star)

    def equal_matrix(self) -> np.ndarray:
        return _compose(self.up_star, self.eye | self.swing_in, self.down_star)

    def cover_matrix(self) -> np.ndarray:
        return _compose(
            self.up_star, self.eye | self.swing_in, self.down_star, self.swing_ex, self.down_star
        )


@lru_cache(maxsize=16)
def edge_relations(K: Lattice) -> EdgeRelations:
    return EdgeRelations(K)


def swing_leq_matrix(K: Lattice) -> np.ndarray:
    return edge_relations(K).leq_matrix()


@dataclass
class SwingPath:
    """A normal-form path: a run of up steps, then down/swing steps."""

    steps: list[tuple[str, Edge]] = field(default_factory=list)

    def __str__(self) -> str:
        parts = [str(self.steps[0][1])]
        for rel, e in self.steps[1:]:
            parts.append(f"--{rel}--> {e}")
        return " ".join(parts)

    def to_list(self) -> list[list[str]]:
        return [[rel, str(e)] for rel, e in self.steps]


def _step_label(rel: EdgeRelations, i: int, j: int, phase: int) -> str:
    if phase == 0:
        return "up"
    if rel.down[i, j]:
        return "down"
    return "swing-in" if rel.swing_in[i, j] else "swing-ex"


def swing_path(K: Lattice, U, V) -> SwingPath | None:
    """Shortest normal-form swing path from ``U`` to ``V``, or ``None``."""
    rel = edge_relations(K)
    src, dst = rel.index[Edge(*U)], rel.index[Edge(*V)]
    start = (src, 0)
    parent: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    queue = deque([start])
    found = None
    while queue:
        state = queue.popleft()
        i, phase = state
        if i == dst:
            found = state
            break
        moves = []
        if phase == 0:
            moves += [(int(j), 0) for j in np.flatnonzero(rel.up[i])]
        moves += [(int(j), 1) for j in np.flatnonzero(rel.descend[i]) if j != i]
        for s in moves:
            if s not in parent:
                parent[s] = state
                queue.append(s)
    if found is None:
        return None
    chain = []
    s = found
    while s is not None:
        chain.append(s)
        s = parent[s]
    chain.reverse()
    steps = [("start", rel.edges[chain[0][0]])]
    for (i, _), (j, phase) in zip(chain, chain[1:]):
        steps.append((_step_label(rel, i, j, phase), rel.edges[j]))
    path = SwingPath(steps)
    descent = [steps[_last_up(steps)][1].top]
    descent += [e.top for label, e in steps if label not in ("start", "up")]
    assert all(K.leq[y, x] for x, y in zip(descent, descent[1:])), f"tops increase along {path}"
    return path


def _last_up(steps: list[tuple[str, Edge]]) -> int:
    last = 0
    for i, (label, _) in enumerate(steps):
        if label in ("start", "up"):
            last = i
    return last


def swing_leq(K: Lattice, U, V, witness: bool = False):
    """Decide ``col V <= col U`` by swing paths; optionally return the path too."""
    path = swing_path(K, U, V)
    if witness:
        return path is not None, path
    return path is not None


def equal_pattern(K: Lattice, U, V) -> bool:
    """``U`` up* ``S``, ``S`` interior-swing (or equal) ``T``, ``T`` down* ``V``."""
    rel = edge_relations(K)
    return bool(rel.equal_matrix()[rel.index[Edge(*U)], rel.index[Edge(*V)]])


def cover_pattern(K: Lattice, U, V) -> bool:
    """``U`` up* ``R1`` in-swing ``R2`` down* ``R3`` ex-swing ``R4`` down* ``V``."""
    rel = edge_relations(K)
    return bool(rel.cover_matrix()[rel.index[Edge(*U)], rel.index[Edge(*V)]])


# -- statements about colors ---------------------------------------------------


@dataclass
class CovnewReport:
    edge: Edge
    cases: list[dict] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return not self.cases

    def to_dict(self) -> dict:
        return {"edge": str(self.edge), "vacuous": self.vacuous, "cases": self.cases}


def validate_covnew(K: Lattice, U) -> CovnewReport:
    """For ``U`` on the upper-left boundary, check every ``U`` down* ``S`` ex-swing ``T``.

    With ``E_1, ..., E_n`` the edges under ``t = 1_S`` from left to right:
    (1) ``col E_1 != col E_n``; (2) every middle edge has the color of ``T``;
    (3) ``col T`` is covered by both ``col E_1`` and ``col E_n``.
    Raises :class:`CovnewViolation` naming the failing identity.
    """
    U = Edge(*U)
    chains = boundary_chains(K)
    if U not in chains.upper_left_edges:
        raise ValueError(f"{U} is not on the upper-left boundary")
    rel = edge_relations(K)
    P, col = ji_poset(K)
    report = CovnewReport(U)
    u = rel.index[U]
    for s in np.flatnonzero(rel.down_star[u]):
        for t_ in np.flatnonzero(rel.swing_ex[s]):
            S, T = rel.edges[s], rel.edges[t_]
            t = S.top
            under = [Edge(x, t) for x in K.lower_covers[t]]
            first, last = under[0], under[-1]
            if S not in (first, last):
                raise CovnewViolation(0, f"{S} swings exteriorly but is not an end edge")
            W = last if S == first else first
            if col[first] == col[last]:
                raise CovnewViolation(1, f"{first} and {last} share a color")
            middle = {col[e] for e in under[1:-1]}
            if middle != {col[T]}:
                raise CovnewViolation(2, f"middle edges under {t} have colors {sorted(middle)}")
            if not (P.is_cover(col[T], col[first]) and P.is_cover(col[T], col[last])):
                raise CovnewViolation(3, f"col {T} is not covered by col {first} and col {last}")
            report.cases.append(
                {"S": str(S), "T": str(T), "W": str(W), "t": t, "equations": [1, 2, 3]}
            )
    return report


def upper_boundary_colors(K: Lattice) -> set[int]:
    """Colors of upper-boundary edges; must equal the maximal elements of P."""
    chains = boundary_chains(K)
    P, col = ji_poset(K)
    colors = {col[e] for e in chains.upper_left_edges + chains.upper_right_edges}
    if colors != set(P.maximal):
        raise MaxMismatch(f"upper boundary colors {sorted(colors)} != Max(P) {list(P.maximal)}")
    return colors


def upper_edge_color_check(K: Lattice) -> bool:
    """An upper-boundary edge has the color of ``V`` exactly when it is down-perspective to it."""
    chains = boundary_chains(K)
    P, col = ji_poset(K)
    rel = edge_relations(K)
    for U in chains.upper_left_edges + chains.upper_right_edges:
        u = rel.index[U]
        for v, V in enumerate(rel.edges):
            if (col[U] == col[V]) != bool(rel.down_star[u, v]):
                return False
    return True
