"""Finite planar lattices given by left-to-right ordered cover lists.

A lattice is built from ``upper_covers``: for every element, the list of
elements covering it, ordered left to right in the planar diagram.  The
left-to-right order of lower covers is derived (see ``_lower_cover_order``),
and the order, meet and join tables are computed once at construction.
Lattice objects are immutable after ``build_lattice`` returns.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

M3_SCAN_LIMIT = 64


class LatticeError(ValueError):
    """Input does not describe a lattice of the supported kind."""


class NotALattice(LatticeError):
    def __init__(self, a: int, b: int, kind: str):
        self.pair = (a, b)
        self.kind = kind
        super().__init__(f"elements {a} and {b} have no unique {kind}")


class MultipleBottoms(LatticeError):
    pass


class MultipleTops(LatticeError):
    pass


class NotRectangular(LatticeError):
    pass


class NonFourCellRegion(LatticeError):
    pass


class MethodsDisagree(RuntimeError):
    """The two slimness tests gave different answers."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: ``ok`` plus an optional witness of failure."""

    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class Edge(NamedTuple):
    bottom: int
    top: int

    def __str__(self) -> str:
        return f"{self.bottom}-{self.top}"

    @classmethod
    def parse(cls, text: str) -> "Edge":
        lo, sep, hi = text.strip().partition("-")
        if not sep:
            raise ValueError(f"edge must look like 'bottom-top', got {text!r}")
        return cls(int(lo), int(hi))


class FourCell(NamedTuple):
    bottom: int
    left: int
    right: int
    top: int

    @property
    def lower_left(self) -> Edge:
        return Edge(self.bottom, self.left)

    @property
    def lower_right(self) -> Edge:
        return Edge(self.bottom, self.right)

    @property
    def upper_left(self) -> Edge:
        return Edge(self.left, self.top)

    @property
    def upper_right(self) -> Edge:
        return Edge(self.right, self.top)


@dataclass(frozen=True)
class BoundaryChains:
    left: tuple[int, ...]
    right: tuple[int, ...]
    left_corner: int
    right_corner: int

    def _split(self, chain: tuple[int, ...], corner: int):
        i = chain.index(corner)
        return chain[: i + 1], chain[i:]

    @property
    def lower_left(self) -> tuple[int, ...]:
        return self._split(self.left, self.left_corner)[0]

    @property
    def upper_left(self) -> tuple[int, ...]:
        return self._split(self.left, self.left_corner)[1]

    @property
    def lower_right(self) -> tuple[int, ...]:
        return self._split(self.right, self.right_corner)[0]

    @property
    def upper_right(self) -> tuple[int, ...]:
        return self._split(self.right, self.right_corner)[1]

    @staticmethod
    def chain_edges(chain: Sequence[int]) -> list[Edge]:
        return [Edge(a, b) for a, b in zip(chain, chain[1:])]

    @property
    def upper_left_edges(self) -> list[Edge]:
        return self.chain_edges(self.upper_left)

    @property
    def upper_right_edges(self) -> list[Edge]:
        return self.chain_edges(self.upper_right)

    @property
    def boundary_edges(self) -> set[Edge]:
        return set(self.chain_edges(self.left)) | set(self.chain_edges(self.right))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class Lattice:
    """A finite lattice with a planar left-to-right cover ordering.

    Attributes:
        n: number of elements, ids ``0..n-1``.
        upper_covers / lower_covers: per element, covers ordered left to right.
        leq: ``leq[a, b]`` iff ``a <= b``.
        meet, join: ``n x n`` integer tables.
        rank: height of each element above the bottom.
    """

    def __init__(self, upper_covers, lower_covers, leq, meet, join, bottom, top, rank):
        self.n = len(upper_covers)
        self.upper_covers: tuple[tuple[int, ...], ...] = upper_covers
        self.lower_covers: tuple[tuple[int, ...], ...] = lower_covers
        self.leq = _frozen(leq)
        self.meet = _frozen(meet)
        self.join = _frozen(join)
        self.bottom = bottom
        self.top = top
        self.rank = _frozen(rank)
        self.edges: tuple[Edge, ...] = tuple(
            sorted(Edge(a, b) for a in range(self.n) for b in upper_covers[a])
        )

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, upper_covers={[list(c) for c in self.upper_covers]})"

    def covers(self, a: int, b: int) -> bool:
        """True iff ``a`` is covered by ``b``."""
        return b in self.upper_covers[a]

    def is_edge(self, e: Sequence[int]) -> bool:
        return self.covers(e[0], e[1])

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq[a, b])

    def comparable(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b] or self.leq[b, a])

    def to_dict(self) -> dict:
        return {"n": self.n, "upper_covers": [list(c) for c in self.upper_covers]}


def _topological_order(upper: Sequence[Sequence[int]]) -> list[int]:
    n = len(upper)
    indeg = [0] * n
    for a in range(n):
        for b in upper[a]:
            indeg[b] += 1
    order = [a for a in range(n) if indeg[a] == 0]
    for a in order:
        for b in upper[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                order.append(b)
    if len(order) != n:
        raise LatticeError("cover relation contains a cycle")
    return order


def _lower_cover_order(upper: Sequence[Sequence[int]], bottom: int) -> list[list[int]]:
    # Leftmost-first DFS: the lower covers of any element are first reached
    # in their left-to-right order.
    n = len(upper)
    pre = [-1] * n
    stack = [bottom]
    counter = 0
    while stack:
        a = stack.pop()
        if pre[a] >= 0:
            continue
        pre[a] = counter
        counter += 1
        stack.extend(b for b in reversed(upper[a]) if pre[b] < 0)
    lower: list[list[int]] = [[] for _ in range(n)]
    for a in range(n):
        for b in upper[a]:
            lower[b].append(a)
    for b in range(n):
        lower[b].sort(key=pre.__getitem__)
    return lower


def _bound_table(leq: np.ndarray, kind: str) -> np.ndarray:
    # For meets, `below[c, a]` = c <= a; for joins the transpose.
    n = leq.shape[0]
    below = leq if kind == "meet" else leq.T
    size = below.sum(axis=0)
    table = np.empty((n, n), dtype=np.int64)
    cols = below.T  # cols[a] = set of elements below a
    for a in range(n):
        common = cols[a][None, :] & cols  # common[b, c]
        cand = np.where(common, size[None, :], -1).argmax(axis=1)
        bad = ~(common == cols[cand]).all(axis=1) | ~common.any(axis=1)
        if bad.any():
            b = int(np.flatnonzero(bad)[0])
            raise NotALattice(a, b, kind)
        table[a] = cand
    return table


def build_lattice(upper_covers: Sequence[Sequence[int]]) -> Lattice:
    """Build a :class:`Lattice` from left-to-right ordered upper-cover lists."""
    n = len(upper_covers)
    if n == 0:
        raise LatticeError("empty lattice")
    upper = []
    for a, covers in enumerate(upper_covers):
        covers = [int(b) for b in covers]
        for b in covers:
            if not 0 <= b < n:
                raise LatticeError(f"element {a} has out-of-range cover {b}")
            if b == a:
                raise LatticeError(f"element {a} covers itself")
        if len(set(covers)) != len(covers):
            raise LatticeError(f"element {a} lists a cover twice")
        upper.append(tuple(covers))

    order = _topological_order(upper)
    bottoms = [a for a in range(n) if not any(a in upper[c] for c in range(n))]
    tops = [a for a in range(n) if not upper[a]]
    if len(bottoms) != 1:
        raise MultipleBottoms(f"minimal elements {bottoms}")
    if len(tops) != 1:
        raise MultipleTops(f"maximal elements {tops}")

    # Up-sets as bitmasks, filled in reverse topological order.
    ups = [0] * n
    for a in reversed(order):
        mask = 1 << a
        for b in upper[a]:
            mask |= ups[b]
        ups[a] = mask
    for a in range(n):
        for b in upper[a]:
            for c in upper[a]:
                if c != b and (ups[c] >> b) & 1:
                    raise LatticeError(f"{a} < {c} < {b}, so {a}-{b} is not a cover")
    leq = np.zeros((n, n), dtype=bool)
    for a in range(n):
        leq[a] = [(ups[a] >> b) & 1 for b in range(n)]

    meet = _bound_table(leq, "meet")
    join = _bound_table(leq, "join")

    rank = np.zeros(n, dtype=np.int64)
    for a in order:
        for b in upper[a]:
            rank[b] = max(rank[b], rank[a] + 1)

    lower = _lower_cover_order(upper, bottoms[0])
    return Lattice(
        tuple(upper), tuple(tuple(c) for c in lower), leq, meet, join, bottoms[0], tops[0], rank
    )


def lattice_from_dict(data: dict) -> Lattice:
    """Parse the lattice JSON object ``{"n": int, "upper_covers": [[...], ...]}``."""
    try:
        n = int(data["n"])
        covers = data["upper_covers"]
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeError(f"malformed lattice JSON: {exc}") from None
    if not isinstance(covers, list) or len(covers) != n:
        raise LatticeError(f"upper_covers must be a list of {n} lists")
    return build_lattice(covers)


def chain(k: int) -> Lattice:
    """The ``k``-element chain."""
    return build_lattice([[i + 1] for i in range(k - 1)] + [[]])


# -- validators -------------------------------------------------------------


def validate_semimodular(K: Lattice) -> Verdict:
    """Check that ``a ^ b < a`` (cover) implies ``b < a v b`` (cover) for all pairs."""
    cov = np.zeros((K.n, K.n), dtype=bool)
    for a, b in K.edges:
        cov[a, b] = True
    idx = np.arange(K.n)
    lower_cov = cov[K.meet, idx[:, None]]  # meet(a, b) covered by a
    upper_cov = cov[idx[None, :], K.join]  # b covered by join(a, b)
    bad = np.argwhere(lower_cov & ~upper_cov)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        return Verdict(False, (a, b), f"{a}^{b} is covered by {a} but {b} is not covered by {a}v{b}")
    return Verdict(True)


def join_irreducibles(K: Lattice) -> list[int]:
    return [a for a in range(K.n) if len(K.lower_covers[a]) == 1]


def find_m3(K: Lattice) -> tuple[int, int, int] | None:
    """Brute-force search for three pairwise incomparable elements generating an M3."""
    n = K.n
    inc = ~(K.leq | K.leq.T)
    for a in range(n):
        for b in range(a + 1, n):
            if not inc[a, b]:
                continue
            m, j = K.meet[a, b], K.join[a, b]
            c_ok = (
                inc[a] & inc[b]
                & (K.meet[a] == m) & (K.meet[b] == m)
                & (K.join[a] == j) & (K.join[b] == j)
            )
            c_ok[: b + 1] = False
            hits = np.flatnonzero(c_ok)
            if hits.size:
                return a, b, int(hits[0])
    return None


def _three_antichain(K: Lattice, elems: Sequence[int]) -> tuple[int, int, int] | None:
    for x, y, z in combinations(elems, 3):
        if not (K.comparable(x, y) or K.comparable(x, z) or K.comparable(y, z)):
            return x, y, z
    return None


def validate_slim(K: Lattice) -> Verdict:
    """Slimness: no M3 sublattice, and join-irreducibles covered by two chains.

    The M3 scan only runs for ``n <= M3_SCAN_LIMIT``; when it runs, both tests
    must agree or :class:`MethodsDisagree` is raised.
    """
    antichain = _three_antichain(K, join_irreducibles(K))
    if K.n <= M3_SCAN_LIMIT:
        m3 = find_m3(K)
        if (m3 is None) != (antichain is None):
            raise MethodsDisagree(f"M3 scan found {m3}, join-irreducible antichain {antichain}")
        if m3 is not None:
            return Verdict(False, m3, f"elements {m3} generate an M3 sublattice")
    if antichain is not None:
        return Verdict(False, antichain, f"join-irreducibles {antichain} form an antichain")
    return Verdict(True)


def _extreme_chain(K: Lattice, side: int) -> tuple[int, ...]:
    out = [K.bottom]
    while K.upper_covers[out[-1]]:
        out.append(K.upper_covers[out[-1]][side])
    return tuple(out)


def _doubly_irreducible(K: Lattice, a: int) -> bool:
    return len(K.upper_covers[a]) == 1 and len(K.lower_covers[a]) == 1


def validate_rectangular(K: Lattice) -> tuple[int, int]:
    """Return the (left, right) corners, or raise :class:`NotRectangular`."""
    left, right = _extreme_chain(K, 0), _extreme_chain(K, -1)
    if set(left) & set(right) != {K.bottom, K.top}:
        raise NotRectangular("left and right boundary chains meet away from bottom and top")
    corners = []
    for side, ch in (("left", left), ("right", right)):
        found = [a for a in ch[1:-1] if _doubly_irreducible(K, a)]
        if len(found) != 1:
            raise NotRectangular(f"{side} boundary has doubly irreducible elements {found}")
        corners.append(found[0])
    lc, rc = corners
    if K.meet[lc, rc] != K.bottom or K.join[lc, rc] != K.top:
        raise NotRectangular(f"corners {lc} and {rc} are not complementary")
    return lc, rc


def boundary_chains(K: Lattice) -> BoundaryChains:
    lc, rc = validate_rectangular(K)
    return BoundaryChains(_extreme_chain(K, 0), _extreme_chain(K, -1), lc, rc)


def four_cells(K: Lattice) -> list[FourCell]:
    """All 4-cells, one per pair of neighbouring upper covers.

    Raises :class:`NonFourCellRegion` when some region of the diagram is not
    a 4-cell or the edge/cell incidences are inconsistent.
    """
    cells = []
    for o in range(K.n):
        ups = K.upper_covers[o]
        for a, b in zip(ups, ups[1:]):
            t = int(K.join[a, b])
            downs = K.lower_covers[t]
            if a not in downs or b not in downs or downs.index(b) != downs.index(a) + 1:
                raise NonFourCellRegion(f"region below {t} over {a}, {b} is not a 4-cell")
            cells.append(FourCell(o, a, b, t))
    from_below = set(cells)
    for t in range(K.n):
        downs = K.lower_covers[t]
        for a, b in zip(downs, downs[1:]):
            o = int(K.meet[a, b])
            if FourCell(o, a, b, t) not in from_below:
                raise NonFourCellRegion(f"region above {o} under {a}, {b} is not a 4-cell")
    return cells


def check_cell_incidence(K: Lattice, cells: Iterable[FourCell], boundary: set[Edge]) -> Verdict:
    """Interior edges lie in two cells, boundary edges in one."""
    count = {e: 0 for e in K.edges}
    for c in cells:
        for e in (c.lower_left, c.lower_right, c.upper_left, c.upper_right):
            count[e] += 1
    for e in K.edges:
        want = 1 if e in boundary else 2
        if count[e] != want:
            return Verdict(False, e, f"edge {e} lies in {count[e]} cells, expected {want}")
    return Verdict(True)


def cell_with_bottom(K: Lattice, o: int) -> FourCell | None:
    """The 4-cell with bottom ``o`` (slim lattices have at most one)."""
    if not 0 <= o < K.n:
        return None
    ups = K.upper_covers[o]
    if len(ups) < 2:
        return None
    a, b = ups[0], ups[1]
    return FourCell(o, a, b, int(K.join[a, b]))


# S7 on positions (o, p, q, a, m, b, t): strict order pairs.
_S7_LESS = {
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
    (1, 3), (1, 4), (1, 6), (2, 4), (2, 5), (2, 6),
    (3, 6), (4, 6), (5, 6),
}


def is_peak_s7(K: Lattice, elems: Sequence[int]) -> bool:
    """``(o, p, q, a, m, b, t)`` spans an S7 sublattice whose top three lines are edges.

    Only the three top intervals must be covers in ``K``; the lower part of
    the S7 may stretch over longer chains.
    """
    elems = tuple(int(x) for x in elems)
    if len(set(elems)) != 7:
        return False
    for i in range(7):
        for j in range(7):
            if i != j and bool(K.leq[elems[i], elems[j]]) != ((i, j) in _S7_LESS):
                return False
    members = set(elems)
    for x in elems:
        for y in elems:
            if int(K.meet[x, y]) not in members or int(K.join[x, y]) not in members:
                return False
    t = elems[6]
    return all(K.covers(x, t) for x in elems[3:6])


def peak_s7_find(K: Lattice) -> list[tuple[int, int, int, int, int, int, int]]:
    """All peak S7 sublattices as tuples ``(o, p, q, a, m, b, t)``.

    ``t`` covers ``a``, ``m``, ``b`` (left to right), ``p = a ^ m``,
    ``q = m ^ b`` and ``o = p ^ q``.
    """
    found = []
    for t in range(K.n):
        downs = K.lower_covers[t]
        if len(downs) < 3:
            continue
        for a, m, b in combinations(downs, 3):
            p, q = int(K.meet[a, m]), int(K.meet[m, b])
            elems = (int(K.meet[p, q]), p, q, a, m, b, t)
            if is_peak_s7(K, elems):
                found.append(elems)
    return found


def iter_pairs(K: Lattice) -> Iterator[tuple[Edge, Edge]]:
    for u in K.edges:
        for v in K.edges:
            yield u, v
