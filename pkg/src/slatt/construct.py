"""Slim rectangular lattices as grids with forks inserted into 4-cells.

A :class:`Recipe` names a grid and a sequence of fork insertions; every
fork is referenced by the bottom element of its 4-cell in the lattice as it
stands at that step.  After every step the elements are renumbered
breadth-first from the bottom, visiting upper covers left to right, so a
recipe always replays to the same lattice with the same ids.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .lattice import FourCell, Lattice, LatticeError, build_lattice, cell_with_bottom


class BadDims(LatticeError):
    pass


class NotACell(LatticeError):
    pass


class DanglingCellRef(LatticeError):
    def __init__(self, step: int, ref: int):
        self.step = step
        self.ref = ref
        super().__init__(f"fork step {step}: no 4-cell with bottom {ref}")


@dataclass(frozen=True)
class Recipe:
    grid: tuple[int, int]
    forks: tuple[int, ...] = ()
    seed: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"grid": list(self.grid), "forks": list(self.forks)}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Recipe":
        try:
            m, n = (int(v) for v in data["grid"])
            forks = tuple(int(v) for v in data.get("forks", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise LatticeError(f"malformed recipe JSON: {exc}") from None
        seed = data.get("seed")
        return cls((m, n), forks, None if seed is None else int(seed))

    def sort_key(self) -> tuple:
        return (self.grid, len(self.forks), self.forks, -1 if self.seed is None else self.seed)


def canonical_covers(upper: Sequence[Sequence[int]]) -> list[list[int]]:
    """Renumber breadth-first from the bottom, upper covers left to right."""
    n = len(upper)
    has_lower = [False] * n
    for covers in upper:
        for b in covers:
            has_lower[b] = True
    bottoms = [a for a in range(n) if not has_lower[a]]
    if len(bottoms) != 1:
        raise LatticeError(f"expected one minimal element, found {bottoms}")
    new_id = {bottoms[0]: 0}
    queue = deque(bottoms)
    while queue:
        a = queue.popleft()
        for b in upper[a]:
            if b not in new_id:
                new_id[b] = len(new_id)
                queue.append(b)
    if len(new_id) != n:
        raise LatticeError("some elements are not above the bottom")
    out: list[list[int]] = [[] for _ in range(n)]
    for a in range(n):
        out[new_id[a]] = [new_id[b] for b in upper[a]]
    return out


def grid(m: int, n: int) -> Lattice:
    """Direct product of an ``m``-chain (left) and an ``n``-chain (right)."""
    if m < 2 or n < 2:
        raise BadDims(f"grid dimensions must be at least 2, got {m}x{n}")
    ident = lambda i, j: i * n + j  # noqa: E731
    upper: list[list[int]] = [[] for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            if i + 1 < m:
                upper[ident(i, j)].append(ident(i + 1, j))
            if j + 1 < n:
                upper[ident(i, j)].append(ident(i, j + 1))
    return build_lattice(canonical_covers(upper))


def _leg(K: Lattice, e: tuple[int, int], side: int) -> list[tuple[int, int]]:
    # Edges subdivided by one leg: keep crossing the 4-cell on the far side
    # of the current edge (down-left for side=-1, down-right for side=+1).
    out = [e]
    while True:
        o, a = e
        downs = K.lower_covers[a]
        i = downs.index(o) + side
        if not 0 <= i < len(downs):
            return out
        nxt = downs[i]
        e = (int(K.meet[nxt, o]), nxt)
        out.append(e)


def insert_fork(K: Lattice, cell: FourCell | int) -> Lattice:
    """Insert a fork into a 4-cell, turning it into a peak S7.

    A new element ``m`` is placed under the cell's top, between its left and
    right elements.  The left leg subdivides the lower-left edge of the cell
    and continues through the chain of cells to the lower left until it
    reaches the boundary; the right leg mirrors it.
    """
    if isinstance(cell, int):
        ref = cell
        cell = cell_with_bottom(K, ref)
        if cell is None:
            raise NotACell(f"element {ref} is not the bottom of a 4-cell")
    elif cell_with_bottom(K, cell.bottom) != cell:
        raise NotACell(f"{cell} is not a 4-cell of the lattice")
    o, a, b, t = cell
    left = _leg(K, (o, a), -1)
    right = _leg(K, (o, b), +1)

    upper = [list(c) for c in K.upper_covers]
    mid = len(upper)
    upper.append([t])
    prev = mid
    for lo, hi in left:
        x = len(upper)
        upper.append([hi, prev])
        upper[lo][upper[lo].index(hi)] = x
        prev = x
    prev = mid
    for lo, hi in right:
        y = len(upper)
        upper.append([prev, hi])
        upper[lo][upper[lo].index(hi)] = y
        prev = y
    return build_lattice(canonical_covers(upper))


def apply_recipe(r: Recipe) -> Lattice:
    K = grid(*r.grid)
    for step, ref in enumerate(r.forks):
        cell = cell_with_bottom(K, ref)
        if cell is None:
            raise DanglingCellRef(step, ref)
        K = insert_fork(K, cell)
    return K


def cell_bottoms(K: Lattice) -> list[int]:
    return [o for o in range(K.n) if len(K.upper_covers[o]) >= 2]


def enumerate_corpus(max_m: int = 4, max_n: int = 4, max_forks: int = 2) -> Iterator[Recipe]:
    """Every grid up to ``max_m x max_n`` with every fork sequence up to ``max_forks``."""

    def walk(K: Lattice, dims: tuple[int, int], forks: tuple[int, ...]) -> Iterator[Recipe]:
        yield Recipe(dims, forks)
        if len(forks) == max_forks:
            return
        for o in cell_bottoms(K):
            yield from walk(insert_fork(K, o), dims, forks + (o,))

    for m in range(2, max_m + 1):
        for n in range(2, max_n + 1):
            yield from walk(grid(m, n), (m, n), ())


def random_recipe(seed: int, max_m: int = 6, max_n: int = 6, max_forks: int = 4) -> Recipe:
    """Seeded random recipe; each fork picks a 4-cell uniformly."""
    rng = random.Random(seed)
    m = rng.randint(2, max_m)
    n = rng.randint(2, max_n)
    k = rng.randint(0, max_forks)
    K = grid(m, n)
    forks = []
    for _ in range(k):
        o = rng.choice(cell_bottoms(K))
        forks.append(o)
        K = insert_fork(K, o)
    return Recipe((m, n), tuple(forks), seed)


def random_forks(m: int, n: int, k: int, seed: int) -> Recipe:
    """Random fork sequence of length ``k`` on a fixed grid."""
    rng = random.Random(seed)
    K = grid(m, n)
    forks = []
    for _ in range(k):
        o = rng.choice(cell_bottoms(K))
        forks.append(o)
        K = insert_fork(K, o)
    return Recipe((m, n), tuple(forks), seed)


def s7() -> Lattice:
    """The seven-element lattice S7 (one fork in the 2x2 grid)."""
    return insert_fork(grid(2, 2), 0)
