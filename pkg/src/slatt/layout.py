"""C1-diagram coordinates, their validation, and SVG / TikZ output.

Each element ``e`` gets ``l(e) = height(e ^ lc)`` and ``r(e) = height(e ^ rc)``
for the left and right corners ``lc``, ``rc``, and is placed at
``x = r - l``, ``y = r + l``.  Normal edges come out at exactly 45 or 135
degrees; a steep edge is any edge rising more than it runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .lattice import Edge, Lattice, Verdict, boundary_chains, peak_s7_find


class LayoutDegenerate(ValueError):
    pass


@dataclass(frozen=True)
class Layout:
    xy: tuple[tuple[Fraction, Fraction], ...]

    def __getitem__(self, a: int) -> tuple[Fraction, Fraction]:
        return self.xy[a]

    def moved(self, a: int, dx, dy) -> "Layout":
        pts = list(self.xy)
        x, y = pts[a]
        pts[a] = (x + Fraction(dx), y + Fraction(dy))
        return Layout(tuple(pts))


def coordinates(K: Lattice) -> Layout:
    chains = boundary_chains(K)
    lc, rc = chains.left_corner, chains.right_corner
    pts = []
    for e in range(K.n):
        l = int(K.rank[K.meet[e, lc]])
        r = int(K.rank[K.meet[e, rc]])
        pts.append((Fraction(r - l), Fraction(r + l)))
    if len(set(pts)) != len(pts):
        raise LayoutDegenerate("two elements share a position")
    return Layout(tuple(pts))


def slope_kind(layout: Layout, e: Edge) -> str:
    """``normal-up`` (45 deg), ``normal-down`` (135 deg), ``steep`` or ``flat``."""
    (x0, y0), (x1, y1) = layout[e.bottom], layout[e.top]
    dx, dy = x1 - x0, y1 - y0
    if dy <= 0 or abs(dx) > dy:
        return "flat"
    if abs(dx) < dy:
        return "steep"
    return "normal-up" if dx > 0 else "normal-down"


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def _segments_clash(a, b, c, d, shared: bool) -> bool:
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if shared:
        # Segments with a common endpoint may only touch there.
        if o1 == 0 and o2 == 0:
            others = [p for p in (a, b) if p not in (c, d)] + [p for p in (c, d) if p not in (a, b)]
            return any(_on_segment(c, d, p) for p in others if p in (a, b)) or any(
                _on_segment(a, b, p) for p in others if p in (c, d)
            )
        return False
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


def validate_c1(K: Lattice, layout: Layout) -> Verdict:
    """Check the diagram: steep edges are exactly the peak-S7 middle edges,
    every other edge is normal, positions are distinct, covers go up, no two
    edges cross, and the x-order of covers matches the stored order."""
    pts = layout.xy
    if len(set(pts)) != len(pts):
        return Verdict(False, None, "positions are not distinct")
    middles = {Edge(s[4], s[6]) for s in peak_s7_find(K)}
    for e in K.edges:
        kind = slope_kind(layout, e)
        if kind == "flat":
            return Verdict(False, e, f"edge {e} does not rise steeper than 45 degrees")
        if (kind == "steep") != (e in middles):
            return Verdict(False, e, f"edge {e} is {kind} but peak-middle={e in middles}")
    for a in range(K.n):
        for covers in (K.upper_covers[a], K.lower_covers[a]):
            xs = [pts[b][0] for b in covers]
            if any(x0 >= x1 for x0, x1 in zip(xs, xs[1:])):
                return Verdict(False, Edge(a, covers[0]) if covers is K.upper_covers[a] else Edge(covers[0], a),
                               f"covers of {a} are not left-to-right in the drawing")
    edges = K.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            shared = bool(set(e) & set(f))
            if _segments_clash(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]], shared):
                return Verdict(False, e, f"edges {e} and {f} cross")
    return Verdict(True)


# -- rendering -------------------------------------------------------------

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)


def _num(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{float(v):.4f}"


def render_svg(
    K: Lattice,
    layout: Layout,
    colors: Mapping[Edge, int] | None = None,
    trajectories: Sequence[Sequence[Edge]] | None = None,
    scale: int = 40,
    radius: int = 5,
) -> str:
    """SVG 1.1 drawing; byte-identical output for identical input."""
    xs = [p[0] for p in layout.xy]
    ys = [p[1] for p in layout.xy]
    margin = 2 * radius + 10
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * scale + 2 * margin
    height = (y1 - min(ys)) * scale + 2 * margin

    def sx(a: int) -> str:
        return _num((layout[a][0] - x0) * scale + margin)

    def sy(a: int) -> str:
        return _num((y1 - layout[a][1]) * scale + margin)

    middles = {Edge(s[4], s[6]) for s in peak_s7_find(K)}
    traj_of = {}
    for i, traj in enumerate(trajectories or ()):
        for e in traj:
            traj_of[e] = i
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        '<g id="edges" stroke-linecap="round">',
    ]
    for e in K.edges:
        stroke = "#000000"
        if colors is not None:
            stroke = PALETTE[colors[e] % len(PALETTE)]
        width_ = 4 if e in middles else 2
        extra = ""
        if e in traj_of:
            extra = f' class="traj-{traj_of[e]}"'
            if traj_of[e] % 2:
                extra += ' stroke-dasharray="6,3"'
        out.append(
            f'<line x1="{sx(e.bottom)}" y1="{sy(e.bottom)}" x2="{sx(e.top)}" y2="{sy(e.top)}" '
            f'stroke="{stroke}" stroke-width="{width_}"{extra}><title>{e}</title></line>'
        )
    out.append("</g>")
    out.append('<g id="elements" fill="#ffffff" stroke="#000000" stroke-width="1.5">')
    for a in range(K.n):
        out.append(f'<circle cx="{sx(a)}" cy="{sy(a)}" r="{radius}"><title>{a}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_tikz(
    K: Lattice,
    layout: Layout,
    colors: Mapping[Edge, int] | None = None,
    trajectories: Sequence[Sequence[Edge]] | None = None,
    scale: Fraction = Fraction(1, 2),
) -> str:
    """A ``tikzpicture`` environment drawing the diagram."""
    middles = {Edge(s[4], s[6]) for s in peak_s7_find(K)}
    traj_of = {}
    for i, traj in enumerate(trajectories or ()):
        for e in traj:
            traj_of[e] = i
    lines = [f"\\begin{{tikzpicture}}[x={_num(Fraction(scale))}cm,y={_num(Fraction(scale))}cm]"]
    for e in K.edges:
        opts = []
        if colors is not None:
            opts.append(f"color=c{colors[e] % len(PALETTE)}")
        opts.append("very thick" if e in middles else "thin")
        if traj_of.get(e, 0) % 2:
            opts.append("dashed")
        (xa, ya), (xb, yb) = layout[e.bottom], layout[e.top]
        lines.append(f"  \\draw[{','.join(opts)}] ({_num(xa)},{_num(ya)}) -- ({_num(xb)},{_num(yb)});")
    for a in range(K.n):
        x, y = layout[a]
        lines.append(f"  \\filldraw[fill=white] ({_num(x)},{_num(y)}) circle (2pt) node[right] {{\\tiny {a}}};")
    lines.append("\\end{tikzpicture}")
    if colors is not None:
        defs = [f"\\definecolor{{c{i}}}{{HTML}}{{{c[1:].upper()}}}" for i, c in enumerate(PALETTE)]
        lines = defs + lines
    return "\n".join(lines) + "\n"
