"""Incremental Delaunay triangulation (Bowyer-Watson with ghost triangles).

The hull is closed off by ghost triangles ``(u, v, GHOST)`` whose
"circumcircle" is the open half-plane outside hull edge ``u -> v`` plus the
open edge itself.  With exact predicates and the symbolic incircle
tie-break the output is independent of insertion order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateInput, TooFewSites
from .geometry import Point2, as_point
from .predicates import incircle_sos, orient2d

GHOST = -1

# sites closer than this fraction of the site-set extent are merged
DUPLICATE_TOL = 1e-9


@dataclass(frozen=True)
class Triangulation:
    """Counterclockwise triangles over ``sites``.

    ``neighbors[t][k]`` is the triangle across the edge opposite vertex
    ``k`` of triangle ``t``, or -1 on the hull.  ``source_index[i]`` is the
    caller's index of site ``i`` before duplicate merging.
    """

    sites: tuple
    triangles: tuple
    neighbors: tuple
    source_index: tuple = ()
    warnings: tuple = field(default=(), compare=False)

    def edges(self):
        out = set()
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                out.add((min(u, v), max(u, v)))
        return sorted(out)

    def site_neighbors(self):
        nb = [set() for _ in self.sites]
        for u, v in self.edges():
            nb[u].add(v)
            nb[v].add(u)
        return [sorted(s) for s in nb]


def dedupe_sites(sites, tol=DUPLICATE_TOL, scale=None):
    """Merge sites closer than ``tol * scale``; the lowest index survives.

    Returns ``(kept_points, kept_source_indices, warnings)``.
    """
    pts = [as_point(p) for p in sites]
    if not pts:
        return [], [], []
    if scale is None:
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        scale = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    r = tol * scale
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    order = sorted(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y, i))
    for k, i in enumerate(order):
        for j in order[k + 1:]:
            if pts[j].x - pts[i].x > r:
                break
            if math.dist(pts[i], pts[j]) <= r:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    kept = [i for i in range(len(pts)) if find(i) == i]
    warnings = [f"site {i} merged into site {find(i)} (closer than {r:.3g})"
                for i in range(len(pts)) if find(i) != i]
    return [pts[i] for i in kept], kept, warnings


def all_collinear(pts) -> bool:
    if len(pts) < 3:
        return True
    a = pts[0]
    b = next((p for p in pts[1:] if p != a), None)
    if b is None:
        return True
    return all(orient2d(a, b, p) == 0 for p in pts)


def _insertion_order(pts):
    """Snake order over a coarse grid so consecutive inserts are close."""
    n = len(pts)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    x0, y0 = min(xs), min(ys)
    w = (max(xs) - x0) or 1.0
    h = (max(ys) - y0) or 1.0
    cells = max(1, int(math.sqrt(n / 4.0)))

    def key(i):
        cx = min(cells - 1, int((pts[i].x - x0) / w * cells))
        cy = min(cells - 1, int((pts[i].y - y0) / h * cells))
        col = cx if cy % 2 == 0 else cells - 1 - cx
        return (cy, col, i)

    return sorted(range(n), key=key)


class _Mesh:
    def __init__(self, pts):
        self.pts = pts
        self.tris = {}
        self.edge = {}
        self._next = 0
        self.last = None

    def add(self, a, b, c):
        if a == GHOST:
            a, b, c = b, c, a
        elif b == GHOST:
            a, b, c = c, a, b
        t = self._next
        self._next += 1
        self.tris[t] = (a, b, c)
        for e in ((a, b), (b, c), (c, a)):
            self.edge[e] = t
        if c != GHOST:
            self.last = t
        return t

    def remove(self, t):
        a, b, c = self.tris.pop(t)
        for e in ((a, b), (b, c), (c, a)):
            if self.edge.get(e) == t:
                del self.edge[e]

    def conflicts(self, t, p):
        a, b, c = self.tris[t]
        pts = self.pts
        if c == GHOST:
            o = orient2d(pts[a], pts[b], pts[p])
            if o > 0:
                return True
            if o < 0:
                return False
            # collinear with the hull edge: conflict only strictly inside it
            u, v, q = pts[a], pts[b], pts[p]
            dot = (q.x - u.x) * (v.x - u.x) + (q.y - u.y) * (v.y - u.y)
            return 0 < dot < (v.x - u.x) ** 2 + (v.y - u.y) ** 2
        return incircle_sos(pts, a, b, c, p) > 0

    def locate(self, p):
        """Return some triangle in conflict with site ``p``."""
        pts = self.pts
        t = self.last
        q = pts[p]
        for _ in range(4 * len(self.tris) + 8):
            a, b, c = self.tris[t]
            moved = False
            for u, v in ((a, b), (b, c), (c, a)):
                if orient2d(pts[u], pts[v], q) < 0:
                    t = self.edge[(v, u)]
                    if self.tris[t][2] == GHOST:
                        return t
                    moved = True
                    break
            if not moved:
                if self.conflicts(t, p):
                    return t
                break
        for t in self.tris:  # pragma: no cover - exact predicates keep the walk valid
            if self.conflicts(t, p):
                return t
        raise RuntimeError("no conflicting triangle found")

    def insert(self, p):
        start = self.locate(p)
        cavity = {start}
        stack = [start]
        boundary = []
        rejected = set()
        while stack:
            t = stack.pop()
            a, b, c = self.tris[t]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = self.edge[(v, u)]
                if nb in cavity:
                    continue
                if nb not in rejected and self.conflicts(nb, p):
                    cavity.add(nb)
                    stack.append(nb)
                else:
                    rejected.add(nb)
                    boundary.append((u, v))
        for t in cavity:
            self.remove(t)
        for u, v in boundary:
            self.add(u, v, p)


def delaunay_triangulate(sites) -> Triangulation:
    """Delaunay triangulation of planar sites.

    Near-duplicate sites are merged first (lowest index kept).  Raises
    :class:`TooFewSites` below three distinct sites and
    :class:`DegenerateInput` when every site is collinear.
    """
    pts, source, warnings = dedupe_sites(sites)
    if len(pts) < 3:
        raise TooFewSites(f"need at least 3 distinct sites, got {len(pts)}")
    if all_collinear(pts):
        raise DegenerateInput("all sites are collinear")

    order = _insertion_order(pts)
    i0, i1 = order[0], order[1]
    k = next(i for i in order[2:] if orient2d(pts[i0], pts[i1], pts[i]) != 0)
    if orient2d(pts[i0], pts[i1], pts[k]) < 0:
        i0, i1 = i1, i0
    mesh = _Mesh(pts)
    mesh.add(i0, i1, k)
    mesh.add(i1, i0, GHOST)
    mesh.add(k, i1, GHOST)
    mesh.add(i0, k, GHOST)
    for i in order:
        if i not in (i0, i1, k):
            mesh.insert(i)

    solid = []
    for a, b, c in mesh.tris.values():
        if c == GHOST:
            continue
        r = min(range(3), key=lambda j: (a, b, c)[j])
        solid.append(((a, b, c)[r], (a, b, c)[(r + 1) % 3], (a, b, c)[(r + 2) % 3]))
    solid.sort()
    index = {t: n for n, t in enumerate(solid)}
    by_edge = {}
    for n, (a, b, c) in enumerate(solid):
        for e in ((a, b), (b, c), (c, a)):
            by_edge[e] = n
    neighbors = []
    for a, b, c in solid:
        # opposite vertex k -> edge not containing it
        neighbors.append(tuple(by_edge.get(e, -1) for e in ((c, b), (a, c), (b, a))))
    assert len(index) == len(solid)
    return Triangulation(tuple(pts), tuple(solid), tuple(neighbors), tuple(source),
                         tuple(warnings))
