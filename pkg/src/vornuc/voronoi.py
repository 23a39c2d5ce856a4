"""Bounded Voronoi tessellations.

Two constructions share one contract.  :func:`voronoi_from_delaunay` clips
the bounding box by the bisectors of each site's Delaunay neighbours only;
:func:`voronoi_bruteforce` clips it by the bisector of every other site, the
literal definition of a Voronoi region, and serves as the oracle.

Clipping happens in normalized coordinates: the box is translated to the
origin and divided by its longer side, so it fits in the unit square with
its aspect ratio (and therefore Euclidean distances) preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .delaunay import Triangulation, all_collinear, dedupe_sites, delaunay_triangulate
from .errors import IndexOutOfRange, SiteOutsideBox
from .geometry import BoundingBox, ConvexPolygon, Point2, as_point, clip_halfplane, merge_close

# normalized units
LENGTH_TOL = 1e-9
CLIP_EPS = 1e-13
MERGE_TOL = 1e-11

_BOX_LABELS = (-1, -2, -3, -4)  # bottom, right, top, left


@dataclass(frozen=True)
class SharedEdge:
    a: Point2
    b: Point2
    length: float

    @property
    def midpoint(self):
        return Point2(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))


@dataclass(frozen=True, eq=False)
class Tessellation:
    """Sites, their clipped regions and the positive-length contact relation.

    ``adjacency[i][j]`` holds the boundary segment shared by regions ``i``
    and ``j``.  A tessellation built here stores each pair in both
    directions with the same :class:`SharedEdge` object; the constructor
    itself does not enforce symmetry so that damaged meshes can be loaded
    and diagnosed.
    """

    sites: tuple
    regions: tuple
    bbox: BoundingBox
    adjacency: dict
    source_index: tuple = ()
    warnings: tuple = field(default=())

    def __len__(self):
        return len(self.sites)

    @property
    def scale(self):
        return max(self.bbox.width, self.bbox.height)

    @property
    def length_tol(self):
        return LENGTH_TOL * self.scale

    def check_index(self, i):
        if not (isinstance(i, (int, np.integer)) and 0 <= i < len(self.sites)):
            raise IndexOutOfRange(f"region index {i!r} out of range 0..{len(self.sites) - 1}")

    def neighbors(self, i):
        self.check_index(i)
        return tuple(sorted(self.adjacency.get(i, {})))

    def shared_edge(self, i, j):
        e = self.adjacency.get(i, {}).get(j)
        if e is None:
            e = self.adjacency.get(j, {}).get(i)
        return e

    def adjacency_pairs(self):
        """Unordered stored pairs ``(i, j, SharedEdge)`` with ``i < j``."""
        seen = set()
        out = []
        for i in sorted(self.adjacency):
            for j in sorted(self.adjacency[i]):
                key = (min(i, j), max(i, j))
                if key not in seen:
                    seen.add(key)
                    out.append((key[0], key[1], self.shared_edge(*key)))
        return out

    @cached_property
    def neighbor_sets(self):
        return [frozenset(self.adjacency.get(i, {})) for i in range(len(self.sites))]

    def check_invariants(self, rel_area_tol=1e-6):
        """List of invariant violations (empty when the mesh is sound)."""
        from .geometry import is_convex

        problems = []
        tol = self.length_tol
        for i, (s, r) in enumerate(zip(self.sites, self.regions)):
            if not r.contains(s, tol=tol):
                problems.append(f"region {i} does not contain its site")
            if not is_convex(r):
                problems.append(f"region {i} is not convex")
        total = sum(r.area for r in self.regions)
        if abs(total - self.bbox.area) > rel_area_tol * self.bbox.area:
            problems.append(f"region areas sum to {total!r}, box area {self.bbox.area!r}")
        for i, nbrs in self.adjacency.items():
            for j, e in nbrs.items():
                if i == j:
                    problems.append(f"region {i} stored as adjacent to itself")
                back = self.adjacency.get(j, {}).get(i)
                if back is None:
                    problems.append(f"adjacency ({i}, {j}) stored without ({j}, {i})")
                elif back.length != e.length:
                    problems.append(f"adjacency ({i}, {j}) lengths differ")
                if e.length <= tol:
                    problems.append(f"adjacency ({i}, {j}) below length tolerance")
        return problems


class _Frame:
    """Map between user coordinates and the normalized clipping frame."""

    def __init__(self, bbox):
        self.ox, self.oy = bbox.min
        self.s = max(bbox.width, bbox.height)
        self.box = (0.0, 0.0, bbox.width / self.s, bbox.height / self.s)

    def fwd(self, p):
        return ((p[0] - self.ox) / self.s, (p[1] - self.oy) / self.s)

    def back(self, p):
        return Point2(self.ox + p[0] * self.s, self.oy + p[1] * self.s)


def _box_loop(frame):
    x0, y0, x1, y1 = frame.box
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)], list(_BOX_LABELS)


def _clip_bisector(verts, labels, s, q, label):
    dx, dy = q[0] - s[0], q[1] - s[1]
    L = math.hypot(dx, dy)
    a, b = dx / L, dy / L
    mx, my = 0.5 * (s[0] + q[0]), 0.5 * (s[1] + q[1])
    # keep points no farther from q's side than the bisector
    verts, labels = clip_halfplane(verts, labels, a, b, -(a * mx + b * my), CLIP_EPS, label)
    return merge_close(verts, labels, MERGE_TOL)


def _check_inside(sites, bbox):
    for i, s in enumerate(sites):
        if not bbox.contains(s):
            raise SiteOutsideBox(f"site {i} at {tuple(s)} lies outside {bbox.bounds}")


def _assemble(sites, loops, bbox, frame, source_index=(), warnings=()):
    """Build the tessellation from labelled normalized loops."""
    regions = []
    edge_len = [dict() for _ in sites]
    edge_seg = [dict() for _ in sites]
    for i, (verts, labels) in enumerate(loops):
        regions.append(ConvexPolygon([frame.back(v) for v in verts]))
        n = len(verts)
        for k in range(n):
            j = labels[k]
            if j is None or j < 0:
                continue
            a, b = verts[k], verts[(k + 1) % n]
            ln = math.dist(a, b)
            if ln > edge_len[i].get(j, -1.0):
                edge_len[i][j] = ln
                edge_seg[i][j] = (a, b)
    adjacency = {i: {} for i in range(len(sites))}
    pairs = {(min(i, j), max(i, j)) for i in range(len(sites)) for j in edge_len[i]}
    for lo, hi in sorted(pairs):
        # measure from the lower-index region when it sees the edge
        src, other = (lo, hi) if hi in edge_len[lo] else (hi, lo)
        ln = edge_len[src][other]
        if ln <= LENGTH_TOL:
            continue
        a, b = edge_seg[src][other]
        e = SharedEdge(frame.back(a), frame.back(b), ln * frame.s)
        adjacency[lo][hi] = e
        adjacency[hi][lo] = e
    return Tessellation(tuple(sites), tuple(regions), bbox, adjacency,
                        tuple(source_index), tuple(warnings))


def voronoi_from_delaunay(tri: Triangulation, bbox: BoundingBox) -> Tessellation:
    """Voronoi regions clipped to ``bbox`` using Delaunay neighbours as the only competitors."""
    sites = [as_point(s) for s in tri.sites]
    _check_inside(sites, bbox)
    frame = _Frame(bbox)
    norm = [frame.fwd(s) for s in sites]
    loops = []
    for i, nbrs in enumerate(tri.site_neighbors()):
        verts, labels = _box_loop(frame)
        for j in nbrs:
            verts, labels = _clip_bisector(verts, labels, norm[i], norm[j], j)
        loops.append((verts, labels))
    return _assemble(sites, loops, bbox, frame, tri.source_index or range(len(sites)),
                     tri.warnings)


def voronoi_bruteforce(sites, bbox: BoundingBox, *, _source_index=None, _warnings=()) -> Tessellation:
    """Each region is the box intersected with the half-plane toward every other site.

    Sites are taken as given (no duplicate merging).  Competitors are
    visited nearest first; a site farther than twice the current region
    radius cannot cut the region, which ends the scan.
    """
    sites = [as_point(s) for s in sites]
    if not sites:
        from .errors import TooFewSites
        raise TooFewSites("need at least one site")
    _check_inside(sites, bbox)
    frame = _Frame(bbox)
    norm = np.array([frame.fwd(s) for s in sites], dtype=float)
    loops = []
    for i in range(len(sites)):
        verts, labels = _box_loop(frame)
        d = np.hypot(norm[:, 0] - norm[i, 0], norm[:, 1] - norm[i, 1])
        order = np.argsort(d, kind="stable")
        si = tuple(norm[i])
        radius = max(math.dist(si, v) for v in verts)
        for j in order:
            j = int(j)
            if j == i:
                continue
            if d[j] > 2.0 * radius * (1 + 1e-12):
                break
            verts, labels = _clip_bisector(verts, labels, si, tuple(norm[j]), j)
            radius = max(math.dist(si, v) for v in verts)
        loops.append((verts, labels))
    src = _source_index if _source_index is not None else range(len(sites))
    return _assemble(sites, loops, bbox, frame, src, _warnings)


def tessellate(sites, bbox: BoundingBox) -> Tessellation:
    """Merge near-duplicate sites and build the tessellation.

    One or two distinct sites, or all-collinear sites, have no Delaunay
    dual and go through the brute-force construction.
    """
    bbox = bbox if isinstance(bbox, BoundingBox) else BoundingBox.from_bounds(*bbox)
    pts = [as_point(s) for s in sites]
    if not pts:
        from .errors import TooFewSites
        raise TooFewSites("need at least one site")
    _check_inside(pts, bbox)
    kept, source, warnings = dedupe_sites(pts, scale=max(bbox.width, bbox.height))
    if len(kept) < 3 or all_collinear(kept):
        return voronoi_bruteforce(kept, bbox, _source_index=source, _warnings=warnings)
    tri = delaunay_triangulate(kept)
    # the triangulation re-indexes nothing once duplicates are gone
    tri = Triangulation(tri.sites, tri.triangles, tri.neighbors, tuple(source), tuple(warnings))
    return voronoi_from_delaunay(tri, bbox)
