"""Planar primitives: points, boxes, convex polygons and half-plane clipping."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import GeometryError

# turn tolerance expressed as sin(angle) between consecutive edges
TURN_TOL = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


def as_point(p) -> Point2:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate {p!r}")
    return Point2(x, y)


@dataclass(frozen=True)
class BoundingBox:
    min: Point2
    max: Point2

    def __post_init__(self):
        lo, hi = as_point(self.min), as_point(self.max)
        if not (lo.x < hi.x and lo.y < hi.y):
            raise GeometryError(f"bounding box {lo}..{hi} has no area")
        object.__setattr__(self, "min", lo)
        object.__setattr__(self, "max", hi)

    @classmethod
    def from_bounds(cls, xmin, ymin, xmax, ymax):
        return cls(Point2(xmin, ymin), Point2(xmax, ymax))

    @property
    def bounds(self):
        return (self.min.x, self.min.y, self.max.x, self.max.y)

    @property
    def width(self):
        return self.max.x - self.min.x

    @property
    def height(self):
        return self.max.y - self.min.y

    @property
    def area(self):
        return self.width * self.height

    def contains(self, p) -> bool:
        return (self.min.x <= p[0] <= self.max.x
                and self.min.y <= p[1] <= self.max.y)

    def corners(self):
        """Counterclockwise corners starting at the lower left."""
        x0, y0, x1, y1 = self.bounds
        return (Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1))

    def polygon(self) -> "ConvexPolygon":
        return ConvexPolygon(self.corners())


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex vertex loop in counterclockwise order.

    Zero vertices is the empty set, one vertex a point and two vertices a
    segment; all three count as convex.
    """

    vertices: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(as_point(v) for v in self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def is_empty(self):
        return not self.vertices

    @property
    def signed_area(self):
        return signed_area(self.vertices)

    @property
    def area(self):
        return abs(self.signed_area)

    def edges(self):
        v = self.vertices
        n = len(v)
        if n < 2:
            return []
        if n == 2:
            return [(v[0], v[1])]
        return [(v[k], v[(k + 1) % n]) for k in range(n)]

    def perimeter(self):
        return sum(math.dist(a, b) for a, b in self.edges())

    def centroid(self) -> Point2:
        v = self.vertices
        if len(v) < 3:
            if not v:
                raise GeometryError("empty polygon has no centroid")
            return Point2(sum(p.x for p in v) / len(v), sum(p.y for p in v) / len(v))
        # shift to the first vertex to limit cancellation
        ox, oy = v[0]
        a2 = cx = cy = 0.0
        for k in range(len(v)):
            x0, y0 = v[k].x - ox, v[k].y - oy
            x1, y1 = v[(k + 1) % len(v)].x - ox, v[(k + 1) % len(v)].y - oy
            c = x0 * y1 - x1 * y0
            a2 += c
            cx += (x0 + x1) * c
            cy += (y0 + y1) * c
        return Point2(ox + cx / (3.0 * a2), oy + cy / (3.0 * a2))

    def diameter(self):
        v = self.vertices
        return max((math.dist(v[i], v[j]) for i in range(len(v)) for j in range(i + 1, len(v))),
                   default=0.0)

    def bounds(self):
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def contains(self, p, tol=0.0) -> bool:
        """Boundary-inclusive point membership (``tol`` widens the boundary)."""
        v = self.vertices
        if len(v) < 3:
            return any(math.dist(p, q) <= tol for q in v) if len(v) == 1 else (
                len(v) == 2 and _point_segment_distance(p, v[0], v[1]) <= tol)
        for a, b in self.edges():
            ex, ey = b.x - a.x, b.y - a.y
            cross = ex * (p[1] - a.y) - ey * (p[0] - a.x)
            if cross < -tol * math.hypot(ex, ey):
                return False
        return True


def signed_area(pts: Sequence) -> float:
    n = len(pts)
    if n < 3:
        return 0.0
    ox, oy = pts[0][0], pts[0][1]
    s = 0.0
    for k in range(1, n - 1):
        ax, ay = pts[k][0] - ox, pts[k][1] - oy
        bx, by = pts[k + 1][0] - ox, pts[k + 1][1] - oy
        s += ax * by - bx * ay
    return 0.5 * s


def _point_segment_distance(p, a, b):
    ex, ey = b[0] - a[0], b[1] - a[1]
    L2 = ex * ex + ey * ey
    if L2 == 0.0:
        return math.dist(p, a)
    t = max(0.0, min(1.0, ((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / L2))
    return math.dist(p, (a[0] + t * ex, a[1] + t * ey))


def is_convex(poly) -> bool:
    """True iff the vertex loop turns consistently one way and winds once.

    Fewer than three vertices are convex by definition.
    """
    v = [as_point(p) for p in (poly.vertices if isinstance(poly, ConvexPolygon) else poly)]
    n = len(v)
    if n <= 2:
        return True
    pos = neg = False
    winding = 0.0
    for k in range(n):
        a, b, c = v[k - 1], v[k], v[(k + 1) % n]
        e1 = (b.x - a.x, b.y - a.y)
        e2 = (c.x - b.x, c.y - b.y)
        l1, l2 = math.hypot(*e1), math.hypot(*e2)
        if l1 == 0.0 or l2 == 0.0:
            return False
        s = (e1[0] * e2[1] - e1[1] * e2[0]) / (l1 * l2)
        if s > TURN_TOL:
            pos = True
        elif s < -TURN_TOL:
            neg = True
        if pos and neg:
            return False
        winding += math.atan2(e1[0] * e2[1] - e1[1] * e2[0], e1[0] * e2[0] + e1[1] * e2[1])
    # a star polygon turns one way but winds more than once
    return abs(abs(winding) - 2.0 * math.pi) < 1e-6


def dedupe_loop(pts, tol):
    """Drop consecutive (cyclic) vertices closer than ``tol``."""
    out = []
    for p in pts:
        if not out or math.dist(out[-1], p) > tol:
            out.append(p)
    while len(out) > 1 and math.dist(out[0], out[-1]) <= tol:
        out.pop()
    return out


def clip_halfplane(verts, labels, a, b, c, eps, new_label=None):
    """Clip a convex loop to ``a*x + b*y + c <= 0``.

    ``(a, b)`` must be a unit normal so that ``eps`` is a distance.  Each
    vertex carries the label of the edge leaving it; edges created along the
    clip line receive ``new_label``.  Returns the clipped ``(verts, labels)``.
    """
    n = len(verts)
    if n == 0:
        return [], []
    f = [a * p[0] + b * p[1] + c for p in verts]
    if all(v <= eps for v in f):
        return list(verts), list(labels)
    if all(v > eps for v in f):
        return [], []
    out_v, out_l = [], []
    for k in range(n):
        cur, nxt = verts[k], verts[(k + 1) % n]
        fc, fn = f[k], f[(k + 1) % n]
        cur_in, nxt_in = fc <= eps, fn <= eps
        if cur_in:
            if nxt_in:
                out_v.append(cur)
                out_l.append(labels[k])
            elif abs(fc) <= eps:
                out_v.append(cur)
                out_l.append(new_label)
            else:
                t = fc / (fc - fn)
                out_v.append(cur)
                out_l.append(labels[k])
                out_v.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
                out_l.append(new_label)
        elif nxt_in and abs(fn) > eps:
            t = fc / (fc - fn)
            out_v.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
            out_l.append(labels[k])
    return out_v, out_l


def merge_close(verts, labels, tol):
    """Collapse consecutive near-coincident vertices, keeping the later edge label."""
    vs, ls = list(verts), list(labels)
    changed = True
    while changed and len(vs) > 1:
        changed = False
        for k in range(len(vs)):
            j = (k + 1) % len(vs)
            if math.dist(vs[k], vs[j]) <= tol:
                # vertex k is redundant; the surviving vertex j keeps its own label
                del vs[k]
                del ls[k]
                changed = True
                break
    return vs, ls


def _line_through(p, q):
    """Unit-normal line ``a*x + b*y + c = 0`` with the left of p->q negative."""
    ex, ey = q[0] - p[0], q[1] - p[1]
    L = math.hypot(ex, ey)
    a, b = ey / L, -ex / L
    return a, b, -(a * p[0] + b * p[1])


def _collapse(pts, eps):
    """Reduce a clipped loop to its true dimension (polygon, segment, point)."""
    pts = dedupe_loop(pts, eps)
    if len(pts) >= 3:
        diam = max(math.dist(p, q) for p in pts for q in pts)
        if abs(signed_area(pts)) > eps * diam:
            if signed_area(pts) < 0:
                pts = pts[::-1]
            return ConvexPolygon(pts)
    if len(pts) >= 2:
        best = max(((p, q) for p in pts for q in pts), key=lambda pq: math.dist(*pq))
        if math.dist(*best) > eps:
            return ConvexPolygon(sorted(best))
        return ConvexPolygon(pts[:1])
    return ConvexPolygon(pts)


def _segment_intersection(s, t, eps):
    """Intersection of two closed segments (each a 1- or 2-vertex list)."""
    if len(s) == 1 and len(t) == 1:
        return ConvexPolygon(s) if math.dist(s[0], t[0]) <= eps else ConvexPolygon()
    if len(s) == 1:
        s, t = t, s
    if len(t) == 1:
        return ConvexPolygon(t) if _point_segment_distance(t[0], *s) <= eps else ConvexPolygon()
    p, q = s
    a, b, c = _line_through(p, q)
    if all(abs(a * r[0] + b * r[1] + c) <= eps for r in t):
        # collinear: overlap of parameter intervals along p->q
        ex, ey = q[0] - p[0], q[1] - p[1]
        L2 = ex * ex + ey * ey

        def par(r):
            return ((r[0] - p[0]) * ex + (r[1] - p[1]) * ey) / L2

        lo = max(0.0, min(par(t[0]), par(t[1])))
        hi = min(1.0, max(par(t[0]), par(t[1])))
        if hi < lo - eps / math.sqrt(L2):
            return ConvexPolygon()
        hi = max(hi, lo)
        pts = [(p[0] + lo * ex, p[1] + lo * ey), (p[0] + hi * ex, p[1] + hi * ey)]
        return _collapse(pts, eps)
    f0 = a * t[0][0] + b * t[0][1] + c
    f1 = a * t[1][0] + b * t[1][1] + c
    if (f0 > eps and f1 > eps) or (f0 < -eps and f1 < -eps):
        return ConvexPolygon()
    u = f0 / (f0 - f1) if f0 != f1 else 0.0
    r = (t[0][0] + u * (t[1][0] - t[0][0]), t[0][1] + u * (t[1][1] - t[0][1]))
    if _point_segment_distance(r, p, q) <= eps:
        return ConvexPolygon([r])
    return ConvexPolygon()


def convex_intersection(a, b, eps=None) -> ConvexPolygon:
    """Intersection of two convex sets given as vertex loops.

    The result may be empty, a single point, a two-vertex segment, or a
    counterclockwise polygon.  ``eps`` defaults to ``1e-12`` times the
    combined extent of the inputs.
    """
    va = [as_point(p) for p in (a.vertices if isinstance(a, ConvexPolygon) else a)]
    vb = [as_point(p) for p in (b.vertices if isinstance(b, ConvexPolygon) else b)]
    if not va or not vb:
        return ConvexPolygon()
    if eps is None:
        coords = [abs(c) for p in va + vb for c in p]
        eps = 1e-12 * max(1.0, max(coords))
    if len(va) < 3 and len(vb) >= 3:
        va, vb = vb, va
    if len(vb) < 3:
        if len(va) < 3:
            return _segment_intersection(va, vb, eps)
        return _clip_small(va, vb, eps)
    if signed_area(va) < 0:
        va = va[::-1]
    if signed_area(vb) < 0:
        vb = vb[::-1]
    verts = list(va)
    labels = [None] * len(verts)
    for k in range(len(vb)):
        la, lb, lc = _line_through(vb[k], vb[(k + 1) % len(vb)])
        # interior of a ccw loop is to the left, where the line value is negative
        verts, labels = clip_halfplane(verts, labels, la, lb, lc, eps)
        if not verts:
            return ConvexPolygon()
    return _collapse(verts, eps)


def _clip_small(poly, small, eps):
    """Intersect a point or segment with a proper convex polygon."""
    if signed_area(poly) < 0:
        poly = poly[::-1]
    if len(small) == 1:
        inside = ConvexPolygon(poly).contains(small[0], tol=eps)
        return ConvexPolygon(small) if inside else ConvexPolygon()
    p, q = small
    # exact parameter range, and the range widened by eps that decides emptiness
    lo, hi = 0.0, 1.0
    wlo, whi = 0.0, 1.0
    dx, dy = q[0] - p[0], q[1] - p[1]
    for k in range(len(poly)):
        la, lb, lc = _line_through(poly[k], poly[(k + 1) % len(poly)])
        fp = la * p[0] + lb * p[1] + lc
        fd = la * dx + lb * dy
        if abs(fd) < 1e-300:
            if fp > eps:
                return ConvexPolygon()
            continue
        if fd > 0:
            hi = min(hi, -fp / fd)
            whi = min(whi, (eps - fp) / fd)
        else:
            lo = max(lo, -fp / fd)
            wlo = max(wlo, (eps - fp) / fd)
    if wlo > whi:
        return ConvexPolygon()
    if lo > hi:
        lo = hi = 0.5 * (wlo + whi)
    pts = [(p[0] + lo * dx, p[1] + lo * dy), (p[0] + hi * dx, p[1] + hi * dy)]
    return _collapse(pts, eps)


def polygons_match(a, b, tol) -> bool:
    """Same vertex cycle within ``tol`` per vertex, up to rotation of the start."""
    va, vb = list(a), list(b)
    if len(va) != len(vb):
        return False
    if not va:
        return True
    off = min(range(len(vb)), key=lambda k: math.dist(va[0], vb[k]))
    n = len(va)
    return all(math.dist(va[k], vb[(k + off) % n]) <= tol for k in range(n))
