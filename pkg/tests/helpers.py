"""Shared fixtures and independent oracles for the test suite."""

import math
from fractions import Fraction

import numpy as np

from vornuc.geometry import BoundingBox, Point2
from vornuc.ingest import sites_random
from vornuc.voronoi import tessellate

UNIT = BoundingBox.from_bounds(0.0, 0.0, 1.0, 1.0)


def grid_sites(n):
    """Integer lattice ``(i, j)``, row-major in ``j`` then ``i``."""
    return [Point2(float(i), float(j)) for j in range(n) for i in range(n)]


def grid_mesh(n):
    return tessellate(grid_sites(n), BoundingBox.from_bounds(-0.5, -0.5, n - 0.5, n - 0.5))


def hex_sites(rows=5, cols=5):
    h = math.sqrt(3) / 2
    return [Point2(i + 0.5 * (j % 2), j * h) for j in range(rows) for i in range(cols)]


def hex_mesh(rows=5, cols=5):
    h = math.sqrt(3) / 2
    return tessellate(hex_sites(rows, cols), BoundingBox.from_bounds(-1.0, -1.0, cols + 0.5, (rows - 1) * h + 1.0))


HEX_CENTER = 12  # row 2, column 2 of the 5x5 patch


def mesh_size(seed):
    """Site count for acceptance mesh ``seed`` in 1..50, spread evenly over 20..500."""
    return 20 + round((seed - 1) * 480 / 49)


def random_sites(n, seed, bbox=UNIT):
    return sites_random(n, bbox, seed)


def frac_incircle(a, b, c, d):
    """Exact incircle determinant, positive when d is inside ccw (a, b, c)."""
    rows = []
    for p in (a, b, c):
        dx = Fraction(p[0]) - Fraction(d[0])
        dy = Fraction(p[1]) - Fraction(d[1])
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1))


def frac_orient(a, b, c):
    return ((Fraction(b[0]) - Fraction(a[0])) * (Fraction(c[1]) - Fraction(a[1]))
            - (Fraction(b[1]) - Fraction(a[1])) * (Fraction(c[0]) - Fraction(a[0])))


def delaunay_violations(sites, triangles):
    """Triangles with some other site strictly inside their circumcircle (brute force).

    Every (triangle, site) determinant is evaluated in floating point with a
    generous error bound; only results inside the bound are redone exactly.
    """
    S = np.asarray(sites, dtype=float)
    bad = []
    for t in triangles:
        a, b, c = (sites[k] for k in t)
        if frac_orient(a, b, c) < 0:
            a, b = b, a
        rows = []
        perm = 0.0
        for p in (a, b, c):
            dx = p[0] - S[:, 0]
            dy = p[1] - S[:, 1]
            rows.append((dx, dy, dx * dx + dy * dy))
        (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
        det = a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)
        perm = (np.abs(a1) * (np.abs(b2 * c3) + np.abs(b3 * c2)) + np.abs(a2) * (np.abs(b1 * c3) + np.abs(b3 * c1))
                + np.abs(a3) * (np.abs(b1 * c2) + np.abs(b2 * c1)))
        bound = 1e-12 * perm
        inside = det > bound
        unsure = np.abs(det) <= bound
        inside[list(t)] = False
        unsure[list(t)] = False
        for k in np.flatnonzero(unsure):
            if frac_incircle(a, b, c, sites[k]) > 0:
                inside[k] = True
        if inside.any():
            bad.append((t, int(np.flatnonzero(inside)[0])))
    return bad


def nearest_site_labels(sites, xs, ys):
    s = np.asarray(sites, dtype=float)
    d2 = (xs[..., None] - s[:, 0]) ** 2 + (ys[..., None] - s[:, 1]) ** 2
    return np.argmin(d2, axis=-1), np.sort(d2, axis=-1)


def point_region_labels(t, xs, ys):
    """Region index containing each point, or -1 when none does (polygon test per region)."""
    labels = np.full(xs.shape, -1)
    for i, r in enumerate(t.regions):
        v = np.asarray(r.vertices)
        inside = np.ones(xs.shape, dtype=bool)
        for k in range(len(v)):
            ax, ay = v[k]
            bx, by = v[(k + 1) % len(v)]
            inside &= (bx - ax) * (ys - ay) - (by - ay) * (xs - ax) >= 0
        labels[inside & (labels == -1)] = i
    return labels


def boundary_distance(t, xs, ys):
    """Distance from each point to the nearest region edge."""
    best = np.full(xs.shape, np.inf)
    for r in t.regions:
        for a, b in r.edges():
            ax, ay = a
            dx, dy = b[0] - ax, b[1] - ay
            L2 = dx * dx + dy * dy
            u = np.clip(((xs - ax) * dx + (ys - ay) * dy) / L2, 0, 1) if L2 > 0 else 0.0
            best = np.minimum(best, np.hypot(xs - ax - u * dx, ys - ay - u * dy))
    return best


def hull(points):
    """Andrew's monotone chain, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
