"""Strong and descriptive proximity between regions of a tessellation."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .descriptors import FeatureVector, point_descriptor, region_descriptor
from .errors import SchemaMismatch

# uniform boundary samples per region for pointwise matching
BOUNDARY_SAMPLES = 32


@dataclass(frozen=True)
class MatchTolerance:
    scalar_rel: float = 0.05
    angle_abs: float = math.radians(10.0)
    count_abs: float = 0

    def __post_init__(self):
        if not self.scalar_rel >= 0:
            raise ValueError("scalar_rel must be >= 0")
        if not 0 <= self.angle_abs <= math.pi / 2:
            raise ValueError("angle_abs must lie in [0, pi/2]")
        if not self.count_abs >= 0:
            raise ValueError("count_abs must be >= 0")

    @classmethod
    def exact(cls):
        return cls(0.0, 0.0, 0)

    @classmethod
    def unbounded(cls):
        return cls(math.inf, math.pi / 2, math.inf)


DEFAULT_TOLERANCE = MatchTolerance()


def angle_distance(a, b):
    """Distance between undirected orientations (period pi)."""
    d = math.fmod(abs(a - b), math.pi)
    return min(d, math.pi - d)


def feature_match(a: FeatureVector, b: FeatureVector, tol: MatchTolerance = DEFAULT_TOLERANCE) -> bool:
    if a.schema != b.schema:
        raise SchemaMismatch(f"cannot compare {a.schema} with {b.schema}")
    for va, vb, ang, cnt in zip(a.values, b.values, a.angular_mask, a.count_mask):
        if ang:
            if angle_distance(va, vb) > tol.angle_abs:
                return False
        elif cnt:
            if abs(va - vb) > tol.count_abs:
                return False
        elif abs(va - vb) > tol.scalar_rel * max(abs(va), abs(vb), 1.0):
            return False
    return True


def match_matrix(A, B, angular, counts, tol: MatchTolerance):
    """Vectorized :func:`feature_match` between rows of ``A`` and rows of ``B``."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    out = np.ones((A.shape[0], B.shape[0]), dtype=bool)
    for k in range(A.shape[1]):
        a = A[:, k][:, None]
        b = B[:, k][None, :]
        diff = np.abs(a - b)
        if angular[k]:
            d = np.fmod(diff, math.pi)
            ok = np.minimum(d, math.pi - d) <= tol.angle_abs
        elif counts[k]:
            ok = diff <= tol.count_abs
        else:
            bound = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
            with np.errstate(invalid="ignore"):
                ok = diff <= tol.scalar_rel * bound
        out &= ok
    return out


def strongly_near(t, i, j) -> bool:
    """Regions share a positive-length boundary segment, or are the same region."""
    t.check_index(i)
    t.check_index(j)
    return i == j or j in t.adjacency.get(i, ())


def region_features(t, i, include_location=False) -> FeatureVector:
    return _cache(t).region_fv(t, i, bool(include_location))


def descriptively_near_regions(t, i, j, tol: MatchTolerance = DEFAULT_TOLERANCE,
                               include_location=False) -> bool:
    """Region descriptions match; centroids are ignored unless ``include_location``."""
    t.check_index(i)
    t.check_index(j)
    return feature_match(region_features(t, i, include_location),
                         region_features(t, j, include_location), tol)


def descriptive_intersection(A, B, describe=None, tol: MatchTolerance = DEFAULT_TOLERANCE,
                             related=None) -> set:
    """Elements of ``A | B`` whose description matches one in ``A`` and one in ``B``.

    ``describe`` maps an element to its :class:`FeatureVector`.  Callers
    holding a precomputed match relation pass ``related`` instead: a
    mapping from each element to the set of elements it matches.
    """
    A, B = set(A), set(B)
    if related is not None:
        return {x for x in A | B if not A.isdisjoint(related[x]) and not B.isdisjoint(related[x])}
    desc = {x: describe(x) for x in A | B}
    return {x for x in A | B
            if any(feature_match(desc[x], desc[a], tol) for a in A)
            and any(feature_match(desc[x], desc[b], tol) for b in B)}


def boundary_samples(t, i):
    """Vertices, shared-segment midpoints and evenly spaced perimeter points of region ``i``."""
    r = t.regions[i]
    pts = list(r.vertices)
    for j in sorted(t.neighbor_sets[i] | _reverse_neighbors(t)[i]):
        e = t.shared_edge(i, j)
        if e is not None:
            pts.append(e.midpoint)
    edges = r.edges()
    per = r.perimeter()
    if per > 0:
        cum = np.cumsum([0.0] + [math.dist(a, b) for a, b in edges])
        for s in np.arange(BOUNDARY_SAMPLES) * (per / BOUNDARY_SAMPLES):
            k = min(int(np.searchsorted(cum, s, side="right")) - 1, len(edges) - 1)
            a, b = edges[k]
            u = (s - cum[k]) / max(cum[k + 1] - cum[k], 1e-300)
            pts.append((a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])))
    return pts


def point_samples(t, i, img=None):
    """Array of point descriptors for region ``i`` plus the angular/count masks."""
    return _cache(t).samples(t, i, img)


def snd_pointwise(t, i, j, img=None, tol: MatchTolerance = DEFAULT_TOLERANCE) -> bool:
    """Some sampled boundary point of ``i`` and some of ``j`` have matching descriptions."""
    t.check_index(i)
    t.check_index(j)
    Fi, ang, cnt = point_samples(t, i, img)
    Fj, _, _ = point_samples(t, j, img)
    return bool(match_matrix(Fi, Fj, ang, cnt, tol).any())


def pointwise_candidates(t, tol: MatchTolerance):
    """Region pairs ``i <= j`` whose samples could match under location-inclusive descriptions.

    Coordinates can only match within ``scalar_rel * max(|coord|, 1)``, so
    regions whose padded bounding boxes are disjoint are skipped.
    """
    n = len(t.sites)
    if math.isinf(tol.scalar_rel):
        return [(i, j) for i in range(n) for j in range(i, n)]
    b = np.array([r.bounds() for r in t.regions])
    mag = max(1.0, float(np.abs(b).max()))
    pad = tol.scalar_rel * mag * (1 + 1e-9) + 1e-12 * mag
    lo = b[:, :2] - pad
    hi = b[:, 2:] + pad
    ov = ((lo[:, None, 0] <= hi[None, :, 0]) & (lo[None, :, 0] <= hi[:, None, 0])
          & (lo[:, None, 1] <= hi[None, :, 1]) & (lo[None, :, 1] <= hi[:, None, 1]))
    ii, jj = np.nonzero(np.triu(ov))
    return list(zip(ii.tolist(), jj.tolist()))


class _TessCache:
    def __init__(self):
        self._fv = {}
        self._samples = {}
        self.reverse = None
        self.token = next(_TOKENS)
        self.relations = {}

    def region_fv(self, t, i, include_location):
        fv = self._fv.get((i, include_location))
        if fv is None:
            fv = region_descriptor(t.regions[i])
            if not include_location:
                fv = fv.location_free()
            self._fv[(i, include_location)] = fv
        return fv

    def samples(self, t, i, img):
        key = (i, id(img))
        hit = self._samples.get(key)
        if hit is None:
            bbox = t.bbox if img is not None else None
            fvs = [point_descriptor(p, img, bbox) for p in boundary_samples(t, i)]
            F = np.array([fv.values for fv in fvs], dtype=float)
            # holding img keeps its id from being reused while cached
            hit = self._samples[key] = (F, fvs[0].angular_mask, fvs[0].count_mask, img)
        return hit[:3]


_TOKENS = itertools.count(1)


def _cache(t):
    # lives in the instance dict so it dies with the tessellation
    try:
        return t.__dict__["_proximity_cache"]
    except KeyError:
        c = t.__dict__["_proximity_cache"] = _TessCache()
        return c


def _reverse_neighbors(t):
    c = _cache(t)
    if c.reverse is None:
        rev = [set() for _ in t.sites]
        for i, nbrs in t.adjacency.items():
            for j in nbrs:
                if 0 <= j < len(rev):
                    rev[j].add(i)
        c.reverse = [frozenset(s) for s in rev]
    return c.reverse
