"""Feature vectors for points and regions.

Point descriptions are ``(x, y)`` or, with an image, ``(x, y, phi)`` where
``phi`` is the Sobel gradient orientation of the pixel under the point.
Region descriptions are ``(centroid_x, centroid_y, area, diameter,
edge_count)``.  Orientations are undirected, folded into ``[0, pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePolygon, OutOfImageBounds, StencilOutOfBounds
from .geometry import BoundingBox, ConvexPolygon, as_point

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=float)
SOBEL_Y = SOBEL_X.T.copy()

REGION_SCHEMA = ("centroid_x", "centroid_y", "area", "diameter", "edge_count")
LOCATION_FEATURES = frozenset({"x", "y", "centroid_x", "centroid_y"})
COUNT_FEATURES = frozenset({"edge_count"})
ANGLE_FEATURES = frozenset({"phi"})


@dataclass(frozen=True)
class FeatureVector:
    values: tuple
    schema: tuple
    angular_mask: tuple = None
    count_mask: tuple = None

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        schema = tuple(self.schema)
        if len(values) != len(schema):
            raise ValueError(f"{len(values)} values for {len(schema)} schema entries")
        angular = self.angular_mask
        if angular is None:
            angular = tuple(name in ANGLE_FEATURES for name in schema)
        counts = self.count_mask
        if counts is None:
            counts = tuple(name in COUNT_FEATURES for name in schema)
        values = tuple(fold_angle(v) if a else v for v, a in zip(values, angular))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "angular_mask", tuple(bool(a) for a in angular))
        object.__setattr__(self, "count_mask", tuple(bool(c) for c in counts))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, name):
        return self.values[self.schema.index(name)]

    def select(self, names):
        idx = [self.schema.index(n) for n in names]
        return FeatureVector(tuple(self.values[i] for i in idx), tuple(names),
                             tuple(self.angular_mask[i] for i in idx),
                             tuple(self.count_mask[i] for i in idx))

    def location_free(self):
        return self.select([n for n in self.schema if n not in LOCATION_FEATURES])


def fold_angle(a):
    """Fold an angle in radians onto the undirected range [0, pi)."""
    a = math.fmod(a, math.pi)
    if a < 0:
        a += math.pi
    if a >= math.pi:
        a = 0.0
    return a


class GrayImage:
    """Row-major 8-bit grayscale raster, ``pixels[y, x]``."""

    def __init__(self, width, height, pixels):
        arr = np.asarray(pixels, dtype=float)
        if width <= 0 or height <= 0:
            raise ValueError("image dimensions must be positive")
        if arr.size != width * height:
            raise ValueError(f"{arr.size} pixels for a {width}x{height} image")
        arr = arr.reshape(height, width)
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("pixel intensities must lie in [0, 255]")
        self.width = int(width)
        self.height = int(height)
        self.pixels = arr
        self.pixels.setflags(write=False)

    def __eq__(self, other):
        return (isinstance(other, GrayImage) and self.width == other.width
                and self.height == other.height and np.array_equal(self.pixels, other.pixels))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"

    @property
    def bbox(self):
        return BoundingBox.from_bounds(0.0, 0.0, float(self.width), float(self.height))

    @classmethod
    def from_function(cls, width, height, fn):
        ys, xs = np.mgrid[0:height, 0:width]
        return cls(width, height, fn(xs, ys))


def sobel(img: GrayImage):
    """Sobel responses ``(gx, gy)`` over the interior; borders are zero."""
    p = img.pixels
    gx = np.zeros_like(p)
    gy = np.zeros_like(p)
    if img.width < 3 or img.height < 3:
        return gx, gy
    for dy in range(3):
        for dx in range(3):
            win = p[dy:dy + img.height - 2, dx:dx + img.width - 2]
            gx[1:-1, 1:-1] += SOBEL_X[dy, dx] * win
            gy[1:-1, 1:-1] += SOBEL_Y[dy, dx] * win
    return gx, gy


def _stencil(img, px, py):
    if not (1 <= px <= img.width - 2 and 1 <= py <= img.height - 2):
        raise StencilOutOfBounds(f"pixel ({px}, {py}) has no full 3x3 neighbourhood "
                                 f"in a {img.width}x{img.height} image")
    win = img.pixels[py - 1:py + 2, px - 1:px + 2]
    return float((SOBEL_X * win).sum()), float((SOBEL_Y * win).sum())


def gradient_orientation(img: GrayImage, px: int, py: int) -> float:
    """Undirected Sobel gradient direction at an interior pixel, in [0, pi).

    A zero gradient yields 0; use :func:`gradient_magnitude` to tell it apart.
    """
    gx, gy = _stencil(img, px, py)
    if gx == 0.0 and gy == 0.0:
        return 0.0
    return fold_angle(math.atan2(gy, gx))


def gradient_magnitude(img: GrayImage, px: int, py: int) -> float:
    gx, gy = _stencil(img, px, py)
    return math.hypot(gx, gy)


def pixel_of(p, img: GrayImage, bbox: BoundingBox | None = None):
    """Pixel under point ``p``; ``bbox`` maps onto the full raster (default ``[0,w] x [0,h]``)."""
    bbox = bbox or img.bbox
    if not bbox.contains(p):
        raise OutOfImageBounds(f"point {tuple(p)} outside image extent {bbox.bounds}")
    u = (p[0] - bbox.min.x) / bbox.width * img.width
    v = (p[1] - bbox.min.y) / bbox.height * img.height
    return min(int(u), img.width - 1), min(int(v), img.height - 1)


def point_descriptor(p, img: GrayImage | None = None, bbox: BoundingBox | None = None):
    """``(x, y)`` without an image, ``(x, y, phi)`` with one.

    Points over border pixels take the orientation of the nearest pixel that
    has a full Sobel stencil.
    """
    p = as_point(p)
    if img is None:
        return FeatureVector((p.x, p.y), ("x", "y"))
    px, py = pixel_of(p, img, bbox)
    if img.width < 3 or img.height < 3:
        raise StencilOutOfBounds("image smaller than the 3x3 stencil")
    px = min(max(px, 1), img.width - 2)
    py = min(max(py, 1), img.height - 2)
    return FeatureVector((p.x, p.y, gradient_orientation(img, px, py)), ("x", "y", "phi"))


def region_descriptor(r: ConvexPolygon) -> FeatureVector:
    if len(r) < 3:
        raise DegeneratePolygon(f"region descriptor needs >= 3 vertices, got {len(r)}")
    c = r.centroid()
    return FeatureVector((c.x, c.y, r.area, r.diameter(), len(r)), REGION_SCHEMA)


def edge_orientations(r) -> list:
    """Undirected direction of every polygon edge; a segment has one edge."""
    verts = list(r.vertices if isinstance(r, ConvexPolygon) else r)
    if len(verts) < 2:
        raise DegeneratePolygon("edge orientations need at least 2 vertices")
    n = len(verts)
    pairs = [(0, 1)] if n == 2 else [(k, (k + 1) % n) for k in range(n)]
    return [fold_angle(math.atan2(verts[j][1] - verts[i][1], verts[j][0] - verts[i][0]))
            for i, j in pairs]
