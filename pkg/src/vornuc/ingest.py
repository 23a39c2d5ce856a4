"""Site sources: CSV files, seeded uniform random points, grayscale images."""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from .descriptors import GrayImage, sobel
from .errors import CorruptHeader, ImageTooSmall, ParseError, UnsupportedFormat
from .geometry import BoundingBox, Point2

_MASK64 = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK64


def splitmix64(state):
    """One splitmix64 step: returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** generator; integer seeds expand through splitmix64."""

    def __init__(self, seed=0, state=None):
        if state is not None:
            self.s = [int(v) & _MASK64 for v in state]
        else:
            if not 0 <= seed <= _MASK64:
                raise ValueError("seed must be an unsigned 64-bit integer")
            sm = seed
            self.s = []
            for _ in range(4):
                sm, out = splitmix64(sm)
                self.s.append(out)
        if not any(self.s):
            raise ValueError("xoshiro256** state must not be all zero")

    def next_u64(self):
        s = self.s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self):
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53


def sites_random(n, bbox: BoundingBox, seed):
    if n < 1:
        raise ValueError("need at least one site")
    rng = Xoshiro256(seed)
    x0, y0, x1, y1 = bbox.bounds
    out = []
    for _ in range(n):
        u = rng.random()
        v = rng.random()
        out.append(Point2(x0 + u * (x1 - x0), y0 + v * (y1 - y0)))
    return out


def sites_from_csv(path):
    """Read ``x,y`` lines; blank lines and lines starting with ``#`` are skipped."""
    text = Path(path).read_text(encoding="utf-8")
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = [p.strip() for p in s.split(",")]
        if len(parts) != 2:
            raise ParseError(f"expected 'x,y', got {line!r}", lineno)
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {line!r}", lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(f"non-finite coordinate in {line!r}", lineno)
        out.append(Point2(x, y))
    return out


def sites_from_image(img: GrayImage, k, min_sep=0.0):
    """Up to ``k`` pixel centres ranked by Sobel magnitude, greedily spaced ``min_sep`` apart.

    Only interior pixels are candidates.  Equal magnitudes keep row-major
    order.  Pixel ``(px, py)`` maps to the point ``(px + 0.5, py + 0.5)`` in
    the image box ``[0, width] x [0, height]``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if min_sep < 0:
        raise ValueError("min_sep must be >= 0")
    if img.width < 3 or img.height < 3:
        raise ImageTooSmall(f"need at least 3x3 pixels, got {img.width}x{img.height}")
    gx, gy = sobel(img)
    mag = np.hypot(gx, gy)[1:-1, 1:-1]
    h, w = mag.shape
    order = np.argsort(-mag.ravel(), kind="stable")
    chosen = []
    sep2 = float(min_sep) ** 2
    for flat in order:
        py, px = divmod(int(flat), w)
        px += 1
        py += 1
        if all((px - qx) ** 2 + (py - qy) ** 2 >= sep2 for qx, qy in chosen):
            chosen.append((px, py))
            if len(chosen) == k:
                break
    return [Point2(px + 0.5, py + 0.5) for px, py in chosen]


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*([^\s#]+)")


def parse_pgm(data: bytes) -> GrayImage:
    if data[:2] not in (b"P5", b"P2"):
        raise UnsupportedFormat(f"not a PGM file (magic {data[:2]!r})")
    binary = data[:2] == b"P5"
    pos = 2
    header = []
    for _ in range(3):
        m = _TOKEN.match(data, pos)
        if not m:
            raise CorruptHeader("truncated PGM header")
        try:
            header.append(int(m.group(1)))
        except ValueError:
            raise CorruptHeader(f"bad header field {m.group(1)!r}") from None
        pos = m.end()
    width, height, maxval = header
    if width <= 0 or height <= 0:
        raise CorruptHeader(f"bad dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise UnsupportedFormat(f"maxval {maxval} unsupported (need 1..255)")
    count = width * height
    if binary:
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) != count:
            raise CorruptHeader(f"expected {count} raster bytes, found {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < count:
            raise CorruptHeader(f"expected {count} samples, found {len(body)}")
        try:
            pixels = np.array([int(v) for v in body[:count]])
        except ValueError:
            raise CorruptHeader("non-integer sample in ASCII raster") from None
    if pixels.max() > maxval:
        raise CorruptHeader("sample exceeds maxval")
    return GrayImage(width, height, pixels)


def load_pgm(path) -> GrayImage:
    return parse_pgm(Path(path).read_bytes())


def write_pgm(path, img: GrayImage, binary=True):
    pix = np.clip(np.rint(img.pixels), 0, 255).astype(np.uint8)
    if binary:
        data = b"P5\n%d %d\n255\n" % (img.width, img.height) + pix.tobytes()
    else:
        rows = "\n".join(" ".join(str(v) for v in row) for row in pix)
        data = f"P2\n{img.width} {img.height}\n255\n{rows}\n".encode()
    Path(path).write_bytes(data)
