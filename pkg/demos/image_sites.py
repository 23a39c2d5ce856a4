# Sites from an image, described by gradient orientation
#
# We synthesize a small grayscale picture, save it as PGM, and pick mesh
# sites where the Sobel gradient is strongest.  Boundary points of each
# region are then described by position plus the local edge orientation.

import math

import numpy as np

from vornuc import GrayImage, MatchTolerance, snd_pointwise, tessellate, validate_theorems
from vornuc.ingest import load_pgm, sites_from_image, write_pgm

# two soft blobs on a gentle ramp
img = GrayImage.from_function(
    96, 64,
    lambda x, y: np.clip(40 + 0.5 * x
                         + 120 * np.exp(-((x - 30) ** 2 + (y - 30) ** 2) / 120.0)
                         + 90 * np.exp(-((x - 70) ** 2 + (y - 40) ** 2) / 60.0), 0, 255))
write_pgm("blobs.pgm", img)
img = load_pgm("blobs.pgm")
print(img, "intensity range", img.pixels.min(), img.pixels.max())


# Strong gradients cluster on the blob rims.  A minimum spacing keeps the
# sites from piling up on one rim.

sites = sites_from_image(img, k=40, min_sep=6)
print(len(sites), "sites, first few:", sites[:3])

t = tessellate(sites, img.bbox)


# Neighbouring regions share boundary points, so with location in the
# description they always match pointwise, whatever the tolerance.

tol = MatchTolerance(0.0, math.radians(5), 0)
pairs = [(i, j) for i in range(len(t.sites)) for j in t.neighbors(i) if i < j]
print("adjacent pairs matching pointwise:",
      sum(snd_pointwise(t, i, j, img, tol) for i, j in pairs), "of", len(pairs))

report = validate_theorems(t, descriptor="point", tol=tol, img=img)
print("checks with point descriptors:", "pass" if report.passed else "fail")
for c in report.failures:
    print("  failed:", c.id, c.counterexample)
