# Checking the cluster results on a random mesh
#
# Sites come from a seeded xoshiro256** stream, so the mesh below is the
# same on every machine.  We build it two ways, compare, and then run the
# full list of proximity and convexity checks.

import time

from vornuc import BoundingBox, tessellate, validate_theorems, voronoi_bruteforce
from vornuc.geometry import polygons_match
from vornuc.ingest import sites_random
from vornuc.serialize import render_svg

box = BoundingBox.from_bounds(0, 0, 1, 1)
sites = sites_random(250, box, seed=2024)

t0 = time.perf_counter()
t = tessellate(sites, box)
print(f"{len(t.regions)} regions, {len(t.adjacency_pairs())} shared segments "
      f"in {time.perf_counter() - t0:.2f} s")


# The Delaunay route only clips each region by its Delaunay neighbours.
# The brute-force route clips by every other site.  They should agree to
# within floating-point noise.

brute = voronoi_bruteforce(t.sites, box)
same = all(polygons_match(a, b, 1e-9) for a, b in zip(t.regions, brute.regions))
print("dual construction matches brute force:", same)
print("invariant problems:", t.check_invariants())


# Each check reports pass, fail or info.  Informational ones describe
# statements that are not true on every mesh; they never fail a report.

report = validate_theorems(t)
for c in report.checks:
    note = f"  {c.counterexample}" if c.counterexample else ""
    print(f"{c.status:4}  {c.id}{note}")
print("all pass/fail checks hold:", report.passed)


# The drawing flips y so the mesh looks the way it would on paper.  The
# nuclei of maximal clusters are filled and their members tinted.

with open("random_mesh.svg", "w") as fh:
    fh.write(render_svg(t))
print("wrote random_mesh.svg")
