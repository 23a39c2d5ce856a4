# Nucleus clusters on regular lattices
#
# A nucleus cluster is a Voronoi region together with every region that
# shares a boundary segment with it.  On a square grid the corner cells
# have two such neighbours, the edge cells three and the centre four, so
# only the centre cluster is maximal.

import math

from vornuc import (
    BoundingBox,
    MatchTolerance,
    all_nucleus_clusters,
    descriptive_nucleus_cluster,
    maximal_nucleus_clusters,
    region_descriptor,
    tessellate,
)

grid = [(float(i), float(j)) for j in range(3) for i in range(3)]
t = tessellate(grid, BoundingBox.from_bounds(-0.5, -0.5, 2.5, 2.5))

for c in all_nucleus_clusters(t):
    print(f"nucleus {c.nucleus}: members {c.members}, adjacency count {c.adjacency_count}")

# Corner-touching cells meet in one point only, which is not a shared
# segment.  That is why region 0 and region 4 are not neighbours.

print("maximal:", [(c.nucleus, c.adjacency_count) for c in maximal_nucleus_clusters(t)])


# A 2x2 grid is perfectly symmetric: every cell has two neighbours and all
# four clusters are maximal.

t2 = tessellate([(0, 0), (1, 0), (0, 1), (1, 1)], BoundingBox.from_bounds(-0.5, -0.5, 1.5, 1.5))
print("2x2 maximal:", [(c.nucleus, c.adjacency_count) for c in maximal_nucleus_clusters(t2)])


# Rows of a hexagonal lattice are offset by half a spacing.  Interior cells
# are regular hexagons with six neighbours.

h = math.sqrt(3) / 2
hexes = [(i + 0.5 * (j % 2), j * h) for j in range(5) for i in range(5)]
th = tessellate(hexes, BoundingBox.from_bounds(-1, -1, 5.5, 4 * h + 1))
centre = 12
print("hex centre edges:", len(th.regions[centre]), "neighbours:", th.neighbors(centre))
print("hex centre description:", region_descriptor(th.regions[centre]).location_free())


# Descriptive clusters gather regions by what they look like rather than
# where they are.  With centroids left out, every interior hexagon matches
# the centre and the clipped border cells do not.

dc = descriptive_nucleus_cluster(th, centre, tol=MatchTolerance(0.01, math.radians(5), 0))
print("regions shaped like the centre:", dc.members)
