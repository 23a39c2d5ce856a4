"""Voronoi tessellations, nucleus clusters and proximity checks in the plane."""

from .clusters import (
    DescriptiveCluster,
    NucleusCluster,
    all_nucleus_clusters,
    cluster_descriptive_intersection,
    clusters_descriptively_near,
    clusters_strongly_near,
    descriptive_nucleus_cluster,
    maximal_nucleus_clusters,
    nucleus_cluster,
)
from .delaunay import Triangulation, delaunay_triangulate
from .descriptors import (
    FeatureVector,
    GrayImage,
    edge_orientations,
    gradient_orientation,
    point_descriptor,
    region_descriptor,
)
from .errors import VornucError
from .geometry import BoundingBox, ConvexPolygon, Point2, convex_intersection, is_convex
from .ingest import load_pgm, sites_from_csv, sites_from_image, sites_random
from .proximity import (
    DEFAULT_TOLERANCE,
    MatchTolerance,
    descriptive_intersection,
    descriptively_near_regions,
    feature_match,
    snd_pointwise,
    strongly_near,
)
from .validation import ValidationReport, validate_theorems
from .voronoi import Tessellation, tessellate, voronoi_bruteforce, voronoi_from_delaunay

__version__ = "0.1.0"
