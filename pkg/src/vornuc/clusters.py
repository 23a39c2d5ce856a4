"""Nucleus clusters and cluster-level proximities.

A nucleus cluster is a region together with every region strongly near it.
Descriptive clusters replace strong nearness by matching descriptions,
either of whole regions (``descriptor="region"``) or of sampled boundary
points (``descriptor="point"``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import proximity as px
from .errors import MixedTessellation
from .geometry import convex_intersection
from .proximity import DEFAULT_TOLERANCE, MatchTolerance

DESCRIPTORS = ("region", "point")


@dataclass(frozen=True)
class NucleusCluster:
    nucleus: int
    members: tuple
    adjacency_count: int = field(compare=False)
    mesh: int = field(default=0, compare=False, repr=False)

    @cached_property
    def member_set(self):
        return frozenset(self.members)

    def __contains__(self, i):
        return i in self.members

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class DescriptiveCluster:
    nucleus: int
    members: tuple
    descriptor_name: str
    tolerance: MatchTolerance
    mesh: int = field(default=0, compare=False, repr=False)

    @cached_property
    def member_set(self):
        return frozenset(self.members)


def mesh_token(t):
    return px._cache(t).token


def nucleus_cluster(t, n) -> NucleusCluster:
    t.check_index(n)
    members = [a for a in range(len(t.sites)) if px.strongly_near(t, a, n)]
    return NucleusCluster(n, tuple(members), len(members) - 1, mesh_token(t))


def all_nucleus_clusters(t):
    return [nucleus_cluster(t, n) for n in range(len(t.sites))]


def maximal_nucleus_clusters(t, clusters=None):
    """Every cluster whose nucleus has the mesh-wide highest neighbour count."""
    clusters = clusters if clusters is not None else all_nucleus_clusters(t)
    top = max(c.adjacency_count for c in clusters)
    return [c for c in clusters if c.adjacency_count == top]


def _check_same(t, *clusters):
    tok = mesh_token(t)
    for c in clusters:
        if c.mesh != tok:
            raise MixedTessellation(f"cluster with nucleus {c.nucleus} belongs to another tessellation")


def descriptive_relation(t, descriptor="region", tol: MatchTolerance = DEFAULT_TOLERANCE,
                         include_location=False, img=None):
    """Symmetric boolean matrix of region pairs with matching descriptions (cached)."""
    if descriptor not in DESCRIPTORS:
        raise ValueError(f"descriptor must be one of {DESCRIPTORS}, got {descriptor!r}")
    cache = px._cache(t)
    key = (descriptor, tol, bool(include_location), id(img))
    hit = cache.relations.get(key)
    if hit is not None:
        return hit[0]
    n = len(t.sites)
    if descriptor == "region":
        fvs = [px.region_features(t, i, include_location) for i in range(n)]
        F = np.array([fv.values for fv in fvs], dtype=float).reshape(n, -1)
        rel = px.match_matrix(F, F, fvs[0].angular_mask, fvs[0].count_mask, tol)
    else:
        rel = np.zeros((n, n), dtype=bool)
        for i, j in px.pointwise_candidates(t, tol):
            rel[i, j] = rel[j, i] = px.snd_pointwise(t, i, j, img, tol)
    rel.setflags(write=False)
    sets = [frozenset(np.flatnonzero(rel[i]).tolist()) for i in range(n)]
    cache.relations[key] = (rel, sets, img)
    return rel


def _match_sets(t, descriptor, tol, include_location, img):
    key = (descriptor, tol, bool(include_location), id(img))
    hit = px._cache(t).relations.get(key)
    if hit is None:
        descriptive_relation(t, descriptor, tol, include_location, img)
        hit = px._cache(t).relations[key]
    return hit[1]


def descriptive_nucleus_cluster(t, n, descriptor="region", tol: MatchTolerance = DEFAULT_TOLERANCE,
                                include_location=False, img=None) -> DescriptiveCluster:
    t.check_index(n)
    if descriptor == "region":
        members = [a for a in range(len(t.sites))
                   if px.descriptively_near_regions(t, a, n, tol, include_location)]
    else:
        members = sorted(_match_sets(t, descriptor, tol, include_location, img)[n])
    return DescriptiveCluster(n, tuple(members), descriptor, tol, mesh_token(t))


def clusters_strongly_near(t, c1, c2) -> bool:
    """Some member of ``c1`` is strongly near some member of ``c2``."""
    _check_same(t, c1, c2)
    other = c2.member_set
    adj = t.adjacency
    for a in c1.members:
        if a in other:
            return True
        nbrs = adj.get(a)
        if nbrs and not other.isdisjoint(nbrs):
            return True
    return False


def clusters_descriptively_near(t, c1, c2, descriptor="region", tol: MatchTolerance = DEFAULT_TOLERANCE,
                                include_location=False, img=None) -> bool:
    """Some member of ``c1`` and some member of ``c2`` have matching descriptions."""
    _check_same(t, c1, c2)
    sets = _match_sets(t, descriptor, tol, include_location, img)
    other = c2.member_set
    return any(not sets[a].isdisjoint(other) for a in c1.members)


def cluster_descriptive_intersection(t, c1, c2, descriptor="region",
                                     tol: MatchTolerance = DEFAULT_TOLERANCE,
                                     include_location=False, img=None) -> set:
    _check_same(t, c1, c2)
    sets = _match_sets(t, descriptor, tol, include_location, img)
    return px.descriptive_intersection(c1.members, c2.members, related=sets)


def contact_relation(t):
    """Region pairs whose polygons meet along a positive-length boundary, from geometry alone.

    Returns ``(contact_sets, intersections)`` where ``intersections`` maps
    each pair with touching bounding boxes to its convex intersection.
    """
    cache = px._cache(t)
    hit = cache.relations.get("contact")
    if hit is not None:
        return hit
    n = len(t.sites)
    b = np.array([r.bounds() for r in t.regions]).reshape(n, 4)
    pad = 1e-9 * t.scale
    ov = ((b[:, None, 0] - pad <= b[None, :, 2]) & (b[None, :, 0] - pad <= b[:, None, 2])
          & (b[:, None, 1] - pad <= b[None, :, 3]) & (b[None, :, 1] - pad <= b[:, None, 3]))
    eps = 1e-12 * max(1.0, float(np.abs(b).max()))
    contact = [set() for _ in range(n)]
    inter = {}
    for i, j in zip(*np.nonzero(np.triu(ov, k=1))):
        i, j = int(i), int(j)
        x = convex_intersection(t.regions[i], t.regions[j], eps=eps)
        inter[(i, j)] = x
        if len(x) >= 3 or (len(x) == 2 and math.dist(*x.vertices) > t.length_tol):
            contact[i].add(j)
            contact[j].add(i)
    hit = ([frozenset(s) for s in contact], inter)
    cache.relations["contact"] = hit
    return hit


def cluster_unions_strongly_near(t, c1, c2) -> bool:
    """The point sets covered by the two clusters share a boundary segment or a region."""
    _check_same(t, c1, c2)
    contact, _ = contact_relation(t)
    other = c2.member_set
    return any(a in other or not contact[a].isdisjoint(other) for a in c1.members)
