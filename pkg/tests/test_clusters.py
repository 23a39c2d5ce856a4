import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import HEX_CENTER, UNIT, grid_mesh, hex_mesh, random_sites
from vornuc.clusters import (
    all_nucleus_clusters,
    cluster_descriptive_intersection,
    cluster_unions_strongly_near,
    clusters_descriptively_near,
    clusters_strongly_near,
    descriptive_nucleus_cluster,
    descriptive_relation,
    maximal_nucleus_clusters,
    nucleus_cluster,
)
from vornuc.descriptors import region_descriptor
from vornuc.errors import IndexOutOfRange, MixedTessellation
from vornuc.geometry import BoundingBox
from vornuc.proximity import MatchTolerance, feature_match, strongly_near
from vornuc.voronoi import tessellate


def pair_scan_sn(t, c1, c2):
    """Exhaustive oracle: some member pair shares a boundary segment or is equal."""
    return any(a == b or b in t.adjacency.get(a, {}) for a in c1.members for b in c2.members)


def test_grid_centre_cluster():
    t = grid_mesh(3)
    c = nucleus_cluster(t, 4)
    assert c.members == (1, 3, 4, 5, 7) and c.adjacency_count == 4
    assert nucleus_cluster(t, 0).members == (0, 1, 3)
    with pytest.raises(IndexOutOfRange):
        nucleus_cluster(t, 9)


def test_single_site_cluster():
    t = tessellate([(0.3, 0.3)], UNIT)
    c = nucleus_cluster(t, 0)
    assert c.members == (0,) and c.adjacency_count == 0
    assert maximal_nucleus_clusters(t) == [c]


def test_hex_interior_cluster():
    assert nucleus_cluster(hex_mesh(), HEX_CENTER).adjacency_count == 6


def test_maximal_clusters_on_grids():
    m3 = maximal_nucleus_clusters(grid_mesh(3))
    assert [(c.nucleus, c.adjacency_count) for c in m3] == [(4, 4)]
    m2 = maximal_nucleus_clusters(grid_mesh(2))
    assert [(c.nucleus, c.adjacency_count) for c in m2] == [(0, 2), (1, 2), (2, 2), (3, 2)]


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_maximal_count_matches_recount(seed):
    t = tessellate(random_sites(120, seed), UNIT)
    counts = [sum(1 for j in range(len(t.sites)) if j != i and strongly_near(t, i, j))
              for i in range(len(t.sites))]
    top = max(counts)
    assert [c.nucleus for c in maximal_nucleus_clusters(t)] == [i for i, k in enumerate(counts) if k == top]
    assert {c.adjacency_count for c in maximal_nucleus_clusters(t)} == {top}


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 10 ** 6), st.integers(2, 60))
def test_covering_and_membership(seed, n):
    t = tessellate(random_sites(n, seed), UNIT)
    cs = all_nucleus_clusters(t)
    assert set().union(*(c.member_set for c in cs)) == set(range(len(t.sites)))
    for c in cs:
        assert c.nucleus in c.members
        assert c.adjacency_count == len(t.neighbors(c.nucleus))


def test_clusters_strongly_near_examples():
    t = grid_mesh(3)
    c0, c4, c8 = (nucleus_cluster(t, k) for k in (0, 4, 8))
    assert clusters_strongly_near(t, c0, c0)
    assert clusters_strongly_near(t, c0, c4)
    # corner clusters {0,1,3} and {5,7,8}: no member pair shares a segment
    assert clusters_strongly_near(t, c0, c8) == pair_scan_sn(t, c0, c8) is False


def test_far_apart_clouds_give_non_touching_clusters():
    left = [(0.1 + 0.2 * (k % 3), 0.2 + 0.3 * (k // 3)) for k in range(9)]
    right = [(x + 9.3, y) for x, y in left]
    t = tessellate(left + right, BoundingBox.from_bounds(0, 0, 10, 1))
    a = nucleus_cluster(t, 3)       # leftmost column, middle row
    b = nucleus_cluster(t, 9 + 5)   # rightmost column of the right cloud
    assert not clusters_strongly_near(t, a, b)
    assert not pair_scan_sn(t, a, b)


@pytest.mark.parametrize("seed", [4, 5])
def test_cluster_strong_nearness_agrees_with_pair_scan_and_is_symmetric(seed):
    t = tessellate(random_sites(60, seed), UNIT)
    cs = all_nucleus_clusters(t)
    for a in cs:
        for b in cs:
            v = clusters_strongly_near(t, a, b)
            assert v == pair_scan_sn(t, a, b) == clusters_strongly_near(t, b, a)
            assert v == cluster_unions_strongly_near(t, a, b)


def test_descriptive_cluster_on_grid_matches_exhaustive_oracle():
    t = grid_mesh(3)
    tol = MatchTolerance()
    c = descriptive_nucleus_cluster(t, 4, tol=tol)
    lf = [region_descriptor(r).location_free() for r in t.regions]
    assert c.members == tuple(i for i in range(9) if feature_match(lf[i], lf[4], tol))
    assert c.members == tuple(range(9))


def test_descriptive_cluster_tolerance_extremes():
    t = tessellate(random_sites(40, 6), UNIT)
    assert descriptive_nucleus_cluster(t, 7, tol=MatchTolerance.exact()).members == (7,)
    assert descriptive_nucleus_cluster(t, 7, tol=MatchTolerance.unbounded()).members == tuple(range(40))


def test_point_descriptor_cluster_contains_neighbours():
    t = tessellate(random_sites(40, 7), UNIT)
    c = descriptive_nucleus_cluster(t, 3, descriptor="point", tol=MatchTolerance.exact())
    assert set(t.neighbors(3)) | {3} <= set(c.members)


def test_clusters_descriptively_near_examples():
    h = hex_mesh(7, 7)
    a = nucleus_cluster(h, 7 * 3 + 2)
    b = nucleus_cluster(h, 7 * 3 + 4)
    assert clusters_descriptively_near(h, a, a)
    assert clusters_descriptively_near(h, a, b, tol=MatchTolerance(1e-6, 0.0, 0))
    t = tessellate(random_sites(60, 8), UNIT)
    ex = MatchTolerance.exact()
    cs = all_nucleus_clusters(t)
    for x in cs[:15]:
        for y in cs:
            if not (x.member_set & y.member_set):
                assert not clusters_descriptively_near(t, x, y, tol=ex)


def test_cluster_descriptive_intersection():
    t = tessellate(random_sites(50, 9), UNIT)
    cs = all_nucleus_clusters(t)
    tol = MatchTolerance(0.2, math.radians(10), 1)
    assert cluster_descriptive_intersection(t, cs[0], cs[0], tol=tol) == set(cs[0].members)
    ex = MatchTolerance.exact()
    for x in cs[:10]:
        for y in cs[-10:]:
            if not (x.member_set & y.member_set):
                assert cluster_descriptive_intersection(t, x, y, tol=ex) == set()
            got = cluster_descriptive_intersection(t, x, y, tol=tol)
            if got:
                assert clusters_descriptively_near(t, x, y, tol=tol)


def test_descriptive_relation_is_symmetric_and_cached():
    t = tessellate(random_sites(50, 10), UNIT)
    r1 = descriptive_relation(t, tol=MatchTolerance(0.1, 0.2, 0))
    assert np.array_equal(r1, r1.T) and r1.diagonal().all()
    assert descriptive_relation(t, tol=MatchTolerance(0.1, 0.2, 0)) is r1
    with pytest.raises(ValueError):
        descriptive_relation(t, descriptor="texture")


def test_clusters_from_another_mesh_are_rejected():
    t1 = grid_mesh(3)
    t2 = grid_mesh(3)
    with pytest.raises(MixedTessellation):
        clusters_strongly_near(t1, nucleus_cluster(t1, 0), nucleus_cluster(t2, 0))
