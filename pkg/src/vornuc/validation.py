"""Mechanical checks of the nucleus-cluster proximity and convexity results.

:func:`validate_theorems` evaluates every check in :data:`CHECKS` on one
tessellation and returns a :class:`ValidationReport`.  Checks listed in
:data:`INFORMATIONAL` describe properties that need not hold on arbitrary
meshes; they are reported but never make a report fail.

Cluster-pair relations are assembled as boolean matrices: with ``M`` the
cluster-by-region membership matrix and ``R`` a region relation, the pairs
``(c1, c2)`` having some ``A in c1, B in c2`` with ``R[A, B]`` are exactly
the nonzero entries of ``M @ R @ M.T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import clusters as cl
from . import proximity as px
from .geometry import is_convex
from .proximity import DEFAULT_TOLERANCE, MatchTolerance

CHECKS = (
    "adjacency_symmetry",
    "adjacency_matches_geometry",
    "cluster_invariants",
    "region_in_own_cluster",
    "nucleus_has_near_member",
    "covering",
    "clusters_in_powerset",
    "maximal_nuclei_edge_counts",
    "cluster_sn_equivalence",
    "cluster_snd_equivalence",
    "cluster_snd_pointwise_reading",
    "neighbor_cluster_chain",
    "shared_member_implies_sn",
    "descriptive_intersection_implies_snd",
    "sn_implies_pointwise_snd",
    "cluster_sn_implies_snd",
    "snd_iff_descriptive_intersection",
    "convexity_c0",
    "convexity_c1",
)

INFORMATIONAL = frozenset({
    "maximal_nuclei_edge_counts",
    "cluster_snd_pointwise_reading",
    "neighbor_cluster_chain",
})


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    informational: bool = False
    counterexample: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    @property
    def status(self):
        if self.informational:
            return "info"
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {"id": self.id, "status": self.status, "holds": self.passed,
                "counterexample": self.counterexample or None, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    def __post_init__(self):
        ids = [c.id for c in self.checks]
        if sorted(ids) != sorted(CHECKS):
            raise ValueError(f"report must hold each check exactly once, got {ids}")

    @property
    def passed(self):
        return all(c.passed for c in self.checks if not c.informational)

    @property
    def failures(self):
        return [c for c in self.checks if not c.informational and not c.passed]

    def __getitem__(self, check_id):
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self):
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _mat(rel_sets, n, reflexive=True):
    R = np.zeros((n, n), dtype=np.float32)
    for i, s in enumerate(rel_sets):
        for j in s:
            if 0 <= j < n:
                R[i, j] = 1.0
    if reflexive:
        np.fill_diagonal(R, 1.0)
    return R


def _pairs_near(M, R):
    return (M @ R @ M.T) > 0.5


def _first(mask):
    idx = np.argwhere(mask)
    return tuple(int(v) for v in idx[0]) if len(idx) else None


def validate_theorems(t, descriptor="region", tol: MatchTolerance = DEFAULT_TOLERANCE, img=None,
                      include_location=False, clusters=None) -> ValidationReport:
    """Run every check on ``t``.

    ``clusters`` overrides the nucleus clusters (one per region, in nucleus
    order); by default they are recomputed from the tessellation.
    """
    n = len(t.sites)
    if clusters is None:
        clusters = cl.all_nucleus_clusters(t)
    clusters = list(clusters)
    k = len(clusters)
    out = {}

    def record(cid, ok, counterexample=None, **detail):
        out[cid] = Check(cid, bool(ok), cid in INFORMATIONAL, counterexample or {}, detail)

    # structural soundness of the stored relation and the cluster objects
    bad = None
    for i in sorted(t.adjacency):
        for j in sorted(t.adjacency[i]):
            back = t.adjacency.get(j, {}).get(i)
            if i == j or back is None or back.length != t.adjacency[i][j].length:
                bad = {"pair": [i, j], "reverse_stored": back is not None}
                break
        if bad:
            break
    record("adjacency_symmetry", bad is None, bad)

    # the stored relation against segments found by intersecting the polygons
    contact, inter = cl.contact_relation(t)
    bad = None
    for i in range(n):
        stored = {j for j in t.adjacency.get(i, {}) if 0 <= j < n}
        if stored != contact[i]:
            extra = sorted(stored - contact[i])
            missing = sorted(contact[i] - stored)
            bad = {"region": i, "stored_not_touching": extra[:5], "touching_not_stored": missing[:5]}
            break
    record("adjacency_matches_geometry", bad is None, bad)

    bad = None
    for c in clusters:
        nbrs = t.adjacency.get(c.nucleus, {})
        if c.nucleus not in c.members:
            bad = {"nucleus": c.nucleus, "reason": "nucleus missing from members"}
        elif any(not (0 <= m < n) for m in c.members):
            bad = {"nucleus": c.nucleus, "reason": "member index out of range"}
        else:
            stray = [m for m in c.members if m != c.nucleus and not px.strongly_near(t, m, c.nucleus)]
            if stray:
                bad = {"nucleus": c.nucleus, "member": stray[0], "reason": "member not strongly near nucleus"}
            elif not (c.adjacency_count == len(c.members) - 1 == len(nbrs)):
                bad = {"nucleus": c.nucleus, "adjacency_count": c.adjacency_count,
                       "members": len(c.members), "stored_neighbors": len(nbrs)}
        if bad:
            break
    record("cluster_invariants", bad is None, bad)

    own = {c.nucleus: c for c in clusters}
    stray = next((a for a in range(n) if a not in own or a not in own[a].member_set), None)
    record("region_in_own_cluster", stray is None, None if stray is None else {"region": stray})

    lonely = [c.nucleus for c in clusters
              if len(c.members) > 1 and not any(m != c.nucleus and px.strongly_near(t, m, c.nucleus)
                                                for m in c.members if 0 <= m < n)]
    record("nucleus_has_near_member", not lonely, {"nucleus": lonely[0]} if lonely else None)

    union = set().union(*(c.member_set for c in clusters)) if clusters else set()
    record("covering", union == set(range(n)),
           {"uncovered": sorted(set(range(n)) - union)[:5], "extra": sorted(union - set(range(n)))[:5]}
           if union != set(range(n)) else None)

    outside = [c.nucleus for c in clusters if not c.member_set <= set(range(n))]
    nuclei_ok = sorted(c.nucleus for c in clusters) == list(range(n))
    record("clusters_in_powerset", not outside and nuclei_ok,
           {"nucleus": outside[0]} if outside else ({"reason": "nuclei do not enumerate the regions"}
                                                     if not nuclei_ok else None))

    maxc = cl.maximal_nucleus_clusters(t, clusters) if clusters else []
    counts = {c.nucleus: len(t.regions[c.nucleus]) for c in maxc}
    same = len(set(counts.values())) <= 1
    record("maximal_nuclei_edge_counts", same, None if same else {"edge_counts": counts},
           maximal_nuclei=sorted(counts), evaluated=len(maxc) >= 2)

    # later checks query the cluster API, which needs in-range members
    tok = cl.mesh_token(t)
    clusters = [c if c.member_set <= set(range(n)) else
                cl.NucleusCluster(c.nucleus, tuple(m for m in c.members if 0 <= m < n), c.adjacency_count, tok)
                for c in clusters]

    M = np.zeros((k, n), dtype=np.float32)
    for r, c in enumerate(clusters):
        for m in c.members:
            if 0 <= m < n:
                M[r, m] = 1.0

    # strong nearness: stored relation, cluster predicate, and polygon geometry
    S = _mat([t.adjacency.get(i, {}) for i in range(n)], n)
    sn_def = _pairs_near(M, S)
    sn_api = np.array([[cl.clusters_strongly_near(t, a, b) for b in clusters] for a in clusters],
                      dtype=bool).reshape(k, k)
    sn_geo = _pairs_near(M, _mat(contact, n))
    mism = (sn_def != sn_api) | (sn_def != sn_geo)
    bad = _first(mism)
    record("cluster_sn_equivalence", bad is None,
           None if bad is None else {"clusters": [clusters[bad[0]].nucleus, clusters[bad[1]].nucleus],
                                     "exists_pair": bool(sn_def[bad]), "predicate": bool(sn_api[bad]),
                                     "geometric": bool(sn_geo[bad])},
           near_pairs=int(sn_def.sum()))

    # descriptive nearness: scalar pair scan against the cluster predicate
    rel = cl.descriptive_relation(t, descriptor, tol, include_location, img)
    if descriptor == "region":
        D = np.eye(n, dtype=np.float32)
        for i in range(n):
            for j in range(i + 1, n):
                if px.descriptively_near_regions(t, i, j, tol, include_location):
                    D[i, j] = D[j, i] = 1.0
    else:
        D = rel.astype(np.float32)
    snd_def = _pairs_near(M, D)
    # the descriptive relation is symmetric by construction, so each unordered pair is asked once
    snd_api = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(a, k):
            snd_api[a, b] = snd_api[b, a] = cl.clusters_descriptively_near(
                t, clusters[a], clusters[b], descriptor, tol, include_location, img)
    bad = _first(snd_def != snd_api)
    record("cluster_snd_equivalence", bad is None,
           None if bad is None else {"clusters": [clusters[bad[0]].nucleus, clusters[bad[1]].nucleus],
                                     "exists_pair": bool(snd_def[bad]), "predicate": bool(snd_api[bad])},
           descriptor=descriptor, near_pairs=int(snd_def.sum()))

    # location-inclusive pointwise reading, restricted to pairs that can possibly match
    P = np.eye(n, dtype=np.float32)
    for i, j in px.pointwise_candidates(t, tol):
        if i != j and px.snd_pointwise(t, i, j, img, tol):
            P[i, j] = P[j, i] = 1.0
    snd_pw = _pairs_near(M, P)
    record("cluster_snd_pointwise_reading", True, None,
           near_pairs=int(snd_pw.sum()), region_reading_pairs=int(snd_def.sum()))

    # a region near some member of Cn B reaches Cn B through a cluster whose nucleus it is near
    A_near = (S @ M.T) > 0.5
    nuclei = [c.nucleus if 0 <= c.nucleus < n else 0 for c in clusters]
    via = (S[:, nuclei] @ sn_def.astype(np.float32)) > 0.5
    bad = _first(A_near & ~via)
    record("neighbor_cluster_chain", bad is None,
           None if bad is None else {"region": bad[0], "cluster": clusters[bad[1]].nucleus})

    shared = (M @ M.T) > 0.5
    bad = _first(shared & ~sn_def)
    record("shared_member_implies_sn", bad is None,
           None if bad is None else {"clusters": [clusters[bad[0]].nucleus, clusters[bad[1]].nucleus]})

    dint = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(a, k):
            ne = bool(cl.cluster_descriptive_intersection(t, clusters[a], clusters[b], descriptor, tol,
                                                          include_location, img))
            dint[a, b] = dint[b, a] = ne
    bad = _first(dint & ~snd_def)
    record("descriptive_intersection_implies_snd", bad is None,
           None if bad is None else {"clusters": [clusters[bad[0]].nucleus, clusters[bad[1]].nucleus]})

    bad = None
    for i in range(n):
        for j in sorted({i} | set(t.adjacency.get(i, {}))):
            if 0 <= j < n and px.strongly_near(t, i, j) and not px.snd_pointwise(t, i, j, img, tol):
                bad = {"pair": [i, j]}
                break
        if bad:
            break
    record("sn_implies_pointwise_snd", bad is None, bad)

    bad = _first(sn_def & ~snd_pw)
    record("cluster_sn_implies_snd", bad is None,
           None if bad is None else {"clusters": [clusters[bad[0]].nucleus, clusters[bad[1]].nucleus]})

    bad = _first(snd_api != dint)
    record("snd_iff_descriptive_intersection", bad is None,
           None if bad is None else {"clusters": [clusters[bad[0]].nucleus, clusters[bad[1]].nucleus],
                                     "snd": bool(snd_api[bad]), "intersection_nonempty": bool(dint[bad])})

    # convexity structure on the family generated by X, the empty set, clusters and their overlaps
    X = frozenset(range(n))
    family = {frozenset(), X}
    family.update(c.member_set for c in clusters)
    record("convexity_c0", frozenset() in family and X in family and bool(X), None,
           family_seed_size=len(family))

    bad = None
    for (i, j), x in sorted(inter.items()):
        if not is_convex(x):
            bad = {"regions": [i, j], "vertices": [list(v) for v in x.vertices]}
            break
    if bad is None:
        for a in range(k):
            for b in range(a + 1, k):
                if shared[a, b]:
                    common = clusters[a].member_set & clusters[b].member_set
                    if not common <= X:
                        bad = {"clusters": [clusters[a].nucleus, clusters[b].nucleus]}
                        break
                    family.add(common)
            if bad:
                break
    record("convexity_c1", bad is None, bad,
           region_intersections=len(inter), family_size=len(family))

    return ValidationReport(tuple(out[c] for c in CHECKS))
