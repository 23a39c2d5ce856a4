"""JSON documents and SVG drawings for meshes, clusters and reports.

Every document carries ``"schema_version": 1``.  Floats are written with
``repr`` precision, so a mesh read back holds bit-identical coordinates.
SVG output flips the y-axis: the box's top edge (largest y) is drawn at the
top of the picture.
"""

from __future__ import annotations

import json

from . import clusters as cl
from .errors import IngestError, ParseError
from .geometry import BoundingBox, ConvexPolygon, Point2
from .voronoi import SharedEdge, Tessellation

SCHEMA_VERSION = 1

SVG_SIZE = 800.0
SVG_MARGIN = 10.0

NUCLEUS_FILL = "#d95f02"
MEMBER_FILL = "#fdd9b5"
REGION_FILL = "#f7f7f7"
REGION_STROKE = "#636363"
EDGE_STROKE = "#1f78b4"
SITE_FILL = "#252525"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _pt(p):
    return [float(p[0]), float(p[1])]


def mesh_to_dict(t: Tessellation) -> dict:
    pairs = [{"i": i, "j": j, "length": e.length, "segment": [_pt(e.a), _pt(e.b)]}
             for i, j, e in t.adjacency_pairs()]
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "mesh",
        "bbox": list(t.bbox.bounds),
        "sites": [_pt(s) for s in t.sites],
        "source_index": [int(k) for k in t.source_index],
        "regions": [[_pt(v) for v in r.vertices] for r in t.regions],
        "neighbors": [sorted(int(j) for j in t.adjacency.get(i, {})) for i in range(len(t.sites))],
        "adjacency": pairs,
        "warnings": list(t.warnings),
    }


def _require(doc, kind):
    if not isinstance(doc, dict):
        raise IngestError("JSON document must be an object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise IngestError(f"unsupported schema_version {doc.get('schema_version')!r}")
    if doc.get("kind") != kind:
        raise IngestError(f"expected a {kind} document, got {doc.get('kind')!r}")


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None


def sites_from_mesh_dict(doc):
    """``(sites, bbox)`` of a mesh document, for rebuilding it from scratch."""
    _require(doc, "mesh")
    try:
        return [Point2(float(x), float(y)) for x, y in doc["sites"]], BoundingBox.from_bounds(*doc["bbox"])
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"malformed mesh document: {exc}") from None


def mesh_from_dict(doc) -> Tessellation:
    """Rebuild a stored mesh exactly as written, without recomputing anything.

    The per-region ``neighbors`` lists define the stored relation, so a
    document edited to break symmetry loads as an asymmetric mesh.  A
    neighbour with no matching ``adjacency`` entry gets a zero-length edge.
    """
    sites, bbox = sites_from_mesh_dict(doc)
    try:
        regions = tuple(ConvexPolygon(tuple(Point2(float(x), float(y)) for x, y in r))
                        for r in doc["regions"])
        edges = {}
        for p in doc["adjacency"]:
            a, b = p["segment"]
            e = SharedEdge(Point2(*map(float, a)), Point2(*map(float, b)), float(p["length"]))
            edges[(int(p["i"]), int(p["j"]))] = e
        adjacency = {}
        for i, nbrs in enumerate(doc["neighbors"]):
            for j in nbrs:
                j = int(j)
                e = edges.get((min(i, j), max(i, j)))
                if e is None:
                    e = SharedEdge(sites[i], sites[i], 0.0)
                adjacency.setdefault(i, {})[j] = e
        source = tuple(int(k) for k in doc.get("source_index", range(len(sites))))
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"malformed mesh document: {exc}") from None
    if len(regions) != len(sites):
        raise IngestError(f"{len(regions)} regions for {len(sites)} sites")
    return Tessellation(tuple(sites), regions, bbox, adjacency, source, tuple(doc.get("warnings", ())))


def _cluster_entry(c, maximal):
    return {"nucleus": c.nucleus, "members": list(c.members),
            "adjacency_count": c.adjacency_count, "maximal": maximal}


def clusters_to_dict(t, clusters=None, nucleus=None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": "clusters"}
    if nucleus is not None:
        c = cl.nucleus_cluster(t, nucleus)
        top = max(len(t.neighbor_sets[i]) for i in range(len(t.sites)))
        doc["cluster"] = _cluster_entry(c, c.adjacency_count == top)
        return doc
    clusters = clusters if clusters is not None else cl.all_nucleus_clusters(t)
    maximal = {c.nucleus for c in cl.maximal_nucleus_clusters(t, clusters)}
    doc["clusters"] = [_cluster_entry(c, c.nucleus in maximal) for c in clusters]
    doc["maximal"] = sorted(maximal)
    return doc


def clusters_from_dict(t, doc):
    """Nucleus clusters as recorded in a clusters document, bound to ``t``."""
    _require(doc, "clusters")
    tok = cl.mesh_token(t)
    try:
        return [cl.NucleusCluster(int(e["nucleus"]), tuple(int(m) for m in e["members"]),
                                  int(e["adjacency_count"]), tok)
                for e in doc["clusters"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"malformed clusters document: {exc}") from None


def report_to_dict(report) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "validation", **report.to_dict()}


def _num(v):
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(t: Tessellation, clusters=None) -> str:
    """Regions, shared edges and sites; maximal nuclei filled, their members tinted."""
    clusters = clusters if clusters is not None else cl.all_nucleus_clusters(t)
    maximal = cl.maximal_nucleus_clusters(t, clusters) if clusters else []
    nuclei = {c.nucleus for c in maximal}
    tinted = set().union(*(c.member_set for c in maximal)) - nuclei if maximal else set()

    x0, y0, x1, y1 = t.bbox.bounds
    s = SVG_SIZE / max(x1 - x0, y1 - y0)
    w = (x1 - x0) * s + 2 * SVG_MARGIN
    h = (y1 - y0) * s + 2 * SVG_MARGIN

    def xy(p):
        return f"{_num(SVG_MARGIN + (p[0] - x0) * s)},{_num(SVG_MARGIN + (y1 - p[1]) * s)}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(w)}" height="{_num(h)}" '
        f'viewBox="0 0 {_num(w)} {_num(h)}">',
        f'<g id="regions" stroke="{REGION_STROKE}" stroke-width="1">',
    ]
    for i, r in enumerate(t.regions):
        fill = NUCLEUS_FILL if i in nuclei else MEMBER_FILL if i in tinted else REGION_FILL
        pts = " ".join(xy(v) for v in r.vertices)
        lines.append(f'<polygon data-region="{i}" fill="{fill}" points="{pts}"/>')
    lines.append("</g>")
    lines.append(f'<g id="shared-edges" stroke="{EDGE_STROKE}" stroke-width="1.5">')
    for i, j, e in t.adjacency_pairs():
        (ax, ay), (bx, by) = xy(e.a).split(","), xy(e.b).split(",")
        lines.append(f'<line data-pair="{i},{j}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>')
    lines.append("</g>")
    lines.append(f'<g id="sites" fill="{SITE_FILL}">')
    for p in t.sites:
        cx, cy = xy(p).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="2"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
