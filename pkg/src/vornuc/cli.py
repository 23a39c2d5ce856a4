"""Command-line interface: ``vornuc {tessellate,clusters,validate,render}``.

Exit codes: 0 on success (and on an all-pass validation), 1 when a
validation check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

from . import clusters as cl
from . import serialize as ser
from .errors import IngestError, VornucError
from .geometry import BoundingBox
from .ingest import load_pgm, sites_from_csv, sites_from_image, sites_random
from .proximity import MatchTolerance
from .validation import validate_theorems
from .voronoi import tessellate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

# margin around CSV sites when no box is given, as a fraction of their extent
CSV_MARGIN = 0.1


class InputError(Exception):
    pass


def _bbox_arg(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bbox must be xmin,ymin,xmax,ymax, got {text!r}") from None
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"bbox must be four finite numbers, got {text!r}")
    return vals


def _seed_arg(text):
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="vornuc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("site source (exactly one)")
    src.add_argument("--sites", metavar="PATH", help="CSV of x,y lines, or a mesh JSON written by tessellate")
    src.add_argument("--random", metavar="N", type=_positive_int, help="N uniform random sites")
    src.add_argument("--seed", type=_seed_arg, default=0, help="seed for --random (default 0)")
    src.add_argument("--image", metavar="PATH", help="PGM image; sites at strong gradients")
    src.add_argument("--k", type=_positive_int, default=64, help="site count for --image (default 64)")
    src.add_argument("--min-sep", type=float, default=0.0, help="pixel spacing for --image (default 0)")
    src.add_argument("--mesh", metavar="PATH", help="mesh JSON used exactly as stored")
    common.add_argument("--bbox", type=_bbox_arg, metavar="XMIN,YMIN,XMAX,YMAX")
    common.add_argument("--out", metavar="PATH", help="write JSON here instead of standard output")

    desc = argparse.ArgumentParser(add_help=False)
    desc.add_argument("--descriptor", choices=("region", "point"), default="region")
    desc.add_argument("--tol-scalar", type=float, default=0.05, metavar="R",
                      help="relative tolerance for scalar features (default 0.05)")
    desc.add_argument("--tol-angle", type=float, default=10.0, metavar="DEG",
                      help="orientation tolerance in degrees (default 10)")
    desc.add_argument("--tol-count", type=float, default=0, metavar="N",
                      help="absolute tolerance for count features (default 0)")
    desc.add_argument("--include-location", action="store_true",
                      help="keep centroid coordinates in region descriptions")

    p = sub.add_parser("tessellate", parents=[common], help="build the Voronoi mesh")
    p.add_argument("--svg", metavar="PATH", help="also draw the mesh")

    p = sub.add_parser("clusters", parents=[common], help="nucleus clusters and the maximal ones")
    p.add_argument("--nucleus", type=int, metavar="INDEX", help="emit only this region's cluster")

    p = sub.add_parser("validate", parents=[common, desc], help="run every proximity and convexity check")
    p.add_argument("--clusters", metavar="PATH", help="clusters JSON to check instead of recomputing")

    p = sub.add_parser("render", parents=[common], help="draw the mesh with maximal clusters highlighted")
    p.add_argument("--svg", metavar="PATH", help="output path (default: --out, else standard output)")
    return parser


def _bbox(args, default):
    if args.bbox is not None:
        try:
            return BoundingBox.from_bounds(*args.bbox)
        except VornucError as exc:
            raise InputError(str(exc)) from None
    return default


def _csv_bbox(sites):
    xs = [p.x for p in sites]
    ys = [p.y for p in sites]
    pad = CSV_MARGIN * max(max(xs) - min(xs), max(ys) - min(ys))
    if pad == 0:
        pad = 1.0
    return BoundingBox.from_bounds(min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def load_input(args):
    """``(tessellation, image or None)`` from the one site source given."""
    given = [name for name in ("sites", "random", "image", "mesh") if getattr(args, name) is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --sites, --random, --image, --mesh")
    img = None
    if args.mesh is not None:
        if args.bbox is not None:
            raise InputError("--bbox cannot be combined with --mesh")
        return ser.mesh_from_dict(ser.read_json(args.mesh)), None
    if args.random is not None:
        bbox = _bbox(args, BoundingBox.from_bounds(0.0, 0.0, 1.0, 1.0))
        sites = sites_random(args.random, bbox, args.seed)
    elif args.image is not None:
        img = load_pgm(args.image)
        if args.min_sep < 0:
            raise InputError("--min-sep must be >= 0")
        sites = sites_from_image(img, args.k, args.min_sep)
        if args.bbox is not None:
            raise InputError("--bbox cannot be combined with --image; the image box is used")
        bbox = img.bbox
    elif Path(args.sites).suffix.lower() == ".json":
        sites, stored = ser.sites_from_mesh_dict(ser.read_json(args.sites))
        bbox = _bbox(args, stored)
    else:
        sites = sites_from_csv(args.sites)
        if not sites:
            raise InputError(f"{args.sites}: no sites")
        bbox = _bbox(args, None) or _csv_bbox(sites)
    return tessellate(sites, bbox), img


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_tessellate(args):
    t, _ = load_input(args)
    _emit(ser.dumps(ser.mesh_to_dict(t)), args.out)
    if args.svg:
        _emit(ser.render_svg(t), args.svg)
    return EXIT_OK


def cmd_clusters(args):
    t, _ = load_input(args)
    if args.nucleus is not None and not 0 <= args.nucleus < len(t.sites):
        raise InputError(f"--nucleus {args.nucleus} out of range 0..{len(t.sites) - 1}")
    _emit(ser.dumps(ser.clusters_to_dict(t, nucleus=args.nucleus)), args.out)
    return EXIT_OK


def cmd_validate(args):
    t, img = load_input(args)
    try:
        tol = MatchTolerance(args.tol_scalar, math.radians(args.tol_angle), args.tol_count)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    clusters = ser.clusters_from_dict(t, ser.read_json(args.clusters)) if args.clusters else None
    report = validate_theorems(t, args.descriptor, tol, img, args.include_location, clusters)
    _emit(ser.dumps(ser.report_to_dict(report)), args.out)
    for c in report.failures:
        print(f"check failed: {c.id} {c.counterexample}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_render(args):
    t, _ = load_input(args)
    _emit(ser.render_svg(t, cl.all_nucleus_clusters(t)), args.svg or args.out)
    return EXIT_OK


COMMANDS = {
    "tessellate": cmd_tessellate,
    "clusters": cmd_clusters,
    "validate": cmd_validate,
    "render": cmd_render,
}


def _join_negative_bbox(argv):
    # argparse takes "-0.5,..." for an option; glue it onto --bbox first
    out = []
    it = iter(argv)
    for a in it:
        if a == "--bbox":
            nxt = next(it, None)
            if nxt is not None and re.fullmatch(r"-[\d.].*", nxt):
                out.append(f"--bbox={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_bbox(argv))
    try:
        return COMMANDS[args.command](args)
    except (InputError, VornucError, IngestError, OSError, ValueError) as exc:
        print(f"vornuc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
