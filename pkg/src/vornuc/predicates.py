"""Exact orientation and incircle predicates.

Both predicates evaluate a floating-point determinant first and accept its
sign when it clears a forward error bound; otherwise the determinant is
recomputed with :class:`fractions.Fraction`, which is exact for any finite
double input.  The returned value is only meaningful through its sign.

``incircle_sos`` additionally resolves exact cocircularity by a symbolic
perturbation of the lifting map: site ``k`` is lowered by ``eps**k`` with
lower indices dominating.  This makes every Delaunay decision strict and
the resulting triangulation unique, with each cocircular quadrilateral split
by the diagonal incident to its lowest-index vertex.
"""

from fractions import Fraction

_EPS = 2.0 ** -53
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_BOUND = (10.0 + 96.0 * _EPS) * _EPS


def _sign(v):
    return (v > 0) - (v < 0)


def orient2d_exact(a, b, c):
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    return (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)


def orient2d(a, b, c):
    """Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear."""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    if abs(det) > _CCW_BOUND * (abs(detleft) + abs(detright)):
        return _sign(det)
    return _sign(orient2d_exact(a, b, c))


def incircle_exact(a, b, c, d):
    adx, ady = Fraction(a[0]) - Fraction(d[0]), Fraction(a[1]) - Fraction(d[1])
    bdx, bdy = Fraction(b[0]) - Fraction(d[0]), Fraction(b[1]) - Fraction(d[1])
    cdx, cdy = Fraction(c[0]) - Fraction(d[0]), Fraction(c[1]) - Fraction(d[1])
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (alift * (bdx * cdy - cdx * bdy)
            + blift * (cdx * ady - adx * cdy)
            + clift * (adx * bdy - bdx * ady))


def incircle(a, b, c, d):
    """+1 if d is strictly inside the circle through ccw a, b, c; -1 outside; 0 on it."""
    adx = a[0] - d[0]
    bdx = b[0] - d[0]
    cdx = c[0] - d[0]
    ady = a[1] - d[1]
    bdy = b[1] - d[1]
    cdy = c[1] - d[1]

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady
    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (alift * (bdxcdy - cdxbdy)
           + blift * (cdxady - adxcdy)
           + clift * (adxbdy - bdxady))
    permanent = ((abs(bdxcdy) + abs(cdxbdy)) * alift
                 + (abs(cdxady) + abs(adxcdy)) * blift
                 + (abs(adxbdy) + abs(bdxady)) * clift)
    if abs(det) > _ICC_BOUND * permanent:
        return _sign(det)
    return _sign(incircle_exact(a, b, c, d))


def incircle_sos(pts, ia, ib, ic, id_):
    """Incircle sign for indexed points with symbolic tie-breaking.

    ``pts`` is indexable by the four integer indices.  Never returns 0 when
    ``a, b, c`` is a proper counterclockwise triangle.
    """
    a, b, c, d = pts[ia], pts[ib], pts[ic], pts[id_]
    s = incircle(a, b, c, d)
    if s != 0:
        return s
    # cofactors of the lifted coordinate, one per row of the 4x4 determinant
    cof = (
        (ia, orient2d(b, c, d)),
        (ib, -orient2d(a, c, d)),
        (ic, orient2d(a, b, d)),
        (id_, -orient2d(a, b, c)),
    )
    for _, cf in sorted(cof):
        if cf != 0:
            return -cf
    return 0
