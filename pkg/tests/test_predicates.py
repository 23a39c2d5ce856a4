import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import frac_incircle, frac_orient
from vornuc.predicates import incircle, incircle_sos, orient2d


def sign(v):
    return (v > 0) - (v < 0)


coord = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def test_orient_basic():
    assert orient2d((0, 0), (1, 0), (0, 1)) == 1
    assert orient2d((0, 0), (0, 1), (1, 0)) == -1
    assert orient2d((0, 0), (1, 1), (2, 2)) == 0


def test_orient_nearly_collinear_points_resolved_exactly():
    # a naive double determinant gets many of these wrong
    a = (0.5, 0.5)
    b = (12.0, 12.0)
    for k in range(200):
        c = (0.5 + k * 2.0 ** -53, 0.5)
        assert orient2d(a, b, c) == sign(frac_orient(a, b, c))


@given(point, point, point)
def test_orient_matches_rational_oracle(a, b, c):
    assert orient2d(a, b, c) == sign(frac_orient(a, b, c))


@given(point, point)
def test_orient_on_line_through_points_is_exact(a, b):
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    assert orient2d(a, b, mid) == sign(frac_orient(a, b, mid))


def test_incircle_basic():
    a, b, c = (0, 0), (1, 0), (0, 1)
    assert incircle(a, b, c, (0.4, 0.4)) == 1
    assert incircle(a, b, c, (2, 2)) == -1
    assert incircle(a, b, c, (1, 1)) == 0


def test_incircle_cocircular_pythagorean_points():
    ring = [(5, 0), (3, 4), (0, 5), (-4, 3), (-5, 0), (0, -5), (4, -3)]
    for a, b, c, d in itertools.combinations(ring, 4):
        if orient2d(a, b, c) > 0:
            assert incircle(a, b, c, d) == 0


@given(point, point, point, point)
def test_incircle_matches_rational_oracle(a, b, c, d):
    if frac_orient(a, b, c) <= 0:
        a, b = b, a
    assert incircle(a, b, c, d) == sign(frac_incircle(a, b, c, d))


@settings(max_examples=50)
@given(st.floats(min_value=0, max_value=2 * math.pi), st.floats(min_value=1e-3, max_value=1e3))
def test_incircle_near_circle_matches_oracle(theta, r):
    a, b, c = (r, 0.0), (0.0, r), (-r, 0.0)
    d = (r * math.cos(theta), r * math.sin(theta))
    assert incircle(a, b, c, d) == sign(frac_incircle(a, b, c, d))


def test_sos_never_zero_and_prefers_lowest_index_diagonal():
    sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    # triangle (0,1,2) against 3, and (1,2,3) against 0: exactly one diagonal is kept
    s1 = incircle_sos(sq, 0, 1, 2, 3)
    s2 = incircle_sos(sq, 1, 2, 3, 0)
    assert s1 != 0 and s2 != 0
    # the diagonal through vertex 0 (0-2) survives, so 3 is outside (0,1,2)
    assert s1 == -1
    assert s2 == 1


def test_sos_agrees_with_plain_test_off_the_circle():
    pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.3, 0.3), (3.0, 3.0)]
    assert incircle_sos(pts, 0, 1, 2, 3) == 1
    assert incircle_sos(pts, 0, 1, 2, 4) == -1


def test_sos_is_invariant_under_rotation_of_the_triangle():
    ring = [(5.0, 0.0), (3.0, 4.0), (0.0, 5.0), (-4.0, 3.0), (-5.0, 0.0)]
    for a, b, c, d in itertools.permutations(range(5), 4):
        if orient2d(ring[a], ring[b], ring[c]) > 0:
            s = incircle_sos(ring, a, b, c, d)
            assert s != 0
            assert s == incircle_sos(ring, b, c, a, d) == incircle_sos(ring, c, a, b, d)
