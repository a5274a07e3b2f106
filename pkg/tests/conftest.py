from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from hexnorm.geometry import DegenerateBall, UnitBall2D, Vec2, boundary_point, canonicalize_ball, cross
from hexnorm.rational import Q

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


def rationals(lo: int = -3, hi: int = 3, max_den: int = 12):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den).map(
        lambda f: Q(f.numerator, f.denominator)
    )


points = st.builds(Vec2, rationals(), rationals())


@st.composite
def balls(draw, min_points: int = 2, max_points: int = 6) -> UnitBall2D:
    pts = draw(st.lists(points, min_size=min_points, max_size=max_points))
    try:
        return canonicalize_ball(pts)
    except DegenerateBall:
        assume(False)


@st.composite
def boundary_points(draw, ball: UnitBall2D) -> Vec2:
    t = draw(st.fractions(min_value=0, max_value=1, max_denominator=60).filter(lambda f: f < 1))
    return boundary_point(ball, Q(t.numerator, t.denominator))


def cone_norm(ball: UnitBall2D, p: Vec2) -> Q:
    """Independent norm: write p = a v_k + b v_{k+1} with a, b >= 0; the norm is a + b."""
    if p == Vec2(Q(0), Q(0)):
        return Q(0)
    for k in range(ball.n):
        v, w = ball.vertex(k), ball.vertex(k + 1)
        det = cross(v, w)
        a = cross(p, w) / det
        b = cross(v, p) / det
        if a >= 0 and b >= 0:
            return a + b
    raise AssertionError("point in no vertex cone")


def brute_f(ball: UnitBall2D, y: Vec2, per_edge: int = 6) -> Q:
    """f(y) by maximizing over a dense rational sample of the whole boundary."""
    best = Q(0)
    m = ball.n * per_edge
    for j in range(m):
        x = boundary_point(ball, Q(j, m))
        best = max(best, cone_norm(ball, x - y) + cone_norm(ball, x + y))
    return best


def frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@pytest.fixture
def octagon() -> UnitBall2D:
    return canonicalize_ball([(1, 0), (0, 1), (Q(3, 4), Q(3, 4)), (Q(-3, 4), Q(3, 4))])


@pytest.fixture
def six_point() -> UnitBall2D:
    # conv{±(1,0), ±(0,1), ±(3/4,3/4)}: a hexagon that is not affine regular
    return canonicalize_ball([(1, 0), (0, 1), (Q(3, 4), Q(3, 4))])
