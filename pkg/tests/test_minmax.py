import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import balls, boundary_points, brute_f, rationals
from hexnorm.fuzz import random_ball, random_hull_body
from hexnorm.geometry import (
    HEXAGON,
    SQUARE,
    Vec2,
    boundary_point,
    canonicalize_ball,
    linear_image,
    norm_eval,
)
from hexnorm.hexagon import Hexagon, inscribe
from hexnorm.minmax import (
    HullBody,
    InvalidConfiguration,
    bcp_compare,
    f_eval,
    f_min_exact,
    f_value,
    hull_norm_closed_form,
    sqrt_interval,
    verify_hullnorm,
    verify_lemma42,
    verify_thm31,
    verify_thm32,
)
from hexnorm.rational import Q


def V(x, y):
    return Vec2.of(x, y)


# -- f ---------------------------------------------------------------------------------


def test_f_examples():
    assert f_eval(SQUARE, V(Q(1, 2), Q(1, 2))).value == 3
    fv = f_eval(SQUARE, V(1, 0))
    assert fv.value == 4 and fv.argmax_vertex == V(0, 1)
    assert f_eval(HEXAGON, V(1, 0)).value == 3


def test_f_interior_and_exterior_points():
    assert f_eval(SQUARE, V(0, 0)).on_boundary is False
    assert f_eval(SQUARE, V(0, 0)).value == 2
    with pytest.raises(ValueError):
        f_eval(SQUARE, V(1, 1))


@given(balls(), st.data())
def test_f_bounds_and_symmetry(ball, data):
    y = data.draw(boundary_points(ball))
    val = f_eval(ball, y).value
    assert 2 <= val <= 4
    assert f_eval(ball, -y).value == val
    assert f_value(ball, y) == val


@given(balls(max_points=4), st.data())
def test_vertex_max_matches_dense_boundary_max(ball, data):
    y = data.draw(boundary_points(ball))
    assert brute_f(ball, y) == f_eval(ball, y).value


# -- exact minimization ----------------------------------------------------------------


def test_square_minimizers_are_edge_midpoints():
    cert = f_min_exact(SQUARE)
    assert cert.min_value == 3 and cert.equality3
    half = Q(1, 2)
    assert set(cert.points()) == {V(half, half), V(-half, half), V(-half, -half), V(half, -half)}
    assert all(m.is_point for m in cert.minimizers)


def test_regular_hexagon_minimizes_everywhere():
    cert = f_min_exact(HEXAGON)
    assert cert.min_value == 3
    assert cert.covers_boundary()
    rng = random.Random(3)
    for _ in range(20):
        y = boundary_point(HEXAGON, Q(rng.randrange(1000), 1000))
        assert f_value(HEXAGON, y) == 3


def test_octagon_minimizers_isolated(octagon):
    cert = f_min_exact(octagon)
    assert cert.min_value == Q(17, 6)
    assert set(cert.points()) == {V(1, 0), V(0, 1), V(-1, 0), V(0, -1)}


def test_six_point_ball(six_point):
    cert = f_min_exact(six_point)
    assert cert.min_value == Q(8, 3)
    assert set(cert.points()) == {V(Q(-1, 2), Q(1, 2)), V(Q(1, 2), Q(-1, 2))}


def _check_certificate(ball):
    cert = f_min_exact(ball)
    low = cert.min_value
    for m in cert.minimizers:
        a, b = ball.edge(m.edge)
        for s in (m.lo, (m.lo + m.hi) / 2, m.hi):
            assert f_value(ball, a + (b - a) * s) == low
        # just outside the interval the value is larger
        eps = Q(1, 10**6)
        if m.lo - eps > 0:
            assert f_value(ball, a + (b - a) * (m.lo - eps)) > low
        if m.hi + eps < 1:
            assert f_value(ball, a + (b - a) * (m.hi + eps)) > low
    samples = [f_value(ball, boundary_point(ball, Q(j, 40 * ball.n))) for j in range(40 * ball.n)]
    assert min(samples) >= low
    return cert


@given(balls())
def test_certificate_against_sampling(ball):
    cert = _check_certificate(ball)
    assert 2 <= cert.min_value <= 3
    assert cert.equality3 == (cert.min_value == 3)


@pytest.mark.parametrize("seed", range(15))
def test_certificate_on_fuzzed_balls(seed):
    _check_certificate(random_ball(random.Random(seed), 100))


@given(balls(max_points=4), st.tuples(*[rationals(-4, 4, 6)] * 4))
def test_min_is_affine_invariant(ball, m):
    a, b, c, d = m
    if a * d - b * c == 0:
        return
    image = linear_image(ball, [[a, b], [c, d]])
    assert f_min_exact(image).min_value == f_min_exact(ball).min_value


# -- three-point inequality -------------------------------------------------------------


def test_thm31_examples(octagon):
    rep = verify_thm31(SQUARE, V(1, 0))
    assert rep.values["f"] == [4, 3, 3]
    assert rep.values["min_index"] == 2 and rep.passed and rep.equality
    rep = verify_thm31(HEXAGON, V(1, 0))
    assert rep.values["f"] == [3, 3, 3]
    rep = verify_thm31(octagon, V(1, 0))
    assert rep.values["min"] == Q(17, 6) and rep.passed and not rep.equality


def test_thm31_six_point_ball_reaches_three(six_point):
    rep = verify_thm31(six_point, V(1, 0))
    assert rep.values["f"] == [Q(10, 3), 3, 3]
    assert rep.passed


@given(balls(), st.data())
def test_thm31_property(ball, data):
    v1 = data.draw(boundary_points(ball))
    assert verify_thm31(ball, v1).passed


# -- two-point lemma ---------------------------------------------------------------------


def test_lemma42_regular_hexagon_case_one():
    rep = verify_lemma42(HEXAGON, inscribe(HEXAGON, V(1, 0)))
    assert rep.passed
    assert {"arc": "[v1,v2]", "x": ["0/1", "1/1"], "case": 1} in rep.values["equality_points"]


def test_lemma42_square_values():
    rep = verify_lemma42(SQUARE, inscribe(SQUARE, V(1, 0)))
    assert rep.passed and rep.values["max_value"] == 3
    x = V(Q(3, 4), Q(1, 4))
    assert norm_eval(SQUARE, x - V(1, 0)) + norm_eval(SQUARE, x + V(1, 0)) == Q(5, 2)


def test_lemma42_case_two_on_box():
    box = canonicalize_ball([(1, 1), (-1, 1)])
    hexagon = Hexagon(V(1, 0), V(0, 1), V(-1, 1))
    rep = verify_lemma42(box, hexagon)
    assert rep.passed
    assert {"arc": "[v1,v2]", "x": ["1/1", "1/1"], "case": 2} in rep.values["equality_points"]


def test_lemma42_octagon_strict(octagon):
    rep = verify_lemma42(octagon, inscribe(octagon, V(1, 0)))
    assert rep.passed and rep.values["max_value"] < 3 and not rep.equality


@given(balls(), st.data())
def test_lemma42_property(ball, data):
    v1 = data.draw(boundary_points(ball))
    assert verify_lemma42(ball, inscribe(ball, v1)).passed


# -- equality characterization ---------------------------------------------------------


def test_thm32_examples(octagon, six_point):
    assert verify_thm32(SQUARE).values["class"] == "Parallelogram"
    assert verify_thm32(HEXAGON).values["class"] == "AffineRegularHexagon"
    for ball in (SQUARE, HEXAGON, octagon, six_point):
        rep = verify_thm32(ball)
        assert rep.passed
    assert verify_thm32(octagon).values["min_value"] < 3


# -- hull body ---------------------------------------------------------------------------


def _base():
    return inscribe(HEXAGON, V(1, 0))


def test_hull_closed_form_hand_instance():
    h = HullBody.build(_base(), [Q(3, 5)] * 3, [Q(3, 5)] * 3)
    minus, plus = hull_norm_closed_form(h, 1)
    assert minus == Q(22, 15) == plus
    z1, v1 = h.z[0], h.hexagon.v1
    assert norm_eval(h.b0, z1 - v1) == minus
    assert verify_hullnorm(h).passed


def test_hull_boundary_configuration_flagged():
    # x_i + y_i = 1 puts z_i on the hexagon edge
    h = HullBody.build(_base(), [Q(1, 2)] * 3, [Q(1, 2)] * 3)
    assert h.degenerate
    rep = verify_hullnorm(h)
    assert rep.passed and "closed_form" not in rep.values
    assert rep.values["M"] == [3, 3, 3]


def test_hull_corner_fails_halfspace():
    with pytest.raises(InvalidConfiguration, match="halfspace"):
        HullBody.build(_base(), [1, 1, 1], [1, 1, 1])


def test_hull_invalid_configurations():
    with pytest.raises(InvalidConfiguration):
        HullBody.build(_base(), [Q(1, 4)] * 3, [Q(1, 4)] * 3)
    with pytest.raises(InvalidConfiguration):
        HullBody.build(_base(), [Q(3, 4)] * 3, [Q(3, 4)] * 3)  # halfspace fails
    with pytest.raises(ValueError):
        hull_norm_closed_form(HullBody.build(_base(), [Q(3, 5)] * 3, [Q(3, 5)] * 3), 4)


@pytest.mark.parametrize("seed", range(40))
def test_hull_closed_form_matches_hull_norm(seed):
    h = random_hull_body(random.Random(seed), 60)
    rep = verify_hullnorm(h)
    assert rep.passed, rep.notes
    assert min(rep.values["M"]) <= 3


# -- perimeter bound -----------------------------------------------------------------------


def test_bcp_examples(octagon):
    rep = bcp_compare(HEXAGON)
    assert rep.values["perimeter"] == 6
    assert rep.values["bound_interval"] == [3, 3] and rep.equality
    rep = bcp_compare(SQUARE)
    lo, hi = rep.values["bound_interval"]
    assert rep.values["perimeter"] == 8
    assert Q(337, 100) < lo <= hi < Q(338, 100)
    assert rep.values["min_f"] == 3 and rep.passed
    rep = bcp_compare(octagon)
    assert rep.values["min_f"] < 3 <= rep.values["bound_interval"][0]


@given(st.fractions(min_value=0, max_value=100, max_denominator=50))
def test_sqrt_interval_brackets(v):
    q = Q(v.numerator, v.denominator)
    lo, hi = sqrt_interval(q, 1000)
    assert lo * lo <= q <= hi * hi
    assert hi - lo <= Q(1, 1000)
