"""The functional f(y) = max_{x in S} ||x - y|| + ||x + y|| and its minimum over S.

For fixed y the map x -> ||x - y|| + ||x + y|| is convex, so its maximum over
the unit ball sits at a vertex; f is therefore an exact finite maximum.  Along
an edge y(s) = v_k + s (v_{k+1} - v_k) each term is piecewise linear in s with
breakpoints where x -/+ y(s) crosses the ray through a ball vertex.  Between
consecutive breakpoints f is an upper envelope of lines, minimized exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import (
    UnitBall2D,
    Vec2,
    arc_between,
    canonicalize_ball,
    cross,
    is_segment_arc,
    norm_eval,
    self_perimeter,
)
from .hexagon import Hexagon, classify, inscribe
from .rational import ZERO, Q, as_q
from .report import VerifyReport

__all__ = [
    "FValue",
    "MinimizerInterval",
    "MinMaxCertificate",
    "HullBody",
    "InvalidConfiguration",
    "f_eval",
    "f_value",
    "f_min_exact",
    "verify_thm31",
    "verify_lemma42",
    "verify_thm32",
    "hull_norm_closed_form",
    "verify_hullnorm",
    "sqrt_interval",
    "bcp_compare",
]


@dataclass(frozen=True)
class FValue:
    y: Vec2
    value: Q
    argmax_vertex: Vec2
    on_boundary: bool = True


def _pair_sum(ball: UnitBall2D, x: Vec2, y: Vec2) -> Q:
    return norm_eval(ball, x - y) + norm_eval(ball, x + y)


def f_eval(ball: UnitBall2D, y: Vec2) -> FValue:
    """Exact f(y) with the first vertex (in ball order) attaining the maximum.

    Points strictly inside the ball are accepted and flagged with
    ``on_boundary=False``; points outside raise ValueError.
    """
    r = norm_eval(ball, y)
    if r > 1:
        raise ValueError("y lies outside the unit ball")
    best = None
    arg = None
    for x in ball.vertices:
        val = _pair_sum(ball, x, y)
        if best is None or val > best:
            best, arg = val, x
    return FValue(y, best, arg, r == 1)


def f_value(ball: UnitBall2D, y: Vec2) -> Q:
    """f(y) without the witness; the hot path of the minimizer."""
    facets = ball.facets[: ball.n // 2]
    yx, yy = y
    best = ZERO
    for vx, vy in ball.vertices[: ball.n // 2]:
        ax, ay, bx, by = vx - yx, vy - yy, vx + yx, vy + yy
        na = nb = ZERO
        for ux, uy in facets:
            p = ux * ax + uy * ay
            if p < 0:
                p = -p
            if p > na:
                na = p
            q = ux * bx + uy * by
            if q < 0:
                q = -q
            if q > nb:
                nb = q
        if na + nb > best:
            best = na + nb
    return best


@dataclass(frozen=True)
class MinimizerInterval:
    """Minimizers of f on edge ``edge``: y(s) for s in [lo, hi] (local edge coordinate)."""

    edge: int
    lo: Q
    hi: Q
    start: Vec2
    end: Vec2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def t_interval(self, n: int) -> tuple[Q, Q]:
        return (Q(self.edge) + self.lo) / n, (Q(self.edge) + self.hi) / n

    def to_json(self) -> dict:
        from .report import jsonify

        return {
            "edge": self.edge,
            "s": [jsonify(self.lo), jsonify(self.hi)],
            "from": self.start.strings(),
            "to": self.end.strings(),
        }


@dataclass(frozen=True)
class MinMaxCertificate:
    min_value: Q
    minimizers: tuple[MinimizerInterval, ...]
    equality3: bool
    n_edges: int

    def points(self) -> list[Vec2]:
        """Isolated minimizers."""
        return [m.start for m in self.minimizers if m.is_point]

    def covers_boundary(self) -> bool:
        full = {m.edge for m in self.minimizers if m.lo == 0 and m.hi == 1}
        return full == set(range(self.n_edges))

    def to_json(self) -> dict:
        from .report import jsonify

        return {
            "min_value": jsonify(self.min_value),
            "equality3": self.equality3,
            "minimizers": [m.to_json() for m in self.minimizers],
        }


# -- exact minimization along one edge ---------------------------------------------


def _edge_breakpoints(ball: UnitBall2D, p: Vec2, d: Vec2) -> list[Q]:
    half = ball.vertices[: ball.n // 2]
    cands = {ZERO, Q(1)}
    for w in half:
        cwd = cross(w, d)
        if cwd == 0:
            continue
        for x in half:
            for s in (cross(w, x - p) / cwd, -cross(w, x + p) / cwd):
                if 0 < s < 1:
                    cands.add(s)
    return sorted(cands)


def _active_facet(ball: UnitBall2D, v: Vec2) -> Vec2:
    best, arg = None, None
    for u in ball.facets:
        val = u.x * v.x + u.y * v.y
        if best is None or val > best:
            best, arg = val, u
    return arg


def _lines(ball: UnitBall2D, p: Vec2, d: Vec2, a: Q, b: Q) -> list[tuple[Q, Q]]:
    """(intercept, slope) in s of every h_x on [a, b], where no h_x bends."""
    mid = p + d * ((a + b) / 2)
    out = []
    for x in ball.vertices[: ball.n // 2]:
        u = _active_facet(ball, x - mid)
        w = _active_facet(ball, x + mid)
        # u.(x - p - s d) + w.(x + p + s d)
        icpt = u.x * (x.x - p.x) + u.y * (x.y - p.y) + w.x * (x.x + p.x) + w.y * (x.y + p.y)
        slope = -(u.x * d.x + u.y * d.y) + (w.x * d.x + w.y * d.y)
        out.append((icpt, slope))
    return out


def _envelope_min(lines: Sequence[tuple[Q, Q]], a: Q, b: Q) -> tuple[Q, Q]:
    """(min value, some minimizer) of max of lines over [a, b]."""

    def env(s):
        return max(c + m * s for c, m in lines)

    fa, fb = env(a), env(b)
    right_slope = max(m for c, m in lines if c + m * a == fa)
    if right_slope >= 0:
        return fa, a
    left_slope = min(m for c, m in lines if c + m * b == fb)
    if left_slope <= 0:
        return fb, b
    best, arg = None, None
    for c, m in lines:
        if m == 0 and (best is None or c > best):
            best, arg = c, None
    for ci, mi in lines:
        if mi >= 0:
            continue
        for cj, mj in lines:
            if mj <= 0:
                continue
            s = (ci - cj) / (mj - mi)
            h = ci + mi * s
            if best is None or h > best:
                best, arg = h, s
    if arg is None:
        arg = _level_bounds(lines, best, a, b)[0]
    return best, arg


def _level_bounds(lines: Sequence[tuple[Q, Q]], level: Q, a: Q, b: Q) -> tuple[Q, Q]:
    """[lo, hi] = {s in [a, b] : every line <= level}, assumed nonempty."""
    lo, hi = a, b
    for c, m in lines:
        if m < 0:
            lo = max(lo, (level - c) / m)
        elif m > 0:
            hi = min(hi, (level - c) / m)
    return lo, hi


def _edge_minimum(ball: UnitBall2D, k: int) -> tuple[Q, Q, Q]:
    """(min of f on edge k, lo, hi) with [lo, hi] the exact minimizing interval."""
    p, q = ball.edge(k)
    d = q - p
    cands = _edge_breakpoints(ball, p, d)
    vals = [f_value(ball, p + d * s) for s in cands]
    low = min(vals)
    first = vals.index(low)
    last = len(vals) - 1 - vals[::-1].index(low)
    probe = sorted({i for j in (first, last) for i in (j - 1, j) if 0 <= i < len(cands) - 1})
    best = low
    inner = None
    for i in probe:
        a, b = cands[i], cands[i + 1]
        lines = _lines(ball, p, d, a, b)
        m, _ = _envelope_min(lines, a, b)
        if m < best:
            best, inner = m, (i, lines)
    if inner is not None:
        i, lines = inner
        lo, hi = _level_bounds(lines, best, cands[i], cands[i + 1])
        return best, lo, hi
    # the minimum is attained at candidates first..last; widen into neighbours
    if first == 0:
        lo = cands[0]
    else:
        lo = _level_bounds(_lines(ball, p, d, cands[first - 1], cands[first]), best, cands[first - 1], cands[first])[0]
    if last == len(cands) - 1:
        hi = cands[-1]
    else:
        hi = _level_bounds(_lines(ball, p, d, cands[last], cands[last + 1]), best, cands[last], cands[last + 1])[1]
    return best, lo, hi


def f_min_exact(ball: UnitBall2D) -> MinMaxCertificate:
    """Exact min over S of f with every minimizing boundary interval."""
    per_edge = [_edge_minimum(ball, k) for k in range(ball.n)]
    m = min(e[0] for e in per_edge)
    intervals = []
    for k, (val, lo, hi) in enumerate(per_edge):
        if val != m:
            continue
        if lo == 1:
            # the vertex v_{k+1}; reported as the start of edge k+1
            continue
        p, q = ball.edge(k)
        intervals.append(MinimizerInterval(k, lo, hi, p + (q - p) * lo, p + (q - p) * hi))
    return MinMaxCertificate(m, tuple(intervals), m == 3, ball.n)


# -- claim verifiers -----------------------------------------------------------------


def verify_thm31(ball: UnitBall2D, v1: Vec2, seed: int | None = None) -> VerifyReport:
    """min(f(v1), f(v2), f(v3)) <= 3 for the hexagon inscribed at v1."""
    hexagon = inscribe(ball, v1)
    fs = [f_value(ball, v) for v in hexagon.vertices]
    low = min(fs)
    return VerifyReport(
        claim="thm31",
        passed=low <= 3,
        equality=low == 3,
        seed=seed,
        instance={"ball": [v.strings() for v in ball.vertices], "v1": v1.strings()},
        values={
            "v2": hexagon.v2.strings(),
            "v3": hexagon.v3.strings(),
            "f": fs,
            "min": low,
            "min_index": fs.index(low) + 1,
        },
    )


def _lemma42_points(ball: UnitBall2D, a: Vec2, b: Vec2) -> list[Vec2]:
    chain = arc_between(ball, a, b)
    pts = [a]
    for p, q in chain:
        pts.append((p + q) / 2)
        pts.append(q)
    return pts


def verify_lemma42(ball: UnitBall2D, hexagon: Hexagon, seed: int | None = None) -> VerifyReport:
    """||x - v1|| + ||x + v1|| <= 3 on [v1, v2] and [v3, -v1], with the equality cases.

    Probes every vertex and fragment midpoint of both arcs.  Equality must
    hold exactly when the lemma's segment conditions do.
    """
    hexagon.check(ball)
    v1, v2, v3 = hexagon.vertices
    problems: list[str] = []
    equalities: list[dict] = []
    values: list[Q] = []
    # (arc, skipped endpoint where the sum is 2, endpoint of case 1)
    arcs = (("[v1,v2]", v1, v2), ("[v3,-v1]", v3, -v1))
    for label, start, end in arcs:
        first = label == "[v1,v2]"
        skip, corner = (v1, v2) if first else (-v1, v3)
        for x in _lemma42_points(ball, start, end):
            if x == skip:
                continue
            val = _pair_sum(ball, x, v1)
            values.append(val)
            if val > 3:
                problems.append(f"{label}: value {val} > 3 at {x!r}")
            if x == corner:
                case, cond = 1, is_segment_arc(ball, start, end)
            elif first:
                case, cond = 2, is_segment_arc(ball, v1, x) and is_segment_arc(ball, x, v3)
            else:
                case, cond = 2, is_segment_arc(ball, x, -v1) and is_segment_arc(ball, v2, x)
            if (val == 3) != cond:
                problems.append(f"{label}: equality {val == 3} but case-{case} condition {cond} at {x!r}")
            if val == 3:
                equalities.append({"arc": label, "x": x.strings(), "case": case})
    worst = max(values, default=ZERO)
    return VerifyReport(
        claim="lemma42",
        passed=not problems,
        equality=bool(equalities),
        seed=seed,
        instance={
            "ball": [v.strings() for v in ball.vertices],
            "hexagon": [v.strings() for v in hexagon.vertices],
        },
        values={"max_value": worst, "equality_points": equalities},
        notes=problems,
    )


def verify_thm32(ball: UnitBall2D, seed: int | None = None) -> VerifyReport:
    """min f <= 3, with equality iff the ball is a parallelogram or affine regular hexagon."""
    cert = f_min_exact(ball)
    cls = classify(ball)
    ok = cert.min_value <= 3 and (cert.min_value == 3) == cls.is_extremal
    return VerifyReport(
        claim="thm32",
        passed=ok,
        equality=cert.equality3,
        seed=seed,
        instance={"ball": [v.strings() for v in ball.vertices]},
        values={"min_value": cert.min_value, "class": cls.kind.value, "minimizers": cert},
    )


# -- the hull body B0 -----------------------------------------------------------------


class InvalidConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class HullBody:
    """Hexagon (v1, v2, v3) with points z_i on the outer arcs.

    z1 = x1 v2 + y1 v3, z2 = x2 v3 - y2 v1, z3 = -x3 v1 - y3 v2, and B0 is the
    symmetric hull of the v_i and z_i.
    """

    hexagon: Hexagon
    x: tuple[Q, Q, Q]
    y: tuple[Q, Q, Q]

    @classmethod
    def build(cls, hexagon: Hexagon, x, y) -> "HullBody":
        body = cls(hexagon, tuple(as_q(e) for e in x), tuple(as_q(e) for e in y))
        body.check()
        return body

    def check(self) -> None:
        x, y = self.x, self.y
        v1, v2, v3 = self.hexagon.vertices
        if v3 != v2 - v1 or cross(v1, v2) <= 0:
            raise InvalidConfiguration("base is not an affine regular hexagon")
        for i in range(3):
            if not (0 < x[i] <= 1 and 0 < y[i] <= 1):
                raise InvalidConfiguration(f"x_{i + 1}, y_{i + 1} must lie in (0, 1]")
            if x[i] + y[i] < 1:
                raise InvalidConfiguration(f"x_{i + 1} + y_{i + 1} must be >= 1")
            j = (i + 2) % 3
            if (1 - x[i]) / y[i] + (1 - y[j]) / x[j] < 1:
                raise InvalidConfiguration(f"halfspace condition fails for i = {i + 1}")

    @property
    def degenerate(self) -> bool:
        return any(self.x[i] + self.y[i] == 1 or self.x[i] == 1 or self.y[i] == 1 for i in range(3))

    @property
    def z(self) -> tuple[Vec2, Vec2, Vec2]:
        v1, v2, v3 = self.hexagon.vertices
        x, y = self.x, self.y
        return (v2 * x[0] + v3 * y[0], v3 * x[1] - v1 * y[1], -(v1 * x[2]) - v2 * y[2])

    @property
    def b0(self) -> UnitBall2D:
        return canonicalize_ball(list(self.hexagon.vertices) + list(self.z))


def hull_norm_closed_form(h: HullBody, i: int) -> tuple[Q, Q]:
    """(||z_i - v_i||_0, ||z_i + v_i||_0) from the closed-form expressions, i in 1..3."""
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    h.check()
    x, y = h.x, h.y
    k, k1, k2 = i - 1, i % 3, (i + 1) % 3
    s = x[k] + y[k]
    minus = max(s + (1 - x[k1]) / y[k1] * (1 - x[k]), s * (1 - y[k1]) / x[k1] + 1 - x[k])
    plus = max(s + (1 - y[k2]) / x[k2] * (1 - y[k]), s * (1 - x[k2]) / y[k2] + 1 - y[k])
    return minus, plus


def verify_hullnorm(h: HullBody, seed: int | None = None) -> VerifyReport:
    """Closed forms against the Minkowski functional of B0.

    Degenerate configurations only report the direct norms.
    """
    b0 = h.b0
    v = h.hexagon.vertices
    direct = [(norm_eval(b0, z - vi), norm_eval(b0, z + vi)) for z, vi in zip(h.z, v)]
    values: dict = {"direct": direct, "M": [a + b for a, b in direct]}
    ok = True
    notes = []
    if not h.degenerate:
        closed = [hull_norm_closed_form(h, i) for i in (1, 2, 3)]
        values["closed_form"] = closed
        for i, (c, d) in enumerate(zip(closed, direct), start=1):
            if c != d:
                ok = False
                notes.append(f"i={i}: closed form {c} != direct {d}")
    else:
        notes.append("degenerate configuration: closed forms not asserted")
    return VerifyReport(
        claim="hullnorm",
        passed=ok,
        equality=min(values["M"]) == 3,
        seed=seed,
        instance={
            "hexagon": [p.strings() for p in v],
            "x": list(h.x),
            "y": list(h.y),
            "degenerate": h.degenerate,
        },
        values=values,
        notes=notes,
    )


# -- perimeter bound comparison ------------------------------------------------------


def sqrt_interval(value, denominator: int = 10**6) -> tuple[Q, Q]:
    """Rational [lo, hi] with lo <= sqrt(value) <= hi, both with the given denominator."""
    q = as_q(value)
    if q < 0:
        raise ValueError("negative radicand")
    num, den = int(q.numerator), int(q.denominator)
    scaled_num = num * denominator * denominator
    root = math.isqrt(scaled_num // den)
    lo = Q(root, denominator)
    hi = lo if root * root * den == scaled_num else Q(root + 1, denominator)
    return lo, hi


def bcp_compare(ball: UnitBall2D, denominator: int = 10**6, seed: int | None = None) -> VerifyReport:
    """Compare min f with the perimeter bound (1 + sqrt(1 + 4p)) / 2."""
    p = self_perimeter(ball)
    lo, hi = sqrt_interval(1 + 4 * p, denominator)
    bound = ((1 + lo) / 2, (1 + hi) / 2)
    cert = f_min_exact(ball)
    perimeter_ok = 6 <= p <= 8
    # certified only if min f sits below the lower end of the bound interval
    ok = perimeter_ok and cert.min_value <= bound[0] and 3 <= bound[1]
    tight = bound[0] == bound[1] == cert.min_value
    return VerifyReport(
        claim="bcp",
        passed=ok,
        equality=tight,
        seed=seed,
        instance={"ball": [v.strings() for v in ball.vertices]},
        values={
            "perimeter": p,
            "bound_interval": list(bound),
            "bound_approx": (float(bound[0]) + float(bound[1])) / 2,
            "min_f": cert.min_value,
            "gap_lower": bound[0] - cert.min_value,
        },
    )
