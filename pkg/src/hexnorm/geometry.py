"""Exact planar geometry for polygonal unit balls.

A centrally symmetric convex polygon B with 0 in its interior defines the
norm ``||p|| = inf{lam > 0 : p / lam in B}``.  Every edge v_k -> v_{k+1} of B
carries a functional u_k with ``u_k . v_k = u_k . v_{k+1} = 1`` and the norm is
``max_k u_k . p``.  Everything here is exact (mpq); nothing rounds.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .rational import ONE, ZERO, Q, as_q, format_q, parse_q

__all__ = [
    "Vec2",
    "UnitBall2D",
    "DegenerateBall",
    "AntipodalPair",
    "cross",
    "dot",
    "convex_hull",
    "canonicalize_ball",
    "norm_eval",
    "boundary_point",
    "boundary_param",
    "arc_between",
    "is_segment_arc",
    "self_perimeter",
    "linear_image",
    "ball_to_json",
    "ball_from_json",
    "load_ball",
    "save_ball",
    "SQUARE",
    "HEXAGON",
]


class DegenerateBall(ValueError):
    """The symmetric hull is a point or a segment, so 0 is not interior."""


class AntipodalPair(ValueError):
    """Arc endpoints are antipodal; the shorter arc is not defined."""


class Vec2(NamedTuple):
    x: Q
    y: Q

    @classmethod
    def of(cls, x, y) -> "Vec2":
        return cls(as_q(x), as_q(y))

    def __add__(self, other: "Vec2") -> "Vec2":  # type: ignore[override]
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, k) -> "Vec2":  # type: ignore[override]
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Vec2":
        return Vec2(self.x / k, self.y / k)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def strings(self) -> list[str]:
        return [format_q(self.x), format_q(self.y)]

    def approx(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __repr__(self) -> str:
        return f"Vec2({format_q(self.x)}, {format_q(self.y)})"


def dot(a: Vec2, b: Vec2) -> Q:
    return a.x * b.x + a.y * b.y


def cross(a: Vec2, b: Vec2) -> Q:
    return a.x * b.y - a.y * b.x


def _half_plane(p: Vec2) -> int:
    # 0 for polar angle in [0, pi), 1 for [pi, 2pi)
    return 0 if (p.y > 0 or (p.y == 0 and p.x > 0)) else 1


def _angle_key_less(a: Vec2, b: Vec2) -> bool:
    ha, hb = _half_plane(a), _half_plane(b)
    if ha != hb:
        return ha < hb
    return cross(a, b) > 0


def convex_hull(points: Iterable[Vec2]) -> list[Vec2]:
    """Monotone-chain hull, CCW, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        chain: list[Vec2] = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-1] - chain[-2], p - chain[-2]) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class UnitBall2D:
    """Centrally symmetric convex polygon, vertices CCW from the smallest polar angle.

    Build instances with :func:`canonicalize_ball`; the constructor trusts its input.
    """

    vertices: tuple[Vec2, ...]
    facets: tuple[Vec2, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def half(self) -> int:
        return len(self.vertices) // 2

    def vertex(self, k: int) -> Vec2:
        return self.vertices[k % len(self.vertices)]

    def edge(self, k: int) -> tuple[Vec2, Vec2]:
        return self.vertex(k), self.vertex(k + 1)

    def norm(self, p: Vec2) -> Q:
        return norm_eval(self, p)

    def validate(self) -> None:
        """Raise AssertionError if any structural invariant fails."""
        n = self.n
        assert n >= 4 and n % 2 == 0, "vertex count must be even and >= 4"
        m = n // 2
        for k in range(n):
            a, b, c = self.vertex(k), self.vertex(k + 1), self.vertex(k + 2)
            assert cross(b - a, c - b) > 0, f"vertices {k}..{k + 2} not strictly convex"
            assert self.vertex(k + m) == -a, "ball is not centrally symmetric"
            assert cross(a, b) > 0, "0 is not interior / orientation not CCW"
        for k, u in enumerate(self.facets):
            a, b = self.edge(k)
            assert dot(u, a) == 1 and dot(u, b) == 1, "facet functional mismatch"
        area2 = sum(cross(self.vertex(k), self.vertex(k + 1)) for k in range(n))
        assert area2 > 0

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitBall2D) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)


def _facet(a: Vec2, b: Vec2) -> Vec2:
    det = cross(a, b)
    return Vec2((b.y - a.y) / det, (a.x - b.x) / det)


def canonicalize_ball(raw_vertices: Sequence) -> UnitBall2D:
    """Symmetric convex hull of ``raw ∪ -raw`` as a canonical :class:`UnitBall2D`."""
    if not raw_vertices:
        raise ValueError("empty vertex list")
    pts: list[Vec2] = []
    for p in raw_vertices:
        v = p if isinstance(p, Vec2) and type(p.x) is type(ZERO) else Vec2.of(*p)
        pts.append(v)
        pts.append(-v)
    hull = convex_hull(pts)
    if len(hull) < 3:
        raise DegenerateBall("symmetric hull is flat; 0 is not an interior point")
    # every hull of a symmetric set with positive area has 0 strictly inside
    start = 0
    for k in range(1, len(hull)):
        if _angle_key_less(hull[k], hull[start]):
            start = k
    verts = tuple(hull[start:] + hull[:start])
    n = len(verts)
    facets = tuple(_facet(verts[k], verts[(k + 1) % n]) for k in range(n))
    return UnitBall2D(verts, facets)


def norm_eval(ball: UnitBall2D, p: Vec2) -> Q:
    """Minkowski functional of ``ball`` at ``p``: the largest facet functional value."""
    px, py = p
    best = ZERO
    # facets come in +/- pairs, so |u.p| over the first half is enough
    for ux, uy in ball.facets[: len(ball.facets) // 2]:
        val = ux * px + uy * py
        if val < 0:
            val = -val
        if val > best:
            best = val
    return best


def locate(ball: UnitBall2D, p: Vec2) -> int:
    """Index k of the edge cone ``[v_k, v_{k+1})`` containing the direction of ``p``."""
    if p.is_zero():
        raise ValueError("zero vector has no direction")
    verts = ball.vertices
    n = len(verts)
    for k in range(n):
        if cross(verts[k], p) >= 0 and cross(verts[(k + 1) % n], p) < 0:
            return k
    raise AssertionError("direction not located; ball invariants broken")


def boundary_point(ball: UnitBall2D, t) -> Vec2:
    """Point of the boundary at parameter ``t`` in [0, 1); each edge gets width 1/n."""
    t = as_q(t)
    if not (0 <= t < 1):
        raise ValueError(f"boundary parameter must lie in [0, 1), got {format_q(t)}")
    n = ball.n
    scaled = t * n
    k = int(math.floor(scaled))
    s = scaled - k
    a, b = ball.edge(k)
    return a + (b - a) * s


def boundary_param(ball: UnitBall2D, p: Vec2) -> Q:
    """Inverse of :func:`boundary_point`; non-unit ``p`` is projected radially."""
    k = locate(ball, p)
    a, b = ball.edge(k)
    s = cross(a, p) / cross(a, b)
    r = norm_eval(ball, p)
    s = s / r
    return (k + s) / ball.n


def _walk(ball: UnitBall2D, t0: Q, t1: Q) -> list[Vec2]:
    """Boundary points from t0 CCW to t1 (t1 may exceed 1 to wrap), with all vertices between."""
    n = ball.n
    pts = [boundary_point(ball, t0 % 1)]
    k = int(math.floor(t0 * n)) + 1
    while Q(k, n) < t1:
        pts.append(ball.vertex(k))
        k += 1
    if t1 > t0:
        pts.append(boundary_point(ball, t1 % 1))
    return pts


def arc_between(ball: UnitBall2D, a: Vec2, b: Vec2) -> list[tuple[Vec2, Vec2]]:
    """The shorter boundary arc from ``a`` to ``b`` as a chain of edge fragments.

    The arc is the part of the boundary inside the cone spanned by ``a`` and
    ``b``.  Fragments run from ``a`` towards ``b``; ``a == b`` gives an empty chain.
    """
    if a == -b:
        raise AntipodalPair("shorter arc between antipodal points is undefined")
    if a == b:
        return []
    ta, tb = boundary_param(ball, a), boundary_param(ball, b)
    if cross(a, b) > 0:
        pts = _walk(ball, ta, tb if tb > ta else tb + 1)
    else:
        pts = _walk(ball, tb, ta if ta > tb else ta + 1)[::-1]
    return list(zip(pts[:-1], pts[1:]))


def is_segment_arc(ball: UnitBall2D, a: Vec2, b: Vec2) -> bool:
    """True when the arc [a, b] equals the straight segment from a to b."""
    return len(arc_between(ball, a, b)) <= 1


def self_perimeter(ball: UnitBall2D) -> Q:
    """Length of the boundary measured in its own norm."""
    return sum((norm_eval(ball, b - a) for a, b in (ball.edge(k) for k in range(ball.n))), ZERO)


def linear_image(ball: UnitBall2D, matrix) -> UnitBall2D:
    """Ball T(B) for the invertible linear map ``T = [[a, b], [c, d]]``."""
    (a, b), (c, d) = [[as_q(e) for e in row] for row in matrix]
    if a * d - b * c == 0:
        raise ValueError("singular linear map")
    return canonicalize_ball([Vec2(a * v.x + b * v.y, c * v.x + d * v.y) for v in ball.vertices])


def ball_to_json(ball: UnitBall2D) -> dict:
    return {"vertices": [v.strings() for v in ball.vertices]}


def ball_from_json(data: dict) -> UnitBall2D:
    try:
        raw = data["vertices"]
    except (KeyError, TypeError):
        raise ValueError("ball JSON needs a 'vertices' list") from None
    pts = []
    for i, item in enumerate(raw):
        if len(item) != 2:
            raise ValueError(f"vertex {i}: expected two coordinates")
        pts.append(Vec2(parse_q(str(item[0])), parse_q(str(item[1]))))
    return canonicalize_ball(pts)


def load_ball(path: str | Path) -> UnitBall2D:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}: {exc.msg}") from None
    try:
        return ball_from_json(data)
    except (ValueError, TypeError) as exc:
        raise type(exc)(f"{path}: {exc}") from None


def save_ball(ball: UnitBall2D, path: str | Path) -> None:
    from .report import dumps

    Path(path).write_text(dumps(ball_to_json(ball)))


SQUARE = canonicalize_ball([(1, 0), (0, 1)])
HEXAGON = canonicalize_ball([(1, 0), (0, 1), (-1, 1)])
