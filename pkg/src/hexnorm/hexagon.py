"""Affine regular hexagons inscribed in a polygonal unit circle."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .geometry import (
    UnitBall2D,
    Vec2,
    _walk,
    boundary_param,
    boundary_point,
    cross,
    norm_eval,
)
from .rational import Q

__all__ = [
    "Hexagon",
    "InvalidHexagon",
    "BallKind",
    "BallClass",
    "MonotonicityViolation",
    "inscribe",
    "classify",
    "monotonicity_scan",
]


class InvalidHexagon(ValueError):
    pass


class MonotonicityViolation(AssertionError):
    """Distance from v1 decreased along the boundary.  Indicates a geometry bug."""

    def __init__(self, before: tuple[Q, Q], after: tuple[Q, Q]):
        super().__init__(f"distance decreased from {before[1]} (t={before[0]}) to {after[1]} (t={after[0]})")
        self.before = before
        self.after = after


@dataclass(frozen=True)
class Hexagon:
    """Vertex set {±v1, ±v2, ±v3} with v3 = v2 - v1, all on the unit circle."""

    v1: Vec2
    v2: Vec2
    v3: Vec2

    @classmethod
    def from_pair(cls, ball: UnitBall2D, v1: Vec2, v2: Vec2) -> "Hexagon":
        hexagon = cls(v1, v2, v2 - v1)
        hexagon.check(ball)
        return hexagon

    @property
    def vertices(self) -> tuple[Vec2, Vec2, Vec2]:
        return (self.v1, self.v2, self.v3)

    def check(self, ball: UnitBall2D) -> None:
        v1, v2, v3 = self.vertices
        for name, v in (("v1", v1), ("v2", v2), ("v3", v3)):
            if norm_eval(ball, v) != 1:
                raise InvalidHexagon(f"{name} is not on the unit circle")
        if v3 != v2 - v1:
            raise InvalidHexagon("v3 must equal v2 - v1")
        if norm_eval(ball, v2 - v1) != 1:
            raise InvalidHexagon("||v2 - v1|| must be 1")
        if cross(v1, v2) <= 0:
            raise InvalidHexagon("v2 must lie strictly counter-clockwise of v1, before -v1")


def _first_unit_crossing(ball: UnitBall2D, origin: Vec2, p: Vec2, q: Vec2) -> Q | None:
    """Smallest s in [0, 1] with ||p + s(q - p) - origin|| = 1, or None.

    Assumes the distance at s = 0 is below 1; the distance is convex in s, so
    the sublevel set {<= 1} is an interval starting at 0.
    """
    c0 = p - origin
    d = q - p
    best: Q | None = None
    for u in ball.facets:
        slope = u.x * d.x + u.y * d.y
        if slope > 0:
            s = (1 - (u.x * c0.x + u.y * c0.y)) / slope
            if best is None or s < best:
                best = s
    if best is None or best > 1:
        return None
    return best


def inscribe(ball: UnitBall2D, v1: Vec2) -> Hexagon:
    """Inscribe the affine regular hexagon that starts at ``v1``.

    ``v2`` is the first boundary point counter-clockwise from ``v1`` at
    distance exactly 1 from it.  On a flat stretch of distance 1 this is the
    start of the stretch.
    """
    if norm_eval(ball, v1) != 1:
        raise ValueError("v1 must lie on the unit circle")
    t1 = boundary_param(ball, v1)
    path = _walk(ball, t1, t1 + Q(1, 2))
    for p, q in zip(path[:-1], path[1:]):
        if norm_eval(ball, q - v1) < 1:
            continue
        s = _first_unit_crossing(ball, v1, p, q)
        assert s is not None, "distance reached 1 on a fragment without crossing"
        v2 = p + (q - p) * s
        return Hexagon.from_pair(ball, v1, v2)
    raise AssertionError("distance never reached 1 before -v1")  # ||-v1 - v1|| = 2


class BallKind(str, Enum):
    PARALLELOGRAM = "Parallelogram"
    AFFINE_REGULAR_HEXAGON = "AffineRegularHexagon"
    OTHER = "Other"


@dataclass(frozen=True)
class BallClass:
    kind: BallKind
    witness: tuple[Vec2, ...] | None = None

    @property
    def is_extremal(self) -> bool:
        return self.kind is not BallKind.OTHER


def classify(ball: UnitBall2D) -> BallClass:
    n = ball.n
    if n == 4:
        return BallClass(BallKind.PARALLELOGRAM, ball.vertices[:2])
    if n == 6:
        for j in range(6):
            w1, w2, w3 = ball.vertex(j), ball.vertex(j + 1), ball.vertex(j + 2)
            if w3 == w2 - w1:
                return BallClass(BallKind.AFFINE_REGULAR_HEXAGON, (w1, w2, w3))
    return BallClass(BallKind.OTHER)


def monotonicity_scan(ball: UnitBall2D, v1: Vec2, samples: int = 16) -> list[tuple[Q, Q]]:
    """Distances ``||x(t) - v1||`` along the boundary from v1 to -v1.

    Returns ``(t, distance)`` pairs in path order, where ``t`` is the boundary
    parameter (reduced mod 1) of ``x``.  The pairs cover every vertex on the
    path and ``samples`` evenly spaced parameters.  Raises
    :class:`MonotonicityViolation` if a distance ever decreases.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if norm_eval(ball, v1) != 1:
        raise ValueError("v1 must lie on the unit circle")
    t1 = boundary_param(ball, v1)
    half = Q(1, 2)
    n = ball.n
    offsets = {Q(0), half}
    offsets.update(half * Q(j, samples) for j in range(1, samples))
    k = int(t1 * n) + 1
    while Q(k, n) < t1 + half:
        offsets.add(Q(k, n) - t1)
        k += 1
    out: list[tuple[Q, Q]] = []
    for off in sorted(offsets):
        t = (t1 + off) % 1
        x = boundary_point(ball, t)
        out.append((t, norm_eval(ball, x - v1)))
    for before, after in zip(out[:-1], out[1:]):
        if after[1] < before[1]:
            raise MonotonicityViolation(before, after)
    return out
