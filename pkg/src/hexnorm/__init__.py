"""Exact rational tools for the min-max functional f(y) = max_x ||x - y|| + ||x + y||
on polygonal normed planes, with randomized checks in higher dimensions."""
from .geometry import (
    HEXAGON,
    SQUARE,
    UnitBall2D,
    Vec2,
    boundary_point,
    canonicalize_ball,
    load_ball,
    norm_eval,
    save_ball,
)
from .hexagon import BallKind, Hexagon, classify, inscribe
from .minmax import f_eval, f_min_exact
from .rational import Q

__all__ = [
    "HEXAGON",
    "SQUARE",
    "UnitBall2D",
    "Vec2",
    "Q",
    "BallKind",
    "Hexagon",
    "boundary_point",
    "canonicalize_ball",
    "classify",
    "f_eval",
    "f_min_exact",
    "inscribe",
    "load_ball",
    "norm_eval",
    "save_ball",
]
