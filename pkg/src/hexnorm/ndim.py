"""Min-max functional in n dimensions: the 1-norm value and a randomized search.

Only upper bounds on min_y f(y) are certified here.  A float LP on each facet
proposes a boundary point y; the point is rounded to rationals, pushed back to
the boundary exactly, and f is evaluated in exact arithmetic.  The resulting
number is a true value of f on S, hence a true upper bound on the minimum.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .rational import ZERO, Q, as_q, format_q
from .report import VerifyReport

__all__ = [
    "CrossPolytope",
    "NDPolytopeBall",
    "DegenerateND",
    "conjectured_bound",
    "l1_minmax_value",
    "search_upper_bound",
    "random_polytope",
    "conjecture_search",
]

Point = tuple[Q, ...]


class DegenerateND(ValueError):
    pass


def conjectured_bound(n: int) -> Q:
    return 4 - Q(2, n)


@dataclass(frozen=True)
class CrossPolytope:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be at least 2")

    @property
    def vertices(self) -> list[Point]:
        out = []
        for i in range(self.n):
            for sign in (1, -1):
                out.append(tuple(Q(sign) if j == i else ZERO for j in range(self.n)))
        return out

    def norm(self, p: Sequence[Q]) -> Q:
        return sum((abs(c) for c in p), ZERO)

    def f(self, y: Sequence[Q]) -> Q:
        best = ZERO
        for i in range(self.n):
            # x = e_i (and -e_i gives the same sum)
            minus = self.norm([(1 if j == i else 0) - c for j, c in enumerate(y)])
            plus = self.norm([(1 if j == i else 0) + c for j, c in enumerate(y)])
            best = max(best, minus + plus)
        return best


def _solve_exact(rows: list[list[Q]], rhs: list[Q]) -> list[Q] | None:
    """Gauss-Jordan on a square exact system; None if singular."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [e * inv for e in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                k = m[r][col]
                m[r] = [a - k * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _rank(points: Sequence[Point]) -> int:
    rows = [list(p) for p in points]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                k = rows[r][col] / rows[rank][col]
                rows[r] = [a - k * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _dot(u: Sequence[Q], p: Sequence[Q]) -> Q:
    return sum((a * b for a, b in zip(u, p)), ZERO)


@dataclass(frozen=True)
class NDPolytopeBall:
    """Symmetric polytope conv(±points) with exact facet functionals (u . x <= 1)."""

    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Point, ...]

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "NDPolytopeBall":
        pts = {tuple(as_q(c) for c in p) for p in points}
        pts |= {tuple(-c for c in p) for p in pts}
        pts.discard(tuple(ZERO for _ in next(iter(pts))))
        pts_list = sorted(pts)
        dim = len(pts_list[0])
        if _rank(pts_list) < dim:
            raise DegenerateND("points do not span the space; 0 is not interior")
        facets = set()
        for subset in combinations(pts_list, dim):
            u = _solve_exact([list(p) for p in subset], [Q(1)] * dim)
            if u is None:
                continue
            if all(_dot(u, p) <= 1 for p in pts_list):
                facets.add(tuple(u))
        facet_list = sorted(facets)
        verts = tuple(p for p in pts_list if sum(1 for u in facet_list if _dot(u, p) == 1) >= dim)
        return cls(dim, verts, tuple(facet_list))

    @classmethod
    def cross_polytope(cls, n: int) -> "NDPolytopeBall":
        return cls.from_points(CrossPolytope(n).vertices)

    def norm(self, p: Sequence[Q]) -> Q:
        return max(_dot(u, p) for u in self.facets)

    def f(self, y: Sequence[Q]) -> Q:
        best = ZERO
        seen = set()
        for x in self.vertices:
            if tuple(-c for c in x) in seen:
                continue
            seen.add(x)
            minus = self.norm([a - b for a, b in zip(x, y)])
            plus = self.norm([a + b for a, b in zip(x, y)])
            best = max(best, minus + plus)
        return best

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[format_q(c) for c in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "NDPolytopeBall":
        ball = cls.from_points([[as_q(c) for c in v] for v in data["vertices"]])
        if "dim" in data and int(data["dim"]) != ball.dim:
            raise ValueError("dim does not match vertex length")
        return ball


def l1_minmax_value(n: int, samples: int = 200, seed: int = 0) -> Q:
    """f(y*) at y* = (1/n, ..., 1/n) for the 1-norm on R^n.

    Cross-checks that no facet-edge midpoint and no sampled facet point has a
    smaller value; raises AssertionError otherwise.
    """
    cp = CrossPolytope(n)
    y_star = tuple(Q(1, n) for _ in range(n))
    value = cp.f(y_star)
    # midpoints of edges (±e_i ± e_j) / 2
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            y = [ZERO] * n
            y[i], y[j] = Q(si, 2), Q(sj, 2)
            assert cp.f(y) >= value, f"edge midpoint {y} beats y*"
    rng = random.Random(seed)
    for _ in range(samples):
        w = [Q(rng.randint(1, 1000)) for _ in range(n)]
        total = sum(w, ZERO)
        signs = [rng.choice((1, -1)) for _ in range(n)]
        y = [s * c / total for s, c in zip(signs, w)]
        assert cp.norm(y) == 1
        assert cp.f(y) >= value, f"facet point {y} beats y*"
    return value


def _facet_lp(ball: NDPolytopeBall, facet_index: int, reps: list[Point]) -> np.ndarray | None:
    n, m = ball.dim, len(reps)
    U = np.array([[float(c) for c in u] for u in ball.facets])
    X = np.array([[float(c) for c in x] for x in reps])
    nvar = n + 2 * m + 1
    rows, rhs = [], []
    ux = X @ U.T  # m x F
    for j in range(m):
        for f in range(len(U)):
            row = np.zeros(nvar)
            row[:n] = -U[f]
            row[n + j] = -1
            rows.append(row)
            rhs.append(-ux[j, f])
            row = np.zeros(nvar)
            row[:n] = U[f]
            row[n + m + j] = -1
            rows.append(row)
            rhs.append(-ux[j, f])
        row = np.zeros(nvar)
        row[n + j] = row[n + m + j] = 1
        row[-1] = -1
        rows.append(row)
        rhs.append(0.0)
    for f in range(len(U)):
        row = np.zeros(nvar)
        row[:n] = U[f]
        rows.append(row)
        rhs.append(1.0)
    eq = np.zeros((1, nvar))
    eq[0, :n] = U[facet_index]
    c = np.zeros(nvar)
    c[-1] = 1
    res = linprog(
        c,
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        A_eq=eq,
        b_eq=[1.0],
        bounds=[(None, None)] * nvar,
        method="highs",
    )
    if res.status != 0:
        return None
    return res.x[:n]


def _exact_boundary(ball: NDPolytopeBall, y_float: np.ndarray, max_den: int) -> Point | None:
    y = tuple(Q(Fraction(float(c)).limit_denominator(max_den)) for c in y_float)
    if all(c == 0 for c in y):
        return None
    r = ball.norm(y)
    return tuple(c / r for c in y)


def search_upper_bound(ball: NDPolytopeBall) -> tuple[Q, Point]:
    """Exact f-value at the best boundary point found; an upper bound on min f.

    Float LPs only propose points; the returned value is computed exactly at
    an exact boundary point.
    """
    reps: list[Point] = []
    for x in ball.vertices:
        if tuple(-c for c in x) not in reps:
            reps.append(x)
    best: tuple[Q, Point] | None = None
    done = set()
    for k, u in enumerate(ball.facets):
        neg = tuple(-c for c in u)
        if neg in done:
            continue  # f(-y) = f(y)
        done.add(u)
        y_float = _facet_lp(ball, k, reps)
        if y_float is None:
            continue
        for max_den in (10, 100, 1000, 10**4, 10**6, 10**9):
            y = _exact_boundary(ball, y_float, max_den)
            if y is None:
                continue
            val = ball.f(y)
            if best is None or val < best[0]:
                best = (val, y)
    if best is None:
        raise RuntimeError("no facet LP succeeded")
    return best


def random_polytope(n: int, rng: random.Random, k: int | None = None, lattice: int = 5) -> NDPolytopeBall:
    """Symmetric hull of k random integer points in [-lattice, lattice]^n."""
    k = k if k is not None else n + 3
    while True:
        pts = [tuple(rng.randint(-lattice, lattice) for _ in range(n)) for _ in range(k)]
        try:
            return NDPolytopeBall.from_points(pts)
        except (DegenerateND, StopIteration):
            continue


def _trial(args: tuple[int, int, int, int | None, int]) -> dict:
    n, seed, trial, k, lattice = args
    rng = random.Random(f"{seed}:{trial}")
    ball = random_polytope(n, rng, k, lattice)
    value, y = search_upper_bound(ball)
    return {"trial": trial, "ball": ball, "upper_bound": value, "y": y}


def conjecture_search(
    n: int,
    trials: int,
    seed: int,
    k: int | None = None,
    lattice: int = 5,
    workers: int = 1,
) -> VerifyReport:
    """Look for symmetric polytopes whose best found min-max value exceeds 4 - 2/n.

    A candidate is an instance whose exact upper bound exceeds the
    conjectured value.  That only means the search did not find a point below
    the bound; it is not a proof of a counterexample.
    """
    if n < 2 or trials < 1:
        raise ValueError("need n >= 2 and trials >= 1")
    from .fuzz import parallel_map

    bound = conjectured_bound(n)
    results = parallel_map(_trial, [(n, seed, t, k, lattice) for t in range(trials)], workers)
    uppers = [r["upper_bound"] for r in results]
    candidates = [
        {
            "trial": r["trial"],
            "upper_bound": r["upper_bound"],
            "y": [format_q(c) for c in r["y"]],
            "ball": r["ball"].to_json(),
        }
        for r in results
        if r["upper_bound"] > bound
    ]
    worst = max(uppers)
    return VerifyReport(
        claim="conjecture",
        passed=not candidates,
        equality=any(u == bound for u in uppers),
        seed=seed,
        instance={"dim": n, "trials": trials, "k": k if k is not None else n + 3, "lattice": lattice},
        values={
            "bound": bound,
            "max_upper_bound": worst,
            "max_upper_bound_approx": float(worst),
            "slack": bound - worst,
            "upper_bounds": uppers,
            "candidates": candidates,
            "exact": True,
        },
    )
