"""Seeded instance generators and verification campaigns.

Every instance draws from its own ``random.Random`` seeded by
``"{claim}:{seed}:{index}"``, so results do not depend on worker count or
scheduling; campaign reports are merged in index order.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Sequence

from .geometry import (
    HEXAGON,
    SQUARE,
    DegenerateBall,
    UnitBall2D,
    Vec2,
    boundary_point,
    canonicalize_ball,
    linear_image,
    self_perimeter,
)
from .hexagon import BallKind, MonotonicityViolation, classify, inscribe, monotonicity_scan
from .lemmas import (
    LemmaParams,
    epsilon_delta_consistency,
    lemma43_check,
    lemma44_check,
)
from .minmax import (
    HullBody,
    InvalidConfiguration,
    bcp_compare,
    f_min_exact,
    verify_hullnorm,
    verify_lemma42,
    verify_thm31,
    verify_thm32,
)
from .rational import Q
from .report import CampaignReport, VerifyReport

__all__ = [
    "default_workers",
    "parallel_map",
    "instance_rng",
    "random_rational",
    "random_ball",
    "random_boundary_point",
    "random_linear_map",
    "random_parallelogram",
    "random_affine_hexagon",
    "random_other_ball",
    "random_lemma_params",
    "random_hull_body",
    "CAMPAIGNS",
    "run_campaign",
]


def default_workers() -> int:
    cap = os.environ.get("HEXNORM_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"HEXNORM_THREADS must be an integer, got {cap!r}") from None
    return n


def parallel_map(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    """Ordered map; runs in-process when one worker is enough."""
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def instance_rng(claim: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{claim}:{seed}:{index}")


# -- 2D generators ---------------------------------------------------------------------


def random_rational(rng: random.Random, lo: int, hi: int, denom_bound: int) -> Q:
    """Uniform p/q in [lo, hi] with q <= denom_bound."""
    q = rng.randint(1, denom_bound)
    return Q(rng.randint(lo * q, hi * q), q)


def _circle_point(rng: random.Random, denom_bound: int) -> Vec2:
    # rational point on the Euclidean unit circle, scaled into [1/2, 1]
    t = random_rational(rng, -3, 3, min(denom_bound, 50))
    c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
    r = Q(rng.randint(denom_bound // 2 + 1, denom_bound), denom_bound)
    if rng.random() < 0.5:
        c, s = -c, s
    return Vec2(c * r, s * r)


def random_ball(rng: random.Random, denom_bound: int = 1000) -> UnitBall2D:
    """Random symmetric polygon.

    Half the draws use lattice points with denominators <= denom_bound; the
    rest use rational points of the Euclidean circle, giving many-sided balls.
    """
    while True:
        if rng.random() < 0.5:
            k = rng.randint(2, 6)
            pts = [
                Vec2(random_rational(rng, -1, 1, denom_bound), random_rational(rng, -1, 1, denom_bound))
                for _ in range(k)
            ]
        else:
            k = rng.randint(2, 8)
            pts = [_circle_point(rng, denom_bound) for _ in range(k)]
        try:
            return canonicalize_ball(pts)
        except DegenerateBall:
            continue


def random_boundary_point(rng: random.Random, ball: UnitBall2D, denom_bound: int = 1000) -> Vec2:
    return boundary_point(ball, Q(rng.randrange(denom_bound), denom_bound))


def random_linear_map(rng: random.Random) -> list[list[Q]]:
    while True:
        m = [[Q(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            return m


def random_parallelogram(rng: random.Random) -> UnitBall2D:
    return linear_image(SQUARE, random_linear_map(rng))


def random_affine_hexagon(rng: random.Random) -> UnitBall2D:
    return linear_image(HEXAGON, random_linear_map(rng))


def random_other_ball(rng: random.Random, denom_bound: int = 1000) -> UnitBall2D:
    while True:
        ball = random_ball(rng, denom_bound)
        if classify(ball).kind is BallKind.OTHER:
            return ball


def random_lemma_params(rng: random.Random, denom_bound: int = 1000, stratum: str | None = None) -> LemmaParams:
    """Random (a, b) in the closed domain.

    Strata: ``generic``, ``boundary`` (some a_i + b_{i+2} = 1), ``equality``
    (a_i = a, b_i = 1 - a), ``perturbed`` (one coordinate of an equality
    instance moved).  ``None`` mixes them.
    """
    if stratum is None:
        r = rng.random()
        stratum = "generic" if r < 0.8 else "boundary" if r < 0.9 else "equality" if r < 0.95 else "perturbed"

    def unit():
        q = rng.randint(2, denom_bound)
        return Q(rng.randint(1, q - 1), q)

    if stratum in ("equality", "perturbed"):
        a = unit()
        av, bv = [a] * 3, [1 - a] * 3
        if stratum == "perturbed":
            while True:
                which, i = rng.choice("ab"), rng.randrange(3)
                vals = list(av if which == "a" else bv)
                vals[i] = unit()
                cand = (vals, bv) if which == "a" else (av, vals)
                if vals[i] == (av if which == "a" else bv)[i]:
                    continue
                try:
                    return LemmaParams.of(*cand)
                except ValueError:
                    continue
        return LemmaParams.of(av, bv)

    while True:
        a = [unit() for _ in range(3)]
        b: list[Any] = [None] * 3
        ok = True
        for i in range(3):
            room = 1 - a[i]  # b_{i+2} <= 1 - a_i
            j = (i + 2) % 3
            if stratum == "boundary" and (i == 0 or rng.random() < 0.3):
                b[j] = room
                continue
            q = rng.randint(2, denom_bound)
            top = int(room * q)
            if top < 1:
                ok = False
                break
            b[j] = Q(rng.randint(1, top), q)
        if ok:
            try:
                return LemmaParams.of(a, b)
            except ValueError:
                continue


def random_hull_body(rng: random.Random, denom_bound: int = 1000) -> HullBody:
    """Admissible hull configuration in the open domain on a random inscribed hexagon."""
    ball = random_ball(rng, denom_bound)
    hexagon = inscribe(ball, random_boundary_point(rng, ball, denom_bound))
    while True:
        x = [Q(rng.randint(1, denom_bound - 1), denom_bound) for _ in range(3)]
        y = [Q(rng.randint(1, denom_bound - 1), denom_bound) for _ in range(3)]
        try:
            body = HullBody.build(hexagon, x, y)
        except InvalidConfiguration:
            continue
        if not body.degenerate:
            return body


# -- per-instance workers ----------------------------------------------------------------


def _thm31(seed: int, i: int, denom: int):
    rng = instance_rng("thm31", seed, i)
    ball = random_ball(rng, denom)
    v1 = random_boundary_point(rng, ball, denom)
    rep = verify_thm31(ball, v1, seed=seed)
    return rep, {"index": i, "n": ball.n, "min_f": rep.values["min"], "min_index": rep.values["min_index"]}


def _thm32_instance(seed: int, i: int, denom: int) -> tuple[str, UnitBall2D]:
    rng = instance_rng("thm32", seed, i)
    if i < 100:
        return "parallelogram", random_parallelogram(rng)
    if i < 200:
        return "hexagon", random_affine_hexagon(rng)
    return "other", random_other_ball(rng, denom)


def _thm32(seed: int, i: int, denom: int):
    stratum, ball = _thm32_instance(seed, i, denom)
    rep = verify_thm32(ball, seed=seed)
    expected = {"parallelogram": "Parallelogram", "hexagon": "AffineRegularHexagon", "other": "Other"}[stratum]
    if rep.values["class"] != expected:
        rep.passed = False
        rep.notes.append(f"stratum {stratum} classified as {rep.values['class']}")
    return rep, {"index": i, "stratum": stratum, "n": ball.n, "min_f": rep.values["min_value"], "class": rep.values["class"]}


def _lemma42(seed: int, i: int, denom: int):
    rng = instance_rng("lemma42", seed, i)
    ball = random_ball(rng, denom)
    hexagon = inscribe(ball, random_boundary_point(rng, ball, denom))
    rep = verify_lemma42(ball, hexagon, seed=seed)
    return rep, {"index": i, "n": ball.n, "max_value": rep.values["max_value"], "equality": rep.equality}


def _lemma43(seed: int, i: int, denom: int):
    p = random_lemma_params(instance_rng("lemma43", seed, i), denom)
    rep = lemma43_check(p, seed=seed)
    return rep, {"index": i, "min_s": rep.values["claims"]["1"], "equality": rep.equality}


def _lemma44(seed: int, i: int, denom: int):
    p = random_lemma_params(instance_rng("lemma44", seed, i), denom)
    rep = lemma44_check(p, seed=seed)
    return rep, {"index": i, "min_M": rep.values["min_M"], "case": rep.values["case"], "equality": rep.equality}


def _epsdelta(seed: int, i: int, denom: int):
    p = random_lemma_params(instance_rng("epsdelta", seed, i), denom)
    rep = epsilon_delta_consistency(p, seed=seed)
    return rep, {"index": i, "case": rep.values["case"]}


def _hullnorm(seed: int, i: int, denom: int):
    body = random_hull_body(instance_rng("hullnorm", seed, i), denom)
    rep = verify_hullnorm(body, seed=seed)
    return rep, {"index": i, "min_M": min(rep.values["M"])}


def _bcp(seed: int, i: int, denom: int):
    ball = random_ball(instance_rng("bcp", seed, i), denom)
    rep = bcp_compare(ball, seed=seed)
    return rep, {
        "index": i,
        "n": ball.n,
        "perimeter": rep.values["perimeter"],
        "min_f": rep.values["min_f"],
        "bound_hi": rep.values["bound_interval"][1],
    }


def _monotonicity(seed: int, i: int, denom: int):
    rng = instance_rng("monotonicity", seed, i)
    ball = random_ball(rng, denom)
    v1 = random_boundary_point(rng, ball, denom)
    try:
        scan = monotonicity_scan(ball, v1, samples=8)
        ok = scan[0][1] == 0 and scan[-1][1] == 2
        note = [] if ok else ["endpoint distances are not 0 and 2"]
    except MonotonicityViolation as exc:
        scan, ok, note = [], False, [str(exc)]
    rep = VerifyReport(
        claim="monotonicity",
        passed=ok,
        seed=seed,
        instance={"ball": [v.strings() for v in ball.vertices], "v1": v1.strings()},
        values={"points": len(scan)},
        notes=note,
    )
    return rep, {"index": i, "n": ball.n, "points": len(scan)}


def _minmax(seed: int, i: int, denom: int):
    ball = random_ball(instance_rng("minmax", seed, i), denom)
    cert = f_min_exact(ball)
    rep = VerifyReport(
        claim="minmax",
        passed=2 <= cert.min_value <= 3,
        equality=cert.equality3,
        seed=seed,
        instance={"ball": [v.strings() for v in ball.vertices]},
        values={"min_value": cert.min_value, "perimeter": self_perimeter(ball)},
    )
    return rep, {"index": i, "n": ball.n, "min_f": cert.min_value}


CAMPAIGNS: dict[str, Callable] = {
    "thm31": _thm31,
    "thm32": _thm32,
    "lemma42": _lemma42,
    "lemma43": _lemma43,
    "lemma44": _lemma44,
    "epsdelta": _epsdelta,
    "hullnorm": _hullnorm,
    "bcp": _bcp,
    "monotonicity": _monotonicity,
    "minmax": _minmax,
}

# trial counts used when a campaign is run without --trials
DEFAULT_TRIALS = {
    "thm31": 1000,
    "thm32": 500,
    "lemma42": 500,
    "lemma43": 100_000,
    "lemma44": 100_000,
    "epsdelta": 10_000,
    "hullnorm": 1000,
    "bcp": 200,
    "monotonicity": 500,
    "minmax": 200,
}


def _job(args: tuple[str, int, int, int]):
    claim, seed, i, denom = args
    rep, row = CAMPAIGNS[claim](seed, i, denom)
    # ship only failures back across processes
    return rep.passed, bool(rep.equality), row, None if rep.passed else rep


def run_campaign(
    claim: str,
    trials: int,
    seed: int,
    denom_bound: int = 1000,
    workers: int | None = None,
    keep_rows: bool = False,
) -> CampaignReport:
    if claim not in CAMPAIGNS:
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(sorted(CAMPAIGNS))}")
    if trials < 1:
        raise ValueError("trials must be positive")
    jobs = [(claim, seed, i, denom_bound) for i in range(trials)]
    results = parallel_map(_job, jobs, workers)
    report = CampaignReport(claim=claim, seed=seed, trials=trials)
    extremes: dict[str, Any] = {}
    for passed, equality, row, failure in results:
        if passed:
            report.passed_count += 1
        else:
            report.failures.append(failure)
        if equality:
            report.equality_count += 1
        if keep_rows:
            report.rows.append(row)
        for key, val in row.items():
            if key in ("index", "equality") or isinstance(val, (str, bool)):
                continue
            lo, hi = extremes.get(key, (val, val))
            extremes[key] = (min(lo, val), max(hi, val))
    report.summary = {key: {"min": lo, "max": hi} for key, (lo, hi) in extremes.items()}
    report.summary["denom_bound"] = denom_bound
    return report
