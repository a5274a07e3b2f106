"""Command-line front end.

Exit status: 0 when every checked assertion holds, 1 when one fails (the
failing instance is printed to stderr), 2 for bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any

from .fuzz import CAMPAIGNS, DEFAULT_TRIALS, default_workers, run_campaign
from .geometry import HEXAGON, UnitBall2D, Vec2, ball_to_json, load_ball, self_perimeter
from .hexagon import MonotonicityViolation, classify, inscribe, monotonicity_scan
from .lemmas import LemmaParams, case_cover_check, lemma43_check, lemma44_check
from .minmax import (
    HullBody,
    bcp_compare,
    f_eval,
    f_min_exact,
    verify_hullnorm,
    verify_lemma42,
    verify_thm31,
    verify_thm32,
)
from .ndim import conjecture_search
from .rational import parse_tuple
from .report import CampaignReport, VerifyReport, dumps, jsonify
from .svg import OVERLAYS, render_svg

__all__ = ["RunConfig", "build_parser", "run", "main"]

VERIFY_CLAIMS = ("thm31", "thm32", "lemma42", "lemma43", "lemma44", "cases", "bcp", "hullnorm")
# verify claims that need a ball when run on a single instance
_BALL_CLAIMS = {"thm31", "thm32", "lemma42", "bcp"}


class UsageError(ValueError):
    pass


class RunConfig(argparse.Namespace):
    """Parsed command line; attribute names follow the long flags."""


# -- parsing ---------------------------------------------------------------------------


def _point(text: str) -> Vec2:
    return Vec2(*parse_tuple(text, 2))


def _triple(text: str):
    values = parse_tuple(text)
    if len(values) == 1:
        return values * 3
    if len(values) != 3:
        raise ValueError(f"expected 1 or 3 comma-separated rationals in {text!r}")
    return values


def _add_common(p: argparse.ArgumentParser, formats=("json",)) -> None:
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0])


def _add_campaign(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.add_argument("--denom-bound", type=int, default=1000)
    p.add_argument("--workers", type=int, help="worker processes (capped by HEXNORM_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexnorm", description="Exact checks for max ||x-y|| + ||x+y|| on polygonal norms.")
    sub = parser.add_subparsers(dest="command", required=True)

    ball = sub.add_parser("ball", help="unit ball files").add_subparsers(dest="action", required=True)
    p = ball.add_parser("validate", help="canonicalize and describe a ball file")
    p.add_argument("--ball", required=True)
    p.add_argument("--save", help="also write the canonical ball JSON here")
    _add_common(p)

    hexa = sub.add_parser("hexagon", help="inscribed hexagons").add_subparsers(dest="action", required=True)
    p = hexa.add_parser("inscribe", help="inscribe the hexagon at v1 and scan ||x - v1||")
    p.add_argument("--ball", required=True)
    p.add_argument("--v1", required=True, type=_point)
    _add_common(p)

    fp = sub.add_parser("f", help="the functional f").add_subparsers(dest="action", required=True)
    p = fp.add_parser("eval", help="exact f(y)")
    p.add_argument("--ball", required=True)
    p.add_argument("--y", required=True, type=_point)
    _add_common(p)

    p = sub.add_parser("minmax", help="exact minimum of f on the unit circle")
    p.add_argument("--ball", required=True)
    p.add_argument("--figure", help="write a PNG of f along the boundary")
    _add_common(p, ("json", "csv"))

    p = sub.add_parser("verify", help="check one claim on an instance, or on a seeded campaign")
    p.add_argument("claim", choices=VERIFY_CLAIMS)
    p.add_argument("--ball", help="ball file (hullnorm: defaults to the regular hexagon)")
    p.add_argument("--v1", type=_point)
    p.add_argument("--a", type=_triple, help="a1,a2,a3 for lemma43/lemma44")
    p.add_argument("--b", type=_triple, help="b1,b2,b3 for lemma43/lemma44")
    p.add_argument("--x", type=_triple, help="x1,x2,x3 for hullnorm")
    p.add_argument("--y", type=_triple, help="y1,y2,y3 for hullnorm")
    _add_campaign(p)
    _add_common(p, ("json", "csv"))

    p = sub.add_parser("conjecture", help="search for polytopes above 4 - 2/n")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=int, help="random generators per polytope (default dim + 3)")
    p.add_argument("--lattice", type=int, default=5)
    _add_campaign(p)
    _add_common(p)

    p = sub.add_parser("fuzz", help="run seeded campaigns")
    p.add_argument("--claim", action="append", choices=sorted(CAMPAIGNS), help="repeatable; default all")
    p.add_argument("--figure", help="write histograms of the per-instance values (PNG)")
    _add_campaign(p)
    _add_common(p, ("json", "csv"))

    p = sub.add_parser("render", help="SVG picture of a ball")
    p.add_argument("--ball", required=True)
    p.add_argument("--overlay", action="append", choices=OVERLAYS, default=[])
    p.add_argument("--v1", type=_point, help="hexagon overlay start (default first vertex)")
    _add_common(p, ("svg",))
    return parser


# -- commands --------------------------------------------------------------------------


def _need_ball(cfg: RunConfig) -> UnitBall2D:
    if not cfg.ball:
        raise UsageError("--ball is required here")
    return load_ball(cfg.ball)


def _ball_validate(cfg: RunConfig):
    ball = load_ball(cfg.ball)  # reports parse errors with file:line
    raw = json.loads(Path(cfg.ball).read_text())
    if cfg.save:
        Path(cfg.save).write_text(dumps(ball_to_json(ball)))
    cls = classify(ball)
    return VerifyReport(
        claim="ball",
        passed=True,
        instance={"path": str(cfg.ball)},
        values={
            "vertices": ball_to_json(ball)["vertices"],
            "n": ball.n,
            "canonical_input": raw == ball_to_json(ball),
            "class": cls.kind,
            "perimeter": self_perimeter(ball),
        },
    )


def _hexagon_inscribe(cfg: RunConfig):
    ball = load_ball(cfg.ball)
    hexagon = inscribe(ball, cfg.v1)
    notes = []
    try:
        scan = monotonicity_scan(ball, cfg.v1)
        ok = True
    except MonotonicityViolation as exc:
        scan, ok = [], False
        notes.append(str(exc))
    return VerifyReport(
        claim="hexagon",
        passed=ok,
        instance={"ball": ball_to_json(ball)["vertices"], "v1": cfg.v1.strings()},
        values={
            "v2": hexagon.v2.strings(),
            "v3": hexagon.v3.strings(),
            "distance_scan": [[t, d] for t, d in scan],  # (t, ||x(t) - v1||)
        },
        notes=notes,
    )


def _f_eval(cfg: RunConfig):
    ball = load_ball(cfg.ball)
    fv = f_eval(ball, cfg.y)
    return VerifyReport(
        claim="f",
        passed=True,
        instance={"ball": ball_to_json(ball)["vertices"], "y": cfg.y.strings()},
        values={
            "value": fv.value,
            "value_approx": float(fv.value),
            "argmax": fv.argmax_vertex.strings(),
            "on_boundary": fv.on_boundary,
        },
    )


def _minmax(cfg: RunConfig):
    ball = load_ball(cfg.ball)
    cert = f_min_exact(ball)
    if cfg.figure:
        from .figures import f_profile_figure

        f_profile_figure(ball, cfg.figure)
    if cfg.format == "csv":
        rows = [
            {
                "edge": m.edge,
                "s_lo": m.lo,
                "s_hi": m.hi,
                "from_x": m.start.x,
                "from_y": m.start.y,
                "to_x": m.end.x,
                "to_y": m.end.y,
                "min_value": cert.min_value,
            }
            for m in cert.minimizers
        ]
        return True, _csv(rows)
    rep = VerifyReport(
        claim="minmax",
        passed=cert.min_value <= 3,
        equality=cert.equality3,
        instance={"ball": ball_to_json(ball)["vertices"]},
        values={
            "min_value": cert.min_value,
            "min_value_approx": float(cert.min_value),
            "minimizers": cert.minimizers,
            "whole_boundary": cert.covers_boundary(),
        },
    )
    return rep


def _single_instance(cfg: RunConfig) -> bool:
    claim = cfg.claim
    if claim == "cases":
        return True
    if claim in _BALL_CLAIMS:
        return cfg.ball is not None
    if claim in ("lemma43", "lemma44"):
        if (cfg.a is None) != (cfg.b is None):
            raise UsageError("--a and --b go together")
        return cfg.a is not None
    if claim == "hullnorm":
        if (cfg.x is None) != (cfg.y is None):
            raise UsageError("--x and --y go together")
        return cfg.x is not None
    raise AssertionError(claim)


def _verify_one(cfg: RunConfig) -> VerifyReport:
    claim = cfg.claim
    if claim == "cases":
        return case_cover_check()
    if claim in ("lemma43", "lemma44"):
        params = LemmaParams.of(cfg.a, cfg.b)
        check = lemma43_check if claim == "lemma43" else lemma44_check
        return check(params)
    if claim == "hullnorm":
        ball = load_ball(cfg.ball) if cfg.ball else HEXAGON
        hexagon = inscribe(ball, cfg.v1 if cfg.v1 is not None else ball.vertices[0])
        return verify_hullnorm(HullBody.build(hexagon, cfg.x, cfg.y))
    ball = _need_ball(cfg)
    if claim == "thm32":
        return verify_thm32(ball)
    if claim == "bcp":
        return bcp_compare(ball)
    if cfg.v1 is None:
        raise UsageError(f"{claim} needs --v1")
    if claim == "thm31":
        return verify_thm31(ball, cfg.v1)
    return verify_lemma42(ball, inscribe(ball, cfg.v1))


def _workers(cfg: RunConfig) -> int:
    cap = default_workers()
    return min(cfg.workers, cap) if cfg.workers else cap


def _trials(cfg: RunConfig, claim: str) -> int:
    return cfg.trials if cfg.trials is not None else DEFAULT_TRIALS[claim]


def _verify(cfg: RunConfig):
    if _single_instance(cfg):
        if cfg.format == "csv":
            raise UsageError("csv output is for campaigns; drop the instance flags or use json")
        return _verify_one(cfg)
    rep = run_campaign(
        cfg.claim,
        _trials(cfg, cfg.claim),
        cfg.seed,
        denom_bound=cfg.denom_bound,
        workers=_workers(cfg),
        keep_rows=cfg.format == "csv",
    )
    if cfg.format == "csv":
        return rep.passed, rep.to_csv(), rep
    return rep


def _conjecture(cfg: RunConfig):
    if cfg.dim < 2:
        raise UsageError("--dim must be at least 2")
    return conjecture_search(
        cfg.dim,
        cfg.trials if cfg.trials is not None else 100,
        cfg.seed,
        k=cfg.k,
        lattice=cfg.lattice,
        workers=_workers(cfg),
    )


def _fuzz(cfg: RunConfig):
    claims = cfg.claim or sorted(CAMPAIGNS)
    keep = cfg.format == "csv" or bool(cfg.figure)
    reports = [
        run_campaign(c, _trials(cfg, c), cfg.seed, cfg.denom_bound, _workers(cfg), keep_rows=keep)
        for c in claims
    ]
    if cfg.figure:
        from .figures import campaign_figure

        campaign_figure(reports, cfg.figure)
    ok = all(r.passed for r in reports)
    if cfg.format == "csv":
        rows = [{"claim": r.claim, **row} for r in reports for row in r.rows]
        return ok, _csv(rows), *[r for r in reports if not r.passed][:1]
    return {"seed": cfg.seed, "pass": ok, "campaigns": [r.to_json() for r in reports]}


def _render(cfg: RunConfig):
    ball = load_ball(cfg.ball)
    return True, render_svg(ball, cfg.overlay, v1=cfg.v1)


def _csv(rows: list[dict[str, Any]]) -> str:
    fields: list[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: jsonify(v) for k, v in row.items()})
    return buf.getvalue()


_COMMANDS = {
    ("ball", "validate"): _ball_validate,
    ("hexagon", "inscribe"): _hexagon_inscribe,
    ("f", "eval"): _f_eval,
    ("minmax", None): _minmax,
    ("verify", None): _verify,
    ("conjecture", None): _conjecture,
    ("fuzz", None): _fuzz,
    ("render", None): _render,
}


def _first_failure(result) -> Any:
    if isinstance(result, CampaignReport):
        return result.failures[0].to_json() if result.failures else None
    if isinstance(result, VerifyReport):
        return None if result.passed else result.to_json()
    if isinstance(result, dict):
        for camp in result.get("campaigns", []):
            if camp["failures"]:
                return camp["failures"][0]
    return None


def run(cfg: RunConfig) -> int:
    """Execute one parsed command; returns the exit status."""
    handler = _COMMANDS[(cfg.command, getattr(cfg, "action", None))]
    try:
        result = handler(cfg)
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(f"hexnorm: error: {exc}", file=sys.stderr)
        return 2

    failing = None
    if isinstance(result, tuple):
        passed, text, *rest = result
        if rest:
            failing = _first_failure(rest[0])
    else:
        if isinstance(result, (VerifyReport, CampaignReport)):
            passed = result.passed
        else:
            passed = bool(result["pass"])
        failing = _first_failure(result)
        text = dumps(result)

    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not passed:
        print("hexnorm: assertion failed; failing instance:", file=sys.stderr)
        if failing is not None:
            sys.stderr.write(dumps(failing))
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv, namespace=RunConfig())
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
