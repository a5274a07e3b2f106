"""Acceptance criteria 1-12.

Each test prints one line ``[criterion N] PASS|FAIL ...`` (also without -s)
and then asserts.  Time limits are checked alongside correctness.
"""
import random
import time

import pytest

from hexnorm.cli import main
from hexnorm.fuzz import run_campaign
from hexnorm.geometry import HEXAGON, SQUARE, Vec2, boundary_point, norm_eval, save_ball
from hexnorm.hexagon import inscribe
from hexnorm.lemmas import (
    LemmaParams,
    alphabeta_eval,
    case_cover_check,
    lemma43_check,
    lemma44_check,
    stuv_eval,
    substitute_xy,
)
from hexnorm.minmax import HullBody, bcp_compare, f_eval, f_min_exact, hull_norm_closed_form, verify_hullnorm
from hexnorm.ndim import conjecture_search, l1_minmax_value
from hexnorm.rational import Q


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, elapsed: float, limit: float | None = None):
        timed_ok = limit is None or elapsed < limit
        status = "PASS" if ok and timed_ok else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {status} {detail}; {elapsed:.2f}s{budget}")
        assert ok, detail
        assert timed_ok, f"took {elapsed:.2f}s, limit {limit}s"

    return emit


def V(x, y):
    return Vec2.of(x, y)


def test_criterion_01_square(report):
    start = time.perf_counter()
    cert = f_min_exact(SQUARE)
    half = Q(1, 2)
    expected = {V(half, half), V(-half, half), V(-half, -half), V(half, -half)}
    exact_points = all(m.is_point for m in cert.minimizers) and set(cert.points()) == expected
    f10 = f_eval(SQUARE, V(1, 0)).value
    # f(S) = [3, 4]: the range is an interval whose ends are attained
    ok = cert.min_value == 3 and exact_points and f10 == 4
    elapsed = time.perf_counter() - start
    report(1, ok, f"min f = {cert.min_value}, minimizers = {len(cert.points())} midpoints, f(1,0) = {f10}", elapsed, 1)


def test_criterion_02_regular_hexagon(report):
    start = time.perf_counter()
    values = {f_eval(HEXAGON, v).value for v in HEXAGON.vertices}
    rng = random.Random(2)
    for _ in range(100):
        y = boundary_point(HEXAGON, Q(rng.randrange(10**6), 10**6))
        values.add(f_eval(HEXAGON, y).value)
    cert = f_min_exact(HEXAGON)
    ok = values == {3} and cert.min_value == 3 and cert.covers_boundary()
    elapsed = time.perf_counter() - start
    report(2, ok, f"f values {sorted(str(v) for v in values)} at 6 vertices + 100 samples, whole boundary minimizes: {cert.covers_boundary()}", elapsed, 1)


def test_criterion_03_three_point_fuzz(report):
    start = time.perf_counter()
    rep = run_campaign("thm31", 1000, seed=3, denom_bound=1000)
    elapsed = time.perf_counter() - start
    worst = rep.summary["min_f"]["max"]
    report(3, rep.passed, f"{rep.passed_count}/1000 balls with min_i f(v_i) <= 3 (largest {worst}), {len(rep.failures)} violations", elapsed, 120)


def test_criterion_04_equality_classes(report):
    start = time.perf_counter()
    rep = run_campaign("thm32", 500, seed=4)
    elapsed = time.perf_counter() - start
    report(4, rep.passed and rep.equality_count == 200, f"{rep.passed_count}/500 biconditional holds (100 parallelogram, 100 hexagon, 300 other); min f = 3 in {rep.equality_count}", elapsed)


def test_criterion_05_lemma43(report):
    start = time.perf_counter()
    rep = run_campaign("lemma43", 100_000, seed=5)
    # stratum instances directly: claim 1 hits 0, the rest stay strict
    strata_ok = True
    for a in (Q(1, 2), Q(1, 3), Q(7, 10), Q(1, 999)):
        r = lemma43_check(LemmaParams.of([a] * 3, [1 - a] * 3))
        strata_ok &= r.passed and r.values["claims"]["1"] == 0
    elapsed = time.perf_counter() - start
    ok = rep.passed and strata_ok and rep.equality_count > 0
    report(5, ok, f"{rep.passed_count}/100000 instances hold all nine claims; {rep.equality_count} on the equality stratum", elapsed, 60)


def test_criterion_06_lemma44(report):
    start = time.perf_counter()
    rep = run_campaign("lemma44", 100_000, seed=6)
    half, quarter = Q(1, 2), Q(1, 4)
    ab = alphabeta_eval(LemmaParams.of([half] * 3, [half] * 3))
    hand = ab.alpha[0] == Q(3, 2) and ab.alpha_bar[0] == 1 and ab.M[0] == 3
    m41 = min(alphabeta_eval(LemmaParams.of([quarter] * 3, [quarter] * 3)).M)
    hand &= m41 == Q(41, 14)
    hand &= lemma44_check(LemmaParams.of([half] * 3, [half] * 3)).equality is True
    elapsed = time.perf_counter() - start
    report(6, rep.passed and hand, f"{rep.passed_count}/100000 with min M <= 3 and equality exactly on the stratum ({rep.equality_count} hits); hand values 3/2, 1, 3 and {m41}", elapsed)


def test_criterion_07_case_vectors(report):
    start = time.perf_counter()
    rep = case_cover_check()
    v = rep.values
    ok = rep.passed and v["feasible"] == 27 and not v["uncovered"] and v["max_ones_feasible"] <= 3
    elapsed = time.perf_counter() - start
    report(7, ok, f"{v['feasible']} feasible of 64, uncovered {len(v['uncovered'])}, max ones {v['max_ones_feasible']}", elapsed, 1)


def test_criterion_08_hull_norm(report):
    start = time.perf_counter()
    rep = run_campaign("hullnorm", 1000, seed=8)
    h = HullBody.build(inscribe(HEXAGON, V(1, 0)), [Q(3, 5)] * 3, [Q(3, 5)] * 3)
    closed = hull_norm_closed_form(h, 1)
    direct = norm_eval(h.b0, h.z[0] - h.hexagon.v1)
    params, _ = substitute_xy([Q(3, 5)] * 3, [Q(3, 5)] * 3)
    via_ab = alphabeta_eval(params).alpha[0]
    hand = closed[0] == direct == via_ab == Q(22, 15) and verify_hullnorm(h).passed
    elapsed = time.perf_counter() - start
    report(8, rep.passed and hand, f"{rep.passed_count}/1000 closed forms equal the hull norm; x=y=3/5 gives {closed[0]} = {direct} = {via_ab}", elapsed)


def test_criterion_09_perimeter_bound(report):
    start = time.perf_counter()
    hexa = bcp_compare(HEXAGON).values
    sq = bcp_compare(SQUARE).values
    lo, hi = sq["bound_interval"]
    ok = hexa["perimeter"] == 6 and hexa["bound_interval"] == [3, 3] and hexa["min_f"] == 3
    ok &= sq["perimeter"] == 8 and Q(337, 100) < lo and hi < Q(338, 100) and sq["min_f"] == 3 < lo
    rep = run_campaign("bcp", 300, seed=9)
    p = rep.summary["perimeter"]
    ok &= rep.passed and 6 <= p["min"] and p["max"] <= 8
    elapsed = time.perf_counter() - start
    report(9, ok, f"hexagon p=6 bound 3 tight; square p=8 bound in [{float(lo):.5f}, {float(hi):.5f}]; {rep.passed_count}/300 fuzzed balls with p in [{float(p['min']):.4f}, {float(p['max']):.4f}]", elapsed)


def test_criterion_10_higher_dimensions(report):
    start = time.perf_counter()
    values = {n: l1_minmax_value(n) for n in range(2, 9)}
    formula = all(v == 4 - Q(2, n) for n, v in values.items())
    rep = conjecture_search(3, 100, seed=42)
    elapsed = time.perf_counter() - start
    ok = formula and rep.passed and rep.values["exact"] and not rep.values["candidates"]
    report(10, ok, f"4 - 2/n exact for n=2..8; n=3 search: {len(rep.values['candidates'])} candidates, best bound {rep.values['max_upper_bound']} vs {rep.values['bound']}", elapsed, 120)


def test_criterion_11_monotonicity(report):
    start = time.perf_counter()
    rep = run_campaign("monotonicity", 500, seed=11)
    elapsed = time.perf_counter() - start
    report(11, rep.passed, f"{rep.passed_count}/500 distance scans nondecreasing from 0 to 2", elapsed)


VERIFY_RUNS = [
    ["verify", "thm31", "--trials", "40"],
    ["verify", "thm31", "--ball", "{square}", "--v1", "1,0"],
    ["verify", "thm32", "--trials", "30"],
    ["verify", "lemma42", "--trials", "40"],
    ["verify", "lemma43", "--trials", "500"],
    ["verify", "lemma44", "--trials", "500"],
    ["verify", "lemma44", "--a", "1/4", "--b", "1/4"],
    ["verify", "cases"],
    ["verify", "bcp", "--trials", "30"],
    ["verify", "hullnorm", "--trials", "100"],
    ["verify", "lemma43", "--trials", "200", "--format", "csv"],
]


def test_criterion_12_determinism(report, tmp_path):
    start = time.perf_counter()
    square = tmp_path / "square.json"
    save_ball(SQUARE, square)
    identical = 0
    for k, argv in enumerate(VERIFY_RUNS):
        argv = [a.format(square=square) for a in argv] + ["--seed", "12"]
        outs = []
        for rep in range(2):
            path = tmp_path / f"run{k}_{rep}"
            assert main(argv + ["--out", str(path)]) == 0
            outs.append(path.read_bytes())
        identical += outs[0] == outs[1]
    elapsed = time.perf_counter() - start
    report(12, identical == len(VERIFY_RUNS), f"{identical}/{len(VERIFY_RUNS)} verify runs byte-identical on repeat", elapsed)


def test_stratum_claims_two_to_nine_strict():
    # supporting check for criterion 5: strictness is about the values, not the flags
    q = stuv_eval(LemmaParams.of([Q(1, 3)] * 3, [Q(2, 3)] * 3))
    assert max(q.t) < 0 and max(q.u) < 0 and max(q.v) < 0
