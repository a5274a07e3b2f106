"""Exact checks of the scalar inequality systems behind the hexagon bound.

Indices are cyclic mod 3 throughout: ``a[i + 1]`` means ``a[(i + 1) % 3]``.
Python indices 0..2 stand for the mathematical indices 1..3.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .rational import Q, as_q
from .report import VerifyReport

__all__ = [
    "DomainViolation",
    "LemmaParams",
    "STUV",
    "AlphaBeta",
    "stuv_eval",
    "lemma43_check",
    "alphabeta_eval",
    "lemma44_check",
    "is_equality_stratum",
    "case_vector",
    "is_feasible",
    "matches",
    "COVER_SETS",
    "case_cover_check",
    "epsilon_delta_consistency",
    "substitute_xy",
]


class DomainViolation(ValueError):
    pass


@dataclass(frozen=True)
class LemmaParams:
    a: tuple[Q, Q, Q]
    b: tuple[Q, Q, Q]

    @classmethod
    def of(cls, a, b) -> "LemmaParams":
        p = cls(tuple(as_q(e) for e in a), tuple(as_q(e) for e in b))
        p.check()
        return p

    def check(self) -> None:
        a, b = self.a, self.b
        if len(a) != 3 or len(b) != 3:
            raise DomainViolation("need three a's and three b's")
        for i in range(3):
            if not 0 < a[i] < 1:
                raise DomainViolation(f"a_{i + 1} must lie in (0, 1)")
            if not 0 < b[i] < 1:
                raise DomainViolation(f"b_{i + 1} must lie in (0, 1)")
            if a[i] + b[(i + 2) % 3] > 1:
                raise DomainViolation(f"a_{i + 1} + b_{(i + 2) % 3 + 1} exceeds 1")

    def to_json(self) -> dict:
        from .report import jsonify

        return {"a": jsonify(self.a), "b": jsonify(self.b)}


@dataclass(frozen=True)
class STUV:
    s: tuple[Q, Q, Q]
    t: tuple[Q, Q, Q]
    u: tuple[Q, Q, Q]
    v: tuple[Q, Q, Q]


def stuv_eval(p: LemmaParams) -> STUV:
    p.check()
    a, b = p.a, p.b
    s, t, u, v = [], [], [], []
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        s.append(-a[i1] / a[i] - b[i2] / b[i] + a[i1] + b[i2] + 1)
        t.append(-a[i2] / b[i] - a[i2] / a[i] - a[i1] / a[i] + a[i1] + 1)
        u.append(-b[i2] / b[i] - b[i1] / b[i] - b[i1] / a[i] + b[i2] + 1)
        v.append(-a[i2] / b[i] - b[i1] / b[i] - a[i2] / a[i] - b[i1] / a[i] + 1)
    return STUV(tuple(s), tuple(t), tuple(u), tuple(v))


def is_equality_stratum(p: LemmaParams) -> bool:
    """a1 = a2 = a3, b1 = b2 = b3 and a_i + b_{i+2} = 1."""
    a, b = p.a, p.b
    return a[0] == a[1] == a[2] and b[0] == b[1] == b[2] and all(a[i] + b[(i + 2) % 3] == 1 for i in range(3))


def _mixed_claims(q: STUV) -> dict[int, list[Q]]:
    """Claims 4..9: for each i, the minimum of the named pair/triple."""
    s, t, u, v = q.s, q.t, q.u, q.v
    out: dict[int, list[Q]] = {k: [] for k in range(4, 10)}
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        out[4].append(min(v[i], s[i1], s[i2]))
        out[5].append(min(s[i], t[i1]))
        out[6].append(min(s[i], u[i2]))
        out[7].append(min(v[i], u[i2]))
        out[8].append(min(v[i], t[i1]))
        out[9].append(min(u[i], t[i1]))
    return out


def lemma43_check(p: LemmaParams, seed: int | None = None) -> VerifyReport:
    q = stuv_eval(p)
    claims: dict[str, object] = {}
    fails = []
    min_s = min(q.s)
    eq_stratum = is_equality_stratum(p)
    c1 = min_s <= 0 and (min_s == 0) == eq_stratum
    claims["1"] = min_s
    if not c1:
        fails.append("claim 1")
    for k, seq in ((2, q.t), (3, q.u)):
        claims[str(k)] = min(seq)
        if not min(seq) < 0:
            fails.append(f"claim {k}")
    for k, per_i in _mixed_claims(q).items():
        claims[str(k)] = per_i
        if not all(m < 0 for m in per_i):
            fails.append(f"claim {k}")
    return VerifyReport(
        claim="lemma43",
        passed=not fails,
        equality=min_s == 0,
        seed=seed,
        instance=p.to_json(),
        values={"claims": claims, "s": q.s, "t": q.t, "u": q.u, "v": q.v},
        notes=[f"{f} violated" for f in fails],
    )


@dataclass(frozen=True)
class AlphaBeta:
    alpha: tuple[Q, Q, Q]
    alpha_bar: tuple[Q, Q, Q]
    beta: tuple[Q, Q, Q]
    beta_bar: tuple[Q, Q, Q]
    M: tuple[Q, Q, Q]
    epsilon: tuple[int, int, int]
    delta: tuple[int, int, int]

    @property
    def case(self) -> tuple[int, ...]:
        e, d = self.epsilon, self.delta
        return (e[0], d[0], e[1], d[1], e[2], d[2])


def alphabeta_eval(p: LemmaParams) -> AlphaBeta:
    """alpha, alpha-bar, beta, beta-bar, M and the case bits, with the s/t/u/v bridges asserted."""
    p.check()
    a, b = p.a, p.b
    al, alb, be, beb = [], [], [], []
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        ai, bi = a[i], b[i]
        den = ai + bi - ai * bi
        al.append((ai + bi + (1 - b[i2]) * ai * (1 - bi)) / den)
        alb.append(((ai + bi) * (1 - a[i2]) + ai * (1 - bi)) / den)
        be.append((ai + bi + (1 - a[i1]) * bi * (1 - ai)) / den)
        beb.append(((ai + bi) * (1 - b[i1]) + bi * (1 - ai)) / den)
    q = stuv_eval(p)
    for i in range(3):
        w = a[i] * b[i] / (a[i] + b[i] - a[i] * b[i])
        assert al[i] + be[i] - 3 == w * q.s[i], "bridge alpha+beta <-> s"
        assert alb[i] + be[i] - 3 == w * q.t[i], "bridge alpha_bar+beta <-> t"
        assert al[i] + beb[i] - 3 == w * q.u[i], "bridge alpha+beta_bar <-> u"
        assert alb[i] + beb[i] - 3 == w * q.v[i], "bridge alpha_bar+beta_bar <-> v"
    M = tuple(max(al[i], alb[i]) + max(be[i], beb[i]) for i in range(3))
    eps = tuple(int(al[i] < alb[i]) for i in range(3))
    dlt = tuple(int(be[i] < beb[i]) for i in range(3))
    return AlphaBeta(tuple(al), tuple(alb), tuple(be), tuple(beb), M, eps, dlt)


# -- case vectors ----------------------------------------------------------------------

def _pat(text: str) -> tuple:
    return tuple(None if ch == "x" else int(ch) for ch in text)


# C_1 .. C_9, each a union of wildcard patterns over (e1, d1, e2, d2, e3, d3)
COVER_SETS: dict[int, tuple[tuple, ...]] = {
    1: (_pat("000000"),),
    2: (_pat("101010"),),
    3: (_pat("010101"),),
    4: (_pat("110000"), _pat("001100"), _pat("000011")),
    5: (_pat("0010xx"), _pat("xx0010"), _pat("10xx00")),
    6: (_pat("00xx01"), _pat("0100xx"), _pat("xx0100")),
    7: (_pat("11xx01"), _pat("0111xx"), _pat("xx0111")),
    8: (_pat("1110xx"), _pat("xx1110"), _pat("10xx11")),
    9: (_pat("0110xx"), _pat("xx0110"), _pat("10xx01")),
}

INFEASIBLE = (_pat("1xx1xx"), _pat("x1xx1x"), _pat("xx1xx1"))


def matches(c: tuple[int, ...], pattern: tuple) -> bool:
    return all(p is None or p == e for e, p in zip(c, pattern))


def is_feasible(c: tuple[int, ...]) -> bool:
    """No i with eps_i = delta_{i+1} = 1."""
    return not any(matches(c, pat) for pat in INFEASIBLE)


def case_vector(ab: AlphaBeta) -> tuple[int, ...]:
    return ab.case


def _covers(c: tuple[int, ...]) -> list[int]:
    return [k for k, pats in COVER_SETS.items() if any(matches(c, p) for p in pats)]


def case_cover_check() -> VerifyReport:
    """Exhaustive check of the 64 case vectors against the cover C_1 .. C_9."""
    vectors = list(product((0, 1), repeat=6))
    feasible = [c for c in vectors if is_feasible(c)]
    uncovered = [c for c in feasible if not _covers(c)]
    max_ones = max(sum(c) for c in feasible)
    by_weight: dict[int, list[int]] = {}
    for c in feasible:
        for k in _covers(c):
            by_weight.setdefault(sum(c), [])
            if k not in by_weight[sum(c)]:
                by_weight[sum(c)].append(k)
    # the stated inclusions for k = 0..3 ones (feasible vectors)
    stated = {0: {1}, 1: {5, 6}, 2: {4, 5, 6, 9}, 3: {2, 3, 5, 6, 7, 8, 9}}
    inclusion_fail = []
    for weight, allowed in stated.items():
        for c in feasible:
            if sum(c) == weight and not (set(_covers(c)) & allowed):
                inclusion_fail.append(c)
    zero_weight = [c for c in feasible if sum(c) == 0]
    exact_c0 = zero_weight == [(0,) * 6]
    ok = len(feasible) == 27 and not uncovered and max_ones <= 3 and not inclusion_fail and exact_c0
    return VerifyReport(
        claim="cases",
        passed=ok,
        equality=None,
        instance={},
        values={
            "vectors": len(vectors),
            "feasible": len(feasible),
            "uncovered": ["".join(map(str, c)) for c in uncovered],
            "max_ones_feasible": max_ones,
            "empty_weights": [k for k in range(7) if not any(sum(c) == k for c in feasible)],
            "cover_sets_by_weight": {str(k): sorted(v) for k, v in sorted(by_weight.items())},
            "inclusion_failures": ["".join(map(str, c)) for c in inclusion_fail],
        },
    )


def _selected_min(q: STUV, c: tuple[int, ...]) -> Q:
    """min_i of the quantity proportional to M_i - 3 under case vector ``c``.

    For each i the pair (eps_i, delta_i) selects which of s_i, t_i, u_i, v_i
    equals M_i - 3 up to a positive factor.
    """
    picks = []
    for i in range(3):
        e, d = c[2 * i], c[2 * i + 1]
        picks.append({(0, 0): q.s, (1, 0): q.t, (0, 1): q.u, (1, 1): q.v}[(e, d)][i])
    return min(picks)


def lemma44_check(p: LemmaParams, seed: int | None = None) -> VerifyReport:
    ab = alphabeta_eval(p)
    q = stuv_eval(p)
    min_m = min(ab.M)
    eq_stratum = is_equality_stratum(p)
    c = ab.case
    covers = _covers(c)
    reduction = min(max(q.s[i], q.t[i], q.u[i], q.v[i]) for i in range(3))
    picked = _selected_min(q, c)
    fails = []
    if not min_m <= 3:
        fails.append("min M > 3")
    if (min_m == 3) != eq_stratum:
        fails.append("equality characterization")
    if not reduction <= 0:
        fails.append("min_i max(s,t,u,v) > 0")
    if not is_feasible(c):
        fails.append("infeasible case vector realized")
    if not covers:
        fails.append("case vector not covered")
    if not picked <= 0:
        fails.append("selected s/t/u/v minimum is positive")
    return VerifyReport(
        claim="lemma44",
        passed=not fails,
        equality=min_m == 3,
        seed=seed,
        instance=p.to_json(),
        values={
            "alpha": ab.alpha,
            "alpha_bar": ab.alpha_bar,
            "beta": ab.beta,
            "beta_bar": ab.beta_bar,
            "M": ab.M,
            "min_M": min_m,
            "case": "".join(map(str, c)),
            "cover_sets": covers,
            "reduction": reduction,
        },
        notes=fails,
    )


def epsilon_delta_consistency(p: LemmaParams, seed: int | None = None) -> VerifyReport:
    ab = alphabeta_eval(p)
    a, b = p.a, p.b
    fails = []
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        if ab.epsilon[i] and ab.delta[i1]:
            fails.append(f"eps_{i + 1} = delta_{i1 + 1} = 1")
        if ab.epsilon[i]:
            ratio = (a[i] + b[i]) / (a[i] * (1 - b[i]))
            if not (ratio > 1 and ratio < b[i2] / a[i2] and a[i2] < b[i2]):
                fails.append(f"eps_{i + 1} = 1 without a_{i2 + 1} < b_{i2 + 1}")
        if ab.delta[i1]:
            ratio = (a[i1] + b[i1]) / (b[i1] * (1 - a[i1]))
            if not (ratio > 1 and ratio < a[i2] / b[i2] and b[i2] < a[i2]):
                fails.append(f"delta_{i1 + 1} = 1 without b_{i2 + 1} < a_{i2 + 1}")
    return VerifyReport(
        claim="epsdelta",
        passed=not fails,
        equality=None,
        seed=seed,
        instance=p.to_json(),
        values={"case": "".join(map(str, ab.case)), "feasible": is_feasible(ab.case)},
        notes=fails,
    )


def substitute_xy(x, y) -> tuple[LemmaParams, bool]:
    """Map hull coordinates (x_i, y_i) to (a_i, b_i).

    Returns the parameters and a flag telling whether some a_i + b_{i+2} = 1.
    Asserts that both forms of alpha, alpha-bar, beta, beta-bar agree.
    """
    x = tuple(as_q(e) for e in x)
    y = tuple(as_q(e) for e in y)
    if len(x) != 3 or len(y) != 3:
        raise DomainViolation("need three x's and three y's")
    for i in range(3):
        if not (0 < x[i] < 1 and 0 < y[i] < 1):
            raise DomainViolation(f"x_{i + 1}, y_{i + 1} must lie in (0, 1)")
        if not x[i] + y[i] > 1:
            raise DomainViolation(f"x_{i + 1} + y_{i + 1} must exceed 1")
        j = (i + 2) % 3
        hs = (1 - x[i]) / y[i] + (1 - y[j]) / x[j]
        if hs < 1:
            raise DomainViolation(f"halfspace condition for i = {i + 1}: {hs} < 1")
    a = tuple(1 - (1 - x[i]) / y[i] for i in range(3))
    b = tuple(1 - (1 - y[i]) / x[i] for i in range(3))
    p = LemmaParams.of(a, b)
    ab = alphabeta_eval(p)
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        sm = x[i] + y[i]
        assert ab.alpha[i] == sm + (1 - y[i2]) / x[i2] * (1 - y[i])
        assert ab.alpha_bar[i] == sm * (1 - x[i2]) / y[i2] + 1 - y[i]
        assert ab.beta[i] == sm + (1 - x[i1]) / y[i1] * (1 - x[i])
        assert ab.beta_bar[i] == sm * (1 - y[i1]) / x[i1] + 1 - x[i]
    boundary = any(a[i] + b[(i + 2) % 3] == 1 for i in range(3))
    return p, boundary
