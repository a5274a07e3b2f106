import random

import pytest

from hexnorm.fuzz import (
    CAMPAIGNS,
    default_workers,
    instance_rng,
    parallel_map,
    random_ball,
    random_boundary_point,
    random_hull_body,
    random_lemma_params,
    run_campaign,
)
from hexnorm.geometry import norm_eval
from hexnorm.lemmas import is_equality_stratum
from hexnorm.report import dumps


def _square(x):
    return x * x


def test_parallel_map_keeps_order():
    items = list(range(40))
    assert parallel_map(_square, items, 1) == [x * x for x in items]
    assert parallel_map(_square, items, 2) == [x * x for x in items]


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("HEXNORM_THREADS", "1")
    assert default_workers() == 1
    monkeypatch.setenv("HEXNORM_THREADS", "lots")
    with pytest.raises(ValueError):
        default_workers()


def test_instance_streams_are_independent():
    a = instance_rng("thm31", 5, 3).random()
    assert a == instance_rng("thm31", 5, 3).random()
    assert a != instance_rng("thm31", 5, 4).random()
    assert a != instance_rng("thm32", 5, 3).random()


def test_generators_produce_valid_objects():
    rng = random.Random(11)
    for _ in range(30):
        ball = random_ball(rng, 200)
        ball.validate()
        assert norm_eval(ball, random_boundary_point(rng, ball, 200)) == 1
        assert not random_hull_body(rng, 50).degenerate
    strata = [random_lemma_params(rng, 100, "equality") for _ in range(5)]
    assert all(is_equality_stratum(p) for p in strata)


@pytest.mark.parametrize("claim", sorted(CAMPAIGNS))
def test_small_campaigns_pass(claim):
    rep = run_campaign(claim, 25, seed=3, denom_bound=200, workers=1)
    assert rep.passed, [f.notes for f in rep.failures]


def test_campaign_independent_of_worker_count():
    one = run_campaign("thm31", 30, seed=9, workers=1)
    two = run_campaign("thm31", 30, seed=9, workers=2)
    assert dumps(one) == dumps(two)


def test_campaign_csv_rows():
    rep = run_campaign("lemma44", 10, seed=1, workers=1, keep_rows=True)
    lines = rep.to_csv().splitlines()
    assert len(lines) == 11
    assert lines[0].startswith("index,")


def test_unknown_claim():
    with pytest.raises(ValueError):
        run_campaign("nope", 5, seed=0)
    with pytest.raises(ValueError):
        run_campaign("thm31", 0, seed=0)
