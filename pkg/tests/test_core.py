"""Core types and the completion-time machinery."""
import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robust_makespan import (
    Instance,
    Job,
    Scenario,
    Schedule,
    UncertaintyModel,
    erd_schedule,
    evaluate,
    find_critical_job,
    optimal_makespan,
)
from robust_makespan.core import MAX_TIME

from conftest import make_instance, random_instance, random_interval_scenario, random_schedule


# ---------------------------------------------------------------------------
# type invariants


def test_job_rejects_nonpositive_processing_time():
    with pytest.raises(ValueError, match="processing time"):
        Job(1, 0, 0, 1)


def test_job_rejects_bad_interval():
    with pytest.raises(ValueError, match="interval"):
        Job(1, 1, 5, 4)
    with pytest.raises(ValueError, match="interval"):
        Job(1, 1, -1, 4)


def test_instance_requires_id_order():
    with pytest.raises(ValueError, match="id order"):
        Instance((Job(2, 1, 0, 0), Job(1, 1, 0, 0)), UncertaintyModel("U2", 1))
    with pytest.raises(ValueError, match="at least one job"):
        Instance((), UncertaintyModel("U2", 1))


def test_instance_rejects_oversized_time_data():
    with pytest.raises(ValueError, match="64-bit"):
        make_instance([(2, 0, MAX_TIME)])
    # exactly at the bound is fine
    make_instance([(1, 0, MAX_TIME - 1)])


def test_uncertainty_model_validation():
    with pytest.raises(ValueError, match="kind"):
        UncertaintyModel("U3", 1)
    with pytest.raises(ValueError, match="at least 1"):
        UncertaintyModel("U2", 0)
    with pytest.raises(ValueError, match="non-negative"):
        UncertaintyModel("U1", -1)
    UncertaintyModel("U1", 0)


def test_schedule_must_be_permutation():
    Schedule((2, 1, 3))
    with pytest.raises(ValueError):
        Schedule((1, 1, 2))
    with pytest.raises(ValueError):
        Schedule((0, 1, 2))


# ---------------------------------------------------------------------------
# evaluate


def test_evaluate_single_job():
    inst = make_instance([(3, 5, 5)])
    ev = evaluate(Schedule((1,)), Scenario((5,)), inst)
    assert ev.completions == (8,)
    assert ev.makespan == 8
    assert ev.critical_position == 1


def test_evaluate_three_jobs_hand_recursion():
    # jobs (p, r) = (2,3), (2,1), (2,2); order (2,3,1) starts at release 1
    inst = make_instance([(2, 3, 3), (2, 1, 1), (2, 2, 2)])
    ev = evaluate(Schedule((2, 3, 1)), Scenario((3, 1, 2)), inst)
    assert ev.completions == (3, 5, 7)
    assert ev.makespan == 7
    assert ev.critical_position == 1
    # 7 is also the best any order can do
    best = min(
        evaluate(Schedule(p), Scenario((3, 1, 2)), inst).makespan
        for p in permutations((1, 2, 3))
    )
    assert best == 7


def test_evaluate_all_zero_releases_gives_processing_sum():
    rng = random.Random(0)
    for _ in range(25):
        inst = random_instance(rng)
        sched = random_schedule(rng, inst.n)
        zero = Scenario((0,) * inst.n)
        ev = evaluate(sched, zero, inst)
        assert ev.makespan == sum(job.p for job in inst.jobs)
        assert ev.critical_position == 1


def test_evaluate_dimension_mismatch():
    inst = make_instance([(1, 0, 0), (1, 0, 0)])
    with pytest.raises(ValueError, match="dimension"):
        evaluate(Schedule((1,)), Scenario((0, 0)), inst)
    with pytest.raises(ValueError, match="dimension"):
        evaluate(Schedule((1, 2)), Scenario((0,)), inst)


def test_evaluate_completions_strictly_increase():
    rng = random.Random(1)
    for _ in range(50):
        inst = random_instance(rng)
        sched = random_schedule(rng, inst.n)
        ev = evaluate(sched, random_interval_scenario(rng, inst), inst)
        assert all(a < b for a, b in zip(ev.completions, ev.completions[1:]))
        assert ev.makespan == ev.completions[-1]


def test_evaluate_vector_path_matches_loop_path():
    # same schedule/scenario through the small-n loop and the array kernel
    rng = random.Random(2)
    n = 3000
    jobs = []
    for i in range(n):
        r_lo = rng.randint(0, 500)
        jobs.append(Job(i + 1, rng.randint(1, 9), r_lo, r_lo + rng.randint(0, 80)))
    inst = Instance(tuple(jobs), UncertaintyModel("U2", 3))
    sched = random_schedule(rng, n)
    sc = Scenario(tuple(rng.randint(j.r_lo, j.r_hi) for j in inst.jobs))
    ev = evaluate(sched, sc, inst)
    t = 0
    comp = []
    for jid in sched.perm:
        t = max(t, sc.releases[jid - 1]) + inst.jobs[jid - 1].p
        comp.append(t)
    assert list(ev.completions) == comp
    assert ev.critical_position == find_critical_job(ev, sched, sc, inst)


# ---------------------------------------------------------------------------
# critical jobs


def test_critical_job_single_and_zero_release():
    inst = make_instance([(3, 5, 5)])
    ev = evaluate(Schedule((1,)), Scenario((5,)), inst)
    assert find_critical_job(ev, Schedule((1,)), Scenario((5,)), inst) == 1


def test_critical_job_hand_case():
    inst = make_instance([(2, 3, 3), (2, 1, 1), (2, 2, 2)])
    sched, sc = Schedule((2, 3, 1)), Scenario((3, 1, 2))
    ev = evaluate(sched, sc, inst)
    assert find_critical_job(ev, sched, sc, inst) == 1


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_critical_job_satisfies_makespan_equation(data):
    rng = random.Random(data.draw(st.integers(0, 10**9)))
    inst = random_instance(rng)
    sched = random_schedule(rng, inst.n)
    sc = random_interval_scenario(rng, inst)
    ev = evaluate(sched, sc, inst)
    i = find_critical_job(ev, sched, sc, inst)
    assert i == ev.critical_position
    jid = sched.perm[i - 1]
    suffix = sum(inst.jobs[j - 1].p for j in sched.perm[i - 1 :])
    assert sc.releases[jid - 1] + suffix == ev.makespan
    # chosen position is the last one completing right at release + processing
    for later in range(i + 1, inst.n + 1):
        jid2 = sched.perm[later - 1]
        assert ev.completions[later - 1] != sc.releases[jid2 - 1] + inst.jobs[jid2 - 1].p


# ---------------------------------------------------------------------------
# release-date ordering


def test_erd_sorts_by_release():
    inst = make_instance([(1, 3, 3), (1, 1, 1), (1, 2, 2)])
    assert erd_schedule(Scenario((3, 1, 2)), inst).perm == (2, 3, 1)


def test_erd_breaks_ties_by_id():
    inst = make_instance([(5, 1, 1), (2, 1, 1)])
    assert erd_schedule(Scenario((1, 1)), inst).perm == (1, 2)


def test_erd_is_optimal_small():
    rng = random.Random(3)
    for _ in range(150):
        inst = random_instance(rng, max_n=6)
        sc = random_interval_scenario(rng, inst)
        got = evaluate(erd_schedule(sc, inst), sc, inst).makespan
        best = min(
            evaluate(Schedule(p), sc, inst).makespan
            for p in permutations(range(1, inst.n + 1))
        )
        assert got == best


def test_optimal_makespan_examples():
    inst = make_instance([(2, 3, 3), (2, 1, 1), (2, 2, 2)])
    assert optimal_makespan(Scenario((3, 1, 2)), inst) == 7
    inst = make_instance([(3, 6, 6), (1, 1, 1), (2, 5, 5)])
    assert optimal_makespan(Scenario((6, 1, 5)), inst) == 10
    rng = random.Random(4)
    for _ in range(20):
        inst = random_instance(rng)
        zero = Scenario((0,) * inst.n)
        assert optimal_makespan(zero, inst) == sum(job.p for job in inst.jobs)


def test_optimal_makespan_equals_erd_evaluation():
    rng = random.Random(5)
    for _ in range(60):
        inst = random_instance(rng)
        sc = random_interval_scenario(rng, inst)
        sched = erd_schedule(sc, inst)
        assert optimal_makespan(sc, inst) == evaluate(sched, sc, inst).makespan


# ---------------------------------------------------------------------------
# order-free properties


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_makespan_monotone_in_releases(data):
    rng = random.Random(data.draw(st.integers(0, 10**9)))
    inst = random_instance(rng)
    sched = random_schedule(rng, inst.n)
    low = random_interval_scenario(rng, inst)
    bumped = Scenario(tuple(r + rng.randint(0, 5) for r in low.releases))
    assert (
        evaluate(sched, bumped, inst).makespan >= evaluate(sched, low, inst).makespan
    )


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_single_release_bump_shifts_makespan_by_at_most_that_much(data):
    rng = random.Random(data.draw(st.integers(0, 10**9)))
    inst = random_instance(rng)
    sched = random_schedule(rng, inst.n)
    sc = random_interval_scenario(rng, inst)
    jid = rng.randint(1, inst.n)
    eps = rng.randint(0, 10)
    releases = list(sc.releases)
    releases[jid - 1] += eps
    bumped = Scenario(tuple(releases))
    before = evaluate(sched, sc, inst)
    after = evaluate(sched, bumped, inst)
    assert after.makespan <= before.makespan + eps
    # equality whenever the bumped job was critical
    pos = sched.perm.index(jid) + 1
    suffix = sum(inst.jobs[j - 1].p for j in sched.perm[pos - 1 :])
    if sc.releases[jid - 1] + suffix == before.makespan:
        assert after.makespan == before.makespan + eps
    assert optimal_makespan(bumped, inst) <= optimal_makespan(sc, inst) + eps
