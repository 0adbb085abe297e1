"""Uncertainty-set semantics: budget feasibility, interval trimming, distinguished scenarios."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Instance, Job, Scenario, _VECTOR_MIN


@dataclass(frozen=True)
class CandidateScenarioSet:
    """The n single-deviation scenarios: number j raises only job j to its upper bound.

    For a trimmed instance this finite set is enough to certify worst-case
    regret for every schedule.
    """

    scenarios: tuple[Scenario, ...]


def is_feasible(scenario: Scenario, instance: Instance) -> bool:
    """Whether the scenario's deviations from the lower bounds fit the budget.

    The scenario is assumed to respect the release intervals; this predicate
    checks only the deviation budget (summed deviation for U1, count of
    deviating jobs for U2).
    """
    n = instance.n
    if len(scenario.releases) != n:
        raise ValueError(f"dimension mismatch: {n} jobs but {len(scenario.releases)} releases")
    model = instance.uncertainty
    if n < _VECTOR_MIN:
        rel = scenario.releases
        jobs = instance.jobs
        if model.kind == "U1":
            return sum(rel[i] - jobs[i].r_lo for i in range(n)) <= model.gamma
        return sum(1 for i in range(n) if rel[i] != jobs[i].r_lo) <= model.gamma
    r_lo = instance.columns[1]
    dev = scenario.array - r_lo
    if model.kind == "U1":
        return int(dev.sum()) <= model.gamma
    return int(np.count_nonzero(dev)) <= model.gamma


def normalize_u1(instance: Instance) -> Instance:
    """Trim U1 intervals so no single job can exceed the budget on its own.

    Replaces each r_hi by min(r_hi, r_lo + gamma); the set of feasible
    scenarios is unchanged because any release beyond r_lo + gamma would
    already blow the summed budget. U2 instances are returned as-is.
    """
    if instance.uncertainty.kind != "U1":
        return instance
    gamma = instance.uncertainty.gamma
    if all(job.r_hi <= job.r_lo + gamma for job in instance.jobs):
        return instance
    jobs = tuple(
        Job(job.id, job.p, job.r_lo, min(job.r_hi, job.r_lo + gamma)) for job in instance.jobs
    )
    return Instance(jobs, instance.uncertainty)


def candidate_scenario(instance: Instance, jid: int) -> Scenario:
    """The scenario with job `jid` at its upper bound and every other job at its lower bound."""
    if not 1 <= jid <= instance.n:
        raise ValueError(f"no job with id {jid}")
    releases = [job.r_lo for job in instance.jobs]
    releases[jid - 1] = instance.jobs[jid - 1].r_hi
    return Scenario(tuple(releases))


def candidate_scenarios(instance: Instance) -> CandidateScenarioSet:
    """All n single-deviation scenarios, in job-id order.

    Materializes n vectors of length n; meant for small and mid-size
    instances (the solvers never build this set explicitly).
    """
    lows = tuple(job.r_lo for job in instance.jobs)
    scenarios = []
    for i, job in enumerate(instance.jobs):
        releases = list(lows)
        releases[i] = job.r_hi
        scenarios.append(Scenario(tuple(releases)))
    return CandidateScenarioSet(tuple(scenarios))


def extreme_scenarios(instance: Instance) -> tuple[Scenario, Scenario]:
    """(all lower bounds, all upper bounds).

    The all-upper-bounds vector may violate the deviation budget; it is still
    a valid input to the evaluator and drives the worst-case analysis.
    """
    lo = Scenario(tuple(job.r_lo for job in instance.jobs))
    hi = Scenario(tuple(job.r_hi for job in instance.jobs))
    return lo, hi
