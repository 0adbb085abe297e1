"""Value types and deterministic makespan machinery for single-machine schedules.

All time quantities (processing times, release dates, completions) are
non-negative integers, so sort keys and oracle comparisons are exact.
Instances whose worst-case completion time could leave the signed 64-bit
range are rejected at construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_TIME = 2**63 - 1

# numpy kernels only pay off on long vectors; plain loops win below this
_VECTOR_MIN = 2048


@dataclass(frozen=True, slots=True)
class Job:
    """One job: a positive processing time and a release-date interval."""

    id: int
    p: int
    r_lo: int
    r_hi: int

    def __post_init__(self) -> None:
        if self.p <= 0:
            raise ValueError(f"job {self.id}: processing time must be positive, got {self.p}")
        if not 0 <= self.r_lo <= self.r_hi:
            raise ValueError(
                f"job {self.id}: release interval [{self.r_lo}, {self.r_hi}] is invalid"
            )


@dataclass(frozen=True)
class UncertaintyModel:
    """Deviation budget: U1 caps the summed deviation, U2 the deviating job count."""

    kind: str  # "U1" or "U2"
    gamma: int

    def __post_init__(self) -> None:
        if self.kind not in ("U1", "U2"):
            raise ValueError(f"unknown uncertainty kind {self.kind!r}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.kind == "U2" and self.gamma < 1:
            raise ValueError("U2 budgets count jobs and must be at least 1")


@dataclass(frozen=True)
class Instance:
    """A job list (in id order 1..n) plus the uncertainty model."""

    jobs: tuple[Job, ...]
    uncertainty: UncertaintyModel

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not self.jobs:
            raise ValueError("instance needs at least one job")
        for i, job in enumerate(self.jobs, start=1):
            if job.id != i:
                raise ValueError(
                    f"jobs must be listed in id order 1..n; position {i} holds id {job.id}"
                )
        worst = sum(job.p for job in self.jobs) + max(job.r_hi for job in self.jobs)
        if worst > MAX_TIME:
            raise ValueError("time data too large: worst-case completion exceeds 64-bit range")

    @property
    def n(self) -> int:
        return len(self.jobs)

    @cached_property
    def columns(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(p, r_lo, r_hi) as int64 arrays indexed by job id - 1."""
        n = len(self.jobs)
        p = np.fromiter((j.p for j in self.jobs), dtype=np.int64, count=n)
        r_lo = np.fromiter((j.r_lo for j in self.jobs), dtype=np.int64, count=n)
        r_hi = np.fromiter((j.r_hi for j in self.jobs), dtype=np.int64, count=n)
        return p, r_lo, r_hi


@dataclass(frozen=True)
class Scenario:
    """One concrete release-date vector, indexed by job id.

    A scenario may violate the deviation budget (the solvers reason about the
    hypothetical all-upper-bounds vector, which is often infeasible); budget
    feasibility is a separate predicate in the uncertainty module.
    """

    releases: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "releases", tuple(self.releases))

    @cached_property
    def array(self) -> np.ndarray:
        return np.fromiter(self.releases, dtype=np.int64, count=len(self.releases))


@dataclass(frozen=True)
class Schedule:
    """A processing order: perm[i] is the id of the job processed (i+1)-th."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(self.perm))
        n = len(self.perm)
        if n < _VECTOR_MIN:
            if sorted(self.perm) != list(range(1, n + 1)):
                raise ValueError("perm must be a permutation of job ids 1..n")
        else:
            arr = np.fromiter(self.perm, dtype=np.int64, count=n)
            if arr.min() < 1 or arr.max() > n or (np.bincount(arr, minlength=n + 1)[1:] != 1).any():
                raise ValueError("perm must be a permutation of job ids 1..n")

    @cached_property
    def indices(self) -> np.ndarray:
        """Zero-based job indices in processing order."""
        return np.fromiter(self.perm, dtype=np.int64, count=len(self.perm)) - 1


@dataclass(frozen=True)
class ScheduleEvaluation:
    """Completion times by position, the makespan, and one critical position."""

    completions: tuple[int, ...]
    makespan: int
    critical_position: int


def _stable_argsort(values: np.ndarray) -> np.ndarray:
    """Stable argsort (radix for integers); ties keep ascending-id order."""
    return np.argsort(values, kind="stable")


def _completions_arrays(releases: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Completion times of a processing order given aligned release/processing arrays.

    Uses C_i = P_i + max_{k<=i}(r_k - P_{k-1}), the closed form of the
    start-at-max(previous completion, release) recursion.
    """
    prefix = np.cumsum(p)
    return prefix + np.maximum.accumulate(releases - (prefix - p))


def evaluate(schedule: Schedule, scenario: Scenario, instance: Instance) -> ScheduleEvaluation:
    """Run the completion-time recursion for one order under one scenario."""
    n = instance.n
    if len(schedule.perm) != n or len(scenario.releases) != n:
        raise ValueError(
            f"dimension mismatch: instance has {n} jobs, "
            f"perm has {len(schedule.perm)}, scenario has {len(scenario.releases)}"
        )
    if n < _VECTOR_MIN:
        rel = scenario.releases
        jobs = instance.jobs
        completions = []
        t = 0
        for jid in schedule.perm:
            r = rel[jid - 1]
            if r > t:
                t = r
            t += jobs[jid - 1].p
            completions.append(t)
        crit = n
        while crit > 1:
            jid = schedule.perm[crit - 1]
            if completions[crit - 1] == rel[jid - 1] + jobs[jid - 1].p:
                break
            crit -= 1
        return ScheduleEvaluation(tuple(completions), completions[-1], crit)

    idx = schedule.indices
    rel = scenario.array[idx]
    p = instance.columns[0][idx]
    comp = _completions_arrays(rel, p)
    crit = int(np.nonzero(comp == rel + p)[0][-1]) + 1
    return ScheduleEvaluation(tuple(comp.tolist()), int(comp[-1]), crit)


def find_critical_job(
    evaluation: ScheduleEvaluation,
    schedule: Schedule,
    scenario: Scenario,
    instance: Instance,
) -> int:
    """Largest position whose job completes exactly at its release plus processing time.

    From that position on the machine never idles, so the job there determines
    the makespan. Position 1 always qualifies.
    """
    rel = scenario.releases
    jobs = instance.jobs
    completions = evaluation.completions
    for i in range(len(completions), 1, -1):
        jid = schedule.perm[i - 1]
        if completions[i - 1] == rel[jid - 1] + jobs[jid - 1].p:
            return i
    return 1


def erd_schedule(scenario: Scenario, instance: Instance) -> Schedule:
    """Order jobs by non-decreasing release date, ties by ascending job id."""
    n = instance.n
    if len(scenario.releases) != n:
        raise ValueError(f"dimension mismatch: {n} jobs but {len(scenario.releases)} releases")
    if n < _VECTOR_MIN:
        rel = scenario.releases
        perm = sorted(range(1, n + 1), key=lambda jid: (rel[jid - 1], jid))
        return Schedule(tuple(perm))
    order = _stable_argsort(scenario.array)
    return Schedule(tuple((order + 1).tolist()))


def _erd_makespan_arrays(releases: np.ndarray, p: np.ndarray) -> int:
    """Makespan of the release-sorted order, straight from the arrays."""
    order = _stable_argsort(releases)
    rel = releases[order]
    ps = p[order]
    prefix = np.cumsum(ps)
    return int(prefix[-1] + np.max(rel - (prefix - ps)))


def optimal_makespan(scenario: Scenario, instance: Instance) -> int:
    """Minimum makespan over all orders: sort by release date and evaluate."""
    n = instance.n
    if len(scenario.releases) != n:
        raise ValueError(f"dimension mismatch: {n} jobs but {len(scenario.releases)} releases")
    if n < _VECTOR_MIN:
        rel = scenario.releases
        jobs = instance.jobs
        t = 0
        for i in sorted(range(n), key=lambda i: (rel[i], i)):
            r = rel[i]
            if r > t:
                t = r
            t += jobs[i].p
        return t
    return _erd_makespan_arrays(scenario.array, instance.columns[0])
