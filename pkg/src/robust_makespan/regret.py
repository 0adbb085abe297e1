"""Regret criterion: opportunity loss against the per-scenario optimum.

For any schedule, the worst regret over the whole uncertainty set is already
attained on the n single-deviation scenarios (raise one job to its upper
bound, drop the rest to their lower bounds). Minimizing the worst regret
reduces to sorting jobs by (latest release date) minus (optimal makespan of
the job's single-deviation scenario).

Those n per-scenario optima are computed two ways: a reference path that
re-sorts and re-evaluates each scenario, and a fast path that reads every
optimum off a slack profile of the all-lower-bounds schedule plus a
range-minimum table, in O(n log n) total. Both must agree exactly.
"""
from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

import numpy as np

from .core import (
    Instance,
    Scenario,
    Schedule,
    _stable_argsort,
    evaluate,
    optimal_makespan,
)
from .rmq import IntervalMinTable
from . import _accel

# below this size the per-candidate reference path sorts from scratch in
# plain Python; above it, it re-sorts incrementally on numpy arrays
_NAIVE_SMALL = 128
# the fused compiled engine only pays off once arrays outgrow the caches
_KERNEL_MIN = 32768


@dataclass(frozen=True)
class SlackProfile:
    """Structure of the optimal schedule when every release sits at its lower bound.

    Jobs are relabeled into release-sorted order (ties by id). Per position:
    completion time, slack (completion minus earliest possible completion),
    idle time directly before the job, and total idle time after the job.
    """

    order: tuple[int, ...]
    completions: tuple[int, ...]
    slack: tuple[int, ...]
    idle_before: tuple[int, ...]
    idle_after: tuple[int, ...]
    base_makespan: int


@dataclass(frozen=True)
class RegretReport:
    """Worst regret of one schedule over the single-deviation scenarios.

    per_candidate[j - 1] is the regret against the scenario that raises only
    job j; worst_job is the smallest job id attaining the maximum.
    """

    schedule: Schedule
    regret: int
    worst_job: int
    per_candidate: tuple[int, ...]


def regret_of(schedule: Schedule, scenario: Scenario, instance: Instance) -> int:
    """Makespan of the schedule under the scenario minus the scenario's optimum."""
    return evaluate(schedule, scenario, instance).makespan - optimal_makespan(scenario, instance)


def _release_order(r_lo: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(order, sorted releases) by (release, id): packed one-key sort when it fits."""
    n = r_lo.size
    bits = max(1, (n - 1).bit_length())
    if n and 0 <= int(r_lo.min()) and int(r_lo.max()) < (1 << (62 - bits)):
        packed = (r_lo << bits) | np.arange(n, dtype=np.int64)
        packed.sort()
        return packed & ((1 << bits) - 1), packed >> bits
    order = _stable_argsort(r_lo)
    return order, r_lo[order]


def _profile_from_sorted(
    rs: np.ndarray, ps: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(completions, slack, idle_before, idle_after) of the release-sorted order."""
    prefix = np.cumsum(ps)
    comp = prefix + np.maximum.accumulate(rs - (prefix - ps))
    comp_prev = np.empty_like(comp)
    comp_prev[0] = 0
    comp_prev[1:] = comp[:-1]
    slack = comp - rs - ps
    idle_before = (comp - ps) - comp_prev
    idle_cum = np.cumsum(idle_before)
    idle_after = idle_cum[-1] - idle_cum
    return comp, slack, idle_before, idle_after


def build_slack_profile(instance: Instance) -> SlackProfile:
    """Profile the all-lower-bounds optimum: completions, slack and idle structure."""
    p, r_lo, _ = instance.columns
    order, rs = _release_order(r_lo)
    ps = p[order]
    comp, slack, idle_before, idle_after = _profile_from_sorted(rs, ps)
    return SlackProfile(
        order=tuple((order + 1).tolist()),
        completions=tuple(comp.tolist()),
        slack=tuple(slack.tolist()),
        idle_before=tuple(idle_before.tolist()),
        idle_after=tuple(idle_after.tolist()),
        base_makespan=int(comp[-1]),
    )


def _optima_sorted_numpy(
    rs: np.ndarray, ps: np.ndarray, rh: np.ndarray, slack: np.ndarray,
    comp: np.ndarray, idle_after: np.ndarray,
) -> np.ndarray:
    """Per-candidate optima in sorted labels, via vectorized numpy passes."""
    n = rs.size
    table = IntervalMinTable(slack)
    # new 1-based position of each raised job: last slot whose lower bound it
    # passes; 32-bit keys when they fit (half the binary-search footprint)
    if n and int(rh.max()) < 2**31 and int(rs[-1]) < 2**31 and int(rs[0]) >= 0:
        insert_at = np.searchsorted(rs.astype(np.int32), rh.astype(np.int32), side="right")
    else:
        insert_at = np.searchsorted(rs, rh, side="right")
    positions = np.arange(1, n + 1, dtype=np.int64)
    # empty ranges (job stays put) fall back to p_j via the query sentinel
    pull = np.minimum(ps, table.range_min_many(positions + 1, insert_at))
    slot = insert_at - 1
    bump = rh - comp[slot] + pull
    np.maximum(bump, 0, out=bump)
    bump += ps
    bump -= pull
    bump -= idle_after[slot]
    np.maximum(bump, 0, out=bump)
    bump += int(comp[-1])
    return bump


def _all_optima_fast_arrays(p: np.ndarray, r_lo: np.ndarray, r_hi: np.ndarray) -> np.ndarray:
    """Optimal makespan of every single-deviation scenario, indexed by job id - 1.

    Raising job j to its upper bound slides it to a later position; everything
    it used to block can move earlier by at most the minimum slack in between
    (and never more than p_j), and the delay it causes at its new position is
    absorbed by whatever idle time remains afterwards. All of that is read off
    the all-lower-bounds profile with range-minimum queries.

    Very large instances run the fused compiled engine when available; the
    numpy path is the fallback and produces identical values.
    """
    n = p.size
    order, rs = _release_order(r_lo)
    if n >= _KERNEL_MIN:
        # one 16-byte-row gather instead of two independent random gathers
        paired = np.column_stack((p, r_hi))[order]
        ps = np.ascontiguousarray(paired[:, 0])
        rh = np.ascontiguousarray(paired[:, 1])
    else:
        ps = p[order]
        rh = r_hi[order]
    if _accel.HAVE_KERNELS and n >= _KERNEL_MIN:
        comp, slack, idle_after = _accel.schedule_profile(rs, ps)
        flat, offsets = IntervalMinTable(slack).flattened()
        if 0 <= int(rs[0]) and int(rs[-1]) < 2**31 and int(rh.max()) < 2**31:
            # narrow search keys: half the binary-search footprint
            optima = _accel.candidate_optima(
                rs.astype(np.int32), ps, rh.astype(np.int32), flat, offsets, comp, idle_after
            )
        else:
            optima = _accel.candidate_optima(rs, ps, rh, flat, offsets, comp, idle_after)
    else:
        comp, slack, _, idle_after = _profile_from_sorted(rs, ps)
        optima = _optima_sorted_numpy(rs, ps, rh, slack, comp, idle_after)
    out = np.empty(n, dtype=np.int64)
    out[order] = optima
    return out


def all_optimal_makespans_fast(instance: Instance) -> np.ndarray:
    """Per-scenario optima for all n single-deviation scenarios in O(n log n).

    Returns an int64 array indexed by job id - 1. Expects a U1 instance to be
    trimmed already. Must agree exactly with all_optimal_makespans_naive.
    """
    p, r_lo, r_hi = instance.columns
    return _all_optima_fast_arrays(p, r_lo, r_hi)


def _naive_chunk(
    rs: np.ndarray,
    ps: np.ndarray,
    pos: np.ndarray,
    r_hi: np.ndarray,
    start: int,
    stop: int,
) -> np.ndarray:
    """Reference optima for candidates [start, stop): re-sort and re-evaluate each.

    The candidate's release vector is the sorted base with one raised entry,
    so the re-sort is a binary insertion into the presorted order; the
    schedule is then evaluated in full. Ties are placed before equal keys
    (the fast path places them after), which must not change any optimum.
    """
    n = rs.size
    total = int(ps.sum())
    rs_buf = rs.copy()
    ps_buf = ps.copy()
    prefix_buf = np.empty(n, dtype=np.int64)
    diff_buf = np.empty(n, dtype=np.int64)
    out = np.empty(stop - start, dtype=np.int64)
    for c in range(start, stop):
        raised = r_hi[c]
        old = int(pos[c])
        anchor = int(np.searchsorted(rs, raised, side="left"))
        new = anchor - 1 if anchor > old else anchor
        if new >= old:
            rs_buf[old:new] = rs[old + 1 : new + 1]
            ps_buf[old:new] = ps[old + 1 : new + 1]
        else:
            rs_buf[new + 1 : old + 1] = rs[new:old]
            ps_buf[new + 1 : old + 1] = ps[new:old]
        rs_buf[new] = raised
        ps_buf[new] = ps[old]
        np.cumsum(ps_buf, out=prefix_buf)
        np.subtract(prefix_buf, ps_buf, out=diff_buf)
        np.subtract(rs_buf, diff_buf, out=diff_buf)
        out[c - start] = total + int(diff_buf.max())
        lo, hi = min(old, new), max(old, new) + 1
        rs_buf[lo:hi] = rs[lo:hi]
        ps_buf[lo:hi] = ps[lo:hi]
    return out


def all_optimal_makespans_naive(instance: Instance, workers: int | None = None) -> np.ndarray:
    """Reference per-scenario optima: sort and evaluate each scenario on its own.

    Returns an int64 array indexed by job id - 1. Expects a U1 instance to be
    trimmed already. With `workers` set, the independent candidates are split
    into contiguous chunks evaluated in separate processes and merged in
    order; results are identical to the serial run.
    """
    n = instance.n
    p, r_lo, r_hi = instance.columns
    if n <= _NAIVE_SMALL:
        lows = r_lo.tolist()
        highs = r_hi.tolist()
        procs = p.tolist()
        out = []
        for c in range(n):
            rel = lows.copy()
            rel[c] = highs[c]
            t = 0
            for i in sorted(range(n), key=lambda i: (rel[i], i)):
                if rel[i] > t:
                    t = rel[i]
                t += procs[i]
            out.append(t)
        return np.array(out, dtype=np.int64)

    order, rs = _release_order(r_lo)
    ps = p[order]
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n, dtype=np.int64)
    if not workers or workers <= 1 or n < 4096:
        return _naive_chunk(rs, ps, pos, r_hi, 0, n)
    bounds = np.linspace(0, n, workers + 1, dtype=int)
    tasks = [
        (rs, ps, pos, r_hi, int(bounds[i]), int(bounds[i + 1]))
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(len(tasks)) as pool:
        chunks = pool.starmap(_naive_chunk, tasks)
    return np.concatenate(chunks)


def _regret_report(
    schedule: Schedule,
    p: np.ndarray,
    r_lo: np.ndarray,
    r_hi: np.ndarray,
    optima_by_id: np.ndarray,
) -> RegretReport:
    """Regret against every single-deviation scenario, via delay propagation.

    Raising one job inside a fixed order delays its completion by a bump that
    then decays through the idle gaps after it; the candidate's makespan is
    the base makespan plus whatever bump survives. One evaluation of the
    schedule under the all-lower-bounds scenario covers all n candidates.
    """
    idx = schedule.indices
    pp = p[idx]
    rl = r_lo[idx]
    rh = r_hi[idx]
    prefix = np.cumsum(pp)
    comp = prefix + np.maximum.accumulate(rl - (prefix - pp))
    comp_prev = np.empty_like(comp)
    comp_prev[0] = 0
    comp_prev[1:] = comp[:-1]
    idle_before = (comp - pp) - comp_prev
    idle_cum = np.cumsum(idle_before)
    idle_after = idle_cum[-1] - idle_cum
    bump = np.maximum(comp_prev, rh) - np.maximum(comp_prev, rl)
    worst_makespan = int(comp[-1]) + np.maximum(bump - idle_after, 0)
    per_position = worst_makespan - optima_by_id[idx]
    per_candidate = np.empty_like(per_position)
    per_candidate[idx] = per_position
    worst_job = int(per_candidate.argmax()) + 1
    return RegretReport(
        schedule=schedule,
        regret=int(per_candidate[worst_job - 1]),
        worst_job=worst_job,
        per_candidate=tuple(per_candidate.tolist()),
    )


def max_regret(schedule: Schedule, instance: Instance) -> RegretReport:
    """Worst regret of a schedule over all single-deviation scenarios.

    Expects a U1 instance to be trimmed already; by the candidate-set
    argument this equals the worst regret over the whole uncertainty set.
    """
    p, r_lo, r_hi = instance.columns
    if len(schedule.perm) != instance.n:
        raise ValueError(
            f"dimension mismatch: instance has {instance.n} jobs, perm has {len(schedule.perm)}"
        )
    return _regret_report(schedule, p, r_lo, r_hi, _all_optima_fast_arrays(p, r_lo, r_hi))


def solve_robust_regret(instance: Instance) -> RegretReport:
    """Minimize the worst regret: sort by latest release minus candidate optimum.

    Trims U1 intervals internally. Sort keys may be negative; ties break by
    ascending job id. The returned report's regret is minimal over all
    schedules.
    """
    p, r_lo, r_hi = instance.columns
    if instance.uncertainty.kind == "U1":
        r_hi = np.minimum(r_hi, r_lo + instance.uncertainty.gamma)
    optima_by_id = _all_optima_fast_arrays(p, r_lo, r_hi)
    keys = r_hi - optima_by_id
    order = _stable_argsort(keys)
    schedule = Schedule(tuple((order + 1).tolist()))
    return _regret_report(schedule, p, r_lo, r_hi, optima_by_id)
