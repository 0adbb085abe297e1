"""Worst-case (absolute) criterion: evaluate and minimize the worst makespan.

For any fixed order, the worst feasible scenario achieves exactly the
makespan of the hypothetical all-upper-bounds release vector: pushing the
critical job to its upper bound and dropping everyone else to their lower
bound is feasible and loses nothing. Minimizing that worst case reduces to
sorting by latest possible release date.
"""
from __future__ import annotations

import numpy as np

from .core import (
    Instance,
    Scenario,
    Schedule,
    _VECTOR_MIN,
    _completions_arrays,
    _stable_argsort,
    evaluate,
)
from .uncertainty import candidate_scenario, extreme_scenarios


def robust_absolute_cost(schedule: Schedule, instance: Instance) -> int:
    """Worst-case makespan of a schedule over the (trimmed) uncertainty set.

    Expects a U1 instance to be trimmed already (see normalize_u1); equals
    the makespan under the all-upper-bounds scenario.
    """
    _, upper = extreme_scenarios(instance)
    return evaluate(schedule, upper, instance).makespan


def worst_case_scenario_absolute(schedule: Schedule, instance: Instance) -> Scenario:
    """A feasible scenario attaining the worst-case makespan of the schedule.

    Takes the critical job under the all-upper-bounds vector and raises only
    that job; the result is feasible, attains robust_absolute_cost, and keeps
    the same job critical. Expects a trimmed instance.
    """
    _, upper = extreme_scenarios(instance)
    ev = evaluate(schedule, upper, instance)
    jid = schedule.perm[ev.critical_position - 1]
    return candidate_scenario(instance, jid)


def solve_robust_absolute(instance: Instance) -> tuple[Schedule, int]:
    """Minimize the worst-case makespan: sort by latest possible release date.

    Trims U1 intervals internally; ties are broken by ascending job id. The
    returned cost is the worst-case makespan of the returned schedule, which
    no other schedule can beat.
    """
    n = instance.n
    p, r_lo, r_hi = instance.columns
    if instance.uncertainty.kind == "U1":
        r_hi = np.minimum(r_hi, r_lo + instance.uncertainty.gamma)
    if n < _VECTOR_MIN:
        hi = r_hi.tolist()
        perm = sorted(range(1, n + 1), key=lambda jid: (hi[jid - 1], jid))
        t = 0
        for jid in perm:
            r = hi[jid - 1]
            if r > t:
                t = r
            t += instance.jobs[jid - 1].p
        return Schedule(tuple(perm)), t
    order = _stable_argsort(r_hi)
    cost = int(_completions_arrays(r_hi[order], p[order])[-1])
    return Schedule(tuple((order + 1).tolist())), cost
