"""Command-line front end: instance files, generation, solving, verification, benchmarks.

Instance files are JSON:

    {"version": 1,
     "uncertainty": {"kind": "U2", "gamma": 2},
     "jobs": [{"id": 1, "p": 2, "r_lo": 0, "r_hi": 4}, ...]}

Solution files are JSON with the criterion, the permutation, the objective,
the attained worst-case scenario, and (for regret) the per-candidate values.
Exit status: 0 success, 1 usage or parse error, 2 verification found a
counterexample.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

import numpy as np

from .absolute import robust_absolute_cost, solve_robust_absolute, worst_case_scenario_absolute
from .core import Instance, Job, Schedule, UncertaintyModel, evaluate, optimal_makespan
from .oracle import (
    brute_max_regret,
    brute_min_makespan,
    brute_min_max_regret,
    brute_min_worst_cost,
    enumerate_feasible_scenarios,
)
from .regret import (
    all_optimal_makespans_fast,
    all_optimal_makespans_naive,
    max_regret,
    regret_of,
    solve_robust_regret,
)
from .uncertainty import candidate_scenario, extreme_scenarios, is_feasible, normalize_u1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2

INSTANCE_VERSION = 1


class CliError(Exception):
    """User-facing error: bad arguments or an unparsable input file."""


# ---------------------------------------------------------------------------
# instance / solution files


def _field(obj: dict, key: str, where: str) -> object:
    if key not in obj:
        raise CliError(f"{where}: missing field {key!r}")
    return obj[key]


def _int_field(obj: dict, key: str, where: str) -> int:
    value = _field(obj, key, where)
    if isinstance(value, bool) or not isinstance(value, int):
        raise CliError(f"{where}: field {key!r} must be an integer, got {value!r}")
    return value


def load_instance(path: str | Path) -> Instance:
    """Parse an instance file, with positions or job ids in every complaint."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise CliError(f"{path}: top level must be an object")
    version = _int_field(doc, "version", str(path))
    if version != INSTANCE_VERSION:
        raise CliError(f"{path}: unsupported version {version}")
    unc = _field(doc, "uncertainty", str(path))
    if not isinstance(unc, dict):
        raise CliError(f"{path}: 'uncertainty' must be an object")
    kind = _field(unc, "kind", f"{path}: uncertainty")
    gamma = _int_field(unc, "gamma", f"{path}: uncertainty")
    jobs_doc = _field(doc, "jobs", str(path))
    if not isinstance(jobs_doc, list) or not jobs_doc:
        raise CliError(f"{path}: 'jobs' must be a non-empty array")
    jobs = []
    for k, job_doc in enumerate(jobs_doc):
        where = f"{path}: jobs[{k}]"
        if not isinstance(job_doc, dict):
            raise CliError(f"{where}: must be an object")
        jid = _int_field(job_doc, "id", where)
        try:
            jobs.append(
                Job(
                    jid,
                    _int_field(job_doc, "p", where),
                    _int_field(job_doc, "r_lo", where),
                    _int_field(job_doc, "r_hi", where),
                )
            )
        except ValueError as exc:
            raise CliError(f"{where}: {exc}") from exc
    jobs.sort(key=lambda job: job.id)
    seen_ids = set()
    for job in jobs:
        if job.id in seen_ids:
            raise CliError(f"{path}: duplicate job id {job.id}")
        seen_ids.add(job.id)
    try:
        return Instance(tuple(jobs), UncertaintyModel(str(kind), gamma))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def instance_text(kind: str, gamma: int, p, r_lo, r_hi) -> str:
    """Serialize aligned job columns to the instance format (deterministic bytes)."""
    lines = [
        "{",
        f'  "version": {INSTANCE_VERSION},',
        f'  "uncertainty": {{"kind": "{kind}", "gamma": {gamma}}},',
        '  "jobs": [',
    ]
    last = len(p) - 1
    for i in range(len(p)):
        comma = "," if i != last else ""
        lines.append(
            f'    {{"id": {i + 1}, "p": {p[i]}, "r_lo": {r_lo[i]}, "r_hi": {r_hi[i]}}}{comma}'
        )
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_instance(instance: Instance) -> str:
    p, r_lo, r_hi = instance.columns
    return instance_text(
        instance.uncertainty.kind,
        instance.uncertainty.gamma,
        p.tolist(),
        r_lo.tolist(),
        r_hi.tolist(),
    )


def solve_to_payload(criterion: str, instance: Instance) -> dict:
    """Run the requested solver and package a self-consistent solution document."""
    trimmed = normalize_u1(instance)
    if criterion == "absolute":
        schedule, cost = solve_robust_absolute(instance)
        scenario = worst_case_scenario_absolute(schedule, trimmed)
        _, upper = extreme_scenarios(trimmed)
        critical = evaluate(schedule, upper, trimmed).critical_position
        attained = evaluate(schedule, scenario, trimmed).makespan
        if attained != cost:
            raise AssertionError("solution failed self-check: scenario does not attain the cost")
        return {
            "criterion": "absolute",
            "permutation": list(schedule.perm),
            "objective": cost,
            "worst_case_scenario": {
                "releases": list(scenario.releases),
                "candidate_job": schedule.perm[critical - 1],
            },
        }
    report = solve_robust_regret(instance)
    scenario = candidate_scenario(trimmed, report.worst_job)
    attained = regret_of(report.schedule, scenario, trimmed)
    if attained != report.regret:
        raise AssertionError("solution failed self-check: scenario does not attain the regret")
    return {
        "criterion": "regret",
        "permutation": list(report.schedule.perm),
        "objective": report.regret,
        "worst_case_scenario": {
            "releases": list(scenario.releases),
            "candidate_job": report.worst_job,
        },
        "per_candidate": list(report.per_candidate),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    payload = solve_to_payload(args.criterion, instance)
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    r_lo_min, r_lo_max = args.r_range
    p_min, p_max = args.p_range
    w_min, w_max = args.width_range
    if args.n < 1:
        raise CliError("--n must be at least 1")
    if p_min < 1 or p_min > p_max:
        raise CliError(f"invalid --p-range {p_min} {p_max}")
    if r_lo_min < 0 or r_lo_min > r_lo_max:
        raise CliError(f"invalid --r-range {r_lo_min} {r_lo_max}")
    if w_min < 0 or w_min > w_max:
        raise CliError(f"invalid --width-range {w_min} {w_max}")
    if args.model == "U2" and args.gamma < 1:
        raise CliError("--gamma must be at least 1 for U2")
    if args.gamma < 0:
        raise CliError("--gamma must be non-negative")
    rng = np.random.default_rng(args.seed)
    p = rng.integers(p_min, p_max + 1, args.n)
    r_lo = rng.integers(r_lo_min, r_lo_max + 1, args.n)
    r_hi = r_lo + rng.integers(w_min, w_max + 1, args.n)
    text = instance_text(args.model, args.gamma, p.tolist(), r_lo.tolist(), r_hi.tolist())
    Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_OK


def _random_check_instance(rng: random.Random) -> Instance:
    n = rng.randint(1, 6)
    kind = rng.choice(("U1", "U2"))
    jobs = []
    for i in range(1, n + 1):
        r_lo = rng.randint(0, 12)
        jobs.append(Job(i, rng.randint(1, 6), r_lo, r_lo + rng.randint(0, 8)))
    gamma = rng.choice((1, 2, n)) if kind == "U2" else rng.randint(0, 15)
    return Instance(tuple(jobs), UncertaintyModel(kind, gamma))


def _random_schedule(rng: random.Random, n: int) -> Schedule:
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    return Schedule(tuple(ids))


class _Counterexample(Exception):
    def __init__(self, check: str, instance: Instance, detail: str):
        super().__init__(check)
        self.check = check
        self.instance = instance
        self.detail = detail


def _verify_instance(instance: Instance, rng: random.Random, counts: dict) -> None:
    """Run every oracle check that applies to this instance; raise on mismatch."""
    trimmed = normalize_u1(instance)
    n = instance.n

    fast = all_optimal_makespans_fast(trimmed)
    naive = all_optimal_makespans_naive(trimmed, workers=os.cpu_count())
    if not np.array_equal(fast, naive):
        j = next(i + 1 for i in range(n) if fast[i] != naive[i])
        raise _Counterexample(
            "fast-vs-naive-optima",
            instance,
            f"candidate job {j}: fast {fast[j - 1]} != naive {naive[j - 1]}",
        )
    counts["fast-vs-naive-optima"] += 1

    if n > 6:
        return

    for scenario in enumerate_feasible_scenarios(instance)[:48]:
        got = optimal_makespan(scenario, instance)
        want = brute_min_makespan(scenario, instance)
        if got != want:
            raise _Counterexample(
                "erd-optimality",
                instance,
                f"scenario {scenario.releases}: sorted-order makespan {got}, enumeration {want}",
            )
        counts["erd-optimality"] += 1

    schedules = [_random_schedule(rng, n) for _ in range(12)]
    for schedule in schedules:
        cost = robust_absolute_cost(schedule, trimmed)
        scenario = worst_case_scenario_absolute(schedule, trimmed)
        ev = evaluate(schedule, scenario, trimmed)
        _, upper = extreme_scenarios(trimmed)
        crit = evaluate(schedule, upper, trimmed).critical_position
        jid = schedule.perm[crit - 1]
        suffix = sum(trimmed.jobs[j - 1].p for j in schedule.perm[crit - 1 :])
        if (
            ev.makespan != cost
            or not is_feasible(scenario, trimmed)
            or scenario.releases[jid - 1] + suffix != ev.makespan
        ):
            raise _Counterexample(
                "worst-case-construction",
                instance,
                f"perm {schedule.perm}: scenario {scenario.releases} "
                f"(cost {cost}, attained {ev.makespan})",
            )
        counts["worst-case-construction"] += 1

        got = max_regret(schedule, trimmed).regret
        want = brute_max_regret(schedule, instance)
        if got != want:
            raise _Counterexample(
                "candidate-set-sufficiency",
                instance,
                f"perm {schedule.perm}: candidate-set regret {got}, grid regret {want}",
            )
        counts["candidate-set-sufficiency"] += 1

    _, cost = solve_robust_absolute(instance)
    want = brute_min_worst_cost(instance)
    if cost != want:
        raise _Counterexample(
            "absolute-solver-optimality", instance, f"solver cost {cost}, enumeration {want}"
        )
    counts["absolute-solver-optimality"] += 1

    regret = solve_robust_regret(instance).regret
    want = brute_min_max_regret(instance)
    if regret != want:
        raise _Counterexample(
            "regret-solver-optimality", instance, f"solver regret {regret}, enumeration {want}"
        )
    counts["regret-solver-optimality"] += 1


def cmd_verify(args: argparse.Namespace) -> int:
    instances = []
    if args.input:
        instances.append(load_instance(args.input))
    rng = random.Random(args.seed)
    instances.extend(_random_check_instance(rng) for _ in range(args.trials))
    if not instances:
        raise CliError("nothing to verify: give --input and/or --trials")
    counts: dict[str, int] = {
        "erd-optimality": 0,
        "worst-case-construction": 0,
        "candidate-set-sufficiency": 0,
        "absolute-solver-optimality": 0,
        "regret-solver-optimality": 0,
        "fast-vs-naive-optima": 0,
    }
    try:
        for instance in instances:
            _verify_instance(instance, rng, counts)
    except _Counterexample as cx:
        print(f"FAIL {cx.check}: {cx.detail}", file=sys.stderr)
        print("counterexample instance:", file=sys.stderr)
        print(dump_instance(cx.instance), file=sys.stderr, end="")
        return EXIT_COUNTEREXAMPLE
    for check, count in counts.items():
        print(f"ok {check}: {count} cases")
    print(f"verified {len(instances)} instances")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = ["n,absolute_s,regret_s,fast_m_s,naive_m_s"]
    workers = os.cpu_count()
    for size in args.sizes:
        rng = np.random.default_rng(args.seed + size)
        p = rng.integers(1, 100, size)
        r_lo = rng.integers(0, max(2 * size, 10), size)
        r_hi = r_lo + rng.integers(0, 100, size)
        jobs = tuple(
            Job(i + 1, int(p[i]), int(r_lo[i]), int(r_hi[i])) for i in range(size)
        )
        instance = Instance(jobs, UncertaintyModel("U2", max(1, size // 10)))
        t0 = time.perf_counter()
        solve_robust_absolute(instance)
        t1 = time.perf_counter()
        solve_robust_regret(instance)
        t2 = time.perf_counter()
        all_optimal_makespans_fast(instance)
        t3 = time.perf_counter()
        if size <= args.naive_cap:
            all_optimal_makespans_naive(instance, workers=workers)
            naive = f"{time.perf_counter() - t3:.6f}"
        else:
            naive = ""
        rows.append(f"{size},{t1 - t0:.6f},{t2 - t1:.6f},{t3 - t2:.6f},{naive}")
    table = "\n".join(rows) + "\n"
    if args.output:
        Path(args.output).write_text(table, encoding="utf-8")
    sys.stdout.write(table)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102 - argparse hook
        raise CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="robust-makespan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("--criterion", choices=("absolute", "regret"), required=True)
    solve.add_argument("--input", required=True)
    solve.add_argument("--output", help="solution file (default: stdout)")
    solve.set_defaults(func=cmd_solve)

    gen = sub.add_parser("generate", help="write a reproducible random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--r-range", type=int, nargs=2, default=(0, 100), metavar=("LO", "HI"))
    gen.add_argument("--p-range", type=int, nargs=2, default=(1, 100), metavar=("LO", "HI"))
    gen.add_argument("--width-range", type=int, nargs=2, default=(0, 20), metavar=("LO", "HI"))
    gen.add_argument("--model", choices=("U1", "U2"), default="U2")
    gen.add_argument("--gamma", type=int, required=True)
    gen.add_argument("--output", required=True)
    gen.set_defaults(func=cmd_generate)

    verify = sub.add_parser("verify", help="cross-check solvers against brute force")
    verify.add_argument("--input", help="instance file to verify")
    verify.add_argument("--trials", type=int, default=100, help="extra random instances")
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="time the solvers over a size sweep")
    bench.add_argument("--sizes", type=int, nargs="+", required=True)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--output")
    bench.add_argument("--naive-cap", type=int, default=20000,
                       help="largest n for which the quadratic reference path is timed")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
