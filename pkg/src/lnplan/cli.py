"""Command-line interface.

Subcommands: solve, successors, ground, bench, check-exactness, satgadget.
Exit codes: 0 plan found / success, 10 unsolvable, 20 resource limit hit,
30 input or usage error. Set LNP_LOG=debug|info|warning to adjust logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import metrics, satgadget, search
from .consistency import build_graph
from .model import Task, free_variables
from .pddl import ParseError, load_task, parse_domain
from .successors import (
    GeneratorConfig,
    GroundLimitError,
    STRATEGIES,
    SuccessorGenerator,
    ground_all,
)

EXIT_OK = 0
EXIT_UNSOLVABLE = 10
EXIT_LIMIT = 20
EXIT_INPUT = 30

log = logging.getLogger("lnplan")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_task_args(p):
    p.add_argument("--domain", required=True, help="domain PDDL file")
    p.add_argument("--problem", required=True, help="problem PDDL file")


def _add_generator_args(p):
    p.add_argument("--generator", default="numeric", choices=STRATEGIES,
                   help="candidate generation strategy (default: numeric)")
    p.add_argument("--degree", type=int, default=2,
                   help="max fixed positions per range-table entry (default: 2)")
    p.add_argument("--ground-cap", type=int, default=1_000_000,
                   help="abort grounding beyond this many actions")


def build_parser() -> _Parser:
    parser = _Parser(prog="lnplan", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a minimum-length plan with blind search")
    _add_task_args(p)
    _add_generator_args(p)
    p.add_argument("--time-limit", type=float, default=None, help="seconds of wall clock")
    p.add_argument("--node-cap", type=int, default=None, help="max expansions")
    p.add_argument("--mem-limit", type=float, default=None, help="approximate MB cap")
    p.add_argument("--plan-out", default=None, help="write the plan to this file")
    p.add_argument("--report-out", default=None, help="write a JSON run report to this file")
    p.add_argument("--tolerance", type=float, default=0.0,
                   help="numeric slack for the plan-validation report only;"
                        " semantics stay exact (default: 0)")

    p = sub.add_parser("successors", help="list applicable actions in the initial state")
    _add_task_args(p)
    _add_generator_args(p)
    p.add_argument("--state-from-init", action="store_true", default=True,
                   help="evaluate in the initial state (the only supported source)")
    p.add_argument("--dump-graph", action="store_true",
                   help="print the consistency graph per schema, with exclusion reasons")

    p = sub.add_parser("ground", help="precompute the ground-action store")
    _add_task_args(p)
    p.add_argument("--ground-cap", type=int, default=1_000_000)
    p.add_argument("--list", action="store_true", help="print every stored action")

    p = sub.add_parser("bench", help="run a task suite under several strategies")
    p.add_argument("--suite", required=True,
                   help="directory scanned for domain.pddl plus problem*.pddl pairs")
    p.add_argument("--strategies", default="numeric,propositional,exhaustive,grounded",
                   help="comma-separated strategy list")
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--mem-limit", type=float, default=None)
    p.add_argument("--node-cap", type=int, default=None)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--out", required=True, help="JSONL output path")
    p.add_argument("--csv", default=None, help="optional CSV summary path")
    p.add_argument("--per-expansion", action="store_true",
                   help="record per-expansion candidate counts in the reports")

    p = sub.add_parser("check-exactness",
                       help="report whether candidate generation is provably exact")
    p.add_argument("--domain", required=True)

    p = sub.add_parser("satgadget", help="compile a DIMACS CNF into a constraint gadget")
    p.add_argument("--cnf", required=True, help="DIMACS file, or - for stdin")
    p.add_argument("--out", default=None, help="write the snippet here instead of stdout")

    return parser


def _load(args) -> Task:
    return load_task(args.domain, args.problem)


def _config(args) -> GeneratorConfig:
    return GeneratorConfig(strategy=args.generator, degree=args.degree,
                           ground_cap=args.ground_cap)


def cmd_solve(args) -> int:
    task = _load(args)
    limits = search.Limits(time_s=args.time_limit, nodes=args.node_cap,
                           memory_mb=args.mem_limit)
    result = search.solve(task, _config(args), limits)
    report = metrics.report_from_result(Path(args.problem).stem, args.generator, result,
                                        keep_per_expansion=False)
    if result.status == search.SOLVED:
        plan_text = search.format_plan(result.plan)
        check = search.validate(task, result.plan, tolerance=args.tolerance)
        plan_text += f"; validation: {'valid' if check.valid else 'INVALID'}" \
                     f" (tolerance={args.tolerance})\n"
        sys.stdout.write(plan_text)
        if args.plan_out:
            Path(args.plan_out).write_text(plan_text)
    elif result.status == search.UNSOLVABLE:
        print("; unsolvable: reachable space exhausted")
    else:
        print(f"; limit reached: {result.limit_hit}")
    if args.report_out:
        Path(args.report_out).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    log.info("solve finished: %s in %.3fs, %d expansions",
             result.status, result.stats.wall_time_s, result.stats.expansions)
    return {search.SOLVED: EXIT_OK, search.UNSOLVABLE: EXIT_UNSOLVABLE,
            search.LIMIT: EXIT_LIMIT}[result.status]


def cmd_successors(args) -> int:
    task = _load(args)
    config = _config(args)
    try:
        generator = SuccessorGenerator(task, config)
    except GroundLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    ctx = generator.context(task.init)
    if args.dump_graph:
        for schema in task.schemas:
            if schema.params:
                graph = build_graph(schema, ctx,
                                    numeric=config.strategy == "numeric", record=True)
                print(graph.dump())
            else:
                print(f"graph {schema.name} k=0 objects={len(task.objects)}"
                      " (decided by direct ground evaluation)")
    actions, report = generator.applicable(task.init, ctx)
    for action in actions:
        print(action.pddl())
    print(json.dumps({"candidates": report.candidates, "applicable": report.applicable}))
    return EXIT_OK


def cmd_ground(args) -> int:
    task = _load(args)
    try:
        store = ground_all(task, cap=args.ground_cap)
    except GroundLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    for schema in task.schemas:
        actions = store.for_schema(schema.name)
        print(f"; {schema.name}: {len(actions)} ground actions")
        if args.list:
            for action in actions:
                print(action.pddl())
    print(f"; total: {store.total}")
    return EXIT_OK


def cmd_bench(args) -> int:
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    for s in strategies:
        if s not in STRATEGIES:
            raise _UsageError(f"unknown strategy {s!r}")
    reports = metrics.run_suite(
        args.suite,
        strategies,
        degree=args.degree,
        time_limit_s=args.time_limit,
        memory_mb=args.mem_limit,
        node_cap=args.node_cap,
        keep_per_expansion=args.per_expansion,
    )
    metrics.write_jsonl(reports, args.out)
    if args.csv:
        Path(args.csv).write_text(metrics.summarize_csv(reports))
    for r in reports:
        oa = "null" if r.oa is None else f"{r.oa:.2f}"
        print(f"{r.task} {r.strategy} status={r.status} time={r.wall_time_s:.3f}s"
              f" expansions={r.expansions} oa={oa}")
    return EXIT_OK


def exactness_violations(domain) -> list[tuple[str, str, str]]:
    """(schema, element, why) entries that break the exactness conditions.

    Candidate generation is exact when every precondition literal and
    constraint mentions at most two variables and every function used in a
    precondition constraint has arity at most two.
    """
    out = []
    for schema in domain.schemas:
        for lit in schema.pre_literals:
            arity = len(free_variables(lit))
            if arity > 2:
                out.append((schema.name, repr(lit), f"literal with {arity} variables"))
        for con in schema.pre_constraints:
            arity = len(free_variables(con))
            if arity > 2:
                out.append((schema.name, repr(con), f"constraint with {arity} variables"))
            for fn in sorted({t.function for t in _function_terms(con)},
                             key=lambda f: f.name):
                if fn.arity > 2:
                    out.append((schema.name, repr(con),
                                f"function {fn.name} of arity {fn.arity}"))
    return out


def _function_terms(expr):
    from .model import BinaryExpr, FunctionTerm, NumericConstraint

    if isinstance(expr, NumericConstraint):
        yield from _function_terms(expr.lhs)
        yield from _function_terms(expr.rhs)
    elif isinstance(expr, BinaryExpr):
        yield from _function_terms(expr.left)
        yield from _function_terms(expr.right)
    elif isinstance(expr, FunctionTerm):
        yield expr


def cmd_check_exactness(args) -> int:
    with open(args.domain) as fh:
        domain = parse_domain(fh.read(), args.domain)
    violations = exactness_violations(domain)
    if not violations:
        print("exactness guaranteed: all precondition elements have arity <= 2")
    else:
        for schema, element, why in violations:
            print(f"exactness NOT guaranteed: {schema}/{element} ({why})")
    return EXIT_OK


def cmd_satgadget(args) -> int:
    if args.cnf == "-":
        text = sys.stdin.read()
    else:
        with open(args.cnf) as fh:
            text = fh.read()
    try:
        cnf = satgadget.parse_dimacs(text)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    snippet = satgadget.to_problem_text(satgadget.encode(cnf))
    if args.out:
        Path(args.out).write_text(snippet)
    else:
        sys.stdout.write(snippet)
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "successors": cmd_successors,
    "ground": cmd_ground,
    "bench": cmd_bench,
    "check-exactness": cmd_check_exactness,
    "satgadget": cmd_satgadget,
}


def _setup_logging() -> None:
    level_name = os.environ.get("LNP_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
