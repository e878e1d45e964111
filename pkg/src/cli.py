"""The ``gmc`` command line.

Results go to stdout (JSON summaries, or CSV with ``--out -``); logs go to
stderr. Exit codes: 0 ok, 1 infeasible solution, 2 input error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from src.bench import ScalingCheck, check_scaling, load_config, run_bench, scaling_summary, write_csv
from src.bounds import boundary_is, component_bound, ir_exact, lower_bound_breakdown, vs_exact
from src.config import settings
from src.errors import GmcError, InstanceError
from src.generators import (
    gen_diagonal,
    gen_disk,
    gen_kpartite,
    gen_random,
    gen_thin,
    gen_triangular,
    gen_unit_disk,
)
from src.geometry import Instance, normalize, split_monotone
from src.hardness import boolean_solution, load_dimacs, sat_reduce, validate_gadget
from src.render import render_svg, save_svg
from src.serialization import (
    dumps_solution,
    load_instance,
    load_solution,
    save_instance,
    save_solution,
)
from src.solvers import ALGORITHMS, SolverOptions, demand_rows, get_solver
from src.verifier import verify_solution

logger = logging.getLogger("gmc")

GEN_KINDS = ("random", "uniform", "thin", "diagonal", "triangular", "unit-disk", "disk", "kpartite")
BOUNDS = ("is", "ir", "vs", "hitting", "components", "all")


def _emit(payload: Dict[str, object]) -> None:
    print(json.dumps(payload, indent=2, default=str))


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    options = SolverOptions(
        strips=args.strips,
        project_only_demanded=True if args.project_only_demanded else None,
        dense_projection=True if args.dense_projection else None,
        candidate_cap=args.cap,
        node_budget=args.node_budget,
    )
    result = get_solver(args.alg).solve(instance, options)
    report = verify_solution(instance, result.solution)
    if args.out:
        save_solution(result.solution, args.out)
        _emit(
            {
                "algorithm": result.algorithm,
                "cost": len(result.solution),
                "feasible": report.feasible,
                "violated": [list(d.ids()) for d in report.violated],
                "seconds": round(result.duration, 6),
                "solution": str(args.out),
            }
        )
    else:
        sys.stdout.write(dumps_solution(result.solution))
    if not report.feasible:
        logger.error("%s left %d demands unsatisfied", result.algorithm, len(report.violated))
        return 1
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    solution = load_solution(args.solution)
    report = verify_solution(instance, solution, log_paths=args.verbose)
    _emit(
        {
            "feasible": report.feasible,
            "checked": report.checked,
            "cost": len(solution),
            "violated": [list(d.ids()) for d in report.violated],
        }
    )
    return 0 if report.feasible else 1


def _halves(instance: Instance) -> List[Instance]:
    normalized, _ = normalize(instance)
    return list(split_monotone(normalized))


def _cmd_bound(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    which = BOUNDS[:-1] if args.which == "all" else (args.which,)
    halves = _halves(instance)
    out: Dict[str, object] = {}
    for name in which:
        if name == "is":
            out["is"] = max(boundary_is(h)[0] for h in halves)
        elif name == "hitting":
            out["hitting"] = max(len(demand_rows(h)) for h in halves)
        elif name == "components":
            out["components"] = component_bound(instance)
        elif name == "ir":
            out["ir"] = max(ir_exact(h, cap=args.cap) for h in halves)
        elif name == "vs":
            out["vs"] = max(vs_exact(h, cap=args.cap)[0] for h in halves)
    if args.which == "all":
        breakdown = lower_bound_breakdown(instance, vs_cap=args.cap)
        out["opt_lower_bound"] = breakdown.value
        out["source"] = breakdown.source
    _emit(out)
    return 0


def _radii(text: Optional[str]) -> tuple:
    if not text:
        return (1,)
    try:
        return tuple(Fraction(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"bad radius list {text!r}", field="radii") from exc


def _cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "random":
        instance = gen_random(args.n, args.density, args.seed)
    elif kind == "uniform":
        instance = gen_random(args.n, 1.0, args.seed)
    elif kind == "thin":
        instance = gen_thin(args.n, args.s, args.density, args.seed)
    elif kind == "diagonal":
        instance = gen_diagonal(args.n)
    elif kind == "triangular":
        instance = gen_triangular(args.n)
    elif kind == "unit-disk":
        instance = gen_unit_disk(args.n, Fraction(args.r), args.seed)
    elif kind == "disk":
        instance = gen_disk(args.n, args.seed, radii=_radii(args.radii), max_radius=args.max_radius)
    else:
        instance = gen_kpartite(args.n, args.k, args.seed, columns=args.columns)
    save_instance(instance, args.out)
    _emit({"kind": kind, "points": len(instance.points), "demands": len(instance.demands), "out": str(args.out)})
    return 0


def _assignment(text: str, n: int) -> List[bool]:
    cleaned = text.replace(",", "").replace(" ", "")
    mapping = {"1": True, "0": False, "t": True, "f": False}
    try:
        values = [mapping[ch] for ch in cleaned.lower()]
    except KeyError as exc:
        raise InstanceError(f"assignment {text!r} must consist of 0/1 or T/F", field="assignment") from exc
    if len(values) != n:
        raise InstanceError(f"assignment has {len(values)} values for {n} variables", field="assignment")
    return values


def _cmd_reduce(args: argparse.Namespace) -> int:
    formula = load_dimacs(args.cnf)
    gadget = sat_reduce(formula)
    problems = validate_gadget(gadget)
    for problem in problems:
        logger.error("gadget check failed: %s", problem)
    save_instance(gadget.instance, args.out)
    summary: Dict[str, object] = {
        "variables": formula.num_vars,
        "clauses": formula.num_clauses,
        "points": len(gadget.instance.points),
        "demands": len(gadget.instance.demands),
        "alpha": gadget.alpha,
        "certificate": len(gadget.certificate),
        "out": str(args.out),
    }
    if args.emit_assignment_solution:
        values = _assignment(args.emit_assignment_solution, formula.num_vars)
        result = boolean_solution(gadget, values)
        target = Path(args.out).with_suffix(".solution.json")
        save_solution(result.solution, target)
        summary.update(
            {
                "solution": str(target),
                "solution_size": len(result.solution),
                "satisfied_sc": len(result.satisfied_sc),
            }
        )
    _emit(summary)
    return 1 if problems else 0


def _cmd_render(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    solution = load_solution(args.solution) if args.solution else None
    segments = []
    certificate = None
    if args.witness in ("is", "both"):
        segments = max((boundary_is(h) for h in _halves(instance)), key=lambda vs: vs[0])[1]
    if args.witness in ("vs", "both"):
        certificate = max((vs_exact(h) for h in _halves(instance)), key=lambda vc: vc[0])[1]
    document = render_svg(instance, solution, segments=segments, certificate=certificate, labels=args.labels)
    save_svg(document, args.out)
    _emit({"out": str(args.out), "bytes": len(document.encode("utf-8"))})
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    config = load_config(args.config or settings.resolve_path(settings.BENCH_CONFIG))
    out = args.out or settings.artifacts_path / "bench.csv"
    records = run_bench(config, workers=args.workers)
    write_csv(records, sys.stdout if out == "-" else out)
    check = config.scaling or ScalingCheck()
    summary = scaling_summary(records, check.better, check.baseline)
    if summary:
        logger.info("%s beats %s (cost/IS) per n: %s", check.better, check.baseline, summary)
    shortfall = check_scaling(records, check) if config.scaling is not None else {}
    for n, share in shortfall.items():
        logger.error(
            "n=%d: %s beats %s on %.0f%% of seeds, below %.0f%%",
            n, check.better, check.baseline, 100 * share, 100 * check.threshold,
        )
    if out != "-":
        _emit({"records": len(records), "out": str(out), "scaling": summary})
    return 1 if shortfall else 0


def _build_parser() -> argparse.ArgumentParser:
    """Build CLI parser.

    Returns:
        Configured parser.
    """
    parser = argparse.ArgumentParser(prog="gmc", description="Generalized Minimum Manhattan Connections toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Run one algorithm and verify its output")
    solve.add_argument("--alg", required=True, choices=ALGORITHMS)
    solve.add_argument("--in", dest="input", required=True)
    solve.add_argument("--out", default=None, help="Solution file (stdout when omitted)")
    solve.add_argument("--strips", type=int, default=None)
    solve.add_argument("--dense-projection", action="store_true")
    solve.add_argument("--project-only-demanded", action="store_true")
    solve.add_argument("--cap", type=int, default=None, help="Candidate cap for --alg exact")
    solve.add_argument("--node-budget", type=int, default=None)
    solve.set_defaults(handler=_cmd_solve)

    verify = sub.add_parser("verify", help="Check a solution file against an instance")
    verify.add_argument("--in", dest="input", required=True)
    verify.add_argument("--solution", required=True)
    verify.set_defaults(handler=_cmd_verify)

    bound = sub.add_parser("bound", help="Lower bounds on OPT")
    bound.add_argument("--which", choices=BOUNDS, default="all")
    bound.add_argument("--in", dest="input", required=True)
    bound.add_argument("--cap", type=int, default=None, help="Demand cap for ir/vs")
    bound.set_defaults(handler=_cmd_bound)

    gen = sub.add_parser("gen", help="Generate an instance")
    gen.add_argument("--kind", required=True, choices=GEN_KINDS)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--density", type=float, default=0.3)
    gen.add_argument("--s", type=int, default=4, help="Column count for thin instances")
    gen.add_argument("--r", default="4", help="Unit-disk threshold")
    gen.add_argument("--radii", default=None, help="Comma-separated disk radii")
    gen.add_argument("--max-radius", type=int, default=None, help="Log-uniform disk radii up to this value")
    gen.add_argument("--k", type=int, default=2, help="Classes for kpartite instances")
    gen.add_argument("--columns", type=int, default=None)
    gen.add_argument("--out", required=True)
    gen.set_defaults(handler=_cmd_gen)

    reduce = sub.add_parser("reduce", help="Compile a 3-CNF formula into a gadget instance")
    reduce.add_argument("--cnf", required=True)
    reduce.add_argument("--out", required=True)
    reduce.add_argument("--emit-assignment-solution", default=None, metavar="A", help="Assignment such as 101 or T,F,T")
    reduce.set_defaults(handler=_cmd_reduce)

    render = sub.add_parser("render", help="Render an instance to SVG")
    render.add_argument("--in", dest="input", required=True)
    render.add_argument("--solution", default=None)
    render.add_argument("--witness", choices=("none", "is", "vs", "both"), default="none")
    render.add_argument("--labels", action="store_true")
    render.add_argument("--out", required=True)
    render.set_defaults(handler=_cmd_render)

    bench = sub.add_parser("bench", help="Run a YAML bench configuration")
    bench.add_argument("--config", default=None, help="YAML config (BENCH_CONFIG by default)")
    bench.add_argument("--out", default=None, help="CSV path, or - for stdout (artifacts/bench.csv by default)")
    bench.add_argument("--workers", type=int, default=None)
    bench.set_defaults(handler=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Execute CLI.

    Returns:
        Exit code.
    """
    args = _build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose or settings.DEBUG_MODE else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except GmcError as exc:
        logger.error("%s", exc)
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
