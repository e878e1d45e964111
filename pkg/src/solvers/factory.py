import logging
import time
from typing import Callable, Dict, Optional

from src.errors import InstanceError
from src.geometry import Instance, Solution

from .base import SolveResult, Solver, SolverOptions
from .disks import disk_solve, two_disk_solve, unit_disk_solve
from .exact import exact_opt
from .greedy import greedy_uniform
from .horizontal import horizontal_manhattan
from .kpartite import kpartite_solve
from .vertical import VerticalStats, naive_vertical_dc, vertical_manhattan

logger = logging.getLogger(__name__)

Runner = Callable[[Instance, SolverOptions], Solution]


class AlgorithmSolver(Solver):
    """Adapter that times one algorithm function and tags the result."""

    def __init__(self, name: str, run: Runner):
        self.name = name
        self._run = run

    def solve(self, instance: Instance, options: Optional[SolverOptions] = None) -> SolveResult:
        options = options or SolverOptions()
        start = time.perf_counter()
        solution = self._run(instance, options)
        duration = time.perf_counter() - start
        logger.info("%s: %d points in %.3fs", self.name, len(solution), duration)
        return SolveResult(solution=solution, algorithm=self.name, duration=duration, meta={})


def _vertical(instance: Instance, options: SolverOptions) -> Solution:
    return vertical_manhattan(
        instance,
        s=options.strips,
        project_only_demanded=options.project_only_demanded,
        stats=VerticalStats(),
    )


def _exact(instance: Instance, options: SolverOptions) -> Solution:
    return exact_opt(instance, cap=options.candidate_cap, node_budget=options.node_budget)[1]


_RUNNERS: Dict[str, Runner] = {
    "horizontal": lambda inst, opts: horizontal_manhattan(inst),
    "vertical": _vertical,
    "naive": lambda inst, opts: naive_vertical_dc(inst),
    "greedy": lambda inst, opts: greedy_uniform(inst),
    "unit-disk": lambda inst, opts: unit_disk_solve(inst),
    "disk": lambda inst, opts: disk_solve(inst, dense=opts.dense_projection),
    "two-disk": lambda inst, opts: two_disk_solve(inst),
    "kpartite": lambda inst, opts: kpartite_solve(inst),
    "exact": _exact,
}

ALGORITHMS = tuple(_RUNNERS)


def get_solver(name: str) -> Solver:
    """Factory method to obtain a solver by its CLI name.

    Supported names: horizontal, vertical, naive, greedy, unit-disk, disk,
    two-disk, kpartite, exact.
    """
    key = name.lower()
    if key not in _RUNNERS:
        raise InstanceError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}", field="alg")
    return AlgorithmSolver(key, _RUNNERS[key])
