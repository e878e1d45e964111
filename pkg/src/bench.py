"""Benchmark harness: generate instances, run algorithms, gate on the verifier, emit CSV."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Union

import pandas as pd
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.bounds import lower_bound_breakdown
from src.config import settings
from src.errors import BudgetExceeded, GmcError, InstanceError
from src.generators import (
    gen_diagonal,
    gen_disk,
    gen_kpartite,
    gen_random,
    gen_thin,
    gen_triangular,
    gen_unit_disk,
)
from src.geometry import Instance
from src.solvers import ALGORITHMS, SolverOptions, exact_opt, get_solver
from src.verifier import verify_solution

logger = logging.getLogger(__name__)

COLUMNS = (
    "instance_id",
    "family",
    "n",
    "num_demands",
    "algorithm",
    "cost",
    "is_bound",
    "vs_bound_or_null",
    "exact_opt_or_null",
    "ratio_vs_is",
    "wall_time_ms",
    "seed",
)

Family = Literal["random", "thin", "diagonal", "triangular", "uniform", "unit-disk", "disk", "kpartite"]


class FamilySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Family
    sizes: List[int] = Field(..., min_length=1)
    algorithms: List[str] = Field(..., min_length=1)
    params: Dict[str, Any] = Field(default_factory=dict)


class ScalingCheck(BaseModel):
    """Share of seeds, per size, on which ``better`` must beat ``baseline`` on cost/IS."""

    model_config = ConfigDict(extra="forbid")

    better: str = "vertical"
    baseline: str = "naive"
    threshold: float = Field(default=0.8, ge=0.0, le=1.0)
    sizes: List[int] = Field(default_factory=list)


class BenchConfig(BaseModel):
    """Bench configuration as read from YAML.

    ``exact_cap`` is the candidate cap for ``exact_opt`` and ``vs_cap`` the
    demand cap for ``vs_exact``; 0 disables the oracle and leaves its column
    empty. With ``scaling`` set, ``gmc bench`` exits 1 when a size falls
    below the threshold.
    """

    model_config = ConfigDict(extra="forbid")

    families: List[FamilySpec]
    seeds: List[int] = Field(default_factory=lambda: [0])
    exact_cap: int = Field(default=0, ge=0)
    vs_cap: int = Field(default=0, ge=0)
    timing: bool = True
    workers: Optional[int] = Field(default=None, ge=1)
    scaling: Optional[ScalingCheck] = None


@dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    family: str
    n: int
    num_demands: int
    algorithm: str
    cost: int
    is_bound: int
    vs_bound_or_null: Optional[int]
    exact_opt_or_null: Optional[int]
    ratio_vs_is: float
    wall_time_ms: float
    seed: int

    @property
    def sort_key(self) -> Tuple[str, int, int, str]:
        return self.family, self.n, self.seed, self.algorithm


def load_config(path: Union[str, Path]) -> BenchConfig:
    """Read and validate a YAML bench configuration.

    Raises:
        InstanceError: On unreadable YAML or a schema violation.
    """
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except (OSError, yaml.YAMLError) as exc:
        raise InstanceError(f"cannot read bench config {path}: {exc}", field="config") from exc
    try:
        config = BenchConfig.model_validate(data or {})
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise InstanceError(first["msg"], field=f"config.{where}") from exc
    unknown = sorted({a for f in config.families for a in f.algorithms} - set(ALGORITHMS))
    if unknown:
        raise InstanceError(f"unknown algorithms {unknown}", field="config.algorithms")
    return config


def _param(params: Dict[str, Any], name: str, default: Any) -> Any:
    return params.get(name, default)


_GENERATORS: Dict[str, Callable[[int, int, Dict[str, Any]], Instance]] = {
    "random": lambda n, seed, p: gen_random(n, _param(p, "density", 0.3), seed),
    "uniform": lambda n, seed, p: gen_random(n, 1.0, seed),
    "thin": lambda n, seed, p: gen_thin(n, _param(p, "s", 4), _param(p, "density", 0.3), seed),
    "diagonal": lambda n, seed, p: gen_diagonal(n),
    "triangular": lambda n, seed, p: gen_triangular(n),
    "unit-disk": lambda n, seed, p: gen_unit_disk(n, _param(p, "r", 4), seed),
    "disk": lambda n, seed, p: gen_disk(
        n, seed, radii=tuple(_param(p, "radii", (1,))), max_radius=_param(p, "max_radius", None)
    ),
    "kpartite": lambda n, seed, p: gen_kpartite(n, _param(p, "k", 2), seed, _param(p, "columns", None)),
}


@dataclass(frozen=True)
class _Task:
    family: str
    n: int
    seed: int
    algorithms: Tuple[str, ...]
    params: Tuple[Tuple[str, Any], ...]
    exact_cap: int
    vs_cap: int
    timing: bool


def _exact_or_none(instance: Instance, cap: int) -> Optional[int]:
    if cap <= 0:
        return None
    try:
        return exact_opt(instance, cap=cap)[0]
    except BudgetExceeded as exc:
        logger.info("exact oracle skipped: %s", exc.message)
        return None


Outcome = Tuple[str, bool]


def _run_task(task: _Task) -> Tuple[List[BenchRecord], List[Outcome]]:
    instance_id = f"{task.family}-n{task.n}-s{task.seed}"
    params = dict(task.params)
    try:
        instance = _GENERATORS[task.family](task.n, task.seed, params)
        bounds = lower_bound_breakdown(instance, vs_cap=task.vs_cap)
    except GmcError as exc:
        logger.error("%s: skipped: %s", instance_id, exc)
        return [], []
    vs_value = bounds.vs_value if task.vs_cap > 0 else None
    opt = _exact_or_none(instance, task.exact_cap)
    options = SolverOptions(strips=params.get("strips"), project_only_demanded=params.get("project_only_demanded"))

    records: List[BenchRecord] = []
    outcomes: List[Outcome] = []
    for name in task.algorithms:
        start = time.perf_counter()
        try:
            solution = get_solver(name).solve(instance, options).solution
        except GmcError as exc:
            logger.error("%s/%s failed: %s", instance_id, name, exc)
            outcomes.append((name, False))
            continue
        elapsed = (time.perf_counter() - start) * 1000
        report = verify_solution(instance, solution)
        cost = len(solution)
        if not report.feasible:
            logger.error("%s/%s: %d demands unsatisfied, record dropped", instance_id, name, len(report.violated))
        elif cost < bounds.is_value:
            logger.error("%s/%s: cost %d below IS %d, record dropped", instance_id, name, cost, bounds.is_value)
        outcomes.append((name, report.feasible and cost >= bounds.is_value))
        if not outcomes[-1][1]:
            continue
        records.append(
            BenchRecord(
                instance_id=instance_id,
                family=task.family,
                n=len(instance.points),
                num_demands=len(instance.demands),
                algorithm=name,
                cost=cost,
                is_bound=bounds.is_value,
                vs_bound_or_null=vs_value,
                exact_opt_or_null=opt,
                ratio_vs_is=cost / max(bounds.is_value, 1),
                wall_time_ms=round(elapsed, 3) if task.timing else 0,
                seed=task.seed,
            )
        )
    return records, outcomes


def _tasks(config: BenchConfig) -> List[_Task]:
    return [
        _Task(
            family=spec.family,
            n=n,
            seed=seed,
            algorithms=tuple(spec.algorithms),
            params=tuple(sorted(spec.params.items())),
            exact_cap=config.exact_cap,
            vs_cap=config.vs_cap,
            timing=config.timing,
        )
        for spec in config.families
        for n in spec.sizes
        for seed in config.seeds
    ]


def run_bench(config: BenchConfig, workers: Optional[int] = None) -> List[BenchRecord]:
    """Run every (instance, algorithm) pair of the configuration.

    Rows come back sorted by (family, n, seed, algorithm) whatever the
    worker count.
    """
    workers = workers or config.workers or settings.BENCH_WORKERS
    tasks = _tasks(config)
    logger.info("bench: %d instances on %d worker(s)", len(tasks), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_task, tasks))
    else:
        batches = [_run_task(task) for task in tasks]
    records = [r for batch, _ in batches for r in batch]
    for name, (passed, total) in feasibility_rates(o for _, outcomes in batches for o in outcomes).items():
        level = logging.INFO if passed == total else logging.ERROR
        logger.log(level, "feasibility %s: %d/%d (%.1f%%)", name, passed, total, 100.0 * passed / total)
    return sorted(records, key=lambda r: r.sort_key)


def feasibility_rates(outcomes: Iterable[Outcome]) -> Dict[str, Tuple[int, int]]:
    """Per algorithm, (runs that passed the verifier gate, runs attempted)."""
    rates: Dict[str, Tuple[int, int]] = {}
    for name, ok in outcomes:
        passed, total = rates.get(name, (0, 0))
        rates[name] = (passed + ok, total + 1)
    return dict(sorted(rates.items()))


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([asdict(r) for r in records], columns=list(COLUMNS))
    for column in ("vs_bound_or_null", "exact_opt_or_null"):
        frame[column] = frame[column].astype("Int64")
    frame["ratio_vs_is"] = frame["ratio_vs_is"].map(lambda v: f"{v:.6f}")
    frame["wall_time_ms"] = frame["wall_time_ms"].map(lambda v: f"{v:.3f}")
    return frame


def write_csv(records: Sequence[BenchRecord], out: Union[str, Path, Any]) -> None:
    """Write records as CSV with the fixed column order; ``out`` may be a path or a text stream."""
    frame = records_frame(records)
    if isinstance(out, (str, Path)):
        Path(out).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, lineterminator="\n")


def scaling_summary(records: Sequence[BenchRecord], better: str = "vertical", baseline: str = "naive") -> Dict[int, float]:
    """Per instance size, the share of seeds where ``better`` has a lower cost/IS ratio than ``baseline``."""
    ratios: Dict[Tuple[str, int, int], Dict[str, float]] = {}
    for r in records:
        ratios.setdefault((r.family, r.n, r.seed), {})[r.algorithm] = r.ratio_vs_is
    wins: Dict[int, List[bool]] = {}
    for (_, n, _), by_alg in sorted(ratios.items()):
        if better in by_alg and baseline in by_alg:
            wins.setdefault(n, []).append(by_alg[better] < by_alg[baseline])
    return {n: sum(flags) / len(flags) for n, flags in sorted(wins.items())}


def check_scaling(records: Sequence[BenchRecord], check: ScalingCheck) -> Dict[int, float]:
    """Sizes where ``check.better`` wins on fewer than ``check.threshold`` of the seeds, with their share.

    A size listed in ``check.sizes`` but absent from the records counts as a 0.0 share.
    """
    summary = scaling_summary(records, better=check.better, baseline=check.baseline)
    sizes = check.sizes or sorted(summary)
    return {n: summary.get(n, 0.0) for n in sizes if summary.get(n, 0.0) < check.threshold}
