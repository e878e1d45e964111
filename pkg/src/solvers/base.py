from dataclasses import dataclass, field
from typing import Dict, Optional, Protocol

from src.geometry import Instance, Solution


@dataclass
class SolverOptions:
    """Per-run knobs; ``None`` falls back to the configured settings."""

    strips: Optional[int] = None
    project_only_demanded: Optional[bool] = None
    dense_projection: Optional[bool] = None
    candidate_cap: Optional[int] = None
    node_budget: Optional[int] = None


@dataclass
class SolveResult:
    solution: Solution
    algorithm: str
    duration: float
    meta: Dict[str, object] = field(default_factory=dict)


class Solver(Protocol):
    """Common interface of every MinGMConn algorithm."""

    name: str

    def solve(self, instance: Instance, options: Optional[SolverOptions] = None) -> SolveResult:
        """
        Compute a solution for the instance.
        Feasibility is established by the verifier, not by the solver.
        """
        ...
