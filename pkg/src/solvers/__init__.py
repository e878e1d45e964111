"""MinGMConn algorithms and the solver registry."""

from .base import SolveResult, Solver, SolverOptions
from .disks import DiskStats, disk_solve, two_disk_solve, unit_disk_solve
from .exact import (
    SearchStats,
    enumerate_optima,
    exact_opt,
    hanan_candidates,
    offgrid_candidates,
    refined_candidates,
    triangular_grid,
)
from .factory import ALGORITHMS, get_solver
from .greedy import greedy_points, greedy_uniform
from .horizontal import demand_rows, horizontal_dc, horizontal_half, horizontal_manhattan
from .kpartite import KpartiteStats, SparsifyReport, kpartite_solve, kpartite_sparsify
from .vertical import VerticalStats, default_strips, naive_vertical_dc, vertical_manhattan

__all__ = [
    "ALGORITHMS",
    "DiskStats",
    "KpartiteStats",
    "SearchStats",
    "SolveResult",
    "Solver",
    "SolverOptions",
    "SparsifyReport",
    "VerticalStats",
    "default_strips",
    "demand_rows",
    "disk_solve",
    "enumerate_optima",
    "exact_opt",
    "get_solver",
    "greedy_points",
    "greedy_uniform",
    "hanan_candidates",
    "horizontal_dc",
    "horizontal_half",
    "horizontal_manhattan",
    "kpartite_solve",
    "kpartite_sparsify",
    "naive_vertical_dc",
    "offgrid_candidates",
    "refined_candidates",
    "triangular_grid",
    "two_disk_solve",
    "unit_disk_solve",
    "vertical_manhattan",
]
