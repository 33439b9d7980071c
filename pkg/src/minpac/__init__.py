"""Exact and parameterized solvers for Min-Power Asymmetric Connectivity."""

from .estimators import FESKernelizer, KernelizedSolver, MinPACSolver, VCKernelizer, check_instance
from .exceptions import (
    CapExceeded,
    FormatError,
    Infeasible,
    InvalidArc,
    InvalidCover,
    InvalidInstance,
    InvalidKernelSolution,
    MinPACError,
    MissingOutArc,
    NotStronglyConnected,
    UncoverableElement,
    WeightOverflow,
)
from .fpt import solve_minpac
from .generators import gen_grid, gen_random_fes, gen_random_sc, gen_setcover
from .graph import Instance, Solution, cost, feedback_edge_number, verify_solution
from .kernel_fes import kernelize_fes, lift_solution_fes, solve_cycle
from .kernel_vc import kernelize_vc, lift_solution_vc
from .oracle import oracle_solve
from .solver import solve

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "FESKernelizer",
    "FormatError",
    "Infeasible",
    "Instance",
    "InvalidArc",
    "InvalidCover",
    "InvalidInstance",
    "InvalidKernelSolution",
    "KernelizedSolver",
    "MinPACError",
    "MinPACSolver",
    "MissingOutArc",
    "NotStronglyConnected",
    "Solution",
    "UncoverableElement",
    "VCKernelizer",
    "WeightOverflow",
    "check_instance",
    "cost",
    "feedback_edge_number",
    "gen_grid",
    "gen_random_fes",
    "gen_random_sc",
    "gen_setcover",
    "kernelize_fes",
    "kernelize_vc",
    "lift_solution_fes",
    "lift_solution_vc",
    "oracle_solve",
    "solve",
    "solve_cycle",
    "solve_minpac",
    "verify_solution",
]
