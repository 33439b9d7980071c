"""One entry point that picks and runs a solving route."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .bounds import lower_bound as compute_lower_bound
from .exceptions import NotStronglyConnected
from .fpt import DEFAULT_CAP_C, solve_minpac_report
from .graph import Instance, Solution, feedback_edge_number, is_strongly_connected, solution_from_arcs
from .kernel_fes import cycle_order, kernelize_fes, lift_solution_fes, solve_cycle
from .oracle import DEFAULT_COMBINATION_CAP, oracle_solve

ALGORITHMS = ("fpt", "oracle", "auto")
AUTO_KERNEL_MAX_G = 30


@dataclass
class SolveReport:
    """Solution plus the statistics printed by ``pacsolve solve``.

    ``c`` is ``None`` when no obligatory subgraph was built (oracle, tree
    and cycle routes).
    """

    solution: Solution
    route: str
    n: int
    m: int
    g: int
    c: int = None
    kernel_n: int = None
    kernel_m: int = None
    d: int = None
    phase_times: dict = field(default_factory=dict)


def _fpt(instance, lb, cap_c, times):
    ell = compute_lower_bound(instance, lb)
    solution, info = solve_minpac_report(instance, ell, cap_c=cap_c)
    times.update(info["phase_times"])
    return solution, info["c"]


def solve(instance: Instance, algo: str = "auto", lower_bound: str = "both", *,
          cap_c: int = DEFAULT_CAP_C, cap_combinations: int = DEFAULT_COMBINATION_CAP) -> SolveReport:
    """Solve ``instance`` to optimality.

    ``algo='auto'`` answers trees and cycles directly, kernelizes when the
    feedback edge number is at most 30 and otherwise runs the SCC-based
    solver on the input.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    if not is_strongly_connected(instance):
        raise NotStronglyConnected("MinPAC input must be strongly connected")
    start = time.perf_counter()
    g = feedback_edge_number(instance)
    report = SolveReport(None, algo, instance.n, instance.m, g)
    times = report.phase_times

    if algo == "oracle":
        report.solution = oracle_solve(instance, cap_combinations)
    elif algo == "fpt":
        report.solution, report.c = _fpt(instance, lower_bound, cap_c, times)
    elif instance.n == 1 or g == 0:
        report.route = "tree"
        report.solution = solution_from_arcs(instance, [(t, h) for t, h, _ in instance.arcs])
    elif cycle_order(instance) is not None:
        report.route = "cycle"
        report.solution = solve_cycle(instance)
    elif g <= AUTO_KERNEL_MAX_G:
        report.route = "kernel+fpt"
        clock = time.perf_counter()
        kernel, journal = kernelize_fes(instance)
        times["kernel"] = time.perf_counter() - clock
        report.kernel_n, report.kernel_m, report.d = kernel.n, kernel.m, journal.d
        inner, report.c = _fpt(kernel, lower_bound, cap_c, times)
        clock = time.perf_counter()
        report.solution = lift_solution_fes(journal, inner)
        times["lift"] = time.perf_counter() - clock
    else:
        report.route = "fpt"
        report.solution, report.c = _fpt(instance, lower_bound, cap_c, times)
    times["total"] = time.perf_counter() - start
    return report


__all__ = ["ALGORITHMS", "AUTO_KERNEL_MAX_G", "SolveReport", "solve"]
