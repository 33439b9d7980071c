"""``pacsolve`` command line.

Exit codes: 0 success, 1 invalid solution or infeasible input, 2 format,
cover or I/O error, 3 resource cap exceeded.  Reports go to stdout and
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .exceptions import (
    CapExceeded,
    FormatError,
    Infeasible,
    InvalidCover,
    InvalidInstance,
    InvalidKernelSolution,
    MinPACError,
    NotStronglyConnected,
    UncoverableElement,
)
from .fpt import DEFAULT_CAP_C
from .generators import DEFAULT_SEED, gen_grid, gen_random_fes, gen_random_sc, gen_setcover
from .graph import feedback_edge_number, verify_solution
from .kernel_fes import kernelize_fes, lift_solution_fes
from .kernel_vc import build_partition, kernelize_vc, lift_solution_vc, vertex_cover_2approx
from .oracle import DEFAULT_COMBINATION_CAP
from .solver import ALGORITHMS, solve

EXIT_OK, EXIT_INVALID, EXIT_FORMAT, EXIT_CAP = 0, 1, 2, 3
SEED_ENV = "PACSOLVE_SEED"


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _out(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _fmt_time(seconds: float) -> str:
    return f"{seconds:.6f}"


# -- subcommands --------------------------------------------------------------

def cmd_solve(args) -> int:
    instance = io.read_instance(args.instance)
    report = solve(instance, args.algo, args.lb, cap_c=args.cap_c, cap_combinations=args.cap_combinations)
    print(f"opt {report.solution.cost}")
    print(f"n {report.n}")
    print(f"m {report.m}")
    print(f"g {report.g}")
    print(f"c {'-' if report.c is None else report.c}")
    print(f"route {report.route}")
    if report.kernel_n is not None:
        print(f"kernel {report.kernel_n} {report.kernel_m} d {report.d}")
    for phase, seconds in report.phase_times.items():
        print(f"time {phase} {_fmt_time(seconds)}")
    if args.emit_solution:
        io.write_solution(report.solution, args.emit_solution)
    return EXIT_OK


def cmd_kernel(args) -> int:
    instance = io.read_instance(args.instance)
    if args.rules == "fes":
        kernel, journal = kernelize_fes(instance)
        params = f"g {feedback_edge_number(instance)}"
    else:
        cover = io.read_cover(args.cover) if args.cover else vertex_cover_2approx(instance)
        kernel, journal = kernelize_vc(instance, cover, size_guard=args.size_guard)
        part = build_partition(instance, cover)
        params = f"x {part.x} q {part.q}"
    print(f"before n {instance.n} m {instance.m}")
    print(f"after n {kernel.n} m {kernel.m}")
    print(f"d {journal.d}")
    print(params)
    if args.output:
        io.write_instance(kernel, args.output)
    if args.journal:
        io.write_journal(journal, args.journal)
    return EXIT_OK


def cmd_lift(args) -> int:
    original = io.read_instance(args.instance)
    journal = io.read_journal(args.journal)
    kernel_solution = io.read_solution(args.solution)
    lift = lift_solution_vc if journal.kind == "vc" else lift_solution_fes
    lifted = lift(journal, kernel_solution, original)
    _out(io.write_solution(lifted), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = io.read_instance(args.instance)
    solution = io.read_solution(args.solution)
    verdict = verify_solution(instance, solution)
    if verdict.ok:
        print("ok")
        return EXIT_OK
    print("invalid")
    for reason in verdict.violations:
        print(reason, file=sys.stderr)
    return EXIT_INVALID


def cmd_gen(args) -> int:
    if args.kind == "setcover":
        universe, sets, ell = io.read_setcover(args.file)
        instance, k = gen_setcover(universe, sets, ell)
        header = f"c k {k}\n"
    elif args.kind == "grid":
        instance = gen_grid(args.rows, args.cols, args.heavy_weight, _seed(args),
                            walls=args.walls, density=args.density)
        header = ""
    elif args.kind == "fes":
        instance = gen_random_fes(args.n, args.g, args.max_weight, _seed(args))
        header = ""
    else:
        instance = gen_random_sc(args.n, args.arc_prob, args.max_weight, _seed(args))
        header = ""
    _out(header + io.write_instance(instance), args.output)
    return EXIT_OK


def _parse_suite(path: Path) -> list:
    jobs = []
    text = path.read_text(encoding="ascii")
    for no, line in enumerate(text.splitlines(), 1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) > 2 or (len(parts) == 2 and parts[1] not in ALGORITHMS):
            raise FormatError(no, "expected '<instance> [fpt|oracle|auto]'")
        target = Path(parts[0])
        if not target.is_absolute():
            target = path.parent / target
        jobs.append((parts[0], str(target), parts[1] if len(parts) == 2 else "auto"))
    return jobs


def _bench_one(job):
    name, path, algo = job
    start = time.perf_counter()
    try:
        instance = io.read_instance(path)
        report = solve(instance, algo)
    except (MinPACError, OSError) as exc:
        return name, algo, f"error:{type(exc).__name__}", "-", "-", "-", "-", _fmt_time(time.perf_counter() - start)
    c = "-" if report.c is None else report.c
    return (name, algo, report.solution.cost, report.n, report.m, c, report.g,
            _fmt_time(time.perf_counter() - start))


def cmd_bench(args) -> int:
    jobs = _parse_suite(Path(args.suite))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(job) for job in jobs]
    print("instance\talgo\tcost\tn\tm\tc\tg\tseconds")
    for row in rows:
        print("\t".join(str(x) for x in row))
    return EXIT_INVALID if any(str(r[2]).startswith("error:") for r in rows) else EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pacsolve", description="Exact MinPAC solver and kernelization tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance to optimality")
    p.add_argument("instance")
    p.add_argument("--algo", choices=ALGORITHMS, default="auto")
    p.add_argument("--lb", choices=("trivial", "unique-in", "both"), default="both")
    p.add_argument("--emit-solution", metavar="PATH")
    p.add_argument("--cap-c", type=int, default=DEFAULT_CAP_C)
    p.add_argument("--cap-combinations", type=int, default=DEFAULT_COMBINATION_CAP)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernel", help="kernelize an instance")
    p.add_argument("instance")
    p.add_argument("--rules", choices=("fes", "vc"), default="fes")
    p.add_argument("--cover", metavar="PATH", help="vertex cover file (vc rules)")
    p.add_argument("--size-guard", action="store_true", help="vc: leave instances within the size bound untouched")
    p.add_argument("-o", "--output", metavar="OUT")
    p.add_argument("--journal", metavar="PATH")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("lift", help="lift a kernel solution to the original instance")
    p.add_argument("instance")
    p.add_argument("--journal", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate instances")
    gen = p.add_subparsers(dest="kind", required=True)
    g = gen.add_parser("setcover", help="reduce a set cover file")
    g.add_argument("file")
    g = gen.add_parser("grid")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--heavy-weight", type=int, default=1000)
    g.add_argument("--walls", type=int, default=0)
    g.add_argument("--density", type=float, default=0.05)
    g = gen.add_parser("fes")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--g", type=int, required=True)
    g.add_argument("--max-weight", type=int, default=100)
    g = gen.add_parser("sc")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--arc-prob", type=float, default=0.5)
    g.add_argument("--max-weight", type=int, default=3)
    for g in gen.choices.values():
        g.add_argument("--seed", type=int, default=None)
        g.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", required=True, help="file with lines '<instance> [algo]'")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"pacsolve: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FormatError, InvalidCover, UsageError, OSError, UnicodeDecodeError) as exc:
        print(f"pacsolve: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (NotStronglyConnected, Infeasible, InvalidInstance, InvalidKernelSolution,
            UncoverableElement, ValueError) as exc:
        print(f"pacsolve: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
