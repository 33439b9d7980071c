"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line that the run prints in its summary
section ("acceptance criteria").  Ground truth comes from the brute-force
oracles; tolerances are exact unless a time limit is stated.
"""

import time
from itertools import combinations, product

from bruteforce import connector_costs, residual_cost, set_cover_minimum
from instances import theta_with_long_path, twin_injected
from minpac.bounds import lb_trivial, lower_bound, obligatory_subgraph
from minpac.fpt import connector_dp, reduce_relevant, solve_minpac, solve_minpac_report
from minpac.generators import gen_grid, gen_random_fes, gen_random_sc, gen_setcover
from minpac.graph import Instance, feedback_edge_number, is_strongly_connected, scc_decompose, solution_from_arcs, verify_solution
from minpac.kernel_fes import gadget_weights, induced_paths, kernelize_fes, lift_solution_fes, solve_cycle
from minpac.kernel_vc import build_partition, kernelize_vc, lift_solution_vc
from minpac.oracle import oracle_solve
from minpac.rng import SplitMix64


def random_sc_corpus():
    """1000 instances, n in [2, 8], arc probability 0.5, weights 0..3."""
    return [gen_random_sc(2 + seed % 7, 0.5, 3, seed=seed) for seed in range(1000)]


def intra_arcs(inst, comp):
    return sorted(a for a in inst.arcs if comp[a[0]] == comp[a[1]])


def check(record, number, failures, detail):
    passed = not failures
    if failures:
        detail = f"{detail}; first failure: {failures[0]}"
    record(number, passed, detail)
    assert passed, detail


def test_criterion_01_oracle_equivalence(acceptance):
    start = time.perf_counter()
    failures = []
    for seed, inst in enumerate(random_sc_corpus()):
        sol = solve_minpac(inst, lower_bound(inst, "both"))
        opt = oracle_solve(inst).cost
        if sol.cost != opt or not verify_solution(inst, sol).ok:
            failures.append(f"seed {seed}: fpt {sol.cost} vs oracle {opt}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f} s")
    check(acceptance, 1, failures, f"1000 random instances, fpt cost == oracle cost, {elapsed:.1f} s (limit 60 s)")


def test_criterion_02_relevant_subgraph(acceptance):
    failures = []
    for seed, inst in enumerate(random_sc_corpus()):
        ob = obligatory_subgraph(inst, lower_bound(inst, "both"))
        rel = reduce_relevant(inst, ob)
        comp = ob.scc.component_of
        seen = set()
        for t, h, _ in rel.instance.arcs:
            if comp[t] != comp[h]:
                if (t, comp[h]) in seen:
                    failures.append(f"seed {seed}: two arcs from {t} into SCC {comp[h]}")
                seen.add((t, comp[h]))
        if intra_arcs(rel.instance, comp) != intra_arcs(inst, comp):
            failures.append(f"seed {seed}: intra-SCC arcs changed")
        if oracle_solve(inst).cost != oracle_solve(rel.instance).cost:
            failures.append(f"seed {seed}: optimum changed")
    check(acceptance, 2, failures, "1000 instances: one arc per (vertex, foreign SCC), SCC interiors kept, opt kept")


def connector_configuration(seed):
    """One SCC of 1-5 vertices plus 1-4 foreign SCCs it reaches by single arcs."""
    rng = SplitMix64(seed)
    k = rng.integers(1, 5)
    f = rng.integers(1, 4)
    sizes = [2] + [rng.integers(1, 2) for _ in range(f - 1)]
    main = list(range(k))
    foreign, n = [], k
    for size in sizes:
        foreign.append(list(range(n, n + size)))
        n += size
    arcs = {}
    base = [rng.below(3) for _ in main]
    if k > 1:
        for i in main:
            arcs[(i, (i + 1) % k)] = base[i]
    for group in foreign:
        if len(group) == 2:
            arcs[(group[0], group[1])] = arcs[(group[1], group[0])] = 0
            for v in group:
                arcs[(v, main[rng.below(k)])] = 1
        else:
            # a lone vertex's cheapest arc is obligatory, so it must not lead back into the main SCC
            arcs[(group[0], foreign[0][0])] = 0
    leaving = 0
    for i in main:
        for group in foreign:
            for v in group:
                if leaving < 12 and rng.random() < 0.45:
                    arcs[(i, v)] = base[i] + rng.below(5)
                    leaving += 1
    for group in foreign:
        if not any((i, v) in arcs for i in main for v in group):
            arcs[(main[rng.below(k)], group[0])] = base[0] + 1 + rng.below(3)
    return Instance(n, sorted((a, b, w) for (a, b), w in arcs.items())), k, f


def test_criterion_03_connector_dp(acceptance):
    failures = []
    checked = 0
    for seed in range(200):
        inst, k, f = connector_configuration(seed)
        rel = reduce_relevant(inst, obligatory_subgraph(inst, lb_trivial(inst)))
        comp = rel.obligatory.scc.component_of
        s = comp[0]
        size = sum(1 for c in comp if c == s)
        if size != k or rel.c != f + 1 or not is_strongly_connected(inst):
            failures.append(f"seed {seed}: configuration out of range")
            continue
        table = connector_dp(rel)
        for scc in range(rel.c):
            sdom, best = connector_costs(rel, scc)
            if list(table.sdom(scc)) != sdom:
                failures.append(f"seed {seed}: sdom mismatch for SCC {scc}")
                continue
            for r in range(len(sdom) + 1):
                for T in combinations(sdom, r):
                    cost, arcs = table.mcc(scc, T)
                    heads = {comp[h] for _, h in arcs}
                    checked += 1
                    if cost != best[frozenset(T)] or residual_cost(rel, arcs) != cost or not set(T) <= heads:
                        failures.append(f"seed {seed}: mcc({scc}, {T}) = {cost}, brute force {best[frozenset(T)]}")
    check(acceptance, 3, failures, f"200 configurations, {checked} (S, T) pairs equal brute force")


def test_criterion_04_fes_kernel(acceptance):
    start = time.perf_counter()
    failures = []
    for seed in range(300):
        g = 2 + seed % 2
        inst = theta_with_long_path(seed, g)
        if inst.n > 20 or feedback_edge_number(inst) != g or not induced_paths(inst, 7):
            failures.append(f"seed {seed}: instance outside the family")
            continue
        kernel, journal = kernelize_fes(inst)
        if kernel.n > 20 * g - 20 or kernel.m > 42 * g - 42:
            failures.append(f"seed {seed}: kernel {kernel.n}/{kernel.m} for g={g}")
        if oracle_solve(inst).cost != oracle_solve(kernel).cost + journal.d:
            failures.append(f"seed {seed}: opt not preserved")
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f} s")
    check(acceptance, 4, failures,
          f"300 instances, g in {{2,3}}: size <= 20g-20 / 42g-42 and opt = opt(kernel) + d, {elapsed:.1f} s (limit 120 s)")


def test_criterion_05_gadget_formulas(acceptance):
    failures = []
    cases = [
        # (forward, backward, expected (c_r, c_l, c_n, k, a1b2, a2b1))
        ([1] * 6, [0] * 6, (6, 0, 5, 1, 6, 0)),       # C_L <= C_N
        ([0, 1, 0], [3, 3, 2], (1, 8, 5, 2, 1, 8)),   # C_R <= C_N
        ([6, 2, 2], [6, 2, 1], (10, 9, 7, 1, 4, 3)),  # both above C_N, odd C_N split 4/3
        ([5, 3, 3], [5, 3, 3], (11, 11, 12, 1, 11, 11)),
        ([9, 1, 3], [9, 2, 2], (13, 13, 8, 1, 4, 4)),  # even C_N split 4/4
    ]
    for fw, bw, want in cases:
        g = gadget_weights(fw, bw)
        got = (g.c_r, g.c_l, g.c_n, g.k, g.a1b2, g.a2b1)
        if got != want or g.a1b1 != g.c_r or g.a2b2 != g.c_l:
            failures.append(f"{fw}/{bw}: {got} != {want}")
    rng = SplitMix64(2024)
    for _ in range(100):
        h = rng.integers(2, 10)
        g = gadget_weights([rng.below(10) for _ in range(h)], [rng.below(10) for _ in range(h)])
        if not (g.a1b2 <= g.c_r and g.a2b1 <= g.c_l and g.a1b2 + g.a2b1 >= g.c_n):
            failures.append(f"inequality violated by {g}")
    check(acceptance, 5, failures, "both formula branches, ceil/floor split, 3 inequalities on 100 random vectors")


def bidirectional_cycle(cw, ccw):
    n = len(cw)
    arcs = []
    for i in range(n):
        arcs += [(i, (i + 1) % n, cw[i]), ((i + 1) % n, i, ccw[i])]
    return Instance(n, arcs)


def test_criterion_06_cycles(acceptance):
    failures = []
    count = 0
    # every weight assignment for n = 3
    for ws in product(range(4), repeat=6):
        inst = bidirectional_cycle(ws[:3], ws[3:])
        count += 1
        if solve_cycle(inst).cost != oracle_solve(inst).cost:
            failures.append(f"weights {ws}")
    # seeded sweep for n = 4..6
    for n in (4, 5, 6):
        for seed in range(200):
            rng = SplitMix64(1000 * n + seed)
            inst = bidirectional_cycle([rng.below(4) for _ in range(n)], [rng.below(4) for _ in range(n)])
            count += 1
            if solve_cycle(inst).cost != oracle_solve(inst).cost:
                failures.append(f"n={n} seed {seed}")
    check(acceptance, 6, failures, f"{count} bidirectional cycles (n=3 exhaustive, n=4..6 seeded): cycle cost == oracle")


def test_criterion_07_vc_kernel(acceptance):
    failures = []
    for seed in range(300):
        inst, cover = twin_injected(seed)
        part = build_partition(inst, cover)
        if part.q > 2 or part.x > 3 or inst.n > 9 + 20:
            failures.append(f"seed {seed}: instance outside the family")
        kernel, journal = kernelize_vc(inst, cover)
        if kernel.n > part.size_bound():
            failures.append(f"seed {seed}: {kernel.n} vertices > bound {part.size_bound()}")
        after = build_partition(kernel, list(range(len(cover))))
        if any(len(m) > 1 for m in after.classes.values()):
            failures.append(f"seed {seed}: class with more than one vertex")
        if oracle_solve(inst).cost != oracle_solve(kernel).cost + journal.d:
            failures.append(f"seed {seed}: opt not preserved")
    check(acceptance, 7, failures, "300 twin-injected instances: size bound, singleton classes, opt = opt(kernel) + d")


def test_criterion_08_set_cover(acceptance):
    failures = []
    for seed in range(200):
        rng = SplitMix64(seed)
        nu = rng.integers(1, 6)
        nf = rng.integers(1, 6)
        sets = [[e for e in range(1, nu + 1) if rng.random() < 0.4] or [rng.integers(1, nu)] for _ in range(nf)]
        missing = set(range(1, nu + 1)) - set().union(*map(set, sets))
        if missing:
            sets[rng.below(nf)].extend(sorted(missing))
        inst, _ = gen_setcover(nu, sets, 1)
        if oracle_solve(inst).cost != set_cover_minimum(nu, sets):
            failures.append(f"seed {seed}: opt differs from minimum cover size")
        if not set(inst.weights.tolist()) <= {0, 1}:
            failures.append(f"seed {seed}: weight outside {{0, 1}}")
        t, s = inst.n - 1, 0
        rest = [a for a in inst.arcs if (a[0], a[1]) != (t, s)]
        if len(rest) != inst.m - 1 or scc_decompose(Instance(inst.n, rest)).count != inst.n:
            failures.append(f"seed {seed}: removing t->s does not leave an acyclic graph")
    small, _ = gen_setcover(3, [[2, 3], [1, 2]], 2)
    if (small.n, small.m, oracle_solve(small).cost) != (7, 12, 2):
        failures.append("U={1,2,3}, F={{2,3},{1,2}} example")
    check(acceptance, 8, failures, "200 set cover instances: opt == min cover, weights in {0,1}, one feedback arc; U={1,2,3} two-set example opt 2")


def random_feasible(kernel, rng):
    """Random strongly connected spanning arc subset, usually not optimal."""
    arcs = [(t, h) for t, h, _ in kernel.arcs]
    order = list(range(len(arcs)))
    rng.shuffle(order)
    keep = set(arcs)
    for i in order[: rng.below(len(arcs) + 1)]:
        keep.discard(arcs[i])
        if not is_strongly_connected(kernel, list(keep)):
            keep.add(arcs[i])
    return solution_from_arcs(kernel, keep)


def test_criterion_09_lifting(acceptance):
    failures = []
    optimal = suboptimal = 0
    jobs = [("fes", s, *kernelize_fes(theta_with_long_path(s, 2 + s % 2)), theta_with_long_path(s, 2 + s % 2))
            for s in range(300)]
    for s in range(300):
        inst, cover = twin_injected(s)
        jobs.append(("vc", s, *kernelize_vc(inst, cover), inst))
    for kind, seed, kernel, journal, inst in jobs:
        lift = lift_solution_fes if kind == "fes" else lift_solution_vc
        lifted = lift(journal, oracle_solve(kernel))
        optimal += 1
        if not verify_solution(inst, lifted).ok or lifted.cost != oracle_solve(inst).cost:
            failures.append(f"{kind} seed {seed}: optimal lift")
    rng = SplitMix64(99)
    for j in range(100):
        kind, seed, kernel, journal, inst = jobs[rng.below(len(jobs))] if j % 2 else jobs[rng.below(300)]
        if kernel.n == 1:
            continue
        sol = random_feasible(kernel, rng)
        lift = lift_solution_fes if kind == "fes" else lift_solution_vc
        lifted = lift(journal, sol)
        suboptimal += 1
        if not verify_solution(inst, lifted).ok or lifted.cost > sol.cost + journal.d:
            failures.append(f"{kind} seed {seed}: random lift")
    check(acceptance, 9, failures,
          f"{optimal} optimal lifts exact and verified; {suboptimal} random feasible lifts verified with cost <= input + d")


def test_criterion_10_scale(acceptance):
    failures = []
    grid = gen_grid(200, 250, 1000, seed=0, walls=5)
    start = time.perf_counter()
    sol, info = solve_minpac_report(grid, lb_trivial(grid))
    grid_time = time.perf_counter() - start
    if grid.n != 50_000 or info["c"] > 6:
        failures.append(f"grid has n={grid.n}, c={info['c']}")
    if grid_time >= 10:
        failures.append(f"grid solve {grid_time:.2f} s")
    if not verify_solution(grid, sol).ok:
        failures.append("grid solution does not verify")
    big = gen_random_fes(10**6, 50, 100, seed=0)
    start = time.perf_counter()
    kernel, journal = kernelize_fes(big)
    kernel_time = time.perf_counter() - start
    if kernel_time >= 5:
        failures.append(f"kernelize_fes {kernel_time:.2f} s")
    if kernel.n > 20 * 50 - 20 or kernel.m > 42 * 50 - 42:
        failures.append(f"kernel size {kernel.n}/{kernel.m}")
    check(acceptance, 10, failures,
          f"grid n=50000 c={info['c']} solved in {grid_time:.2f} s (limit 10 s); "
          f"kernelize_fes n=10^6 g=50 in {kernel_time:.2f} s (limit 5 s)")
