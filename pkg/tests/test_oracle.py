import pytest

from minpac.exceptions import CapExceeded
from minpac.generators import gen_setcover
from minpac.graph import Instance, verify_solution
from minpac.oracle import arc_subset_oracle, oracle_count_combinations, oracle_solve


def test_t2():
    sol = oracle_solve(Instance(2, [(0, 1, 2), (1, 0, 3)]))
    assert sol.cost == 5


def test_directed_triangle_forced():
    assert oracle_solve(Instance(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)])).cost == 6


def test_two_set_cover_instance():
    inst, _ = gen_setcover(3, [[2, 3], [1, 2]], 2)
    sol = oracle_solve(inst)
    assert sol.cost == 2
    assert verify_solution(inst, sol).ok


def test_count_combinations():
    assert oracle_count_combinations(Instance(2, [(0, 1, 2), (1, 0, 3)])) == 1
    arcs = [(u, (u + s) % 4, 1 if s == 1 else 2) for u in range(4) for s in (1, 3)]
    inst = Instance(4, arcs)
    assert oracle_count_combinations(inst) == 16


def test_equal_weights_count_once():
    inst = Instance(4, [(0, 1, 5), (0, 2, 5), (0, 3, 5), (1, 0, 0), (2, 0, 0), (3, 0, 0)])
    assert oracle_count_combinations(inst) == 1


def test_cap():
    arcs = [(u, v, (u * 7 + v * 3) % 6) for u in range(8) for v in range(8) if u != v]
    inst = Instance(8, arcs)
    with pytest.raises(CapExceeded):
        oracle_solve(inst, combination_cap=10)


def test_single_vertex():
    assert oracle_solve(Instance(1)).cost == 0


def test_arc_subset_oracle_agrees():
    inst = Instance(4, [(0, 1, 1), (1, 0, 2), (1, 2, 0), (2, 1, 3), (2, 3, 1), (3, 0, 2), (0, 2, 4)])
    assert arc_subset_oracle(inst).cost == oracle_solve(inst).cost
