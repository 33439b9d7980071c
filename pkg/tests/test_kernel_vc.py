import pytest

from instances import twin_injected
from minpac.exceptions import InvalidCover, InvalidKernelSolution
from minpac.graph import Instance, Solution, solution_from_arcs, verify_solution
from minpac.journal import VC1
from minpac.kernel_vc import build_partition, kernelize_vc, lift_solution_vc, replay_vc, vertex_cover_2approx
from minpac.oracle import oracle_solve


def star(leaves, w=1):
    arcs = []
    for v in range(1, leaves + 1):
        arcs += [(0, v, w), (v, 0, w)]
    return Instance(leaves + 1, arcs)


class TestCover:
    def test_star(self):
        assert len(vertex_cover_2approx(star(4))) == 2

    def test_single_edge(self):
        assert vertex_cover_2approx(Instance(2, [(0, 1, 0), (1, 0, 0)])) == [0, 1]

    def test_single_vertex(self):
        assert vertex_cover_2approx(Instance(1)) == []


class TestPartition:
    def test_identical_leaves_share_class(self):
        part = build_partition(star(2), [0])
        assert part.signatures[1] == part.signatures[2]
        assert part.classes[part.signatures[1]] == (1, 2)

    def test_weight_difference_splits(self):
        inst = Instance(3, [(0, 1, 1), (1, 0, 1), (0, 2, 1), (2, 0, 2)])
        part = build_partition(inst, [0])
        assert part.signatures[1] != part.signatures[2]

    def test_missing_arc_uses_extra_level(self):
        inst = Instance(4, [(0, 1, 1), (1, 0, 1), (0, 2, 1), (2, 3, 1), (3, 0, 1), (2, 0, 1)])
        part = build_partition(inst, [0, 3])
        assert part.q == 1
        assert part.signatures[1] != part.signatures[2]
        assert part.q + 1 in part.signatures[1]

    def test_invalid_cover(self):
        with pytest.raises(InvalidCover):
            build_partition(star(3), [1])

    def test_cover_out_of_range(self):
        with pytest.raises(InvalidCover):
            build_partition(star(3), [0, 9])

    def test_size_bound(self):
        part = build_partition(star(4), [0])
        assert part.size_bound() == 5
        assert part.size_bound(cap=3) == 4


class TestKernelize:
    def test_star_with_twins(self):
        inst = star(4)
        kernel, journal = kernelize_vc(inst, [0])
        assert kernel.n == 2 and journal.d == 3
        assert kernel.n <= 5
        # oracle values (frozen): 5 = 2 + 3
        assert oracle_solve(inst).cost == 5
        assert oracle_solve(kernel).cost == 2
        assert [r.u for r in journal.records] == [2, 3, 4]
        assert all(isinstance(r, VC1) and r.twin == 1 for r in journal.records)

    def test_size_guard_identity(self):
        inst = star(4)
        kernel, journal = kernelize_vc(inst, [0], size_guard=True)
        assert kernel is inst and journal.d == 0 and len(journal) == 0

    def test_two_classes(self):
        arcs = []
        for v, w in ((1, 1), (2, 1), (3, 2), (4, 2)):
            arcs += [(0, v, w), (v, 0, w)]
        inst = Instance(5, arcs)
        kernel, journal = kernelize_vc(inst, [0])
        assert kernel.n == 3
        assert sorted(r.u for r in journal.records) == [2, 4]
        assert oracle_solve(inst).cost == oracle_solve(kernel).cost + journal.d

    def test_default_cover(self):
        inst = star(6)
        kernel, journal = kernelize_vc(inst)
        assert oracle_solve(inst).cost == oracle_solve(kernel).cost + journal.d

    def test_replay(self):
        inst = star(5)
        kernel, journal = kernelize_vc(inst, [0])
        assert replay_vc(inst, journal) == kernel

    @pytest.mark.parametrize("seed", range(15))
    def test_twin_instances(self, seed):
        inst, cover = twin_injected(seed)
        kernel, journal = kernelize_vc(inst, cover)
        part = build_partition(inst, cover)
        assert kernel.n <= part.size_bound()
        after = build_partition(kernel, list(range(len(cover))))
        assert all(len(m) == 1 for m in after.classes.values())
        opt = oracle_solve(inst).cost
        kopt = oracle_solve(kernel)
        assert opt == kopt.cost + journal.d
        lifted = lift_solution_vc(journal, kopt)
        assert verify_solution(inst, lifted).ok and lifted.cost == opt


class TestLift:
    def test_star(self):
        inst = star(4)
        kernel, journal = kernelize_vc(inst, [0])
        lifted = lift_solution_vc(journal, oracle_solve(kernel))
        assert lifted.cost == 5 and verify_solution(inst, lifted).ok

    def test_identity(self):
        inst = star(2)
        kernel, journal = kernelize_vc(inst, [0], size_guard=True)
        sol = oracle_solve(kernel)
        assert lift_solution_vc(journal, sol) == sol

    def test_suboptimal(self):
        inst, cover = twin_injected(3)
        kernel, journal = kernelize_vc(inst, cover)
        full = solution_from_arcs(kernel, [(t, h) for t, h, _ in kernel.arcs])
        lifted = lift_solution_vc(journal, full)
        assert verify_solution(inst, lifted).ok
        assert lifted.cost <= full.cost + journal.d

    def test_rejects_invalid(self):
        kernel, journal = kernelize_vc(star(4), [0])
        with pytest.raises(InvalidKernelSolution):
            lift_solution_vc(journal, Solution([(0, 1)], 1))
