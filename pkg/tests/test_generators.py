import hashlib

import numpy as np
import pytest

from bruteforce import set_cover_minimum
from minpac.exceptions import InvalidInstance, UncoverableElement
from minpac.generators import gen_grid, gen_random_fes, gen_random_sc, gen_setcover, setcover_vertices
from minpac.graph import feedback_edge_number, is_strongly_connected, scc_decompose
from minpac.io import write_instance
from minpac.oracle import oracle_solve
from minpac.rng import SplitMix64


def digest(inst):
    return hashlib.sha256(write_instance(inst).encode()).hexdigest()[:16]


class TestRng:
    def test_reference_outputs(self):
        assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
        r = SplitMix64(1234567)
        assert [r.next_u64() for _ in range(3)] == [6457827717110365317, 3203168211198807973, 9817491932198370423]

    def test_frozen_bounded_draws(self):
        r = SplitMix64(42)
        assert [r.below(10) for _ in range(8)] == [3, 1, 8, 4, 0, 2, 5, 8]
        assert r.random() == 0.3399310389170206

    def test_vectorised_paths_match_scalar(self):
        bounds = np.array([7, 1, 2**40 + 3, 5, 100, 3, 2**63 + 1], dtype=np.uint64)
        a, b = SplitMix64(9), SplitMix64(9)
        assert a.below_array(bounds).tolist() == [b.below(int(x)) for x in bounds]
        a, b = SplitMix64(3), SplitMix64(3)
        assert a.raw_block(6).tolist() == [b.next_u64() for _ in range(6)]

    def test_shuffle_is_permutation(self):
        items = list(range(20))
        SplitMix64(1).shuffle(items)
        assert sorted(items) == list(range(20)) and items != list(range(20))

    def test_integers_inclusive(self):
        r = SplitMix64(5)
        assert {r.integers(2, 4) for _ in range(200)} == {2, 3, 4}


class TestSetCover:
    def test_two_set_example(self):
        inst, k = gen_setcover(3, [[2, 3], [1, 2]], 2)
        assert (inst.n, inst.m, k) == (7, 12, 2)
        assert set(inst.weights.tolist()) <= {0, 1}
        assert oracle_solve(inst).cost == 2

    def test_layout(self):
        ids = setcover_vertices(3, 2)
        assert ids["s"] == 0 and ids["sets"] == [1, 2] and ids["t"] == 6

    def test_only_t_to_s_closes_cycles(self):
        inst, _ = gen_setcover(4, [[1, 2], [2, 3, 4], [4]], 2)
        ids = setcover_vertices(4, 3)
        back = [(t, h) for t, h, _ in inst.arcs if h <= t]
        assert back == [(ids["t"], ids["s"])]
        rest = [a for a in inst.arcs if (a[0], a[1]) != back[0]]
        assert scc_decompose(inst.__class__(inst.n, rest)).count == inst.n

    @pytest.mark.parametrize("seed", range(10))
    def test_opt_is_cover_size(self, seed):
        r = SplitMix64(seed)
        nu = r.integers(1, 5)
        sets = [[e for e in range(1, nu + 1) if r.random() < 0.5] or [r.integers(1, nu)]
                for _ in range(r.integers(1, 4))]
        if set().union(*map(set, sets)) != set(range(1, nu + 1)):
            sets.append(list(range(1, nu + 1)))
        best = set_cover_minimum(nu, sets)
        for ell in range(1, len(sets) + 1):
            inst, k = gen_setcover(nu, sets, ell)
            opt = oracle_solve(inst).cost
            assert opt == best
            assert (opt <= k) == (best <= ell)

    def test_whole_universe_single_set(self):
        inst, _ = gen_setcover(4, [[1, 2, 3, 4]], 1)
        assert oracle_solve(inst).cost == 1

    def test_empty_set_rejected(self):
        with pytest.raises(InvalidInstance):
            gen_setcover(2, [[1, 2], []], 1)

    def test_uncoverable(self):
        with pytest.raises(UncoverableElement):
            gen_setcover(3, [[1, 2]], 1)

    def test_bad_element(self):
        with pytest.raises(InvalidInstance):
            gen_setcover(3, [[1, 4]], 1)


class TestRandomFamilies:
    def test_random_sc_frozen(self):
        assert digest(gen_random_sc(8, 0.5, 3, seed=7)) == "b19bbde444be3e2b"

    def test_random_fes_frozen(self):
        assert digest(gen_random_fes(50, 4, 9, seed=7)) == "e454004e61625c73"

    def test_grid_frozen(self):
        assert digest(gen_grid(6, 7, 50, seed=7, walls=2, density=0.3)) == "81163c0b703f27a7"

    @pytest.mark.parametrize("seed", range(10))
    def test_random_sc_strongly_connected(self, seed):
        inst = gen_random_sc(2 + seed, 0.3, 5, seed=seed)
        assert is_strongly_connected(inst)
        assert inst.weights.max() <= 5

    @pytest.mark.parametrize("g", [0, 1, 5, 30])
    def test_random_fes_exact_g(self, g):
        inst = gen_random_fes(40, g, 9, seed=g)
        assert is_strongly_connected(inst)
        assert feedback_edge_number(inst) == g

    def test_random_fes_too_many_extras(self):
        with pytest.raises(ValueError):
            gen_random_fes(4, 10, 1)

    def test_grid_structure(self):
        inst = gen_grid(5, 6, 20, seed=1, walls=0, density=0.0)
        assert inst.n == 30 and inst.m == 2 * (5 * 5 + 4 * 6)
        assert set(inst.weights.tolist()) == {1}
        assert is_strongly_connected(inst)

    def test_grid_walls_are_heavy(self):
        inst = gen_grid(4, 9, 77, seed=1, walls=2, density=0.0)
        heavy = [(t, h) for t, h, w in inst.arcs if w == 77]
        assert len(heavy) == 2 * 2 * 4

    def test_determinism(self):
        assert gen_random_sc(6, 0.5, 3, seed=3) == gen_random_sc(6, 0.5, 3, seed=3)
        assert gen_random_sc(6, 0.5, 3, seed=3) != gen_random_sc(6, 0.5, 3, seed=4)

    def test_sorted_output(self):
        inst = gen_random_fes(100, 6, 9, seed=2)
        assert list(inst.arcs) == sorted(inst.arcs)
