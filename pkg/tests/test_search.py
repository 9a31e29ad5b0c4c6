import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from regramsey.bounds import Constant, Identity
from regramsey.colorings import (base10_interval_coloring, base_s_coloring, cg_coloring,
                                 constant_coloring, from_matrix, load_graph)
from regramsey.search import (Mode, NoneUpTo, SearchBudget, Witness, greedy_homogeneous, greedy_min_hom,
                              max_homogeneous, max_min_homogeneous)
from regramsey.search.greedy import (PreconditionViolation, certified_N, greedy_guarantee,
                                     homogeneous_guarantee_N, upper_bound_N)
from regramsey.search.outcome import InvalidWitness, is_homogeneous, is_min_homogeneous
from regramsey.search.tables import ClassTables, int_to_indices, mask_to_int


def _mat_coloring(mat, lo=0):
    return from_matrix(mat, lo)


matrices = st.integers(1, 14).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n)
)


class TestTables:
    def test_bit_helpers(self):
        mask = np.array([1, 0, 1, 1, 0, 0, 0, 0, 1], dtype=bool)
        bits = mask_to_int(mask)
        assert bits == 0b100001101
        assert int_to_indices(bits) == [0, 2, 3, 8]

    @pytest.mark.parametrize("col", [base10_interval_coloring(43, 300), base_s_coloring(2, 200)])
    def test_classes_partition_later_elements(self, col):
        t = ClassTables(col)
        for y in (0, 5, t.size - 2):
            classes = t.classes(y)
            union = 0
            for c, bits in classes.items():
                assert union & bits == 0
                union |= bits
                for j in int_to_indices(bits):
                    assert col(col.lo + y, col.lo + j) == c
            assert union == ((1 << t.size) - 1) ^ ((1 << (y + 1)) - 1)


class TestExactAgainstOracle:
    @given(matrices)
    @settings(max_examples=150, deadline=None)
    def test_min_hom(self, rows):
        mat = np.triu(np.array(rows, dtype=np.int64), 1)
        col = _mat_coloring(mat)
        n = len(rows)
        expected = oracles.max_min_hom_upto(col, 0, n, n)
        out = max_min_homogeneous(col)
        assert out.exhaustive and out.maximum == expected
        assert is_min_homogeneous(col, out.best.elements)

    @given(matrices)
    @settings(max_examples=100, deadline=None)
    def test_homogeneous(self, rows):
        mat = np.triu(np.array(rows, dtype=np.int64), 1)
        col = _mat_coloring(mat)
        expected = oracles.max_hom_brute(col, 0, len(rows))
        for engine in ("python", "compiled"):
            out = max_homogeneous(col, engine=engine)
            assert out.exhaustive and out.maximum == expected
            assert is_homogeneous(col, out.best.elements)

    def test_targets(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            mat = oracles.random_matrix(rng, 12, 2)
            col = _mat_coloring(mat)
            best = oracles.max_min_hom_upto(col, 0, 12, 12)
            for target in range(2, 8):
                out = max_min_homogeneous(col, target_k=target)
                assert out.found == (best >= target)
                if out.found:
                    assert len(out.best) == target or len(out.best) >= target
                else:
                    assert isinstance(out.result, NoneUpTo) and out.maximum == best


class TestExactBehaviour:
    def test_interval_and_offsets(self):
        col = base10_interval_coloring(43, 10**4)
        out = max_min_homogeneous(col, interval=(100, 140))
        assert all(100 <= x < 140 for x in out.best.elements)
        sub = max_min_homogeneous(base10_interval_coloring(100, 140))
        assert out.maximum == sub.maximum

    def test_translation_invariance_shortcut_is_exact(self):
        col = base10_interval_coloring(43, 120)
        plain = from_matrix(
            np.array([[col(m, n) if n > m else 0 for n in range(43, 120)] for m in range(43, 120)]), 43)
        assert max_min_homogeneous(col).maximum == max_min_homogeneous(plain).maximum

    def test_constant(self):
        out = max_homogeneous(constant_coloring(0, 30))
        assert out.maximum == 30
        assert max_min_homogeneous(constant_coloring(5, 6)).maximum == 1

    def test_cg_examples(self):
        assert max_min_homogeneous(cg_coloring(Identity(), 3)).maximum == 3
        assert max_min_homogeneous(cg_coloring(Identity(), 4)).maximum == 4

    def test_ramsey42(self):
        col = from_matrix(load_graph(), 0, "ramsey42")
        out = max_homogeneous(col, target_k=5)
        assert not out.found and out.exhaustive and out.maximum == 4

    def test_small_interval_table(self):
        from regramsey.colorings import small_interval_coloring
        col = small_interval_coloring()
        # the graph block has no homogeneous 5-set; the zero rows at 0 and 1
        # extend an independent 4-set of the graph to a homogeneous 6-set
        assert max_homogeneous(col, interval=(2, 43), target_k=5).maximum == 4
        assert max_homogeneous(col).maximum == 6
        out = max_min_homogeneous(col, target_k=11)
        assert not out.found and out.exhaustive and out.maximum == 9

    def test_budget_never_certifies(self):
        col = base10_interval_coloring(43, 10**4)
        out = max_min_homogeneous(col, target_k=6, budget=SearchBudget(max_nodes=2000))
        assert not out.exhaustive and not out.found and out.maximum is None
        out = max_homogeneous(base_s_coloring(2, 3000), target_k=5, budget=SearchBudget(time_limit=0.05))
        assert not out.exhaustive

    @pytest.mark.parametrize("mode", ["min", "hom"])
    def test_parallel_is_deterministic(self, mode):
        rng = np.random.default_rng(11)
        mat = oracles.random_matrix(rng, 40, 3)
        col = _mat_coloring(mat)
        fn = max_min_homogeneous if mode == "min" else max_homogeneous
        one = fn(col)
        for jobs in (2, 3):
            many = fn(col, budget=SearchBudget(parallelism=jobs))
            assert many.best.elements == one.best.elements
            assert many.maximum == one.maximum

    def test_engines_agree_node_for_node(self):
        col = base_s_coloring(2, 300)
        a = max_homogeneous(col, engine="python")
        b = max_homogeneous(col, engine="compiled")
        assert a.best.elements == b.best.elements
        assert a.nodes_explored == b.nodes_explored

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            max_min_homogeneous(constant_coloring(0, 5), target_k=0)
        with pytest.raises(ValueError):
            max_homogeneous(constant_coloring(0, 5), engine="gpu")

    def test_outcome_json(self):
        out = max_min_homogeneous(cg_coloring(Identity(), 3), target_k=4)
        doc = out.to_json()
        assert doc["none_up_to"] == 4 and doc["maximum"] == 3 and doc["exhaustive"]
        assert doc["coloring"]["parameters"]["mu"] == 36


class TestWitness:
    def test_verify(self):
        col = from_matrix([[0, 1, 1], [0, 0, 0], [0, 0, 0]])
        Witness((0, 1, 2), Mode.MIN_HOMOGENEOUS).verify(col)
        with pytest.raises(InvalidWitness):
            Witness((0, 1, 2), Mode.HOMOGENEOUS).verify(col)
        with pytest.raises(InvalidWitness):
            Witness((1, 0), Mode.HOMOGENEOUS).verify(col)
        with pytest.raises(InvalidWitness):
            Witness((1, 5), Mode.HOMOGENEOUS).verify(col)


class TestGreedy:
    @pytest.mark.parametrize("C, k", [(2, 2), (2, 3), (3, 3), (2, 4)])
    def test_min_hom_guarantee(self, C, k):
        rng = np.random.default_rng(C * 10 + k)
        for _ in range(30):
            col = _mat_coloring(oracles.random_matrix(rng, C**k, C))
            w = greedy_min_hom(col, C=C)
            w.verify(col)
            assert len(w) >= k

    @pytest.mark.parametrize("k", [2, 3])
    def test_homogeneous_guarantee(self, k):
        rng = np.random.default_rng(k)
        N = homogeneous_guarantee_N(2, k)
        for _ in range(30):
            col = _mat_coloring(oracles.random_matrix(rng, N, 2))
            w = greedy_homogeneous(col, C=2)
            w.verify(col)
            assert len(w) >= k

    def test_color_count_checked(self):
        col = _mat_coloring(np.triu(np.arange(16).reshape(4, 4), 1))
        with pytest.raises(ValueError):
            greedy_min_hom(col, C=2)

    def test_guarantee_is_sound(self):
        # every g-regressive coloring of [0, N) has a min-homogeneous set of
        # the guaranteed size; checked against the exhaustive search
        rng = np.random.default_rng(3)
        g = lambda m: min(m, 2)  # noqa: E731
        for N in range(2, 14):
            k = greedy_guarantee(g, N)
            for _ in range(5):
                col = _mat_coloring(oracles.random_regressive(rng, N, g))
                assert len(greedy_min_hom(col)) >= k
                assert max_min_homogeneous(col).maximum >= k

    def test_certified_N(self):
        assert certified_N(Constant(0), 5, 100) == 5
        assert certified_N(Constant(1), 3, 100) == 4
        assert certified_N(Constant(1), 40, 100) is None

    def test_upper_bound_N(self):
        beta = lambda n: 1 if n < 43 else 2  # noqa: E731
        assert upper_bound_N(lambda n: 0, beta, 2, 10**4) == 43
        with pytest.raises(PreconditionViolation):
            upper_bound_N(lambda n: n + 1, beta, 2, 10**4)
        with pytest.raises(ValueError):
            upper_bound_N(lambda n: 0, beta, 3, 10**4)
