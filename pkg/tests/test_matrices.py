import math

import numpy as np
import pytest

from actdct import numtheory as nt
from actdct.dct import dct_forward, dct_matrix
from actdct.engine import act_averages, build_plan
from actdct.interpolation import weights_direct
from actdct.matrices import build_decomposition, divisor_matrix, mobius_matrix, weight_average_matrix


class TestMobiusMatrix:
    def test_one(self):
        assert mobius_matrix(1).tolist() == [[1]]

    def test_four(self):
        assert mobius_matrix(4).tolist() == [[1, -1, -1, 0], [0, 1, 0, -1], [0, 0, 1, 0], [0, 0, 0, 1]]

    def test_entries(self):
        M = mobius_matrix(30)
        for i in range(1, 31):
            for j in range(1, 31):
                assert M[i - 1, j - 1] == (nt.mobius(j // i) if j % i == 0 else 0)

    def test_unit_determinant(self):
        for N in range(1, 33):
            M = mobius_matrix(N)
            assert np.array_equal(np.triu(M), M) and np.all(np.diag(M) == 1)
            assert round(np.linalg.det(M)) == 1

    def test_inverse_is_divisor_matrix(self):
        for N in range(1, 65):
            assert np.array_equal(mobius_matrix(N) @ divisor_matrix(N), np.eye(N, dtype=np.int64))

    def test_divisor_entries(self):
        D = divisor_matrix(6)
        assert D[1, 5] == 1 and D[3, 5] == 0
        assert divisor_matrix(1).tolist() == [[1]]

    def test_zero(self):
        with pytest.raises(ValueError):
            mobius_matrix(0)
        with pytest.raises(ValueError):
            divisor_matrix(0)


class TestWeightAverage:
    def test_row_sums(self):
        assert np.allclose(weight_average_matrix(8).sum(axis=1), 1.0, atol=1e-10)

    def test_first_row(self):
        assert np.allclose(weight_average_matrix(8)[0], weights_direct(-0.5, 8).weights, atol=1e-14)

    def test_matches_averages(self):
        v = np.random.default_rng(0).normal(size=8)
        assert np.allclose(weight_average_matrix(8) @ v, act_averages(v, build_plan(8, 0)).S, atol=1e-10)

    def test_small(self):
        with pytest.raises(ValueError):
            weight_average_matrix(1)


class TestDecomposition:
    @pytest.mark.parametrize("N", [2, 4, 8, 16, 32])
    def test_sum_is_dct(self, N):
        b = build_decomposition(N)
        assert np.max(np.abs(b.C1 + b.C2 - dct_matrix(N))) < 1e-10

    def test_structure(self):
        b = build_decomposition(8)
        assert np.allclose(b.W_ext[0], 1 / 8)
        assert np.all(b.W_ext[1:, :] == b.W)
        assert b.M_ext[0, 0] == 1 and np.all(b.M_ext[0, 1:] == 0) and np.all(b.M_ext[1:, 0] == 0)
        assert np.array_equal(b.M_ext[1:, 1:], mobius_matrix(7))
        assert np.allclose(np.diag(b.alpha_diag), [1 / math.sqrt(2)] + [1] * 7)

    def test_zero_mean(self):
        b = build_decomposition(8)
        v = np.random.default_rng(1).normal(size=8)
        v -= v.mean()
        assert np.linalg.norm(b.C2 @ v) < 1e-10
        assert np.allclose(b.C1 @ v, dct_forward(v), atol=1e-10)

    def test_split(self):
        b = build_decomposition(8)
        v = np.random.default_rng(2).uniform(0, 1, 8)
        assert np.allclose(b.C1 @ v + b.C2 @ v, dct_forward(v), atol=1e-10)

    def test_mobius_part_from_averages(self):
        N = 8
        b = build_decomposition(N)
        v = np.random.default_rng(3).uniform(-1, 1, N)
        S = act_averages(v, build_plan(N, 0))
        S_full = np.concatenate([[S.S0], S.S])
        assert np.allclose(math.sqrt(N / 2) * b.M_ext @ S_full, b.C1 @ v, atol=1e-10)

    def test_zeroth_average(self):
        v = np.random.default_rng(4).normal(size=8)
        S0 = act_averages(v, build_plan(8, 0)).S0
        assert dct_forward(v)[0] == pytest.approx(math.sqrt(8 / 2) * S0, abs=1e-12)

    def test_small(self):
        with pytest.raises(ValueError):
            build_decomposition(1)
