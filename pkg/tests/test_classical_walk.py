from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from xkraw.classical_walk import (
    gillespie_sample,
    matexp_oracle,
    rate_matrix,
    stationary,
    total_variation,
    transition_matrix,
)
from xkraw.errors import InvalidConfig, NegativeRate
from xkraw.krawtchouk import ModelConfig

walk_probs = st.sampled_from([F(1, 5), F(1, 4), F(1, 3), F(2, 5), F(1, 2), F(3, 7)])


class TestRateMatrix:
    def test_top_forward_rate(self):
        assert rate_matrix(ModelConfig(5, F(1, 4))).rate(5, 8) == F(1, 56)

    def test_top_backward_rate(self):
        A = rate_matrix(ModelConfig(5, F(1, 2)))
        assert A.rate(8, 5) == 1
        assert A.rate(8, 8) == -1
        assert all(A.rate(8, j) == 0 for j in (0, 1, 2, 3, 4))

    @given(st.integers(1, 14), walk_probs)
    @settings(deadline=None, max_examples=30)
    def test_rows_sum_to_zero(self, N, p):
        A = rate_matrix(ModelConfig(N, p))
        for row in A.entries:
            assert sum(row) == 0

    @given(st.integers(1, 14), walk_probs)
    @settings(deadline=None, max_examples=30)
    def test_offdiagonal_nonnegative_and_banded(self, N, p):
        cfg = ModelConfig(N, p)
        A = rate_matrix(cfg)
        for i in cfg.labels:
            for j in cfg.labels:
                if i != j:
                    assert A.rate(i, j) >= 0
                    if abs(i - j) > 3:
                        assert A.rate(i, j) == 0

    @pytest.mark.parametrize("p", [F(3, 5), F(2, 3), F(9, 10)])
    def test_rejects_large_p(self, p):
        with pytest.raises(NegativeRate):
            rate_matrix(ModelConfig(5, p))

    def test_rejects_other_ell(self):
        with pytest.raises(InvalidConfig):
            rate_matrix(ModelConfig(5, F(1, 4), ell=4))


class TestTransitionMatrix:
    @pytest.mark.parametrize("N", [1, 4, 8, 16])
    @pytest.mark.parametrize("p", [F(1, 4), F(1, 2)])
    def test_identity_at_zero(self, N, p):
        P = transition_matrix(ModelConfig(N, p), 0.0).entries
        assert np.abs(P - np.eye(N + 2)).max() <= 1e-12

    @pytest.mark.parametrize("N", [4, 6, 8])
    @pytest.mark.parametrize("p", [F(1, 4), F(1, 2)])
    @pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
    def test_matches_oracle(self, N, p, t):
        cfg = ModelConfig(N, p)
        P = transition_matrix(cfg, t).entries
        assert np.abs(P - matexp_oracle(rate_matrix(cfg), t).entries).max() < 1e-10

    @given(st.integers(1, 10), walk_probs, st.floats(0.0, 5.0))
    @settings(deadline=None, max_examples=25)
    def test_stochastic(self, N, p, t):
        P = transition_matrix(ModelConfig(N, p), t).entries
        assert np.all(P >= -1e-12)
        assert np.abs(P.sum(axis=1) - 1).max() < 1e-10

    @given(st.integers(1, 8), walk_probs, st.floats(0.0, 3.0), st.floats(0.0, 3.0))
    @settings(deadline=None, max_examples=25)
    def test_semigroup(self, N, p, s, t):
        cfg = ModelConfig(N, p)
        Ps, Pt = transition_matrix(cfg, s).entries, transition_matrix(cfg, t).entries
        assert np.abs(Ps @ Pt - transition_matrix(cfg, s + t).entries).max() < 1e-9

    def test_forward_equation(self):
        cfg = ModelConfig(5, F(1, 4))
        A = rate_matrix(cfg).to_array()
        t, h = 0.7, 1e-5
        dP = (transition_matrix(cfg, t + h).entries - transition_matrix(cfg, t - h).entries) / (2 * h)
        assert np.abs(dP - transition_matrix(cfg, t).entries @ A).max() < 1e-6

    def test_negative_time(self):
        with pytest.raises(ValueError):
            transition_matrix(ModelConfig(3, F(1, 2)), -1.0)

    def test_rejects_large_p(self):
        with pytest.raises(NegativeRate):
            transition_matrix(ModelConfig(3, F(2, 3)), 1.0)

    def test_row_lookup(self):
        T = transition_matrix(ModelConfig(5, F(1, 4)), 1.0)
        assert np.array_equal(T.row(8), T.entries[6])


class TestStationary:
    @given(st.integers(1, 16), walk_probs)
    @settings(deadline=None, max_examples=30)
    def test_exact_balance(self, N, p):
        cfg = ModelConfig(N, p)
        r = stationary(cfg)
        A = rate_matrix(cfg).entries
        assert sum(r) == 1
        assert all(v > 0 for v in r)
        for j in range(cfg.size):
            assert sum(r[i] * A[i][j] for i in range(cfg.size)) == 0

    def test_long_time_limit(self):
        cfg = ModelConfig(5, F(1, 4))
        r = np.array([float(v) for v in stationary(cfg)])
        P = transition_matrix(cfg, 200.0).entries
        assert np.abs(P - r).max() < 1e-8

    def test_convergence_is_monotone(self):
        cfg = ModelConfig(5, F(1, 4))
        r = np.array([float(v) for v in stationary(cfg)])
        gaps = [np.abs(transition_matrix(cfg, t).entries - r).max() for t in (0.5, 2.0, 8.0)]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_value_at_top_state(self):
        # r_{N+3} for N = 1, p = 1/2, checked by solving rA = 0 by hand
        cfg = ModelConfig(1, F(1, 2))
        r = stationary(cfg)
        A = rate_matrix(cfg).entries
        assert r[-1] == r[1] * A[1][2] / A[2][1]


class TestMatexpOracle:
    @pytest.mark.parametrize("N, p", [(4, F(1, 4)), (8, F(1, 2)), (12, F(1, 3))])
    @pytest.mark.parametrize("t", [0.0, 0.3, 4.0, 25.0])
    def test_against_scipy(self, N, p, t):
        A = rate_matrix(ModelConfig(N, p))
        assert np.abs(matexp_oracle(A, t).entries - expm(A.to_array() * t)).max() < 1e-12

    def test_plain_array(self):
        B = np.array([[0.0, 1.0], [-1.0, 0.0]])
        E = matexp_oracle(B, np.pi / 2).entries
        assert np.allclose(E, [[0, 1], [-1, 0]], atol=1e-13)


class TestGillespie:
    def test_zero_horizon(self):
        emp = gillespie_sample(ModelConfig(5, F(1, 4)), 3, 0.0, 1000, 1)
        assert emp.counts.tolist() == [0, 0, 0, 1000, 0, 0, 0]

    def test_deterministic_per_seed(self):
        cfg = ModelConfig(5, F(1, 4))
        a = gillespie_sample(cfg, 0, 1.0, 20_000, 42).counts
        b = gillespie_sample(cfg, 0, 1.0, 20_000, 42).counts
        c = gillespie_sample(cfg, 0, 1.0, 20_000, 43).counts
        assert np.array_equal(a, b) and not np.array_equal(a, c)

    def test_thread_count_invariance(self, monkeypatch):
        cfg = ModelConfig(5, F(1, 2))
        monkeypatch.setenv("XKRAW_THREADS", "1")
        a = gillespie_sample(cfg, 8, 1.0, 20_000, 7).counts
        monkeypatch.setenv("XKRAW_THREADS", "4")
        b = gillespie_sample(cfg, 8, 1.0, 20_000, 7).counts
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("start", [0, 5, 8])
    def test_close_to_closed_form(self, start):
        cfg = ModelConfig(5, F(1, 4))
        emp = gillespie_sample(cfg, start, 1.0, 50_000, 3)
        assert emp.counts.sum() == 50_000
        assert total_variation(emp.frequencies, transition_matrix(cfg, 1.0).row(start)) < 0.02

    def test_total_variation(self):
        assert total_variation([1, 0], [0, 1]) == 1.0
        assert total_variation([0.5, 0.5], [0.5, 0.5]) == 0.0
