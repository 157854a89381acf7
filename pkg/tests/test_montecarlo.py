from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from sparseblock import montecarlo as mc
from sparseblock.montecarlo import (
    AllocationLimitError,
    EnsembleConfig,
    empirical_moments,
    finite_n_moment,
    run_experiment,
    sample_adjacency,
    trace_moments,
)


def dense(A):
    return A.toarray() if sp.issparse(A) else A


# ---- sampling


@settings(max_examples=20)
@given(st.integers(2, 30), st.integers(1, 4), st.floats(0, 2), st.integers(0, 2**64 - 1), st.integers(0, 50))
def test_samples_are_exactly_symmetric(N, d, Z, seed, index):
    A = sample_adjacency(EnsembleConfig(N, d, min(Z, N), seed=seed), index)
    assert A.shape == (N * d, N * d)
    assert np.array_equal(A, A.T)
    # diagonal blocks are empty
    blocks = A.reshape(N, d, N, d)
    assert all(not blocks[i, :, i, :].any() for i in range(N))


def test_zero_connectivity_gives_zero_matrix():
    cfg = EnsembleConfig(20, 3, 0, samples=5)
    assert not sample_adjacency(cfg, 0).any()
    res = run_experiment(cfg, 2)
    for e in res.estimates:
        assert e.mean == 0 and e.analytic == 0 and e.z_score == 0


def test_sample_depends_only_on_config_and_index():
    cfg = EnsembleConfig(40, 2, 3, seed=7)
    assert np.array_equal(sample_adjacency(cfg, 3), sample_adjacency(cfg, 3))
    assert not np.array_equal(sample_adjacency(cfg, 3), sample_adjacency(cfg, 4))
    other = EnsembleConfig(40, 2, 3, seed=8)
    assert not np.array_equal(sample_adjacency(cfg, 3), sample_adjacency(other, 3))


def test_block_entry_variances():
    # complete graph so every block is present; d = 2, sigma^2 = 1/2
    cfg = EnsembleConfig(60, 2, 60, sigma2=Fraction(1, 2))
    A = sample_adjacency(cfg, 0).reshape(60, 2, 60, 2)
    iu, ju = np.triu_indices(60, k=1)
    X = A[iu, :, ju, :]
    diag = np.concatenate([X[:, 0, 0], X[:, 1, 1]])
    off = np.concatenate([X[:, 0, 1], X[:, 1, 0]])
    # GOE: diagonal entries have variance 2 sigma^2, off-diagonal sigma^2
    assert abs(diag.var() - 1.0) < 0.1
    assert abs(off.var() - 0.5) < 0.05
    assert np.array_equal(X[:, 0, 1], X[:, 1, 0])


def test_edge_density():
    cfg = EnsembleConfig(400, 1, 4)
    A = sample_adjacency(cfg, 0)
    edges = np.count_nonzero(np.triu(A))
    expected = 4 / 400 * 400 * 399 / 2
    assert abs(edges - expected) < 5 * np.sqrt(expected)


# ---- trace moments


def test_trace_moments_of_identity():
    assert trace_moments(np.eye(5), 6) == [1.0] * 6
    assert trace_moments(sp.identity(5000, format="csr"), 4) == [1.0] * 4


def test_trace_routes_agree():
    cfg = EnsembleConfig(30, 2, 3)
    A = sample_adjacency(cfg, 0)
    via_eig = trace_moments(A, 7)
    via_products = trace_moments(sp.csr_matrix(A), 7)
    brute = [np.trace(np.linalg.matrix_power(A, k)) / A.shape[0] for k in range(1, 8)]
    assert np.allclose(via_eig, brute, rtol=1e-9, atol=1e-9)
    assert np.allclose(via_products, brute, rtol=1e-9, atol=1e-9)
    assert empirical_moments(A, 3) == via_eig[1::2]


def test_dense_and_sparse_storage_hold_the_same_matrix(monkeypatch):
    cfg = EnsembleConfig(25, 3, 2, seed=11)
    A = sample_adjacency(cfg, 2)
    monkeypatch.setattr(mc, "DENSE_CAP", 10)
    B = sample_adjacency(cfg, 2)
    assert sp.issparse(B)
    assert np.array_equal(A, B.toarray())


# ---- experiments


def test_results_independent_of_thread_count_and_run():
    cfg = EnsembleConfig(50, 2, 3, seed=5, samples=12)
    one = run_experiment(cfg, 2)
    again = run_experiment(cfg, 2)
    many = run_experiment(cfg, 2, threads=4)
    assert one.to_dict() == again.to_dict() == many.to_dict()
    assert np.array_equal(one.samples, many.samples)


def test_odd_moments_vanish_statistically():
    res = run_experiment(EnsembleConfig(100, 2, 3, samples=60, seed=1), 2, include_odd=True)
    for k in (1, 3):
        e = res.by_order(k)
        assert e.analytic == 0
        assert abs(e.mean) <= 3 * e.stderr + 1e-12
    assert [e.order for e in res.estimates] == [1, 2, 3, 4]


def test_finite_n_moments():
    cfg = EnsembleConfig(10, 2, 3, sigma2=Fraction(1, 2))
    assert finite_n_moment(2, cfg) == Fraction(3 * 3, 2) * Fraction(9, 10)
    m2, m4 = Fraction(3, 2), Fraction(23, 4)
    assert finite_n_moment(4, cfg) == 3 * Fraction(9, 10) * m4 + 2 * 9 * Fraction(72, 100) * m2 * m2
    assert finite_n_moment(6, cfg) is None


def test_scalar_example_matches_exact_moments():
    res = run_experiment(EnsembleConfig(500, 1, 2, sigma2=1, samples=100, seed=3), 3)
    assert [float(e.analytic) for e in res.estimates] == [4, 56, 1136]
    for e in res.estimates:
        assert e.within_tolerance, e


def test_json_layout():
    res = run_experiment(EnsembleConfig(20, 2, 2, samples=3), 2)
    data = res.to_dict()
    assert data["config"] == {"N": 20, "d": 2, "Z": 2, "sigma2": 0.5, "seed": 0, "samples": 3}
    e2 = data["estimates"][0]
    assert set(e2) == {"order", "mean", "stderr", "analytic", "z", "bias_allowance", "finite_n", "z_finite_n"}
    assert data["estimates"][1]["order"] == 4 and "finite_n" in data["estimates"][1]
    assert "finite_n" not in run_experiment(EnsembleConfig(20, 2, 2), 3).to_dict()["estimates"][2]


# ---- validation


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(N=1, d=1, Z=0),
        dict(N=10, d=0, Z=1),
        dict(N=10, d=1, Z=-1),
        dict(N=10, d=1, Z=11),
        dict(N=10, d=1, Z=1, samples=0),
        dict(N=10, d=1, Z=1, sigma2=0),
        dict(N=10, d=1, Z=1, seed=-1),
    ],
)
def test_invalid_configs_rejected(kwargs):
    with pytest.raises(ValueError):
        EnsembleConfig(**kwargs)


def test_allocation_cap():
    with pytest.raises(AllocationLimitError):
        sample_adjacency(EnsembleConfig(100, 10, 2, max_dim=500), 0)
    with pytest.raises(ValueError):
        run_experiment(EnsembleConfig(10, 1, 1), 0)
