"""Monte Carlo sampling of sparse GOE block matrices and empirical moments.

Every sample ``s`` draws from its own Philox stream keyed by ``(s, seed)``,
so results depend only on ``(config, sample index)`` and never on how the
samples are scheduled across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
from scipy.special import ndtri

from .wick import moment_finite_d

DENSE_CAP = 4000  # largest Nd stored densely
EIGEN_CAP = 2000  # largest Nd using eigenvalue power sums
MAX_DIM = 200_000


class AllocationLimitError(ValueError):
    """Requested matrix dimension exceeds the configured cap."""


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


@dataclass(frozen=True)
class EnsembleConfig:
    N: int
    d: int
    Z: float
    sigma2: object = None  # None means 1/d
    seed: int = 0
    samples: int = 1
    max_dim: int = MAX_DIM

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not 0 <= self.Z <= self.N:
            raise ValueError(f"Z must lie in [0, N], got {self.Z}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.sigma2 is not None and self.sigma2 <= 0:
            raise ValueError("sigma2 must be positive")

    @property
    def variance(self) -> Fraction:
        return Fraction(1, self.d) if self.sigma2 is None else _exact(self.sigma2)

    @property
    def dim(self) -> int:
        return self.N * self.d

    def to_dict(self) -> dict:
        out = asdict(self)
        out["sigma2"] = float(self.variance)
        out.pop("max_dim")
        return out


def stream(config: EnsembleConfig, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(index << 64) | config.seed))


def _uniform(rng, size):
    # 53-bit grid shifted off zero, so the inverse CDF stays finite
    return (rng.integers(0, 2**53, size=size, dtype=np.uint64) + 0.5) / 2.0**53


def _normal(rng, size):
    return ndtri(_uniform(rng, size))


def sample_adjacency(config: EnsembleConfig, index: int):
    """One ``Nd x Nd`` symmetric block matrix; sparse when ``Nd`` exceeds ``DENSE_CAP``."""
    N, d = config.N, config.d
    if config.dim > config.max_dim:
        raise AllocationLimitError(f"Nd = {config.dim} exceeds max_dim = {config.max_dim}")
    rng = stream(config, index)
    iu, ju = np.triu_indices(N, k=1)
    present = _uniform(rng, iu.size) < config.Z / N
    iu, ju = iu[present], ju[present]
    m = iu.size
    sigma = math.sqrt(float(config.variance))
    G = _normal(rng, (m, d, d)) * sigma
    X = (G + G.transpose(0, 2, 1)) / math.sqrt(2.0)

    if config.dim <= DENSE_CAP:
        A = np.zeros((N, d, N, d))
        A[iu, :, ju, :] = X
        A[ju, :, iu, :] = X.transpose(0, 2, 1)
        return A.reshape(config.dim, config.dim)

    a, b = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    rows = (iu[:, None, None] * d + a).ravel()
    cols = (ju[:, None, None] * d + b).ravel()
    vals = X.ravel()
    A = sp.coo_matrix(
        (np.concatenate([vals, vals]), (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(config.dim, config.dim),
    )
    return A.tocsr()


def trace_moments(A, max_order: int) -> list[float]:
    """``(1/n) tr A^k`` for ``k = 1 .. max_order`` with ``n`` the dimension."""
    n = A.shape[0]
    if n <= EIGEN_CAP and not sp.issparse(A):
        lam = np.linalg.eigvalsh(A)
        out = []
        pw = np.ones_like(lam)
        for _ in range(max_order):
            pw = pw * lam
            out.append(math.fsum(pw) / n)
        return out
    # tr A^k = <A^a, A^b> with a + b = k, using symmetry
    half = (max_order + 1) // 2
    powers = [None, A]
    for _ in range(2, half + 1):
        powers.append(powers[-1] @ A)
    out = []
    for k in range(1, max_order + 1):
        a, b = k // 2, k - k // 2
        if a == 0:
            out.append(float(A.diagonal().sum()) / n)
            continue
        P, Q = powers[a], powers[b]
        prod = P.multiply(Q).sum() if sp.issparse(P) else np.einsum("ij,ij->", P, Q)
        out.append(float(prod) / n)
    return out


def empirical_moments(A, p_max: int) -> list[float]:
    """``(1/n) tr A^{2p}`` for ``p = 1 .. p_max``."""
    return trace_moments(A, 2 * p_max)[1::2]


def finite_n_moment(order: int, config: EnsembleConfig):
    """Exact finite-``N`` expectation where available (orders 2 and 4), else ``None``."""
    N, d, Z, s2 = config.N, config.d, _exact(config.Z), config.variance
    m2 = (d + 1) * s2
    if order == 2:
        return Z * m2 * Fraction(N - 1, N)
    if order == 4:
        m4 = (2 * d * d + 5 * d + 5) * s2 * s2
        return Z * Fraction(N - 1, N) * m4 + 2 * Z * Z * Fraction((N - 1) * (N - 2), N * N) * m2 * m2
    return None


@dataclass(frozen=True)
class MomentEstimate:
    order: int
    mean: float
    stderr: float
    analytic: Fraction
    z_score: float
    finite_n: Fraction = None
    bias_allowance: float = 0.0

    @property
    def combined_error(self) -> float:
        return 3 * self.stderr + self.bias_allowance

    @property
    def within_tolerance(self) -> bool:
        return abs(self.mean - float(self.analytic)) <= self.combined_error

    def to_dict(self) -> dict:
        out = {
            "order": self.order,
            "mean": self.mean,
            "stderr": self.stderr,
            "analytic": float(self.analytic),
            "z": self.z_score,
            "bias_allowance": self.bias_allowance,
        }
        if self.finite_n is not None:
            out["finite_n"] = float(self.finite_n)
            out["z_finite_n"] = _z(self.mean, float(self.finite_n), self.stderr)
        return out


def _z(mean, target, stderr):
    return (mean - target) / stderr if stderr > 0 else 0.0


@dataclass
class ExperimentResult:
    config: EnsembleConfig
    estimates: list = field(default_factory=list)
    samples: np.ndarray = None  # per-sample moments, shape (samples, orders)

    def by_order(self, order: int) -> MomentEstimate:
        for e in self.estimates:
            if e.order == order:
                return e
        raise KeyError(order)

    def to_dict(self) -> dict:
        return {"config": self.config.to_dict(), "estimates": [e.to_dict() for e in self.estimates]}


def _one_sample(config, max_order, index):
    return trace_moments(sample_adjacency(config, index), max_order)


def run_experiment(
    config: EnsembleConfig, p_max: int, threads: int = 1, include_odd: bool = False
) -> ExperimentResult:
    """Sample, aggregate in sample order, and attach analytic predictions."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    max_order = 2 * p_max
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda i: _one_sample(config, max_order, i), range(config.samples)))
    else:
        rows = [_one_sample(config, max_order, i) for i in range(config.samples)]
    data = np.array(rows, dtype=float).reshape(config.samples, max_order)

    n = config.samples
    orders = range(1, max_order + 1) if include_odd else range(2, max_order + 1, 2)
    estimates = []
    for k in orders:
        col = data[:, k - 1].tolist()
        mean = math.fsum(col) / n
        var = math.fsum((x - mean) ** 2 for x in col) / (n - 1) if n > 1 else 0.0
        stderr = math.sqrt(var / n)
        if k % 2:
            analytic, finite = Fraction(0), Fraction(0)
        else:
            analytic = Fraction(moment_finite_d(k // 2).at(_exact(config.Z), config.d, config.variance))
            finite = finite_n_moment(k, config)
        if finite is not None:
            bias = abs(float(finite - analytic))
        else:
            # walks of length k leave the tree regime with weight O(k^2 / N)
            bias = 2 * (k // 2) ** 2 / config.N * abs(float(analytic))
        estimates.append(
            MomentEstimate(k, mean, stderr, analytic, _z(mean, float(analytic), stderr), finite, bias)
        )
    return ExperimentResult(config, estimates, data)
