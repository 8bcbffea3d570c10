"""Gaussian location mixtures with a known shared covariance.

The model is x ~ sum_i w_i N(mu_i, Sigma) where the component means mu_i
are the unknowns, the mixing weights w_i live on the probability simplex,
and Sigma is known and shared by all components.  Sigma is sigma^2 * I_d
by default; a general SPD covariance is supported through its Cholesky
factor.

Sampling is fully deterministic given a seed: component labels come from
inverse-CDF inversion of a single uniform per sample, and Gaussian draws
use numpy's PCG64 generator (ziggurat normal method).  Replays of the
same (model, n, seed) triple are bitwise identical for a fixed numpy
version.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SIMPLEX_ATOL = 1e-12


def _as_float_array(x, name):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass(frozen=True)
class GmmModel:
    """A k-component Gaussian location mixture in R^d.

    weights: shape (k,), positive, summing to 1 within 1e-12.
    means:   shape (k, d).
    sigma:   noise level, Sigma = sigma^2 * I_d.  sigma = 0 is the
             noiseless (discrete) model.
    cov:     optional full SPD covariance; overrides sigma when given.
    """

    weights: np.ndarray
    means: np.ndarray
    sigma: float = 1.0
    cov: np.ndarray | None = None
    chol: np.ndarray | None = field(init=False, default=None, repr=False)

    def __post_init__(self):
        w = _as_float_array(self.weights, "weights")
        mu = _as_float_array(self.means, "means")
        if w.ndim != 1:
            raise ValueError("weights must be one-dimensional")
        if mu.ndim != 2:
            raise ValueError("means must have shape (k, d)")
        if mu.shape[0] != w.shape[0]:
            raise ValueError("means and weights disagree on k")
        if w.shape[0] == 0:
            raise ValueError("need at least one component")
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        if abs(w.sum() - 1.0) > SIMPLEX_ATOL:
            raise ValueError(f"weights must sum to 1 within {SIMPLEX_ATOL}")
        if not np.isscalar(self.sigma) and np.ndim(self.sigma) != 0:
            raise ValueError("sigma must be a scalar")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "sigma", float(self.sigma))
        if self.cov is not None:
            c = _as_float_array(self.cov, "cov")
            if c.shape != (mu.shape[1], mu.shape[1]):
                raise ValueError("cov must be d x d")
            if not np.allclose(c, c.T, atol=1e-12):
                raise ValueError("cov must be symmetric")
            try:
                chol = np.linalg.cholesky(c)
            except np.linalg.LinAlgError as exc:
                raise ValueError("cov must be positive definite") from exc
            object.__setattr__(self, "cov", c)
            object.__setattr__(self, "chol", chol)

    @property
    def k(self) -> int:
        return self.weights.shape[0]

    @property
    def d(self) -> int:
        return self.means.shape[1]

    @property
    def w_min(self) -> float:
        return float(self.weights.min())

    @property
    def separation(self) -> float:
        """Minimum pairwise distance between means (inf for k = 1)."""
        if self.k == 1:
            return float("inf")
        diff = self.means[:, None, :] - self.means[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=-1))
        iu = np.triu_indices(self.k, k=1)
        return float(dist[iu].min())

    @property
    def covariance(self) -> np.ndarray:
        if self.cov is not None:
            return self.cov
        return self.sigma**2 * np.eye(self.d)

    def quad_form(self, t: np.ndarray) -> np.ndarray:
        """t^T Sigma t for a single frequency (d,) or a batch (m, d)."""
        t = np.asarray(t, dtype=np.float64)
        if self.cov is None:
            return self.sigma**2 * (t * t).sum(axis=-1)
        return ((t @ self.cov) * t).sum(axis=-1)


@dataclass(frozen=True)
class SampleSet:
    """n i.i.d. draws from a mixture, with the seed that produced them."""

    data: np.ndarray
    seed: int

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError("data must have shape (n, d) with n >= 1")
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


def categorical_from_uniform(weights: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF component labels: index i s.t. cum[i-1] <= u < cum[i]."""
    cum = np.cumsum(np.asarray(weights, dtype=np.float64))
    cum[-1] = 1.0  # guard the right edge against rounding
    return np.searchsorted(cum, u, side="right")


def sample_gmm(model: GmmModel, n: int, seed: int) -> SampleSet:
    """Draw n samples.  Draw order is fixed: first one uniform per sample
    for the component label, then the (n, d) block of standard normals."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.uniform(size=n)
    labels = categorical_from_uniform(model.weights, u)
    z = rng.standard_normal((n, model.d))
    if model.chol is not None:
        noise = z @ model.chol.T
    else:
        noise = model.sigma * z
    return SampleSet(data=model.means[labels] + noise, seed=seed)


def simplex_means(k: int, delta: float, d: int) -> np.ndarray:
    """Regular-simplex mean configurations with all pairwise distances
    exactly delta: antipodal pair (k=2), equilateral triangle (k=3),
    regular tetrahedron (k=4).  Centered at the origin and embedded in
    the first k-1 coordinates of R^d."""
    if k < 2 or k > 4:
        raise ValueError("simplex_means supports k in {2, 3, 4}")
    if d < k - 1:
        raise ValueError("need d >= k - 1 to embed the configuration")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if k == 2:
        core = np.array([[-0.5], [0.5]]) * delta
    elif k == 3:
        s3 = np.sqrt(3.0)
        core = delta * np.array(
            [[-0.5, -s3 / 6.0], [0.5, -s3 / 6.0], [0.0, s3 / 3.0]]
        )
    else:
        # vertices of a cube-inscribed tetrahedron, side 2*sqrt(2)
        core = (delta / (2.0 * np.sqrt(2.0))) * np.array(
            [
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ]
        )
    means = np.zeros((k, d))
    means[:, : k - 1] = core
    return means


def random_rotation(d: int, seed: int) -> np.ndarray:
    """Haar-uniform rotation of R^d: QR of a Gaussian matrix with the R
    diagonal's signs folded in (determinant not fixed; orthogonal)."""
    if d < 1:
        raise ValueError("d must be positive")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * np.sign(np.diag(r))


def sphere_means(k: int, d: int, radius: float, seed: int) -> np.ndarray:
    """k means drawn independently and uniformly on the radius-R sphere
    (normalized Gaussian directions).  radius = 0 returns all zeros."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return np.zeros((k, d))
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((k, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero draw has probability zero; resample defensively if it happens
    while np.any(norms == 0):  # pragma: no cover
        g = rng.standard_normal((k, d))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
    return radius * g / norms
