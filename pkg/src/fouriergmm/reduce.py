"""Dimension reduction for high-ambient-dimension mixtures.

The second-moment matrix E[x x^T] = sum_i w_i mu_i mu_i^T + Sigma has its
top-k eigenspace aligned with span{mu_i} (exactly, for isotropic noise),
so the top-k right singular subspace of the data recovers the mean span
up to O(sqrt(d/n)) error.  Estimation then runs inside R^k on projected
samples, which remain a k-component mixture with the same isotropic
noise, and centers are mapped back to R^d at the end.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .design import FrequencyDesign
from .fourier import empirical_covariance, measurement_set, spectral_decomposition
from .model import SampleSet
from .music import GdSettings, MeanEstimate, estimate_means, projector_from_spectral


@dataclass(frozen=True)
class PcaSubspace:
    """Orthonormal basis (d, k) of the retained subspace.  mean_shift is
    the sample mean that was removed before the decomposition (zero when
    uncentered)."""

    basis: np.ndarray
    centered: bool
    mean_shift: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.float64)
        m = np.asarray(self.mean_shift, dtype=np.float64)
        if b.ndim != 2 or not 1 <= b.shape[1] <= b.shape[0]:
            raise ValueError("basis must be (d, k) with 1 <= k <= d")
        if m.shape != (b.shape[0],):
            raise ValueError("mean_shift must have shape (d,)")
        if np.abs(b.T @ b - np.eye(b.shape[1])).max() > 1e-10:
            raise ValueError("basis columns must be orthonormal within 1e-10")
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "mean_shift", m)

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    @property
    def d(self) -> int:
        return self.basis.shape[0]


def pca_subspace(samples: SampleSet, k: int, centered: bool = True) -> PcaSubspace:
    """Top-k right singular subspace of the (optionally centered) data.

    Uses the d x d Gram matrix X^T X when d <= n, else a thin SVD.
    Raises when the data has rank < k; the floor is applied in the scale
    that was actually computed (Gram eigenvalues carry ~s_1^2 * eps noise,
    so a singular-value floor there would sit at s_1 * sqrt(eps))."""
    if not 1 <= k <= samples.d:
        raise ValueError("need 1 <= k <= d")
    shift = samples.data.mean(axis=0) if centered else np.zeros(samples.d)
    X = samples.data - shift if centered else samples.data
    eps = np.finfo(np.float64).eps
    if samples.d <= samples.n:
        w, v = np.linalg.eigh(X.T @ X)
        w = np.clip(w[::-1], 0.0, None)
        v = v[:, ::-1]
        basis = v[:, :k]
        deficient = w[0] == 0.0 or w[k - 1] <= w[0] * max(samples.n, samples.d) * eps
    else:
        _, svals, vt = np.linalg.svd(X, full_matrices=False)
        basis = vt[:k].T
        deficient = k > svals.shape[0] or (
            svals[k - 1] <= svals[0] * max(samples.n, samples.d) * eps)
    if deficient:
        raise ValueError(f"data has numerical rank < {k}")
    return PcaSubspace(basis=basis, centered=centered, mean_shift=shift)


def project(samples: SampleSet, sub: PcaSubspace) -> SampleSet:
    """Project every sample into the subspace coordinates (n, k)."""
    return SampleSet(data=(samples.data - sub.mean_shift) @ sub.basis,
                     seed=samples.seed)


def project_point(x: np.ndarray, sub: PcaSubspace) -> np.ndarray:
    return (np.asarray(x, dtype=np.float64) - sub.mean_shift) @ sub.basis


def back_project(y: np.ndarray, sub: PcaSubspace) -> np.ndarray:
    """Map reduced coordinates (k,) or (m, k) back to R^d, restoring the
    removed mean."""
    y = np.asarray(y, dtype=np.float64)
    return y @ sub.basis.T + sub.mean_shift


@dataclass(frozen=True)
class HighDimTimings:
    pca_ms: float
    measure_ms: float
    svd_ms: float
    descent_ms: float


def estimate_means_highdim(samples: SampleSet, k: int, design_k: FrequencyDesign,
                           settings: GdSettings, sigma: float,
                           centered: bool = True) -> MeanEstimate:
    """Full reduced pipeline: PCA to R^k, Fourier measurement and
    subspace descent there, centers mapped back to R^d."""
    est, _, _ = estimate_means_highdim_detailed(
        samples, k, design_k, settings, sigma, centered
    )
    return est


def estimate_means_highdim_detailed(samples: SampleSet, k: int,
                                    design_k: FrequencyDesign,
                                    settings: GdSettings, sigma: float,
                                    centered: bool = True):
    """As estimate_means_highdim, but also returns the reduced-space
    artifacts (subspace, projected samples, measurements, reduced
    estimate) and wall-clock timings for the stages."""
    if design_k.d != k:
        raise ValueError("design_k must live in R^k")
    t0 = time.perf_counter()
    sub = pca_subspace(samples, k, centered=centered)
    reduced = project(samples, sub)
    t1 = time.perf_counter()
    ms = measurement_set(reduced, design_k, sigma)
    t2 = time.perf_counter()
    spec = spectral_decomposition(empirical_covariance(ms))
    proj = projector_from_spectral(spec, k, design_k)
    t3 = time.perf_counter()
    est_k = estimate_means(reduced, proj, k, settings)
    t4 = time.perf_counter()
    est_d = MeanEstimate(
        centers=back_project(est_k.centers, sub),
        objective_values=est_k.objective_values,
        init_indices=est_k.init_indices,
    )
    timings = HighDimTimings(
        pca_ms=(t1 - t0) * 1e3,
        measure_ms=(t2 - t1) * 1e3,
        svd_ms=(t3 - t2) * 1e3,
        descent_ms=(t4 - t3) * 1e3,
    )
    return est_d, (sub, reduced, ms, est_k), timings
