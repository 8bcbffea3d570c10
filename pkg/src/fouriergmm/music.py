"""Mean estimation by descent on the subspace-projection residual.

With U the top-k eigenbasis of the measurement covariance, the residual
f(mu) = ||phi_L(mu)||^2 - ||U* phi_L(mu)||^2 = L - ||U* phi_L(mu)||^2
vanishes exactly at the latent means (latent U) and stays small at them
under perturbation.  Candidate starts are the samples themselves, ranked
by the score s(x) = ||U* phi_L(x)||^2 = L - f(x); descent runs from the
best-scoring starts and keeps a result only when it lands far enough
from every center already accepted.

The gradient is the exact derivative of f, in the reduced form

    grad f(mu) = 2 * sum_l Im(phi_l * conj(h_l)) t_l,   h = U (U* phi),

algebraically equal to the double sum
i * sum_{m,l} (delta_{ml} - r_m conj(r_l)) e^{i<mu, t_l - t_m>} (t_l - t_m)
with r = U* phi rows, at O(Lk + Ld) instead of O(L^2 d) per call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import FrequencyDesign
from .fourier import CHUNK, SpectralDecomposition, steering_vector
from .model import SampleSet


@dataclass(frozen=True)
class SubspaceProjector:
    """Orthonormal basis (L, k) of the estimated signal subspace plus the
    design whose steering vectors it projects."""

    basis: np.ndarray
    design: FrequencyDesign

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 2 or b.shape[0] != self.design.L:
            raise ValueError("basis must have shape (L, k)")
        if b.shape[1] < 1 or b.shape[1] > b.shape[0]:
            raise ValueError("need 1 <= k <= L basis columns")
        gram = b.conj().T @ b
        if np.abs(gram - np.eye(b.shape[1])).max() > 1e-10:
            raise ValueError("basis columns must be orthonormal within 1e-10")
        object.__setattr__(self, "basis", b)

    @property
    def k(self) -> int:
        return self.basis.shape[1]


def projector_from_spectral(spec: SpectralDecomposition, k: int,
                            design: FrequencyDesign) -> SubspaceProjector:
    return SubspaceProjector(basis=spec.top_basis(k), design=design)


def objective(mu: np.ndarray, proj: SubspaceProjector) -> tuple[float, float]:
    """Returns (J, f) with f = L - ||U* phi||^2 clamped into [0, L] and
    J = sqrt(f)."""
    phi = steering_vector(mu, proj.design)
    g = proj.basis.conj().T @ phi
    f = proj.design.L - float(np.real(g.conj() @ g))
    f = min(max(f, 0.0), float(proj.design.L))
    return float(np.sqrt(f)), f


def gradient(mu: np.ndarray, proj: SubspaceProjector) -> np.ndarray:
    """Exact gradient of f at mu (see module docstring for the form)."""
    phi = steering_vector(mu, proj.design)
    g = proj.basis.conj().T @ phi
    h = proj.basis @ g
    coeff = np.imag(phi * np.conj(h))
    return 2.0 * (proj.design.points.T @ coeff)


def score(x: np.ndarray, proj: SubspaceProjector) -> float:
    """s(x) = ||U* phi_L(x)||^2 = L - f(x); large where x sits near a
    latent mean."""
    phi = steering_vector(x, proj.design)
    g = proj.basis.conj().T @ phi
    return float(np.real(g.conj() @ g))


def scores(samples: SampleSet, proj: SubspaceProjector) -> np.ndarray:
    """Scores for every sample, streamed in chunks."""
    out = np.empty(samples.n)
    Uc = proj.basis.conj()
    for start in range(0, samples.n, CHUNK):
        E = np.exp(1j * (samples.data[start : start + CHUNK] @ proj.design.points.T))
        G = E @ Uc
        out[start : start + E.shape[0]] = np.einsum(
            "ij,ij->i", G.real, G.real
        ) + np.einsum("ij,ij->i", G.imag, G.imag)
    return out


@dataclass(frozen=True)
class GdSettings:
    gamma: float = 0.5
    max_steps: int = 50
    grad_tol: float = 1e-8
    dedup_delta: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0 or self.max_steps < 0:
            raise ValueError("gamma must be positive and max_steps >= 0")
        if self.grad_tol < 0 or self.dedup_delta < 0:
            raise ValueError("grad_tol and dedup_delta must be nonnegative")


def gradient_descent(mu0: np.ndarray, proj: SubspaceProjector,
                     settings: GdSettings) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step descent mu <- mu - gamma * grad f(mu).  Stops at
    max_steps or once ||grad|| <= grad_tol.  Returns the final iterate
    and the trace of f values (initial point included)."""
    mu = np.array(mu0, dtype=np.float64)
    trace = [objective(mu, proj)[1]]
    for step in range(settings.max_steps):
        g = gradient(mu, proj)
        if not np.all(np.isfinite(g)):
            raise FloatingPointError(f"non-finite gradient at step {step}")
        if np.linalg.norm(g) <= settings.grad_tol:
            break
        mu = mu - settings.gamma * g
        if not np.all(np.isfinite(mu)):
            raise FloatingPointError(f"non-finite iterate at step {step + 1}")
        trace.append(objective(mu, proj)[1])
    return mu, np.array(trace)


@dataclass(frozen=True)
class MeanEstimate:
    """Accepted centers in descent order, the residual f at each, and the
    index of the sample each descent started from."""

    centers: np.ndarray
    objective_values: np.ndarray
    init_indices: np.ndarray


class EstimationError(RuntimeError):
    """Raised when every start is used up before k centers separate by
    more than dedup_delta; carries the centers found so far."""

    def __init__(self, msg: str, partial: np.ndarray):
        super().__init__(msg)
        self.partial = partial


def estimate_means(samples: SampleSet, proj: SubspaceProjector, k: int,
                   settings: GdSettings) -> MeanEstimate:
    """Score-ranked multi-start descent (ties broken by sample index);
    a result is accepted iff it lies > dedup_delta from every accepted
    center, until k centers are found."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = scores(samples, proj)
    order = np.argsort(-s, kind="stable")
    centers: list[np.ndarray] = []
    fvals: list[float] = []
    starts: list[int] = []
    for idx in order:
        mu, trace = gradient_descent(samples.data[idx], proj, settings)
        if centers:
            dmin = np.linalg.norm(np.asarray(centers) - mu, axis=1).min()
            if dmin <= settings.dedup_delta:
                continue
        centers.append(mu)
        fvals.append(trace[-1])
        starts.append(int(idx))
        if len(centers) == k:
            return MeanEstimate(
                centers=np.asarray(centers),
                objective_values=np.asarray(fvals),
                init_indices=np.asarray(starts),
            )
    raise EstimationError(
        f"exhausted {samples.n} starts with {len(centers)} of {k} centers "
        f"at dedup_delta={settings.dedup_delta}",
        partial=np.asarray(centers) if centers else np.zeros((0, samples.d)),
    )


def coercivity_estimate(proj: SubspaceProjector, mu_star: np.ndarray,
                        radius: float, n_dirs: int = 64, n_radii: int = 8,
                        seed: int = 0) -> float:
    """Numeric probe of local coercivity: min over sampled directions u
    and radii rho <= radius of J(mu* + rho u) / rho."""
    if radius <= 0 or n_dirs < 1 or n_radii < 1:
        raise ValueError("radius, n_dirs, n_radii must be positive")
    mu_star = np.asarray(mu_star, dtype=np.float64)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n_dirs, mu_star.shape[0]))
    dirs = g / np.linalg.norm(g, axis=1, keepdims=True)
    radii = radius * np.arange(1, n_radii + 1) / n_radii
    best = np.inf
    for u in dirs:
        for rho in radii:
            j_val, _ = objective(mu_star + rho * u, proj)
            best = min(best, j_val / rho)
    return float(best)
