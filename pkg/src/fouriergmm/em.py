"""EM baseline with the shared isotropic covariance held fixed.

Only means and weights are updated; sigma is known and never touched.
Responsibilities are computed in log space (log-sum-exp), so widely
separated components cannot underflow the E-step.  A component whose
total responsibility mass drops below 1e-12 is frozen (its mean stops
moving) and flagged in the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .model import SampleSet

FREEZE_MASS = 1e-12
LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class EmResult:
    means: np.ndarray
    weights: np.ndarray
    loglik_trace: np.ndarray
    n_iter: int
    frozen: tuple[int, ...]

    @property
    def loglik(self) -> float:
        return float(self.loglik_trace[-1])


def em_init_random(samples: SampleSet, k: int, seed: int) -> np.ndarray:
    """Initial means: k distinct sample indices drawn uniformly without
    replacement."""
    if not 1 <= k <= samples.n:
        raise ValueError("need 1 <= k <= n")
    rng = np.random.default_rng(seed)
    idx = rng.choice(samples.n, size=k, replace=False)
    return samples.data[idx].copy()


def _estep(data, x2, means, log_w, inv_two_var, const):
    """Per-sample component log densities and the total log-likelihood."""
    cross = data @ means.T
    m2 = (means**2).sum(axis=1)
    log_dens = log_w[None, :] - inv_two_var * (x2[:, None] - 2.0 * cross + m2[None, :]) + const
    log_z = logsumexp(log_dens, axis=1)
    return log_dens, log_z, float(log_z.sum())


def em_fit(samples: SampleSet, k: int, sigma: float, init_means: np.ndarray,
           init_weights: np.ndarray | None = None, max_iter: int = 1000,
           tol: float = 1e-6) -> EmResult:
    """Run EM from the given means (weights start uniform unless given)
    until the total log-likelihood improves by less than tol or max_iter
    iterations pass.  The trace holds the log-likelihood of every
    parameter iterate visited, so it is nondecreasing up to roundoff."""
    if sigma <= 0:
        raise ValueError("sigma must be positive (known noise level)")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    means = np.array(init_means, dtype=np.float64)
    if means.shape != (k, samples.d):
        raise ValueError("init_means must have shape (k, d)")
    if init_weights is None:
        w = np.full(k, 1.0 / k)
    else:
        w = np.array(init_weights, dtype=np.float64)
        if w.shape != (k,) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("init_weights must be a length-k simplex vector")
    data = samples.data
    x2 = (data**2).sum(axis=1)
    inv_two_var = 1.0 / (2.0 * sigma**2)
    const = -0.5 * samples.d * np.log(2.0 * np.pi * sigma**2)
    frozen: set[int] = set()
    trace = []
    n_iter = 0
    for it in range(max_iter):
        log_dens, log_z, ll = _estep(data, x2, means, np.log(np.maximum(w, LOG_FLOOR)),
                                     inv_two_var, const)
        trace.append(ll)
        if it > 0 and ll - trace[-2] < tol:
            break
        n_iter = it + 1
        resp = np.exp(log_dens - log_z[:, None])
        mass = resp.sum(axis=0)
        w = mass / samples.n
        for i in range(k):
            if mass[i] < FREEZE_MASS:
                frozen.add(i)
            else:
                means[i] = resp[:, i] @ data / mass[i]
    return EmResult(
        means=means, weights=w, loglik_trace=np.asarray(trace),
        n_iter=n_iter, frozen=tuple(sorted(frozen)),
    )
