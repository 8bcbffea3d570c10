"""Weight recovery: simplex-constrained least squares on the residual
between the steering model and the measured grid values.

Given estimated means, the fit minimizes

    sum_{l,m} | sum_i w_i e^{i<mu_i, t_l + v_m>}  -  y_n(t_l + v_m) |^2

over the probability simplex.  With w real this is a convex QP in the
real Gram form (1/2) w' G w - c' w with G = Re(A* A), c = Re(A* b), A
the steering matrix over the flattened grid and b the measurements.
The solver enumerates supports and checks exact KKT systems, which for
the small k used here (enumeration is capped at k <= 16) delivers the
global optimum to machine precision rather than an iterative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .fourier import FourierMeasurementSet

PRIMAL_TOL = 1e-10
DUAL_TOL = 1e-8
MAX_ENUM_K = 16


@dataclass(frozen=True)
class WeightSolution:
    """weights: the optimal simplex point.  kkt_residual: max violation
    of stationarity / feasibility / complementarity at the solution.
    degenerate is set when cond(G) > 1e12 (e.g. duplicated means); the
    reported weights are then the minimum-norm optimum (equal split over
    exact duplicates)."""

    weights: np.ndarray
    objective: float
    kkt_residual: float
    gram_condition: float
    degenerate: bool
    support: tuple[int, ...]


def _qp_objective(G, c, w):
    return float(0.5 * w @ G @ w - c @ w)


def _kkt_residual(G, c, w, lam, scale):
    """Max-norm KKT violation, relative to the Gram scale."""
    slack = G @ w - c - lam
    r_stat = np.abs(slack[w > PRIMAL_TOL]).max(initial=0.0)
    r_dual = -slack.min(initial=0.0) if slack.size else 0.0
    r_dual = max(r_dual, 0.0)
    r_prim = max(abs(w.sum() - 1.0), max(-w.min(), 0.0))
    return max(r_stat / scale, r_dual / scale, r_prim)


def solve_simplex_qp(G: np.ndarray, c: np.ndarray) -> WeightSolution:
    """Global minimum of (1/2) w'Gw - c'w over the simplex by support
    enumeration.  Each candidate support solves its equality-constrained
    KKT system; the first support that is primal and dual feasible is
    optimal (the QP is convex)."""
    G = np.asarray(G, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    k = c.shape[0]
    if G.shape != (k, k):
        raise ValueError("G must be k x k")
    if k > MAX_ENUM_K:
        raise ValueError(f"support enumeration capped at k = {MAX_ENUM_K}")
    scale = max(np.abs(G).max(), np.abs(c).max(), 1.0)
    svals = np.linalg.svd(G, compute_uv=False)
    cond = float(svals[0] / svals[-1]) if svals[-1] > 0 else np.inf
    if k == 1:
        w = np.array([1.0])
        return WeightSolution(
            weights=w, objective=_qp_objective(G, c, w),
            kkt_residual=_kkt_residual(G, c, w, float(G[0, 0] - c[0]), scale),
            gram_condition=cond, degenerate=not np.isfinite(cond) or cond > 1e12,
            support=(0,),
        )
    for size in range(k, 0, -1):
        for supp in combinations(range(k), size):
            idx = np.asarray(supp)
            kkt = np.zeros((size + 1, size + 1))
            kkt[:size, :size] = G[np.ix_(idx, idx)]
            kkt[:size, size] = 1.0
            kkt[size, :size] = 1.0
            rhs = np.concatenate([c[idx], [1.0]])
            sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
            # stationarity is G w + x 1 = c on the support, so lambda = -x
            w_s, lam = sol[:size], -float(sol[size])
            # reject if the (possibly singular) system was inconsistent
            if np.abs(kkt @ sol - rhs).max() > 1e-8 * scale:
                continue
            if w_s.min() < -PRIMAL_TOL:
                continue
            w = np.zeros(k)
            w[idx] = np.clip(w_s, 0.0, None)
            w /= w.sum()
            off = np.setdiff1d(np.arange(k), idx)
            if off.size:
                dual_slack = (G[off] @ w - c[off]) - lam
                if dual_slack.min() < -DUAL_TOL * scale:
                    continue
            return WeightSolution(
                weights=w, objective=_qp_objective(G, c, w),
                kkt_residual=_kkt_residual(G, c, w, lam, scale),
                gram_condition=cond,
                degenerate=not np.isfinite(cond) or cond > 1e12,
                support=supp,
            )
    raise RuntimeError("no KKT-consistent support found")  # pragma: no cover


def gram_system(means_hat: np.ndarray,
                measurements: FourierMeasurementSet) -> tuple[np.ndarray, np.ndarray]:
    """Real Gram reformulation over the flattened grid:
    G_ij = sum_t Re e^{i<mu_i - mu_j, t>},  c_i = sum_t Re(e^{-i<mu_i,t>} y(t))."""
    means_hat = np.asarray(means_hat, dtype=np.float64)
    grid = measurements.design.grid().reshape(-1, measurements.design.d)
    A = np.exp(1j * (grid @ means_hat.T))
    b = measurements.values.reshape(-1)
    G = np.real(A.conj().T @ A)
    c = np.real(A.conj().T @ b)
    return G, c


def estimate_weights(means_hat: np.ndarray,
                     measurements: FourierMeasurementSet) -> WeightSolution:
    """Best simplex weights for the given means against the measured
    grid.  Exact recovery (to machine precision) on noiseless data."""
    G, c = gram_system(means_hat, measurements)
    return solve_simplex_qp(G, c)


def fit_objective(means_hat: np.ndarray, measurements: FourierMeasurementSet,
                  w: np.ndarray) -> float:
    """The raw residual sum_t |sum_i w_i e^{i<mu_i,t>} - y(t)|^2 for any
    weight vector; used to probe optimality."""
    means_hat = np.asarray(means_hat, dtype=np.float64)
    grid = measurements.design.grid().reshape(-1, measurements.design.d)
    A = np.exp(1j * (grid @ means_hat.T))
    r = A @ np.asarray(w, dtype=np.complex128) - measurements.values.reshape(-1)
    return float(np.real(r.conj() @ r))
