"""Evaluation metrics: exact 1-Wasserstein distance between discrete
mixing distributions, and permutation-matched mean error.

W1 is computed by solving the transportation linear program to
optimality (dense formulation, HiGHS); for the atom counts used here
(tens) this is exact rather than approximate, and it handles unequal
atom counts and unequal masses.  The matched error is the brute-force
min over permutations of the largest matched leg, for equal counts up
to 8 components.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.optimize import linprog

SIMPLEX_ATOL = 1e-12
MATCH_MAX_K = 8


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finitely supported distribution: atoms (m, d), masses (m,)
    nonnegative and summing to 1 within 1e-12."""

    atoms: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.atoms, dtype=np.float64)
        p = np.asarray(self.masses, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1:
            raise ValueError("atoms must have shape (m, d) with m >= 1")
        if p.shape != (a.shape[0],):
            raise ValueError("masses must match the number of atoms")
        if np.any(p < 0):
            raise ValueError("masses must be nonnegative")
        if abs(p.sum() - 1.0) > SIMPLEX_ATOL:
            raise ValueError(f"masses must sum to 1 within {SIMPLEX_ATOL}")
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "masses", p)

    @staticmethod
    def from_model(model) -> "DiscreteDistribution":
        return DiscreteDistribution(atoms=model.means, masses=model.weights)

    def pruned(self) -> "DiscreteDistribution":
        """Drop zero-mass atoms (keeping at least one)."""
        keep = self.masses > 0
        if keep.all():
            return self
        return DiscreteDistribution(atoms=self.atoms[keep], masses=self.masses[keep])


def wasserstein1(nu: DiscreteDistribution, nu_hat: DiscreteDistribution) -> float:
    """Exact W1 via the transportation LP

        min sum_ij c_ij x_ij,  rows(x) = p, cols(x) = q, x >= 0,

    with c_ij the Euclidean distance between atoms."""
    a = nu.pruned()
    b = nu_hat.pruned()
    if a.atoms.shape[1] != b.atoms.shape[1]:
        raise ValueError("distributions must share a dimension")
    m, mp = a.atoms.shape[0], b.atoms.shape[0]
    diff = a.atoms[:, None, :] - b.atoms[None, :, :]
    cost = np.sqrt((diff**2).sum(axis=-1)).reshape(-1)
    # row-sum and column-sum equality constraints over the m*mp plan
    A_eq = np.zeros((m + mp, m * mp))
    for i in range(m):
        A_eq[i, i * mp : (i + 1) * mp] = 1.0
    for j in range(mp):
        A_eq[m + j, j::mp] = 1.0
    b_eq = np.concatenate([a.masses, b.masses])
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status != 0:  # pragma: no cover
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun)


def matched_mean_error(true_means: np.ndarray, est_means: np.ndarray) -> float:
    """min over permutations pi of max_i ||mu_i - mu_hat_pi(i)||; the
    worst matched leg under the best matching.  Brute force, k <= 8."""
    t = np.asarray(true_means, dtype=np.float64)
    e = np.asarray(est_means, dtype=np.float64)
    if t.shape != e.shape:
        raise ValueError("mean sets must have identical shapes")
    k = t.shape[0]
    if k > MATCH_MAX_K:
        raise ValueError(f"brute-force matching capped at k = {MATCH_MAX_K}")
    diff = t[:, None, :] - e[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=-1))
    best = np.inf
    for perm in permutations(range(k)):
        worst = max(dist[i, perm[i]] for i in range(k))
        if worst < best:
            best = worst
    return float(best)
