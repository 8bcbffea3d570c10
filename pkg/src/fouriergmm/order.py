"""Model-order selection from the spectrum of the measurement covariance.

The latent covariance has rank exactly k, so its empirical spectrum
splits into k signal values and L - k values at the noise scale.  Three
rules recover k: the plain ratio rule argmax_l s_l / s_{l+1}, a
thresholded variant that only considers indices with s_l above a floor
(the practical default), and a pure threshold count.  Alongside the
rules sit the sufficient-sample-size calculators and the geometric
lower bounds on sigma_k for directional designs; both are evaluated, not
asserted, by callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fourier import SpectralDecomposition


@dataclass(frozen=True)
class OrderSelection:
    """k_hat = 0 is the explicit failure sentinel (never a guess)."""

    k_hat: int
    rule: str
    singular_values: np.ndarray
    ratios: np.ndarray = field(default_factory=lambda: np.zeros(0))
    below_floor: bool = False


def _ratios(s: np.ndarray) -> np.ndarray:
    """Consecutive ratios s_l / s_{l+1}; a zero denominator gives +inf
    (a zero tail is the strongest possible rank signal)."""
    num, den = s[:-1], s[1:]
    out = np.full(num.shape, np.inf)
    nz = den > 0
    out[nz] = num[nz] / den[nz]
    return out


def _check_spectrum(spec: SpectralDecomposition) -> np.ndarray:
    s = spec.singular_values
    if s.shape[0] < 2:
        raise ValueError("need a spectrum of length >= 2")
    if not np.any(s > 0):
        raise ValueError("degenerate all-zero spectrum")
    return s


def select_ratio(spec: SpectralDecomposition) -> OrderSelection:
    """k_hat = argmax_{1<=l<=L-1} s_l / s_{l+1}, smallest index on ties."""
    s = _check_spectrum(spec)
    r = _ratios(s)
    k_hat = int(np.argmax(r)) + 1
    return OrderSelection(k_hat=k_hat, rule="ratio", singular_values=s, ratios=r)


def select_ratio_thresholded(spec: SpectralDecomposition, eps: float) -> OrderSelection:
    """Ratio rule restricted to indices with s_l > eps; keeps a noise-
    floor value in the denominator from producing a huge spurious ratio.
    No candidate above the floor -> k_hat = 0 with below_floor set."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    s = _check_spectrum(spec)
    r = _ratios(s)
    admissible = s[:-1] > eps
    if not np.any(admissible):
        return OrderSelection(
            k_hat=0, rule="ratio_thresholded", singular_values=s, ratios=r,
            below_floor=True,
        )
    masked = np.where(admissible, r, -np.inf)
    k_hat = int(np.argmax(masked)) + 1
    return OrderSelection(
        k_hat=k_hat, rule="ratio_thresholded", singular_values=s, ratios=r
    )


def select_threshold(spec: SpectralDecomposition, eps: float) -> OrderSelection:
    """k_hat = max{l : s_l >= eps}, 0 if the whole spectrum is below."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    s = _check_spectrum(spec)
    above = np.nonzero(s >= eps)[0]
    k_hat = int(above[-1]) + 1 if above.size else 0
    return OrderSelection(
        k_hat=k_hat, rule="threshold", singular_values=s,
        below_floor=k_hat == 0,
    )


def sufficient_n_threshold(L: int, M: int, r: float, sigma: float, eps: float,
                           delta: float) -> float:
    """Samples sufficient for the threshold rule at floor eps to succeed
    with probability 1 - delta: 36 L^3 e^{2 r^2 sigma^2} eps^-2
    ln(4 L (M+1) / delta)."""
    if L < 1 or M < 0:
        raise ValueError("L must be >= 1 and M >= 0")
    if eps <= 0 or not 0 < delta < 1:
        raise ValueError("need eps > 0 and delta in (0, 1)")
    return float(
        36.0 * L**3 * np.exp(2.0 * r**2 * sigma**2) / eps**2
        * np.log(4.0 * L * (M + 1) / delta)
    )


def sufficient_n_ratio(k: int, M: int, r: float, sigma: float, sigma1: float,
                       sigmak: float, delta: float) -> float:
    """Samples sufficient for the ratio rule at L = k+1 to succeed with
    probability 1 - delta: 324 (k+1)^5 e^{2 r^2 sigma^2} (s_1^2 / s_k^4)
    ln(4 (M+1) (k+1) / delta)."""
    if k < 1 or M < 0:
        raise ValueError("k must be >= 1 and M >= 0")
    if sigma1 < sigmak or sigmak <= 0:
        raise ValueError("need sigma1 >= sigmak > 0")
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    return float(
        324.0 * (k + 1) ** 5 * np.exp(2.0 * r**2 * sigma**2)
        * sigma1**2 / sigmak**4
        * np.log(4.0 * (M + 1) * (k + 1) / delta)
    )


def sigma_k_lower_bounds(k: int, d: int, tau: float, delta_sep: float,
                         w_min: float) -> tuple[float, float]:
    """High-probability lower bounds for directional designs with step
    tau <= pi / separation, J >= log2(1/delta) directions and S >= k
    steps:

        sigma_k(Phi) >= (1/sqrt(k)) * (tau*sep / (pi k^2 sqrt(d)))^(k-1)
        sigma_k(C)   >= (w_min^2/k) * (tau*sep / (pi k^2 sqrt(d)))^(2k-2)

    Returns (bound_Phi, bound_C)."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    if tau <= 0 or delta_sep < 0:
        raise ValueError("tau must be positive and separation nonnegative")
    if not 0 < w_min <= 1:
        raise ValueError("w_min must be in (0, 1]")
    if delta_sep > 0 and tau > np.pi / delta_sep + 1e-15:
        raise ValueError("step tau must satisfy tau <= pi / separation")
    base = tau * delta_sep / (np.pi * k**2 * np.sqrt(d))
    bound_phi = base ** (k - 1) / np.sqrt(k)
    bound_c = w_min**2 / k * base ** (2 * k - 2)
    return float(bound_phi), float(bound_c)
