"""Frequency designs: where the characteristic function gets probed.

A design is a list of base points t_1..t_L together with translations
v_0 = 0, v_1..v_M.  The measurement grid is the sum set {t_l + v_m}.
Constructors cover the two sampling schemes used throughout (uniform in
a centered ball, and direction-times-step grids tau*s*u_j), plus
orthonormal-basis translations.  Arbitrary point sets can be passed to
FrequencyDesign directly, and a design round-trips through a plain dict
so a run can be replayed from its config.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class FrequencyDesign:
    """Base points (L, d) and translations (M+1, d); translations[0] must
    be exactly zero.  radius_bound is the computed max over the sum set of
    ||t_l + v_m||, the radius r that enters every e^{2 r^2 sigma^2}
    factor downstream."""

    points: np.ndarray
    translations: np.ndarray
    meta: str = ""
    radius_bound: float = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        trs = np.asarray(self.translations, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("points must have shape (L, d) with L >= 1")
        if trs.ndim != 2 or trs.shape[0] < 1:
            raise ValueError("translations must have shape (M+1, d)")
        if trs.shape[1] != pts.shape[1]:
            raise ValueError("points and translations disagree on d")
        if not np.all(trs[0] == 0.0):
            raise ValueError("translations[0] must be exactly zero")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(trs))):
            raise ValueError("design entries must be finite")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "translations", trs)
        grid = pts[:, None, :] + trs[None, :, :]
        rb = float(np.sqrt((grid**2).sum(axis=-1)).max())
        object.__setattr__(self, "radius_bound", rb)

    @property
    def L(self) -> int:
        return self.points.shape[0]

    @property
    def M(self) -> int:
        return self.translations.shape[0] - 1

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def grid(self) -> np.ndarray:
        """All probe points t_l + v_m, shape (L, M+1, d)."""
        return self.points[:, None, :] + self.translations[None, :, :]

    def with_translations(self, translations: np.ndarray) -> "FrequencyDesign":
        return dataclasses.replace(self, translations=np.asarray(translations))

    def to_dict(self) -> dict:
        return {
            "points": self.points.tolist(),
            "translations": self.translations.tolist(),
            "meta": self.meta,
        }

    @staticmethod
    def from_dict(doc: dict) -> "FrequencyDesign":
        return FrequencyDesign(
            points=np.asarray(doc["points"], dtype=np.float64),
            translations=np.asarray(doc["translations"], dtype=np.float64),
            meta=str(doc.get("meta", "")),
        )


def ball_design(L: int, radius: float, d: int, seed: int) -> FrequencyDesign:
    """L points uniform in the centered radius-r ball of R^d (direction
    times U^(1/d) radial factor).  Translations start out as {0} only."""
    if L < 1 or d < 1:
        raise ValueError("L and d must be positive")
    if radius <= 0:
        raise ValueError("radius must be positive")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((L, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    while np.any(norms == 0):  # pragma: no cover
        g = rng.standard_normal((L, d))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.uniform(size=(L, 1)) ** (1.0 / d)
    return FrequencyDesign(
        points=g / norms * r,
        translations=np.zeros((1, d)),
        meta=f"ball(L={L}, radius={radius}, d={d}, seed={seed})",
    )


def directional_design(J: int, S: int, tau: float, d: int, seed: int) -> FrequencyDesign:
    """J uniform directions u_j on the unit sphere, probed at steps
    tau, 2*tau, ..., S*tau along each: points s*tau*u_j, direction-major
    (block j holds its S steps in order).  L = J * S."""
    if J < 1 or S < 1 or d < 1:
        raise ValueError("J, S, d must be positive")
    if tau <= 0:
        raise ValueError("tau must be positive")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((J, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    while np.any(norms == 0):  # pragma: no cover
        g = rng.standard_normal((J, d))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
    dirs = g / norms
    steps = tau * np.arange(1, S + 1)
    points = (dirs[:, None, :] * steps[None, :, None]).reshape(J * S, d)
    return FrequencyDesign(
        points=points,
        translations=np.zeros((1, d)),
        meta=f"directional(J={J}, S={S}, tau={tau}, d={d}, seed={seed})",
    )


def orthonormal_translations(d: int, count: int) -> np.ndarray:
    """Translations {0, e_1, ..., e_(count-1)}: the zero vector followed
    by the first count-1 standard basis vectors.  Requires count <= d+1."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > d + 1:
        raise ValueError("at most d+1 orthonormal translations exist (incl. 0)")
    out = np.zeros((count, d))
    for i in range(1, count):
        out[i, i - 1] = 1.0
    return out


def random_translations(count: int, d: int, scale: float, seed: int) -> np.ndarray:
    """Generic translations: zero followed by count-1 scaled Gaussian
    vectors.  Useful when more than d+1 translations are needed or when
    an orthonormal set is impossible."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    out = np.zeros((count, d))
    if count > 1:
        out[1:] = scale * rng.standard_normal((count - 1, d))
    return out


def default_tau(delta_hat: float | None = None, S: int | None = None,
                radius_budget: float | None = None) -> float:
    """Step size convention for directional designs: pi / (2 * delta_hat)
    when a separation guess is available (half the pi/delta aliasing
    limit), else the largest step keeping all S probes inside the radius
    budget."""
    if delta_hat is not None:
        if delta_hat <= 0:
            raise ValueError("delta_hat must be positive")
        return float(np.pi / (2.0 * delta_hat))
    if S is None or radius_budget is None:
        raise ValueError("need delta_hat, or S and radius_budget")
    if S < 1 or radius_budget <= 0:
        raise ValueError("S must be >= 1 and radius_budget positive")
    return float(radius_budget / S)
