import numpy as np
import pytest
from hypothesis import given, strategies as st

from fouriergmm.design import (
    FrequencyDesign,
    ball_design,
    default_tau,
    directional_design,
    orthonormal_translations,
    random_translations,
)
from fouriergmm.model import simplex_means


def test_translations_must_start_at_zero():
    with pytest.raises(ValueError):
        FrequencyDesign(points=np.zeros((1, 2)),
                        translations=np.array([[0.1, 0.0]]))


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        FrequencyDesign(points=np.zeros((2, 3)), translations=np.zeros((1, 2)))


def test_radius_bound_over_sum_set():
    pts = np.array([[1.0, 0.0], [0.0, 0.5]])
    trs = np.array([[0.0, 0.0], [0.0, 1.0]])
    dz = FrequencyDesign(points=pts, translations=trs)
    grid = pts[:, None, :] + trs[None, :, :]
    assert dz.radius_bound == pytest.approx(np.linalg.norm(grid, axis=-1).max())
    assert dz.radius_bound == pytest.approx(1.5)


def test_grid_shape_and_content():
    dz = FrequencyDesign(points=np.array([[1.0], [2.0]]),
                         translations=np.array([[0.0], [10.0]]))
    g = dz.grid()
    assert g.shape == (2, 2, 1)
    np.testing.assert_allclose(g[:, :, 0], [[1.0, 11.0], [2.0, 12.0]])
    assert dz.L == 2 and dz.M == 1 and dz.d == 1


def test_design_dict_round_trip():
    dz = ball_design(5, 0.7, 3, seed=1).with_translations(
        orthonormal_translations(3, 4))
    back = FrequencyDesign.from_dict(dz.to_dict())
    np.testing.assert_array_equal(back.points, dz.points)
    np.testing.assert_array_equal(back.translations, dz.translations)
    assert back.radius_bound == dz.radius_bound


def test_ball_design_norms_within_radius():
    dz = ball_design(200, 0.5, 10, seed=3)
    assert dz.points.shape == (200, 10)
    assert np.linalg.norm(dz.points, axis=1).max() <= 0.5
    np.testing.assert_array_equal(dz.translations, np.zeros((1, 10)))


def test_ball_design_is_uniform_in_area():
    # P(||t|| <= rho/2) = 1/4 in d=2
    dz = ball_design(10**5, 1.0, 2, seed=5)
    frac = np.mean(np.linalg.norm(dz.points, axis=1) <= 0.5)
    assert frac == pytest.approx(0.25, abs=0.01)


def test_ball_design_deterministic():
    a = ball_design(20, 0.5, 4, seed=9)
    b = ball_design(20, 0.5, 4, seed=9)
    np.testing.assert_array_equal(a.points, b.points)


def test_ball_design_rejects_bad_radius():
    with pytest.raises(ValueError):
        ball_design(5, 0.0, 2, seed=0)


def test_directional_design_unrolled():
    dz = directional_design(1, 3, 0.5, 3, seed=11)
    u = dz.points[0] / np.linalg.norm(dz.points[0])
    np.testing.assert_allclose(dz.points, np.outer([0.5, 1.0, 1.5], u), atol=1e-12)
    assert np.linalg.norm(dz.points, axis=1) == pytest.approx([0.5, 1.0, 1.5])


def test_directional_design_point_count_and_rank():
    dz = directional_design(2, 3, 0.4, 5, seed=2)
    assert dz.L == 6
    for j in range(2):
        block = dz.points[3 * j : 3 * j + 3]
        assert np.linalg.matrix_rank(block, tol=1e-10) == 1
    assert np.linalg.norm(dz.points, axis=1).max() == pytest.approx(3 * 0.4)


def test_orthonormal_translations_layout():
    t = orthonormal_translations(10, 11)
    np.testing.assert_array_equal(t[0], np.zeros(10))
    np.testing.assert_array_equal(t[1:], np.eye(10))
    np.testing.assert_array_equal(orthonormal_translations(3, 1), np.zeros((1, 3)))


def test_orthonormal_translations_capacity():
    with pytest.raises(ValueError):
        orthonormal_translations(2, 4)


def test_random_translations_zero_first():
    t = random_translations(5, 3, 1.0, seed=7)
    np.testing.assert_array_equal(t[0], np.zeros(3))
    assert t.shape == (5, 3)
    assert np.all(t[1:] != 0.0)


def test_default_tau_conventions():
    assert default_tau(delta_hat=2.0) == pytest.approx(np.pi / 4.0)
    assert default_tau(S=4, radius_budget=2.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        default_tau()
    with pytest.raises(ValueError):
        default_tau(delta_hat=-1.0)


@given(st.integers(0, 10**6))
def test_radius_bound_recomputation(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(4, 3))
    trs = np.vstack([np.zeros(3), rng.normal(size=(2, 3))])
    dz = FrequencyDesign(points=pts, translations=trs)
    manual = max(
        np.linalg.norm(pts[l] + trs[m])
        for l in range(pts.shape[0])
        for m in range(trs.shape[0])
    )
    assert dz.radius_bound == pytest.approx(manual, rel=1e-12)


def test_projected_separation_monte_carlo():
    """With J >= ceil(log2(1/delta)) random directions, some direction
    separates every mean pair by Delta/(k^2 sqrt(d)) with probability at
    least 1 - delta."""
    delta_fail = 0.25
    J = int(np.ceil(np.log2(1.0 / delta_fail)))  # = 2
    k, d, sep = 3, 5, 3.0
    mu = simplex_means(k, sep, d)
    diffs = np.array([mu[i] - mu[j] for i in range(k) for j in range(i)])
    trials, hits = 400, 0
    floor = sep / (k**2 * np.sqrt(d))
    rng = np.random.default_rng(99)
    for _ in range(trials):
        ok = False
        for _ in range(J):
            u = rng.standard_normal(d)
            u /= np.linalg.norm(u)
            if np.abs(diffs @ u).min() >= floor:
                ok = True
                break
        hits += ok
    rate = hits / trials
    se = np.sqrt(rate * (1 - rate) / trials)
    assert rate >= (1 - delta_fail) - 3 * se
