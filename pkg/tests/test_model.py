import numpy as np
import pytest
from hypothesis import given, strategies as st

from fouriergmm.model import (
    GmmModel,
    SampleSet,
    categorical_from_uniform,
    random_rotation,
    sample_gmm,
    simplex_means,
    sphere_means,
)


def test_weights_must_sum_to_one():
    with pytest.raises(ValueError):
        GmmModel(weights=np.array([0.5, 0.4]), means=np.zeros((2, 1)))


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        GmmModel(weights=np.array([1.0, 0.0]), means=np.zeros((2, 1)))


def test_negative_sigma_rejected():
    with pytest.raises(ValueError):
        GmmModel(weights=np.array([1.0]), means=np.zeros((1, 2)), sigma=-1.0)


def test_derived_quantities_recomputed():
    m = GmmModel(weights=np.array([0.7, 0.3]),
                 means=np.array([[0.0, 0.0], [3.0, 4.0]]), sigma=1.0)
    assert m.k == 2 and m.d == 2
    assert m.w_min == pytest.approx(0.3)
    assert m.separation == pytest.approx(5.0)


def test_separation_is_inf_for_single_component():
    m = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 3)))
    assert m.separation == np.inf


def test_cov_must_be_spd():
    with pytest.raises(ValueError):
        GmmModel(weights=np.array([1.0]), means=np.zeros((1, 2)),
                 cov=np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_quad_form_matches_cov():
    cov = np.array([[2.0, 0.5], [0.5, 1.0]])
    m = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 2)), cov=cov)
    t = np.array([1.0, -1.0])
    assert m.quad_form(t) == pytest.approx(t @ cov @ t)
    m2 = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 2)), sigma=2.0)
    assert m2.quad_form(t) == pytest.approx(4.0 * 2.0)


# sampling


def test_noiseless_single_component_is_constant():
    m = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 3)), sigma=0.0)
    s = sample_gmm(m, 5, seed=1)
    assert s.data.shape == (5, 3)
    np.testing.assert_array_equal(s.data, np.zeros((5, 3)))


def test_noiseless_samples_sit_on_means():
    means = simplex_means(3, 5.0, 4)
    m = GmmModel(weights=np.array([0.2, 0.3, 0.5]), means=means, sigma=0.0)
    s = sample_gmm(m, 200, seed=3)
    d = np.linalg.norm(s.data[:, None, :] - means[None], axis=2).min(axis=1)
    assert d.max() == 0.0


def test_sampling_is_bitwise_deterministic():
    m = GmmModel(weights=np.array([0.4, 0.6]),
                 means=np.array([[0.0, 0.0], [2.0, 0.0]]), sigma=1.0)
    a = sample_gmm(m, 1000, seed=77)
    b = sample_gmm(m, 1000, seed=77)
    np.testing.assert_array_equal(a.data, b.data)
    c = sample_gmm(m, 1000, seed=78)
    assert not np.array_equal(a.data, c.data)


def test_sample_mean_concentrates():
    # CLT: per-coordinate mean within 3 sigma / sqrt(n)
    m = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 2)), sigma=1.0)
    s = sample_gmm(m, 10**5, seed=5)
    assert np.all(np.abs(s.data.mean(axis=0)) < 0.02)


def test_component_frequencies_match_weights():
    means = np.array([[0.0, 0.0], [100.0, 0.0]])
    m = GmmModel(weights=np.array([0.5, 0.5]), means=means, sigma=0.01)
    s = sample_gmm(m, 10**5, seed=9)
    labels = np.linalg.norm(s.data[:, None, :] - means[None], axis=2).argmin(axis=1)
    freq = np.bincount(labels, minlength=2) / s.n
    assert np.all(np.abs(freq - 0.5) < 0.01)


def test_general_cov_sampling_matches_covariance():
    cov = np.array([[2.0, 0.8], [0.8, 1.0]])
    m = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 2)), cov=cov)
    s = sample_gmm(m, 2 * 10**5, seed=13)
    emp = s.data.T @ s.data / s.n
    assert np.abs(emp - cov).max() < 0.03


def test_sample_count_validated():
    m = GmmModel(weights=np.array([1.0]), means=np.zeros((1, 1)))
    with pytest.raises(ValueError):
        sample_gmm(m, 0, seed=0)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_noiseless_samples_always_land_on_an_atom(seed, k):
    w = np.full(k, 1.0 / k)
    means = np.arange(k, dtype=float).reshape(k, 1) * 2.0
    m = GmmModel(weights=w, means=means, sigma=0.0)
    s = sample_gmm(m, 50, seed=seed)
    d = np.abs(s.data[:, 0][:, None] - means[:, 0][None]).min(axis=1)
    assert np.all(d == 0.0)


def test_categorical_right_edge():
    w = np.array([0.25, 0.25, 0.5])
    labels = categorical_from_uniform(w, np.array([0.0, 0.249, 0.25, 0.999, 1.0 - 1e-16]))
    assert labels.tolist() == [0, 0, 1, 2, 2]
    assert np.all(labels < 3)


@given(st.lists(st.floats(0.01, 1.0), min_size=1, max_size=5),
       st.floats(0.0, 1.0, exclude_max=True))
def test_categorical_labels_in_range(raw, u):
    w = np.asarray(raw) / np.sum(raw)
    lab = categorical_from_uniform(w, np.array([u]))
    assert 0 <= lab[0] < len(w)


# mean generators


def test_segment_means():
    mu = simplex_means(2, 2.0, 10)
    expect = np.zeros((2, 10))
    expect[0, 0], expect[1, 0] = -1.0, 1.0
    np.testing.assert_allclose(mu, expect)


@pytest.mark.parametrize("k,delta,d", [(2, 2.0, 10), (3, 7.0, 10), (4, 1.0, 3)])
def test_simplex_pairwise_distances(k, delta, d):
    mu = simplex_means(k, delta, d)
    assert mu.shape == (k, d)
    for i in range(k):
        for j in range(i):
            assert np.linalg.norm(mu[i] - mu[j]) == pytest.approx(delta, abs=1e-10)
    np.testing.assert_allclose(mu.mean(axis=0), 0.0, atol=1e-12)
    # embedded in the first k-1 coordinates only
    assert np.all(mu[:, k - 1:] == 0.0)


def test_simplex_unsupported_k():
    with pytest.raises(ValueError):
        simplex_means(5, 1.0, 10)
    with pytest.raises(ValueError):
        simplex_means(1, 1.0, 10)


def test_simplex_dimension_too_small():
    with pytest.raises(ValueError):
        simplex_means(4, 1.0, 2)


def test_sphere_means_norms():
    mu = sphere_means(3, 3, 4.0, seed=2)
    np.testing.assert_allclose(np.linalg.norm(mu, axis=1), 4.0, atol=1e-12)


def test_sphere_means_zero_radius():
    np.testing.assert_array_equal(sphere_means(1, 2, 0.0, seed=0), np.zeros((1, 2)))


def test_sphere_means_centered_on_average():
    mu = sphere_means(200, 3, 1.0, seed=4)
    assert np.linalg.norm(mu.mean(axis=0)) < 0.2


def test_random_rotation_is_orthogonal():
    for d, seed in [(1, 0), (2, 1), (5, 2), (10, 3)]:
        q = random_rotation(d, seed)
        np.testing.assert_allclose(q @ q.T, np.eye(d), atol=1e-12)
    np.testing.assert_array_equal(random_rotation(7, 5), random_rotation(7, 5))


def test_sample_set_shape_validated():
    with pytest.raises(ValueError):
        SampleSet(data=np.zeros(3), seed=0)
    with pytest.raises(ValueError):
        SampleSet(data=np.zeros((0, 3)), seed=0)
