from itertools import permutations

import numpy as np
import pytest

from fouriergmm.metrics import DiscreteDistribution, matched_mean_error, wasserstein1
from fouriergmm.model import GmmModel


def _dd(atoms, masses):
    return DiscreteDistribution(atoms=np.asarray(atoms, dtype=float),
                                masses=np.asarray(masses, dtype=float))


def _rand_dd(rng, m, d):
    g = rng.exponential(size=m)
    return _dd(rng.standard_normal((m, d)) * 2, g / g.sum())


def test_distribution_validation():
    with pytest.raises(ValueError, match="atoms"):
        _dd(np.zeros(3), [1.0])
    with pytest.raises(ValueError, match="match"):
        _dd([[0.0]], [0.5, 0.5])
    with pytest.raises(ValueError, match="nonnegative"):
        _dd([[0.0], [1.0]], [1.5, -0.5])
    with pytest.raises(ValueError, match="sum to 1"):
        _dd([[0.0]], [0.9])


def test_from_model_and_pruned():
    model = GmmModel(weights=np.array([0.4, 0.6]),
                     means=np.array([[0.0, 0.0], [1.0, 1.0]]), sigma=1.0)
    dd = DiscreteDistribution.from_model(model)
    assert np.array_equal(dd.atoms, model.means)
    pruned = _dd([[0.0], [1.0], [2.0]], [0.5, 0.0, 0.5]).pruned()
    assert pruned.atoms[:, 0].tolist() == [0.0, 2.0]


def test_w1_identity_is_zero():
    rng = np.random.default_rng(0)
    dd = _rand_dd(rng, 4, 3)
    assert wasserstein1(dd, dd) <= 1e-12


def test_w1_two_point_masses():
    a = _dd([[0.0, 0.0]], [1.0])
    b = _dd([[3.0, 4.0]], [1.0])
    assert wasserstein1(a, b) == pytest.approx(5.0, abs=1e-12)


def test_w1_split_mass_example():
    a = _dd([[0.0, 0.0]], [1.0])
    b = _dd([[0.0, 0.0], [2.0, 0.0]], [0.5, 0.5])
    assert wasserstein1(a, b) == pytest.approx(1.0, abs=1e-10)


def test_w1_ignores_zero_mass_atoms():
    a = _dd([[0.0]], [1.0])
    b = _dd([[0.0], [500.0]], [1.0, 0.0])
    assert wasserstein1(a, b) <= 1e-12


def test_w1_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        wasserstein1(_dd([[0.0]], [1.0]), _dd([[0.0, 0.0]], [1.0]))


def test_w1_metric_axioms_on_random_triples():
    rng = np.random.default_rng(1)
    for _ in range(100):
        m = int(rng.integers(1, 5))
        d = int(rng.integers(1, 4))
        x, y, z = (_rand_dd(rng, m, d) for _ in range(3))
        dxy = wasserstein1(x, y)
        dyx = wasserstein1(y, x)
        assert dxy >= 0
        assert dxy == pytest.approx(dyx, abs=1e-9)
        assert dxy <= wasserstein1(x, z) + wasserstein1(z, y) + 1e-9


def test_w1_uniform_equal_counts_is_min_average_matching():
    rng = np.random.default_rng(2)
    for _ in range(25):
        k = int(rng.integers(2, 6))
        d = int(rng.integers(1, 4))
        A = rng.standard_normal((k, d))
        B = rng.standard_normal((k, d))
        dist = np.sqrt(((A[:, None] - B[None]) ** 2).sum(-1))
        brute = min(
            np.mean([dist[i, p[i]] for i in range(k)])
            for p in permutations(range(k))
        )
        w = np.full(k, 1.0 / k)
        assert wasserstein1(_dd(A, w), _dd(B, w)) == pytest.approx(brute, abs=1e-9)


def test_w1_rotation_invariance():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    a = _rand_dd(rng, 4, 3)
    b = _rand_dd(rng, 3, 3)
    ra = _dd(a.atoms @ q.T, a.masses)
    rb = _dd(b.atoms @ q.T, b.masses)
    assert wasserstein1(ra, rb) == pytest.approx(wasserstein1(a, b), abs=1e-10)


def test_matched_error_permuted_truth_is_zero():
    rng = np.random.default_rng(4)
    t = rng.standard_normal((5, 3))
    assert matched_mean_error(t, t[[3, 1, 4, 0, 2]]) <= 1e-12


def test_matched_error_single_pair_is_distance():
    assert matched_mean_error(np.array([[0.0, 0.0]]),
                              np.array([[3.0, 4.0]])) == pytest.approx(5.0)


def test_matched_error_validation():
    with pytest.raises(ValueError, match="identical"):
        matched_mean_error(np.zeros((2, 2)), np.zeros((3, 2)))
    with pytest.raises(ValueError, match="capped"):
        matched_mean_error(np.zeros((9, 2)), np.zeros((9, 2)))


def test_matched_error_agrees_with_transport_max_leg():
    """When the optimal assignment is unique, the W1 coupling for uniform
    masses is a permutation and the matched error is its longest leg."""
    rng = np.random.default_rng(5)
    hits = 0
    for _ in range(20):
        k = 3
        A = rng.standard_normal((k, 2)) * 3
        B = A[[1, 2, 0]] + rng.standard_normal((k, 2)) * 0.05
        dist = np.sqrt(((A[:, None] - B[None]) ** 2).sum(-1))
        perms = list(permutations(range(k)))
        avgs = [np.mean([dist[i, p[i]] for i in range(k)]) for p in perms]
        best = perms[int(np.argmin(avgs))]
        err = matched_mean_error(A, B)
        # the min-average and min-max matchings coincide here by construction
        assert err == pytest.approx(max(dist[i, best[i]] for i in range(k)),
                                    abs=1e-9)
        hits += 1
    assert hits == 20
