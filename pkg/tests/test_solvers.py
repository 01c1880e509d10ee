import numpy as np
import pytest
import scipy.optimize

from conekit.errors import IndeterminateResultError, PreconditionError
from conekit.randgen import make_rng
from conekit.solvers import min_norm_point, nnls, nnls_screen_batch

from conftest import pattern_search_projection


def test_nnls_exact_fit():
    A = np.eye(2)
    x, r = nnls(A, np.array([2.0, 3.0]))
    assert np.allclose(x, [2.0, 3.0]) and r < 1e-12


def test_nnls_clamps_negative():
    A = np.eye(2)
    x, r = nnls(A, np.array([-1.0, 0.0]))
    assert np.allclose(x, 0.0) and abs(r - 1.0) < 1e-12


def test_nnls_empty_columns():
    x, r = nnls(np.zeros((3, 0)), np.array([1.0, 2.0, 2.0]))
    assert x.size == 0 and abs(r - 3.0) < 1e-12


def test_nnls_kkt_and_not_worse_than_scipy():
    rng = make_rng(42)
    for i in range(400):
        m = int(rng.integers(2, 7))
        n = int(rng.integers(1, 13))
        A = rng.standard_normal((m, n))
        if i % 2 == 0 and n >= 2:
            A[:, -1] = -A[:, 0]  # rank-deficient +- pair
        b = rng.standard_normal(m)
        x, r = nnls(A, b)
        w = A.T @ (b - A @ x)
        scale = max(1.0, np.linalg.norm(b))
        assert x.min() >= 0.0
        assert w.max() <= 1e-9 * scale
        xs, _ = scipy.optimize.nnls(A, b)
        assert r <= np.linalg.norm(A @ xs - b) + 1e-9 * scale


def test_nnls_iteration_budget():
    # identity columns force one active-set growth step per coordinate
    A = np.eye(5)
    with pytest.raises(IndeterminateResultError):
        nnls(A, np.ones(5), max_iter=2)


def test_min_norm_point_triangle():
    v, lam = min_norm_point(np.array([[1.0, 0.0], [0.0, 1.0]]))
    assert np.allclose(v, [0.5, 0.5], atol=1e-12)
    assert np.allclose(lam, [0.5, 0.5], atol=1e-10)


def test_min_norm_point_contains_origin():
    v, lam = min_norm_point(np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]))
    assert np.linalg.norm(v) < 1e-7
    assert abs(lam.sum() - 1.0) < 1e-9 and lam.min() >= 0.0


def test_min_norm_point_rejects_empty():
    with pytest.raises(PreconditionError):
        min_norm_point(np.zeros((0, 3)))


def test_min_norm_point_matches_pattern_search():
    rng = make_rng(5)
    for _ in range(40):
        k = int(rng.integers(2, 7))
        d = int(rng.integers(2, 4))
        P = rng.standard_normal((k, d)) + rng.standard_normal(d)
        v, lam = min_norm_point(P)
        assert abs(lam.sum() - 1.0) < 1e-9
        assert np.linalg.norm(lam @ P - v) < 1e-9
        _, best = pattern_search_projection(P, np.zeros(d))
        assert np.linalg.norm(v) <= best + 1e-6
        assert best <= np.linalg.norm(v) + 1e-6


def test_screen_batch_agrees_with_exact():
    rng = make_rng(11)
    for _ in range(20):
        d = int(rng.integers(2, 6))
        k = int(rng.integers(2, 9))
        G = rng.standard_normal((k, d))
        A = (G / np.linalg.norm(G, axis=1)[:, None]).T
        v, _ = min_norm_point(A.T)
        sigma = float(np.linalg.norm(v))
        if sigma < 1e-6:
            continue  # screen requires a pointed column cone
        X = rng.standard_normal((d, 200))
        thr = 1e-7 * (1.0 + np.linalg.norm(X, axis=0))
        member, nonmember = nnls_screen_batch(A, X, thr, sigma)
        assert not np.any(member & nonmember)
        for i in range(X.shape[1]):
            _, r = nnls(A, X[:, i])
            truth = r <= thr[i]
            if member[i]:
                assert truth
            if nonmember[i]:
                assert not truth
