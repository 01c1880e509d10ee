"""Shared oracles and fixture builders.

The oracles here are deliberately independent of the library's own
algorithms: hull membership goes through an LP solver, projection through
a derivative-free pattern search on the coefficient simplex, and cone
membership positives through explicit lattice combinations.
"""

import itertools

import numpy as np
import pytest
import scipy.optimize

from conekit.randgen import make_rng


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def lattice_cone_points(generators: np.ndarray, coefs=(0.0, 0.5, 1.0, 1.5),
                        limit: int = 2000) -> np.ndarray:
    """Nonnegative combinations of the generators on a coarse coefficient
    lattice; every returned point is a cone member by construction."""
    G = np.asarray(generators, dtype=float)
    k = G.shape[0]
    pts = []
    for alpha in itertools.product(coefs, repeat=k):
        pts.append(np.asarray(alpha) @ G)
        if len(pts) >= limit:
            break
    return np.array(pts)


def hull_member_lp(points: np.ndarray, x: np.ndarray, tol: float = 1e-9) -> bool:
    """LP feasibility oracle for x in conv(points) (HiGHS, independent of
    the package's active-set solver)."""
    P = np.asarray(points, dtype=float)
    k = P.shape[0]
    A_eq = np.vstack([P.T, np.ones(k)])
    b_eq = np.append(np.asarray(x, dtype=float), 1.0)
    res = scipy.optimize.linprog(np.zeros(k), A_eq=A_eq, b_eq=b_eq,
                                 bounds=[(0, None)] * k, method="highs")
    return res.status == 0


def leave_one_out_extreme(points: np.ndarray, i: int) -> bool:
    """Extreme-point oracle: x_i is extreme iff it is outside the hull of
    the remaining points."""
    P = np.asarray(points, dtype=float)
    rest = np.delete(P, i, axis=0)
    return not hull_member_lp(rest, P[i])


def pattern_search_projection(points: np.ndarray, y: np.ndarray,
                              levels: int = 32) -> tuple[np.ndarray, float]:
    """Projection oracle: coordinate-exchange pattern search over the
    coefficient simplex with dyadic step refinement.  Independent of the
    minimum-norm-point algorithm under test."""
    P = np.asarray(points, dtype=float)
    yv = np.asarray(y, dtype=float)
    k = P.shape[0]
    lam = np.full(k, 1.0 / k)

    def dist(l):
        return float(np.linalg.norm(l @ P - yv))

    best = dist(lam)
    step = 1.0
    for _ in range(levels):
        improved = True
        while improved:
            improved = False
            for j in range(k):
                for i in range(k):
                    if i == j or lam[j] < step:
                        continue  # donor weight re-checked after every move
                    trial = lam.copy()
                    trial[i] += step
                    trial[j] -= step
                    d = dist(trial)
                    if d < best - 1e-15:
                        lam, best = trial, d
                        improved = True
        step *= 0.5
    return lam @ P, best


def polygon_radial_support(vertices_ccw: np.ndarray, theta: float) -> float:
    """Exact radius of a convex polygon boundary (vertices in ccw order,
    origin interior) along the direction (cos theta, sin theta), by direct
    ray-edge chord intersection."""
    V = np.asarray(vertices_ccw, dtype=float)
    d = np.array([np.cos(theta), np.sin(theta)])
    k = V.shape[0]
    best = None
    for i in range(k):
        a, b = V[i], V[(i + 1) % k]
        # solve a + s (b - a) = t d
        M = np.column_stack([b - a, -d])
        det = np.linalg.det(M)
        if abs(det) < 1e-14:
            continue
        s, minus_t = np.linalg.solve(M, -a)
        t = -minus_t
        if -1e-12 <= s <= 1.0 + 1e-12 and t > 0:
            best = t if best is None else max(best, t)
    assert best is not None, "ray misses the polygon boundary"
    return float(best)


# ---------------------------------------------------------------------------
# fixture builders
# ---------------------------------------------------------------------------

def square_cloud() -> np.ndarray:
    """Unit square corners plus edge midpoints."""
    return np.array([[0, 0], [1, 0], [1, 1], [0, 1],
                     [0.5, 0], [1, 0.5], [0.5, 1], [0, 0.5]], dtype=float)


def star_polygon(n_spikes: int = 6, r_in: float = 1.0, r_out: float = 3.0) -> np.ndarray:
    ang = np.linspace(0.0, 2.0 * np.pi, 2 * n_spikes, endpoint=False)
    radii = np.where(np.arange(2 * n_spikes) % 2 == 0, r_out, r_in)
    return np.c_[radii * np.cos(ang), radii * np.sin(ang)]


def l_polyline(step: float = 0.2, arm: float = 2.0) -> np.ndarray:
    t = np.arange(0.0, arm + step / 2, step)
    horiz = np.c_[t, np.zeros_like(t)]
    vert = np.c_[np.zeros_like(t[1:]), t[1:]]
    return np.vstack([horiz, vert])


def segment_cloud(n: int = 21) -> np.ndarray:
    t = np.linspace(0.0, 1.0, n)
    return np.c_[t, np.zeros_like(t)]


def circle_cloud(n: int = 50, radius: float = 1.0) -> np.ndarray:
    ang = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    return radius * np.c_[np.cos(ang), np.sin(ang)]


def prism_cloud() -> np.ndarray:
    """Triangular prism sample: triangle vertices at three heights."""
    tri = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
    layers = [np.c_[tri, np.full(3, z)] for z in (0.0, 0.5, 1.0)]
    return np.vstack(layers)


@pytest.fixture
def rng():
    return make_rng(12345)
