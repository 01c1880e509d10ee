"""In-repo numerical kernels.

Three routines carry the whole package:

* ``nnls`` -- Lawson-Hanson active-set solver for min |Ax - b| over x >= 0.
  Cone membership is "residual below threshold" for this problem.
* ``min_norm_point`` -- Wolfe's algorithm for the minimum-norm point of a
  convex hull of finitely many points.  Drives hull projection, pointedness
  tests and properness certificates.
* ``nnls_screen_batch`` -- vectorized projected-gradient (FISTA) screen that
  decides many membership queries against one cone at once, with a rigorous
  lower bound on the optimal residual so that both "member" and "not a
  member" decisions are sound; undecided columns fall back to ``nnls``.
"""

import numpy as np

from .errors import IndeterminateResultError, PreconditionError

_EPS = float(np.finfo(float).eps)


def nnls(A: np.ndarray, b: np.ndarray, max_iter: int = 10000):
    """Solve min |Ax - b| subject to x >= 0 (Lawson-Hanson).

    Returns (x, residual_norm).  Terminates at an exact KKT point of the
    least-squares problem; raises IndeterminateResultError if the active-set
    loop exceeds ``max_iter``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = A.shape
    if b.size != m:
        raise PreconditionError("shape mismatch between A and b")
    if n == 0:
        return np.zeros(0), float(np.linalg.norm(b))

    x = np.zeros(n)
    active = np.zeros(n, dtype=bool)  # "passive" set P in LH terms
    banned = np.zeros(n, dtype=bool)  # columns that made no progress
    resid = b.copy()
    w = A.T @ resid
    col_scale = float(np.max(np.linalg.norm(A, axis=0))) if n else 0.0
    bnorm = float(np.linalg.norm(b))
    tol_w = 1e3 * _EPS * max(m, n) * max(col_scale, 1.0) * max(bnorm, 1.0)
    r_best = bnorm

    iters = 0
    while not active.all():
        w_masked = np.where(active | banned, -np.inf, w)
        j = int(np.argmax(w_masked))
        if w_masked[j] <= tol_w:
            break
        active[j] = True
        while True:
            iters += 1
            if iters > max_iter:
                raise IndeterminateResultError("nnls exceeded iteration budget")
            idx = np.flatnonzero(active)
            s_sub, *_ = np.linalg.lstsq(A[:, idx], b, rcond=None)
            if s_sub.size and s_sub.min() > 0.0:
                x = np.zeros(n)
                x[idx] = s_sub
                break
            if s_sub.size == 0:
                break
            # step from x toward s until the first passive coefficient hits 0
            x_sub = x[idx]
            neg = s_sub <= 0.0
            denom = x_sub[neg] - s_sub[neg]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(denom > 0.0, x_sub[neg] / denom, 0.0)
            alpha = float(np.min(ratios)) if ratios.size else 0.0
            x_sub = x_sub + alpha * (s_sub - x_sub)
            x = np.zeros(n)
            x[idx] = np.maximum(x_sub, 0.0)
            dropped = idx[x[idx] <= 0.0]
            active[dropped] = False
            if dropped.size == 0:
                # numerical guard: force out the most negative coefficient
                active[idx[int(np.argmin(s_sub))]] = False
        resid = b - A @ x
        w = A.T @ resid
        r_now = float(np.linalg.norm(resid))
        if r_now < r_best - tol_w:
            r_best = r_now
            banned[:] = False
        else:
            # degenerate pivot (rank-deficient face); keep j out until the
            # residual moves again
            banned[j] = True
            active[j] = active[j] and x[j] > 0.0
    return x, float(np.linalg.norm(b - A @ x))


def _affine_min_norm(Q: np.ndarray):
    """Minimum-norm point of the affine hull of the rows of Q.

    Solves the KKT system for min |mu^T Q| with sum(mu) = 1; returns mu.
    """
    k = Q.shape[0]
    gram = Q @ Q.T
    sys = np.zeros((k + 1, k + 1))
    sys[0, 1:] = 1.0
    sys[1:, 0] = 1.0
    sys[1:, 1:] = gram
    rhs = np.zeros(k + 1)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(sys, rhs)
    except np.linalg.LinAlgError:
        sol, *_ = np.linalg.lstsq(sys, rhs, rcond=None)
    return sol[1:]


def min_norm_point(points: np.ndarray, max_iter: int = 10000, rel_tol: float = 1e-14):
    """Minimum-norm point of conv(rows of points) by Wolfe's algorithm.

    Returns (v, lam) with v = lam @ points, lam a convex combination.
    The termination criterion bounds the duality gap: on exit
    <v, p_j> >= |v|^2 - rel_tol * scale^2 for every input row, which pins
    |v| below sqrt(rel_tol) * scale whenever the true minimum norm is zero.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] == 0:
        raise PreconditionError("min_norm_point needs a nonempty (k, n) array")
    k = P.shape[0]
    scale2 = max(float(np.max(np.einsum("ij,ij->i", P, P))), 1.0)
    stop = rel_tol * scale2

    start = int(np.argmin(np.einsum("ij,ij->i", P, P)))
    corral = [start]
    lam_c = np.array([1.0])
    x = P[start].copy()

    iters = 0
    stalled = False
    banned = np.zeros(k, dtype=bool)  # points that made no progress
    best_norm2 = float(x @ x)
    while not stalled:
        iters += 1
        if iters > max_iter:
            raise IndeterminateResultError("min_norm_point exceeded iteration budget")
        dots = np.where(banned, np.inf, P @ x)
        j = int(np.argmin(dots))
        if dots[j] >= x @ x - stop:
            break
        if j in corral:
            break  # no progress possible within floating point
        corral.append(j)
        lam_c = np.append(lam_c, 0.0)
        while True:
            iters += 1
            if iters > max_iter:
                raise IndeterminateResultError("min_norm_point exceeded iteration budget")
            Q = P[corral]
            mu = _affine_min_norm(Q)
            if mu.min() > 1e-14:
                lam_c = mu
                x = mu @ Q
                break
            neg = mu <= 1e-14
            denom = lam_c[neg] - mu[neg]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(denom > 0.0, lam_c[neg] / denom, np.inf)
            theta = float(np.min(ratios)) if ratios.size else 0.0
            theta = min(max(theta, 0.0), 1.0)
            lam_c = lam_c + theta * (mu - lam_c)
            lam_c[lam_c < 1e-14] = 0.0
            keep = lam_c > 0.0
            if keep.all():
                keep[int(np.argmin(mu))] = False
            if not keep.any():
                stalled = True  # corral collapsed; keep the current iterate
                break
            corral = [c for c, kp in zip(corral, keep) if kp]
            lam_c = lam_c[keep]
            total = lam_c.sum()
            lam_c = lam_c / total if total > 0 else np.ones(len(corral)) / len(corral)
            x = lam_c @ P[corral]
        norm2 = float(x @ x)
        if norm2 < best_norm2 - stop * 1e-3:
            best_norm2 = norm2
            banned[:] = False
        else:
            # degenerate pivot: keep j out until the objective moves again
            banned[j] = True

    lam = np.zeros(k)
    for c, l in zip(corral, lam_c):
        lam[c] += l
    return x, lam


def nnls_screen_batch(A: np.ndarray, X: np.ndarray, thr: np.ndarray, sigma: float,
                      iters: int = 800, check_every: int = 20):
    """Screen min |A a - x| <= thr_x over a >= 0 for every column x of X.

    A must have (near) unit-norm columns and ``sigma`` must lower-bound
    min |A lam| over the coefficient simplex (strictly positive exactly
    when the cone spanned by the columns is pointed).  Returns boolean
    arrays (member, nonmember); columns with neither flag set are
    undecided and need the exact solver.

    Soundness: "member" uses the feasible iterate as an upper bound on the
    optimal residual; "nonmember" uses the convexity bound
    f* >= f(a) - w.a - max(-w)_+ * |x| / sigma with w the gradient.
    """
    m, k = A.shape
    P = X.shape[1]
    thr = np.asarray(thr, dtype=float).reshape(P)
    xnorm = np.linalg.norm(X, axis=0)
    if k == 0:
        dist = xnorm
        return dist <= thr, dist > thr
    if not sigma > 0.0:
        raise PreconditionError("screen requires a pointed column cone (sigma > 0)")

    gram = A.T @ A
    lip = float(np.linalg.eigvalsh(gram)[-1])
    lip = max(lip, _EPS)
    AtX = A.T @ X

    alpha = np.zeros((k, P))
    y = alpha.copy()
    t = 1.0
    member = np.zeros(P, dtype=bool)
    nonmember = np.zeros(P, dtype=bool)
    open_cols = np.ones(P, dtype=bool)
    best_r = xnorm.copy()  # residual at alpha = 0

    for it in range(1, iters + 1):
        grad = gram @ y - AtX
        alpha_new = np.maximum(y - grad / lip, 0.0)
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = alpha_new + ((t - 1.0) / t_new) * (alpha_new - alpha)
        alpha, t = alpha_new, t_new

        if it % check_every == 0 or it == iters:
            R = A @ alpha - X
            r = np.linalg.norm(R, axis=0)
            improved = r < best_r
            best_r = np.where(improved, r, best_r)
            w = A.T @ R
            compl = np.einsum("ij,ij->j", alpha, w)
            vmax = np.maximum(-w, 0.0).max(axis=0)
            f_lb = 0.5 * r * r - compl - vmax * xnorm / sigma
            r_lb = np.sqrt(np.maximum(2.0 * f_lb, 0.0))
            member |= open_cols & (best_r <= thr)
            nonmember |= open_cols & (r_lb > thr)
            open_cols &= ~(member | nonmember)
            if not open_cols.any():
                break
    return member, nonmember
