"""Convex cone representations and calculus.

Cones come in a V-representation (``PolyhedralCone``: nonnegative spans of
finitely many generators) and an H-representation (``HalfspaceCone``:
intersections of homogeneous half-spaces).  Polarity swaps the two: the
polar of a V-cone is the H-cone whose normals are the generators, verbatim.
There is deliberately no general V<->H conversion here; cross-representation
claims are checked by membership agreement on probe sets, with an exact
extreme-ray enumerator available up to rank 3 for the double-polar test.

Membership is a residual question: x belongs to cone(G) when the
nonnegative least-squares residual min |G^T a - x| over a >= 0 falls below
tol_mem * (1 + |x|).  A cached per-cone oracle decomposes the cone into
lineality + pointed part once and then answers large probe batches through
the vectorized screen in ``solvers``, falling back to the exact active-set
solver only for borderline queries.
"""

import weakref
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    IndeterminateResultError,
    InvariantViolationError,
    PreconditionError,
)
from .linalg import Subspace, as_matrix, as_vector, orthonormalize, project, subspaces_equal
from .solvers import min_norm_point, nnls, nnls_screen_batch
from .tolerances import DEFAULT_TOL, ToleranceProfile

# Pointedness resolution: a minimum-norm point of the normalized generator
# hull below this counts as zero.  Must stay above sqrt(rel_tol) of the
# Wolfe solver; cones with a genuine pointedness margin inside the band
# (1e-7, 3e-7) are outside numerical resolution.
_EPS_POINTED = 3e-7
_ZERO_GEN = 1e-12


@dataclass(frozen=True, eq=False)
class PolyhedralCone:
    """Finitely generated convex cone {sum a_i g_i : a_i >= 0}.

    Zero generators (norm below 1e-12) are dropped at construction; an
    empty generator list denotes the cone {0}.
    """

    ambient_dim: int
    generators: np.ndarray

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InvariantViolationError("ambient_dim must be positive")
        g = as_matrix(np.atleast_2d(np.asarray(self.generators, dtype=float))
                      if np.size(self.generators) else [], self.ambient_dim)
        if g.shape[0]:
            norms = np.linalg.norm(g, axis=1)
            g = g[norms > _ZERO_GEN]
        g.setflags(write=False)
        object.__setattr__(self, "generators", g)

    @classmethod
    def from_generators(cls, vectors, ambient_dim: int | None = None) -> "PolyhedralCone":
        g = as_matrix(vectors, ambient_dim)
        dim = ambient_dim if ambient_dim is not None else g.shape[1]
        return cls(dim, g)


@dataclass(frozen=True, eq=False)
class HalfspaceCone:
    """Intersection of homogeneous half-spaces {x : <n_i, x> <= 0}.

    An empty normal list denotes the whole space.
    """

    ambient_dim: int
    normals: np.ndarray

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InvariantViolationError("ambient_dim must be positive")
        n = as_matrix(np.atleast_2d(np.asarray(self.normals, dtype=float))
                      if np.size(self.normals) else [], self.ambient_dim)
        n.setflags(write=False)
        object.__setattr__(self, "normals", n)


@dataclass(frozen=True, eq=False)
class StructuredCone:
    """Cone in the decomposed form  lineality + pointed part.

    The pointed generators must be orthogonal to the lineality subspace and
    must span a pointed cone; both are checked at construction.
    """

    lineality: Subspace
    pointed_generators: np.ndarray

    def __post_init__(self):
        n = self.lineality.ambient_dim
        g = as_matrix(np.atleast_2d(np.asarray(self.pointed_generators, dtype=float))
                      if np.size(self.pointed_generators) else [], n)
        if g.shape[0]:
            norms = np.linalg.norm(g, axis=1)
            g = g[norms > _ZERO_GEN]
        if g.shape[0] and self.lineality.rank:
            cross = np.abs(g @ self.lineality.basis.T)
            bound = DEFAULT_TOL.tol_ortho * (1.0 + np.linalg.norm(g, axis=1))
            if np.any(cross > bound[:, None]):
                raise InvariantViolationError(
                    "pointed generators are not orthogonal to the lineality")
        if g.shape[0]:
            unit = g / np.linalg.norm(g, axis=1)[:, None]
            v, _ = min_norm_point(unit)
            if np.linalg.norm(v) <= _EPS_POINTED:
                raise InvariantViolationError("pointed part is not pointed")
        g.setflags(write=False)
        object.__setattr__(self, "pointed_generators", g)

    @property
    def ambient_dim(self) -> int:
        return self.lineality.ambient_dim


# ---------------------------------------------------------------------------
# per-cone oracle
# ---------------------------------------------------------------------------

class _ConeOracle:
    """Cached decomposition of one cone, driving fast batch membership.

    Splits cone(G) into lineality L plus the pointed cone spanned by the
    projections of G onto L-perp.  dist(x, C) then equals the distance of
    the L-perp component of x to the pointed part, which the vectorized
    screen can bound from both sides.
    """

    def __init__(self, cone: PolyhedralCone, max_iter: int,
                 drop_tol: float = DEFAULT_TOL.tol_mem):
        n = cone.ambient_dim
        G = cone.generators
        self.ambient_dim = n
        self.drop_tol = drop_tol
        basis_rows: list[np.ndarray] = []
        if G.shape[0]:
            W = G / np.linalg.norm(G, axis=1)[:, None]
            for _ in range(n + 1):
                if W.shape[0] == 0:
                    break
                v, lam = min_norm_point(W, max_iter=max_iter)
                if np.linalg.norm(v) > _EPS_POINTED:
                    break
                # weight-relative cutoff: rows that barely participate in the
                # zero combination are noise, not lineality directions
                support = W[lam > max(1e-10, 1e-6 * float(lam.max()))]
                added = 0
                for row in support:
                    w = row.copy()
                    for _ in range(2):
                        for b in basis_rows:
                            w -= (w @ b) * b
                    nw = np.linalg.norm(w)
                    if nw > drop_tol:
                        basis_rows.append(w / nw)
                        added += 1
                if added == 0:
                    break
                for b in basis_rows[-added:]:
                    W = W - np.outer(W @ b, b)
                norms = np.linalg.norm(W, axis=1)
                # generators within drop_tol of the lineality do not
                # constrain tolerance-level geometry
                W = W[norms > drop_tol]
                if W.shape[0]:
                    W = W / np.linalg.norm(W, axis=1)[:, None]
        self.lineality = (Subspace(n, np.array(basis_rows)) if basis_rows
                          else Subspace.zero(n))

        # raw projections of the original generators onto the complement
        if G.shape[0] and self.lineality.rank:
            B = self.lineality.basis
            Gp = G - (G @ B.T) @ B
            keep = np.linalg.norm(Gp, axis=1) > drop_tol * (
                1.0 + np.linalg.norm(G, axis=1))
            Gp = Gp[keep]
        else:
            Gp = G.copy()
        self.pointed_raw = Gp
        if Gp.shape[0]:
            self.pointed_unit = Gp / np.linalg.norm(Gp, axis=1)[:, None]
            v, _ = min_norm_point(self.pointed_unit, max_iter=max_iter)
            self.sigma = float(np.linalg.norm(v))
            self.mnp_direction = v
            if self.sigma <= _EPS_POINTED:
                raise IndeterminateResultError(
                    "cone pointedness is below numerical resolution")
        else:
            self.pointed_unit = np.zeros((0, n))
            self.sigma = np.inf
            self.mnp_direction = None
        self.max_iter = max_iter
        self._verify(G)

    def _verify(self, G: np.ndarray):
        """Check that every lineality basis vector is reversible in the cone."""
        if self.lineality.rank == 0 or G.shape[0] == 0:
            return
        A = (G / np.linalg.norm(G, axis=1)[:, None]).T
        for b in self.lineality.basis:
            for sign in (1.0, -1.0):
                _, r = nnls(A, sign * b, max_iter=self.max_iter)
                if r > 10.0 * DEFAULT_TOL.tol_mem:
                    raise IndeterminateResultError(
                        "lineality extraction failed verification")

    def perp_component(self, X: np.ndarray) -> np.ndarray:
        if self.lineality.rank == 0:
            return X
        B = self.lineality.basis
        return X - (X @ B.T) @ B

    def member_batch(self, X: np.ndarray, tol: ToleranceProfile) -> np.ndarray:
        """Membership flags for the rows of X."""
        X = np.asarray(X, dtype=float)
        P = X.shape[0]
        thr = tol.tol_mem * (1.0 + np.linalg.norm(X, axis=1))
        Xp = self.perp_component(X)
        if self.pointed_unit.shape[0] == 0:
            return np.linalg.norm(Xp, axis=1) <= thr
        A = self.pointed_unit.T
        member, nonmember = nnls_screen_batch(A, Xp.T, thr, self.sigma,
                                              iters=min(self.max_iter, 800))
        out = member.copy()
        undecided = ~(member | nonmember)
        for i in np.flatnonzero(undecided):
            _, r = nnls(A, Xp[i], max_iter=self.max_iter)
            out[i] = r <= thr[i]
        return out


_ORACLES: "weakref.WeakKeyDictionary[PolyhedralCone, _ConeOracle]" = weakref.WeakKeyDictionary()


def _oracle(c: PolyhedralCone, tol: ToleranceProfile) -> _ConeOracle:
    o = _ORACLES.get(c)
    if o is None:
        o = _ConeOracle(c, tol.max_iter)
        _ORACLES[c] = o
    return o


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def cone_member(c: PolyhedralCone, x, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True when x is a nonnegative combination of the generators up to
    residual tol_mem * (1 + |x|)."""
    v = as_vector(x, c.ambient_dim)
    thr = tol.tol_mem * (1.0 + np.linalg.norm(v))
    G = c.generators
    if G.shape[0] == 0:
        return bool(np.linalg.norm(v) <= thr)
    A = (G / np.linalg.norm(G, axis=1)[:, None]).T
    _, r = nnls(A, v, max_iter=tol.max_iter)
    return bool(r <= thr)


def cone_member_batch(c: PolyhedralCone, X, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Vectorized membership for many probes (rows of X)."""
    X = as_matrix(X, c.ambient_dim)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return _oracle(c, tol).member_batch(X, tol)


def halfspace_member(h: HalfspaceCone, x, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True when <n_i, x> <= tol_mem * (1 + |x|) for every normal."""
    v = as_vector(x, h.ambient_dim)
    if h.normals.shape[0] == 0:
        return True
    thr = tol.tol_mem * (1.0 + np.linalg.norm(v))
    return bool(np.max(h.normals @ v) <= thr)


def halfspace_member_batch(h: HalfspaceCone, X, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    X = as_matrix(X, h.ambient_dim)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if h.normals.shape[0] == 0:
        return np.ones(X.shape[0], dtype=bool)
    thr = tol.tol_mem * (1.0 + np.linalg.norm(X, axis=1))
    return np.max(X @ h.normals.T, axis=1) <= thr


# ---------------------------------------------------------------------------
# lineality, pointedness, properness
# ---------------------------------------------------------------------------

def lineality_space(c: PolyhedralCone, tol: ToleranceProfile = DEFAULT_TOL) -> Subspace:
    """Maximal linear subspace contained in the cone.

    Equals the span of the generators whose negatives are reachable inside
    the cone; computed by repeatedly peeling zero convex combinations of
    the normalized generators, then verified by reversibility of every
    basis vector.
    """
    return _oracle(c, tol).lineality


def is_pointed(c: PolyhedralCone, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True when the lineality space is trivial.

    Decided by the minimum-norm point of the normalized generator hull:
    the hull misses the origin exactly when no nonzero vector is reversible.
    """
    G = c.generators
    if G.shape[0] == 0:
        return True
    unit = G / np.linalg.norm(G, axis=1)[:, None]
    v, _ = min_norm_point(unit, max_iter=tol.max_iter)
    return bool(np.linalg.norm(v) > _EPS_POINTED)


def is_proper(c: PolyhedralCone, tol: ToleranceProfile = DEFAULT_TOL):
    """Half-space certificate of properness.

    Returns a unit vector f with <f, g_i> <= tol_mem for every generator
    when one exists, or None when the generators positively span the whole
    space.  For a pointed cone the certificate comes out strict: f is the
    negated minimum-norm direction of the normalized generator hull.
    """
    o = _oracle(c, tol)
    n = c.ambient_dim
    if o.lineality.rank == n:
        return None
    if o.pointed_unit.shape[0] == 0:
        # the cone is its lineality; any complement direction works
        comp = _complement_basis(o.lineality)
        return comp[0]
    v = o.mnp_direction
    nv = np.linalg.norm(v)
    if nv <= _EPS_POINTED:
        raise IndeterminateResultError("properness certificate below resolution")
    f = -v / nv
    slack = float(np.max(c.generators @ f)) if c.generators.shape[0] else 0.0
    if slack > tol.tol_mem:
        raise IndeterminateResultError("properness certificate failed validation")
    return f


def _complement_basis(s: Subspace) -> np.ndarray:
    if s.rank == 0:
        return np.eye(s.ambient_dim)
    _, _, vt = np.linalg.svd(s.basis, full_matrices=True)
    return vt[s.rank:]


# ---------------------------------------------------------------------------
# polarity
# ---------------------------------------------------------------------------

def polar(c: PolyhedralCone) -> HalfspaceCone:
    """Polar cone in H-representation: the generators become the normals."""
    return HalfspaceCone(c.ambient_dim, c.generators.copy())


def polar_generators(c: PolyhedralCone, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Generating rays of the polar cone, exact up to generator rank 3.

    Returns unit rows: a +-pair for every lineality direction of the polar
    plus the extreme rays of its pointed part, found by enumerating active
    subsets of the normals.  Raises for generator rank above 3.
    """
    G = c.generators
    n = c.ambient_dim
    if G.shape[0] == 0:
        eye = np.eye(n)
        return np.vstack([eye, -eye])
    u, svals, vt = np.linalg.svd(G, full_matrices=True)
    rank = int(np.sum(svals > tol.tol_rank * svals[0]))
    if rank > 3:
        raise PreconditionError("exact polar enumeration supports rank <= 3 only")
    null_rows = vt[rank:]
    W = vt[:rank]
    Nw = G @ W.T  # normals in row-space coordinates
    row_norms = np.linalg.norm(Nw, axis=1)
    feas = tol.tol_mem * row_norms

    rays: list[np.ndarray] = []
    if rank == 1:
        col = Nw[:, 0]
        if np.all(col <= feas):
            rays.append(np.array([1.0]))
        if np.all(-col <= feas):
            rays.append(np.array([-1.0]))
    elif rank == 2:
        for a, b in Nw:
            for cand in (np.array([-b, a]), np.array([b, -a])):
                nc = np.linalg.norm(cand)
                if nc < 1e-12:
                    continue
                cand = cand / nc
                if np.all(Nw @ cand <= feas):
                    rays.append(cand)
    elif rank == 3:
        k = Nw.shape[0]
        for i in range(k):
            for j in range(i + 1, k):
                cr = np.cross(Nw[i], Nw[j])
                nc = np.linalg.norm(cr)
                if nc < 1e-10 * row_norms[i] * row_norms[j]:
                    continue
                for cand in (cr / nc, -cr / nc):
                    if np.all(Nw @ cand <= feas):
                        rays.append(cand)

    out = [null_rows, -null_rows]
    if rays:
        uniq: list[np.ndarray] = []
        for r in rays:
            if not any(r @ q > 1.0 - 1e-9 for q in uniq):
                uniq.append(r)
        out.append(np.array(uniq) @ W)
    stacked = np.vstack([o for o in out if np.size(o)]) if any(
        np.size(o) for o in out) else np.zeros((0, n))
    return stacked


def sample_polar_directions(c: PolyhedralCone, count: int, rng: np.random.Generator,
                            tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Unit directions inside the polar cone, sampled by Moreau splitting:
    f = z - proj_cone(z) lies in the polar for any z."""
    n = c.ambient_dim
    G = c.generators
    if G.shape[0] == 0:
        z = rng.standard_normal((count, n))
        return z / np.linalg.norm(z, axis=1)[:, None]
    A = (G / np.linalg.norm(G, axis=1)[:, None]).T
    out = []
    Z = rng.standard_normal((count, n))
    for z in Z:
        alpha, _ = nnls(A, z, max_iter=tol.max_iter)
        f = z - A @ alpha
        nf = np.linalg.norm(f)
        if nf > 1e-9:
            out.append(f / nf)
    return np.array(out) if out else np.zeros((0, n))


def double_polar_closure_check(c: PolyhedralCone, probes,
                               tol: ToleranceProfile = DEFAULT_TOL,
                               rng: np.random.Generator | None = None) -> bool:
    """Membership agreement between the cone and its double polar.

    The V-side is the residual test; the H-side evaluates <f, x> <= tol
    over polar certificates: the exact extreme rays when the generator rank
    is at most 3, otherwise Moreau-sampled polar directions plus the
    per-probe splitting certificate.  Finitely generated cones are closed,
    so the two sides must agree on every probe.
    """
    X = as_matrix(probes, c.ambient_dim)
    if X.shape[0] == 0:
        return True
    member_v = cone_member_batch(c, X, tol)
    thr = tol.tol_mem * (1.0 + np.linalg.norm(X, axis=1))
    try:
        F = polar_generators(c, tol)
        exact = True
    except PreconditionError:
        if rng is None:
            rng = np.random.default_rng(0)
        F = sample_polar_directions(c, 128, rng, tol)
        exact = False
    if F.shape[0]:
        member_h = np.max(X @ F.T, axis=1) <= thr
    else:
        member_h = np.ones(X.shape[0], dtype=bool)
    if not exact:
        G = c.generators
        A = (G / np.linalg.norm(G, axis=1)[:, None]).T
        for i, x in enumerate(X):
            if not member_h[i]:
                continue
            alpha, r = nnls(A, x, max_iter=tol.max_iter)
            if r > 1e-9:
                f = (x - A @ alpha) / r
                if f @ x > thr[i]:
                    member_h[i] = False
    return bool(np.array_equal(member_v, member_h))


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def decompose(c: PolyhedralCone, tol: ToleranceProfile = DEFAULT_TOL) -> StructuredCone:
    """Split the cone as lineality + (projection of the generators onto the
    complement of the lineality); the projected part is pointed."""
    o = _oracle(c, tol)
    return StructuredCone(o.lineality, o.pointed_raw.copy())


def flatten_structured(s: StructuredCone) -> PolyhedralCone:
    """V-representation of a structured cone: +-lineality basis plus the
    pointed generators."""
    parts = []
    if s.lineality.rank:
        parts.append(s.lineality.basis)
        parts.append(-s.lineality.basis)
    if s.pointed_generators.shape[0]:
        parts.append(s.pointed_generators)
    gens = np.vstack(parts) if parts else np.zeros((0, s.ambient_dim))
    return PolyhedralCone(s.ambient_dim, gens)


def structured_member(s: StructuredCone, x, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """Componentwise membership: the lineality component is free, the
    complement component must belong to the pointed part."""
    v = as_vector(x, s.ambient_dim)
    perp = v - project(s.lineality, v)
    pointed = PolyhedralCone(s.ambient_dim, s.pointed_generators)
    return cone_member(pointed, perp, tol)


def structured_member_batch(s: StructuredCone, X, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    X = as_matrix(X, s.ambient_dim)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if s.lineality.rank:
        B = s.lineality.basis
        Xp = X - (X @ B.T) @ B
    else:
        Xp = X
    pointed = PolyhedralCone(s.ambient_dim, s.pointed_generators)
    return cone_member_batch(pointed, Xp, tol)


def structured_polar_member(s: StructuredCone, f, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """Membership of f in the polar of a structured cone, evaluated inside
    the complement subspace: f must be orthogonal to the lineality and
    nonpositive against every pointed generator."""
    v = as_vector(f, s.ambient_dim)
    thr = tol.tol_mem * (1.0 + np.linalg.norm(v))
    if np.linalg.norm(project(s.lineality, v)) > thr:
        return False
    if s.pointed_generators.shape[0] == 0:
        return True
    return bool(np.max(s.pointed_generators @ v) <= thr)


def reconstruct_lineality_check(f_basis: Subspace, v_gens,
                                tol: ToleranceProfile = DEFAULT_TOL,
                                probes=None) -> bool:
    """Round trip for the decomposition form F + V.

    Preconditions (violations raise): the pointed generators are orthogonal
    to F and span a pointed cone.  Returns True when the flattened cone's
    lineality equals F and its decomposition's pointed part agrees with
    cone(V) on the probe set.
    """
    V = as_matrix(v_gens, f_basis.ambient_dim)
    if V.shape[0] == 0:
        raise PreconditionError("need at least one pointed generator")
    if f_basis.rank:
        cross = np.abs(V @ f_basis.basis.T)
        bound = tol.tol_ortho * (1.0 + np.linalg.norm(V, axis=1))
        if np.any(cross > bound[:, None]):
            raise PreconditionError("generators are not orthogonal to the subspace")
    v_cone = PolyhedralCone(f_basis.ambient_dim, V)
    if not is_pointed(v_cone, tol):
        raise PreconditionError("generator cone is not pointed")

    flat = flatten_structured(StructuredCone(f_basis, V))
    lin = lineality_space(flat, tol)
    if not subspaces_equal(lin, f_basis, tol):
        return False
    s = decompose(flat, tol)
    pointed2 = PolyhedralCone(f_basis.ambient_dim, s.pointed_generators)
    if probes is None:
        probes = default_probes(f_basis.ambient_dim, V, rng=np.random.default_rng(0),
                                count=200)
    a = cone_member_batch(v_cone, probes, tol)
    b = cone_member_batch(pointed2, probes, tol)
    return bool(np.array_equal(a, b))


def delta_construction(gamma: Subspace, psi_gens,
                       tol: ToleranceProfile = DEFAULT_TOL) -> StructuredCone:
    """Structured cone Gamma + Psi for a closed subspace Gamma and a pointed
    cone Psi inside its complement.

    Its polar, evaluated by ``structured_polar_member`` as the polar of Psi
    taken inside the complement subspace, agrees with the polar of the
    flattened cone; preconditions are enforced here, the polar agreement is
    a theorem exercised by the test suite.
    """
    V = as_matrix(psi_gens, gamma.ambient_dim)
    if gamma.rank and V.shape[0]:
        cross = np.abs(V @ gamma.basis.T)
        bound = tol.tol_ortho * (1.0 + np.linalg.norm(V, axis=1))
        if np.any(cross > bound[:, None]):
            raise PreconditionError("psi generators are not orthogonal to gamma")
    if V.shape[0]:
        v_cone = PolyhedralCone(gamma.ambient_dim, V)
        if not is_pointed(v_cone, tol):
            raise PreconditionError("psi cone is not pointed")
    return StructuredCone(gamma, V)


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------

def default_probes(dim: int, generators=None, rng: np.random.Generator | None = None,
                   count: int = 1000) -> np.ndarray:
    """Deterministic probe battery: +-coordinate axes, normalized generator
    pair sums (and the full sum), plus seeded uniform unit directions."""
    eye = np.eye(dim)
    rows = [eye, -eye]
    if generators is not None:
        G = as_matrix(generators, dim)
        k = G.shape[0]
        sums = []
        for i in range(k):
            for j in range(i + 1, k):
                s = G[i] + G[j]
                ns = np.linalg.norm(s)
                if ns > 1e-12:
                    sums.append(s / ns)
        if k:
            s = G.sum(axis=0)
            ns = np.linalg.norm(s)
            if ns > 1e-12:
                sums.append(s / ns)
        if sums:
            rows.append(np.array(sums))
    if count > 0:
        if rng is None:
            rng = np.random.default_rng(0)
        z = rng.standard_normal((count, dim))
        norms = np.linalg.norm(z, axis=1)
        norms[norms == 0.0] = 1.0
        rows.append(z / norms[:, None])
    return np.vstack(rows)
