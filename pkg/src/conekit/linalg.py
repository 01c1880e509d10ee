"""Dense real linear algebra substrate.

Vectors are plain 1-D float64 numpy arrays; ``as_vector`` is the single
validation gate (finiteness, dimension).  Subspaces carry an orthonormal
basis as rows of a matrix and are immutable.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvariantViolationError, PreconditionError
from .tolerances import DEFAULT_TOL, ToleranceProfile


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate and return ``x`` as a finite 1-D float64 array.

    Raises on NaN/Inf entries, on empty input, and on a dimension mismatch
    when ``dim`` is given.
    """
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        v = v.reshape(-1)
    if v.size == 0:
        raise InvariantViolationError("vectors must have positive dimension")
    if not np.all(np.isfinite(v)):
        raise InvariantViolationError("vector has non-finite coordinates")
    if dim is not None and v.size != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {v.size}")
    return v


def as_matrix(rows, dim: int | None = None) -> np.ndarray:
    """Stack an iterable of vectors into a (k, dim) array; k may be 0."""
    rows = list(rows)
    if not rows:
        if dim is None:
            raise PreconditionError("cannot infer dimension from an empty list")
        return np.zeros((0, dim))
    vecs = [as_vector(r, dim) for r in rows]
    dims = {v.size for v in vecs}
    if len(dims) > 1:
        raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
    return np.array(vecs, dtype=float)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace given by an orthonormal basis (rows of ``basis``).

    A rank-0 subspace has an empty (0, ambient_dim) basis matrix.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InvariantViolationError("ambient_dim must be positive")
        b = np.asarray(self.basis, dtype=float).reshape(-1, self.ambient_dim)
        if not np.all(np.isfinite(b)):
            raise InvariantViolationError("basis has non-finite entries")
        if b.shape[0] > self.ambient_dim:
            raise InvariantViolationError("rank exceeds ambient dimension")
        gram = b @ b.T
        if b.shape[0] and np.max(np.abs(gram - np.eye(b.shape[0]))) > 1e-7:
            raise InvariantViolationError("basis rows are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((0, ambient_dim)))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim))


def orthonormalize(vectors, tol: ToleranceProfile = DEFAULT_TOL,
                   ambient_dim: int | None = None) -> Subspace:
    """Orthonormal basis of span(vectors) by modified Gram-Schmidt.

    Each vector is deflated against the accepted basis twice ("twice is
    enough" re-orthogonalization); vectors whose residual norm falls below
    tol_rank relative to the largest input norm are dropped.
    """
    rows = as_matrix(vectors, ambient_dim)
    n = rows.shape[1] if rows.size or ambient_dim is None else ambient_dim
    if rows.shape[0] == 0:
        if ambient_dim is None:
            raise PreconditionError("empty input needs an explicit ambient_dim")
        return Subspace.zero(ambient_dim)
    scale = max(float(np.max(np.linalg.norm(rows, axis=1))), 1.0)
    basis: list[np.ndarray] = []
    for v in rows:
        w = v.copy()
        for _ in range(2):
            for b in basis:
                w -= (w @ b) * b
        nw = np.linalg.norm(w)
        if nw >= tol.tol_rank * scale:
            basis.append(w / nw)
    if not basis:
        return Subspace.zero(n)
    return Subspace(n, np.array(basis))


def project(s: Subspace, x) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the subspace."""
    v = as_vector(x, s.ambient_dim)
    if s.rank == 0:
        return np.zeros(s.ambient_dim)
    return (v @ s.basis.T) @ s.basis


def orthogonal_complement(s: Subspace) -> Subspace:
    """Orthonormal basis of the orthogonal complement.

    Computed from the SVD of the basis matrix: the right singular vectors
    beyond the subspace rank span the complement exactly.
    """
    if s.rank == 0:
        return Subspace.full(s.ambient_dim)
    if s.rank == s.ambient_dim:
        return Subspace.zero(s.ambient_dim)
    _, _, vt = np.linalg.svd(s.basis, full_matrices=True)
    return Subspace(s.ambient_dim, vt[s.rank:])


def affine_hull_dim(points, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """Dimension of the affine hull of a nonempty point list.

    Rank of the difference set {p_i - p_0}, with singular values below
    tol_rank * sigma_max treated as zero.
    """
    pts = as_matrix(points)
    if pts.shape[0] == 0:
        raise PreconditionError("affine hull of an empty set is undefined")
    if pts.shape[0] == 1:
        return 0
    diffs = pts[1:] - pts[0]
    svals = np.linalg.svd(diffs, compute_uv=False)
    if svals.size == 0 or svals[0] <= 0.0:
        return 0
    return int(np.sum(svals > tol.tol_rank * svals[0]))


def subspaces_equal(a: Subspace, b: Subspace, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """True when the two subspaces span the same set (mutual projection
    residuals below tol_fix)."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("subspaces live in different spaces")
    if a.rank != b.rank:
        return False
    for v in a.basis:
        if np.linalg.norm(v - project(b, v)) > tol.tol_fix:
            return False
    for v in b.basis:
        if np.linalg.norm(v - project(a, v)) > tol.tol_fix:
            return False
    return True
