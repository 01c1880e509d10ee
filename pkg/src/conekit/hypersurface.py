"""Sphere-parameterized closed hypersurfaces.

A surface is stored as a table: unit directions u_i on the reference
sphere and the surface point r_i * u_i on each ray.  The radial map of a
convex body sends u to the unique ray-boundary intersection; an explicit
annulus map extends that boundary homeomorphism to the solid sphere of
radius 2, with a closed-form inverse.  Convexification replaces each radius
by the ray-boundary intersection of the hull of the sampled surface.

Samplings restricted to (roughly) a hemisphere are rejected: the angular
spread between directions must exceed a configurable threshold, since
surfaces with boundary are out of scope.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolationError, PreconditionError
from .linalg import affine_hull_dim, as_matrix, as_vector
from .support import ConvexBody, SampledSet, SupportCertificate, hull_member_batch, \
    strictly_interior, support_certificate
from .tolerances import DEFAULT_TOL, ToleranceProfile

DEFAULT_MIN_SPREAD_DEG = 150.0


@dataclass(frozen=True, eq=False)
class SphereSampling:
    """Finite set of distinct unit directions covering the sphere.

    ``resolution`` is the largest nearest-neighbor angle (radians): the
    lookup tolerance for direction-indexed tables.
    """

    ambient_dim: int
    directions: np.ndarray
    min_spread_deg: float = field(default=DEFAULT_MIN_SPREAD_DEG)

    def __post_init__(self):
        U = as_matrix(np.atleast_2d(np.asarray(self.directions, dtype=float)),
                      self.ambient_dim)
        if U.shape[0] == 0:
            raise InvariantViolationError("sampling needs at least one direction")
        norms = np.linalg.norm(U, axis=1)
        if np.max(np.abs(norms - 1.0)) > DEFAULT_TOL.tol_ortho:
            raise InvariantViolationError("directions must be unit length")
        U = U / norms[:, None]
        max_off, min_dot, row_max = _pairwise_dot_stats(U)
        if U.shape[0] > 1 and max_off > 1.0 - 1e-12:
            raise InvariantViolationError("directions must be pairwise distinct")
        if U.shape[0] > 1:
            spread = np.degrees(np.arccos(np.clip(min_dot, -1.0, 1.0)))
            if spread <= self.min_spread_deg:
                raise InvariantViolationError(
                    f"directions span only {spread:.1f} degrees; hemisphere-like "
                    f"samplings describe surfaces with boundary and are rejected")
        res = (float(np.max(np.arccos(np.clip(row_max, -1.0, 1.0))))
               if U.shape[0] > 1 else np.pi)
        U.setflags(write=False)
        object.__setattr__(self, "directions", U)
        object.__setattr__(self, "_resolution", res)

    @property
    def count(self) -> int:
        return self.directions.shape[0]

    @property
    def resolution(self) -> float:
        """Largest nearest-neighbor angle, in radians."""
        return self._resolution

    def nearest(self, y) -> int:
        v = as_vector(y, self.ambient_dim)
        return int(np.argmax(self.directions @ v))


def _pairwise_dot_stats(U: np.ndarray, chunk: int = 512):
    """(max off-diagonal dot, min dot, per-row max off-diagonal dot)."""
    m = U.shape[0]
    max_off = -np.inf
    min_dot = np.inf
    row_max = np.full(m, -np.inf)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        D = U[lo:hi] @ U.T
        rows = np.arange(lo, hi)
        D[rows - lo, rows] = -np.inf
        block_max = D.max(axis=1)
        row_max[lo:hi] = block_max
        if m > 1:
            max_off = max(max_off, float(block_max.max()))
            D[rows - lo, rows] = np.inf
            min_dot = min(min_dot, float(D.min()))
    return max_off, min_dot, row_max


def circle_directions(count: int) -> np.ndarray:
    ang = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    return np.c_[np.cos(ang), np.sin(ang)]


def fibonacci_sphere_directions(count: int) -> np.ndarray:
    """Near-uniform directions on the 2-sphere (golden-angle spiral)."""
    i = np.arange(count)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return np.c_[r * np.cos(phi), r * np.sin(phi), z]


def sampling_for_dim(dim: int, count: int,
                     rng: np.random.Generator | None = None) -> SphereSampling:
    """Convenience builder: angle grid in 2-D, fibonacci spiral in 3-D,
    seeded random directions above."""
    if dim == 2:
        return SphereSampling(2, circle_directions(count))
    if dim == 3:
        return SphereSampling(3, fibonacci_sphere_directions(count))
    if rng is None:
        rng = np.random.default_rng(0)
    from .randgen import unit_vectors
    return SphereSampling(dim, unit_vectors(rng, count, dim))


@dataclass(frozen=True, eq=False)
class SampledHypersurface:
    """Surface point table over a sphere sampling: points[i] lies on the ray
    of directions[i], with radii bounded away from zero."""

    sampling: SphereSampling
    points: np.ndarray

    def __post_init__(self):
        pts = as_matrix(np.atleast_2d(np.asarray(self.points, dtype=float)),
                        self.sampling.ambient_dim)
        if pts.shape[0] != self.sampling.count:
            raise InvariantViolationError("one surface point per direction required")
        radii = np.linalg.norm(pts, axis=1)
        if radii.min() <= 0.0:
            raise InvariantViolationError("surface radii must be strictly positive")
        off_ray = np.linalg.norm(pts - radii[:, None] * self.sampling.directions, axis=1)
        if np.max(off_ray) > DEFAULT_TOL.tol_fix * (1.0 + radii.max()):
            raise InvariantViolationError("points must lie on their direction rays")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def ambient_dim(self) -> int:
        return self.sampling.ambient_dim

    @property
    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.points, axis=1)

    @classmethod
    def from_radii(cls, sampling: SphereSampling, radii) -> "SampledHypersurface":
        r = np.asarray(radii, dtype=float).reshape(-1)
        return cls(sampling, r[:, None] * sampling.directions)


# ---------------------------------------------------------------------------
# ray-boundary intersection
# ---------------------------------------------------------------------------

# membership threshold inside the bisection: strict (1e-10 scale) so the
# intersection carries bisection accuracy, not membership slack
_RAY_TOL_MEM = 1e-10


def ray_boundary_intersections(b: ConvexBody, U, tol: ToleranceProfile | None = None
                               ) -> np.ndarray:
    """Boundary points t_i* u_i of the sample hull along the unit rows of U,
    relative to the body's interior point.

    t* is the supremum of hull-member parameters, bracketed by the sample
    norm bound and bisected to tol_fix / 4.
    """
    tol = tol if tol is not None else b.base.tol
    U = as_matrix(U, b.ambient_dim)
    norms = np.linalg.norm(U, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-9:
        raise PreconditionError("ray directions must be unit vectors")
    shifted = b.base.points - b.interior_point
    sset = SampledSet(b.ambient_dim, shifted, tol)
    radius = float(np.max(np.linalg.norm(shifted, axis=1)))
    strict = tol.with_overrides(tol_mem=_RAY_TOL_MEM)

    t_lo = np.zeros(U.shape[0])
    t_hi = np.full(U.shape[0], radius * (1.0 + 1e-6) + 1e-9)
    if hull_member_batch(sset, t_hi[:, None] * U, strict).any():
        raise InvariantViolationError(
            "a ray failed to exit within twice the sample norm bound")
    width = tol.tol_fix / 4.0
    steps = int(np.ceil(np.log2(max(t_hi.max() / width, 2.0)))) + 1
    for _ in range(steps):
        mid = 0.5 * (t_lo + t_hi)
        inside = hull_member_batch(sset, mid[:, None] * U, strict)
        t_lo = np.where(inside, mid, t_lo)
        t_hi = np.where(inside, t_hi, mid)
        if float(np.max(t_hi - t_lo)) <= width:
            break
    t_star = 0.5 * (t_lo + t_hi)
    return t_star[:, None] * U


def ray_boundary_intersection(b: ConvexBody, u, tol: ToleranceProfile | None = None
                              ) -> np.ndarray:
    """Single-ray version of ``ray_boundary_intersections``."""
    v = as_vector(u, b.ambient_dim)
    return ray_boundary_intersections(b, v[None, :], tol)[0]


def radial_homeo(b: ConvexBody, sampling: SphereSampling,
                 tol: ToleranceProfile | None = None) -> SampledHypersurface:
    """Radial boundary map of a bounded convex body.

    The body is translated so its interior point sits at the origin; the
    returned surface samples the boundary in that frame.  The inverse map
    is plain normalization: direction_of(point) recovers the sphere point.
    """
    pts = ray_boundary_intersections(b, sampling.directions, tol)
    return SampledHypersurface(sampling, pts)


def direction_of(z) -> np.ndarray:
    """Inverse of the radial map: the unit direction of a boundary point."""
    v = as_vector(z)
    nz = np.linalg.norm(v)
    if nz <= 0.0:
        raise PreconditionError("the origin has no direction")
    return v / nz


# ---------------------------------------------------------------------------
# the annulus extension psi and its inverse
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RadialMapTable:
    """Radial boundary norms of a normalized convex body, per direction.

    The body is rescaled so that the smallest sampled boundary norm equals
    2 * (1 + tol_mem); every gamma_norm then exceeds 2, the normalization
    the annulus formulas require.  ``scale`` converts body-frame lengths to
    normalized lengths.
    """

    sampling: SphereSampling
    gamma_norms: np.ndarray
    body_ref: ConvexBody
    scale: float

    def __post_init__(self):
        g = np.asarray(self.gamma_norms, dtype=float).reshape(-1)
        if g.size != self.sampling.count:
            raise InvariantViolationError("one gamma norm per direction required")
        if not np.all(g > 2.0):
            raise InvariantViolationError("gamma norms must exceed 2")
        g.setflags(write=False)
        object.__setattr__(self, "gamma_norms", g)

    @classmethod
    def from_body(cls, b: ConvexBody, sampling: SphereSampling,
                  tol: ToleranceProfile | None = None) -> "RadialMapTable":
        tol = tol if tol is not None else b.base.tol
        pts = ray_boundary_intersections(b, sampling.directions, tol)
        norms = np.linalg.norm(pts, axis=1)
        scale = 2.0 * (1.0 + tol.tol_mem) / float(norms.min())
        return cls(sampling, norms * scale, b, scale)

    def to_normalized(self, x) -> np.ndarray:
        """Body-frame point -> normalized frame (interior point to origin)."""
        v = as_vector(x, self.sampling.ambient_dim)
        return (v - self.body_ref.interior_point) * self.scale

    def from_normalized(self, y) -> np.ndarray:
        v = as_vector(y, self.sampling.ambient_dim)
        return v / self.scale + self.body_ref.interior_point

    def gamma_at(self, y, max_angle: float | None = None) -> tuple[int, float]:
        """Nearest stored direction index and its gamma norm.

        Rejects directions farther than the sampling resolution (or the
        given angle bound) from every stored direction.
        """
        v = as_vector(y, self.sampling.ambient_dim)
        nv = np.linalg.norm(v)
        if nv <= 0.0:
            raise PreconditionError("direction lookup needs a nonzero vector")
        i = self.sampling.nearest(v / nv)
        cosang = float(np.clip(self.sampling.directions[i] @ (v / nv), -1.0, 1.0))
        bound = max_angle if max_angle is not None else self.sampling.resolution
        if np.arccos(cosang) > bound + 1e-12:
            raise PreconditionError("direction is outside the sampling resolution")
        return i, float(self.gamma_norms[i])


def psi_extend(t: RadialMapTable, y, max_angle: float | None = None) -> np.ndarray:
    """Extension of the boundary homeomorphism to the radius-2 sphere.

    Inside the unit sphere psi is the identity (0 maps to 0); on the
    annulus 1 <= |y| <= 2 it blends the unit direction with the boundary
    image:  psi(y) = (|y| - 1) gamma(y) + (2 - |y|) y / |y|.
    """
    v = as_vector(y, t.sampling.ambient_dim)
    r = float(np.linalg.norm(v))
    if r > 2.0 * (1.0 + 1e-12):
        raise PreconditionError("psi is defined on the radius-2 sphere only")
    if r < 1.0:
        return v.copy()
    i, gnorm = t.gamma_at(v, max_angle)
    gamma_vec = gnorm * t.sampling.directions[i]
    return (r - 1.0) * gamma_vec + (2.0 - r) * (v / r)


def psi_inverse(t: RadialMapTable, z, max_angle: float | None = None) -> np.ndarray:
    """Inverse of psi on the annulus image:
    psi_inv(z) = z/|z| * (1 + (|z| - 1) / (|gamma(z)| - 1)); identity inside
    the unit sphere.  Rejects points beyond the boundary image."""
    v = as_vector(z, t.sampling.ambient_dim)
    r = float(np.linalg.norm(v))
    if r < 1.0:
        return v.copy()
    i, gnorm = t.gamma_at(v, max_angle)
    if r > gnorm * (1.0 + 1e-9):
        raise PreconditionError("point lies outside the boundary image")
    return (v / r) * (1.0 + (r - 1.0) / (gnorm - 1.0))


# ---------------------------------------------------------------------------
# convexification
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConvexifyResult:
    omega: SampledHypersurface
    correspondence: tuple[tuple[int, int], ...]


def _interior_point_for(pts: np.ndarray, tol: ToleranceProfile) -> np.ndarray:
    """Centroid, falling back to the deepest probe point under the sampled
    support half-spaces when the centroid fails the interiority test."""
    s = SampledSet(pts.shape[1], pts, tol)
    centroid = pts.mean(axis=0)
    if strictly_interior(s, centroid):
        return centroid
    rng = np.random.default_rng(0)
    cands = [centroid]
    for _ in range(64):
        w = rng.dirichlet(np.ones(pts.shape[0]))
        cands.append(w @ pts)
    dirs = pts - centroid
    norms = np.linalg.norm(dirs, axis=1)
    dirs = dirs[norms > 1e-12] / norms[norms > 1e-12][:, None]
    h = np.max(dirs @ pts.T, axis=1)  # support values along sampled directions
    best, best_slack = None, -np.inf
    for cand in cands:
        slack = float(np.min(h - dirs @ cand))
        if slack > best_slack:
            best, best_slack = cand, slack
    if best is None or not strictly_interior(s, best):
        raise PreconditionError("no valid hull-interior point found")
    return best


def convexify(phi: SampledHypersurface,
              tol: ToleranceProfile | None = None) -> ConvexifyResult:
    """Boundary of the convex hull of the sampled surface, on the same rays.

    Each output point is the ray-boundary intersection of the hull along
    the input direction; the identity index pairing realizes the
    homeomorphism between the surface and its convexification through the
    shared sphere parameterization.
    """
    tol = tol if tol is not None else DEFAULT_TOL
    if affine_hull_dim(phi.points, tol) < phi.ambient_dim:
        raise PreconditionError("surface hull is degenerate (affine dim < ambient)")
    interior = _interior_point_for(phi.points, tol)
    body = ConvexBody(SampledSet(phi.ambient_dim, phi.points, tol), interior)
    s = body.base
    if not strictly_interior(s, np.zeros(phi.ambient_dim)):
        raise PreconditionError("surface hull does not enclose the origin")
    # rays are cast from the origin so omega stays radial on phi's sampling
    origin_body = ConvexBody(s, np.zeros(phi.ambient_dim))
    pts = ray_boundary_intersections(origin_body, phi.sampling.directions, tol)
    omega = SampledHypersurface(phi.sampling, pts)
    corr = tuple((i, i) for i in range(phi.sampling.count))
    return ConvexifyResult(omega, corr)


@dataclass(frozen=True)
class SurfaceConvexityReport:
    certificates: tuple[SupportCertificate | None, ...]
    failing: tuple[int, ...]
    convex: bool

    def __bool__(self) -> bool:
        return self.convex


def is_convex_hypersurface(phi: SampledHypersurface,
                           tol: ToleranceProfile | None = None) -> SurfaceConvexityReport:
    """A surface is convex when it has support at every sampled point."""
    tol = tol if tol is not None else DEFAULT_TOL
    s = SampledSet(phi.ambient_dim, phi.points, tol)
    certs: list[SupportCertificate | None] = []
    failing: list[int] = []
    for i, p in enumerate(phi.points):
        cert = support_certificate(s, p)
        certs.append(cert)
        if cert is None:
            failing.append(i)
    return SurfaceConvexityReport(tuple(certs), tuple(failing), not failing)


def affine_extension_check(phi: SampledHypersurface,
                           tol: ToleranceProfile | None = None) -> bool:
    """Full-dimensionality of the affine hull of a convex hypersurface
    (callers ensure convexity first); False flags a surface that cannot be
    a valid convex hypersurface of its labeled ambient space."""
    tol = tol if tol is not None else DEFAULT_TOL
    return affine_hull_dim(phi.points, tol) == phi.ambient_dim
