"""Support analysis for sampled closed sets.

A closed set is represented by a finite sample of points.  Tangent cones
are conical hulls of sample differences, normal cones their polars, and a
support certificate at x is a unit normal whose half-space through x
contains every sample.  Hull membership rides on the cone machinery via
the classic lift: x is in conv(P) exactly when (x, 1) is in the cone
spanned by {(p, 1)}, which keeps one feasibility kernel for everything.
"""

import weakref
from dataclasses import dataclass, field

import numpy as np

from .cone import (
    HalfspaceCone,
    PolyhedralCone,
    cone_member_batch,
    is_pointed,
    is_proper,
)
from .errors import IndeterminateResultError, InvariantViolationError, PreconditionError
from .linalg import as_matrix, as_vector
from .solvers import min_norm_point
from .tolerances import DEFAULT_TOL, ToleranceProfile


@dataclass(frozen=True, eq=False)
class SampledSet:
    """Finite sample standing in for a closed set."""

    ambient_dim: int
    points: np.ndarray
    tol: ToleranceProfile = field(default=DEFAULT_TOL)

    def __post_init__(self):
        pts = as_matrix(np.atleast_2d(np.asarray(self.points, dtype=float)),
                        self.ambient_dim)
        if pts.shape[0] == 0:
            raise InvariantViolationError("a sampled set needs at least one point")
        _check_distinct(pts, self.tol.tol_fix)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points, tol: ToleranceProfile = DEFAULT_TOL) -> "SampledSet":
        pts = as_matrix(points)
        return cls(pts.shape[1], pts, tol)


def _check_distinct(pts: np.ndarray, tol_fix: float, chunk: int = 512):
    n = pts.shape[0]
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        d2 = np.sum((pts[lo:hi, None, :] - pts[None, :, :]) ** 2, axis=2)
        rows = np.arange(lo, hi)
        d2[rows - lo, rows] = np.inf
        if np.any(d2 < tol_fix * tol_fix):
            raise InvariantViolationError("duplicate sample points within tol_fix")


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """Sampled set together with a designated hull-interior point."""

    base: SampledSet
    interior_point: np.ndarray

    def __post_init__(self):
        p = as_vector(self.interior_point, self.base.ambient_dim)
        p.setflags(write=False)
        object.__setattr__(self, "interior_point", p)
        tol = self.base.tol
        delta = 100.0 * tol.tol_mem
        eye = np.eye(self.base.ambient_dim)
        probes = np.vstack([p + delta * eye, p - delta * eye])
        if not hull_member_batch(self.base, probes).all():
            raise InvariantViolationError(
                "interior_point is not interior to the sample hull")

    @property
    def ambient_dim(self) -> int:
        return self.base.ambient_dim


@dataclass(frozen=True, eq=False)
class SupportCertificate:
    """Boundary point with a validated outward normal.

    slack is the largest inner product <normal, c - point> over the samples
    and may not exceed tol_mem.
    """

    point: np.ndarray
    normal: np.ndarray
    slack: float

    def __post_init__(self):
        p = as_vector(self.point)
        f = as_vector(self.normal, p.size)
        if abs(np.linalg.norm(f) - 1.0) > DEFAULT_TOL.tol_ortho:
            raise InvariantViolationError("certificate normal must be unit length")
        if self.slack > DEFAULT_TOL.tol_mem:
            raise InvariantViolationError("certificate slack exceeds tol_mem")
        p.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "normal", f)


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    point: np.ndarray
    certificate: SupportCertificate | None
    distance: float


# ---------------------------------------------------------------------------
# hull membership via the cone lift
# ---------------------------------------------------------------------------

_LIFTED: "weakref.WeakKeyDictionary[SampledSet, PolyhedralCone]" = weakref.WeakKeyDictionary()


def _lifted_cone(s: SampledSet) -> PolyhedralCone:
    c = _LIFTED.get(s)
    if c is None:
        lifted = np.hstack([s.points, np.ones((s.points.shape[0], 1))])
        c = PolyhedralCone(s.ambient_dim + 1, lifted)
        _LIFTED[s] = c
    return c


def hull_member(s: SampledSet, x, tol: ToleranceProfile | None = None) -> bool:
    return bool(hull_member_batch(s, np.atleast_2d(as_vector(x, s.ambient_dim)), tol)[0])


def hull_member_batch(s: SampledSet, X, tol: ToleranceProfile | None = None) -> np.ndarray:
    """Convex hull membership for the rows of X (lifted cone residual)."""
    tol = tol if tol is not None else s.tol
    X = as_matrix(X, s.ambient_dim)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    lifted = np.hstack([X, np.ones((X.shape[0], 1))])
    return cone_member_batch(_lifted_cone(s), lifted, tol)


def strictly_interior(s: SampledSet, x, delta: float | None = None) -> bool:
    """Probe test for hull interiority: x +- delta e_i must all be members."""
    v = as_vector(x, s.ambient_dim)
    if delta is None:
        delta = 100.0 * s.tol.tol_mem
    eye = np.eye(s.ambient_dim)
    probes = np.vstack([v + delta * eye, v - delta * eye])
    return bool(hull_member_batch(s, probes).all())


def boundary_indices(s: SampledSet, delta: float | None = None) -> list[int]:
    """Indices of sample points that fail the strict-interior probe test."""
    return [i for i, p in enumerate(s.points) if not strictly_interior(s, p, delta)]


# ---------------------------------------------------------------------------
# tangent/normal cones and support
# ---------------------------------------------------------------------------

def _match_sample(s: SampledSet, x) -> int:
    v = as_vector(x, s.ambient_dim)
    d = np.linalg.norm(s.points - v, axis=1)
    i = int(np.argmin(d))
    if d[i] > s.tol.tol_fix:
        raise PreconditionError("point is not part of the sample")
    return i


def tangent_cone(s: SampledSet, x) -> PolyhedralCone:
    """Conical hull of the sample differences c - x (x must be a sample
    point; coincident samples are excluded from the generator list)."""
    i = _match_sample(s, x)
    base = s.points[i]
    diffs = s.points - base
    keep = np.linalg.norm(diffs, axis=1) > s.tol.tol_fix
    return PolyhedralCone(s.ambient_dim, diffs[keep])


def normal_cone(s: SampledSet, x) -> HalfspaceCone:
    """Polar of the tangent cone: {f : <f, c - x> <= 0 for all samples}."""
    t = tangent_cone(s, x)
    return HalfspaceCone(s.ambient_dim, t.generators.copy())


def is_extreme_point(s: SampledSet, x) -> bool:
    """Extreme exactly when the tangent cone is pointed."""
    return is_pointed(tangent_cone(s, x), s.tol)


def support_certificate(s: SampledSet, x) -> SupportCertificate | None:
    """Unit normal supporting the sample at x, when one exists.

    Runs the properness certificate of the tangent cone; existence is
    equivalent to the tangent cone being proper (pointed, or non-pointed
    with a proper lineality).
    """
    i = _match_sample(s, x)
    t = tangent_cone(s, x)
    f = is_proper(t, s.tol)
    if f is None:
        return None
    base = s.points[i]
    slack = float(np.max((s.points - base) @ f))
    return SupportCertificate(base, f, slack)


def project_onto_hull(b: ConvexBody, y) -> ProjectionResult:
    """Minimum-distance point of conv(samples) from y.

    Inside points come back unchanged with no certificate.  Outside, the
    minimum-norm point of the shifted sample hull is computed and validated
    against the variational inequality <y - p, c - p> <= tol for all c.
    """
    s = b.base
    v = as_vector(y, s.ambient_dim)
    if hull_member(s, v):
        return ProjectionResult(v, None, 0.0)
    tol = s.tol
    x_mn, _ = min_norm_point(s.points - v, max_iter=tol.max_iter)
    p = v + x_mn
    dist = float(np.linalg.norm(v - p))
    gap = float(np.max((s.points - p) @ (v - p)))
    if gap > tol.tol_mem * (1.0 + dist):
        raise IndeterminateResultError(
            f"projection failed the variational inequality "
            f"(gap {gap:.3e} at distance {dist:.3e})")
    f = (v - p) / dist
    slack = float(np.max((s.points - p) @ f))
    return ProjectionResult(p, SupportCertificate(p, f, slack), dist)


# ---------------------------------------------------------------------------
# applied normal fan
# ---------------------------------------------------------------------------

def is_anf_witness(s: SampledSet, x, z, cover_slack: float = 0.0) -> bool:
    """True when z lies in x + N(x): <z - x, c - x> below tolerance for all
    samples c.  ``cover_slack`` widens the tolerance to absorb sampling
    resolution; zero displacement (z == x) always passes."""
    xv = as_vector(x, s.ambient_dim)
    zv = as_vector(z, s.ambient_dim)
    d = zv - xv
    thr = (s.tol.tol_mem + cover_slack) * (1.0 + np.linalg.norm(d))
    return bool(np.max((s.points - xv) @ d) <= thr)


def anf_membership(s: SampledSet, z, cover_slack: float = 0.0):
    """Sample point x with z in x + N(x), or None.

    Ties resolve to the witness closest to z, then to the lowest sample
    index.  Returns (index, point) or None.
    """
    zv = as_vector(z, s.ambient_dim)
    pts = s.points
    zp = pts @ zv
    pp = pts @ pts.T
    diag = np.diag(pp)
    # slack[i] = max_c <z - p_i, p_c - p_i>
    slack = np.max(zp[None, :] - zp[:, None] - pp + diag[:, None], axis=1)
    dists = np.linalg.norm(pts - zv, axis=1)
    thr = (s.tol.tol_mem + cover_slack) * (1.0 + dists)
    ok = slack <= thr
    if not ok.any():
        return None
    cand = np.flatnonzero(ok)
    best = cand[np.lexsort((cand, dists[cand]))][0]
    # prefer the lowest index among witnesses within tol_fix of the best distance
    near = cand[dists[cand] <= dists[best] + s.tol.tol_fix]
    idx = int(near.min())
    return idx, pts[idx].copy()


@dataclass(frozen=True)
class DisjointnessReport:
    disjoint: bool
    strict_violations: tuple[int, ...]
    ties: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.disjoint


def translated_normal_cones_disjoint(s: SampledSet, x1, x2, probes) -> DisjointnessReport:
    """Check that no probe sits strictly inside both translated normal
    cones x1 + N(x1) and x2 + N(x2).

    Probes that belong to both cones only within the tolerance band are
    reported as ties but do not count as violations.
    """
    p1 = as_vector(x1, s.ambient_dim)
    p2 = as_vector(x2, s.ambient_dim)
    if np.linalg.norm(p1 - p2) <= s.tol.tol_fix:
        raise PreconditionError("x1 and x2 must be distinct support points")
    for p in (p1, p2):
        if support_certificate(s, p) is None:
            raise PreconditionError("both points must be support points")
    X = as_matrix(probes, s.ambient_dim)
    tol_mem = s.tol.tol_mem
    strict: list[int] = []
    ties: list[int] = []
    for i, z in enumerate(X):
        slacks = []
        for p in (p1, p2):
            d = z - p
            scale = 1.0 + np.linalg.norm(d)
            slacks.append(float(np.max((s.points - p) @ d)) / scale)
        if all(sl < -tol_mem for sl in slacks):
            strict.append(i)
        elif all(sl <= tol_mem for sl in slacks):
            ties.append(i)
    return DisjointnessReport(not strict, tuple(strict), tuple(ties))


# ---------------------------------------------------------------------------
# convexity checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BodyPointEntry:
    index: int
    point: np.ndarray
    certificate: SupportCertificate | None


@dataclass(frozen=True)
class BodyConvexityReport:
    entries: tuple[BodyPointEntry, ...]
    all_certified: bool
    containment_ok: bool
    deficit_probes: tuple[int, ...]
    convex_consistent: bool

    def __bool__(self) -> bool:
        return self.convex_consistent


def convexity_check_body(b: ConvexBody, boundary_sample, probes=None) -> BodyConvexityReport:
    """Body convexity check: every boundary point must certify and every
    sample must satisfy every certified half-space.

    Optional probes are tested against the intersection of the certified
    half-spaces; probes inside the intersection but outside the hull are
    reported as deficits (holes the half-space description cannot see).
    """
    s = b.base
    pts = as_matrix(boundary_sample, s.ambient_dim)
    entries: list[BodyPointEntry] = []
    certs: list[SupportCertificate] = []
    for i, x in enumerate(pts):
        if strictly_interior(s, x):
            raise PreconditionError(
                f"boundary_sample[{i}] passes the strict-interior probe test")
        cert = support_certificate(s, x)
        entries.append(BodyPointEntry(i, x, cert))
        if cert is not None:
            certs.append(cert)
    all_certified = all(e.certificate is not None for e in entries)
    containment_ok = True
    for cert in certs:
        if float(np.max((s.points - cert.point) @ cert.normal)) > s.tol.tol_mem:
            containment_ok = False
            break
    deficits: list[int] = []
    if probes is not None:
        X = as_matrix(probes, s.ambient_dim)
        if X.shape[0]:
            inside_all = np.ones(X.shape[0], dtype=bool)
            for cert in certs:
                slack = (X - cert.point) @ cert.normal
                thr = s.tol.tol_mem * (1.0 + np.linalg.norm(X - cert.point, axis=1))
                inside_all &= slack <= thr
            hull = hull_member_batch(s, X)
            deficits = [int(i) for i in np.flatnonzero(inside_all & ~hull)]
    verdict = all_certified and containment_ok
    return BodyConvexityReport(tuple(entries), all_certified, containment_ok,
                               tuple(deficits), verdict)


@dataclass(frozen=True)
class AnfProbeEntry:
    index: int
    probe: np.ndarray
    in_hull: bool
    witness_index: int | None


@dataclass(frozen=True)
class AnfCoverageReport:
    entries: tuple[AnfProbeEntry, ...]
    uncovered: tuple[int, ...]
    cover_slack: float
    anf_covered: bool

    def __bool__(self) -> bool:
        return self.anf_covered


def sampling_resolution(s: SampledSet) -> float:
    """Largest nearest-neighbor gap in the sample."""
    pts = s.points
    if pts.shape[0] < 2:
        return 0.0
    d2 = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=2)
    np.fill_diagonal(d2, np.inf)
    return float(np.sqrt(d2.min(axis=1).max()))


def convexity_check_anf(s: SampledSet, outside_probes,
                        cover_slack: float | None = None) -> AnfCoverageReport:
    """Convexity criterion for sets without interior: every probe outside
    the hull must lie in some translated normal cone x + N(x).

    ``cover_slack`` defaults to the sampling resolution (largest
    nearest-neighbor gap), the allowance a finite sample needs before the
    covering theorem can hold; the paper-level criterion has slack zero.
    """
    X = as_matrix(outside_probes, s.ambient_dim)
    _check_probe_distinct(X, s.tol.tol_fix)
    if cover_slack is None:
        cover_slack = sampling_resolution(s)
    hull = hull_member_batch(s, X)
    entries: list[AnfProbeEntry] = []
    uncovered: list[int] = []
    for i, z in enumerate(X):
        if hull[i]:
            entries.append(AnfProbeEntry(i, z, True, None))
            continue
        hit = anf_membership(s, z, cover_slack)
        widx = None if hit is None else hit[0]
        if hit is None:
            uncovered.append(i)
        entries.append(AnfProbeEntry(i, z, False, widx))
    return AnfCoverageReport(tuple(entries), tuple(uncovered), float(cover_slack),
                             not uncovered)


def _check_probe_distinct(X: np.ndarray, tol_fix: float):
    if X.shape[0] < 2:
        return
    d2 = np.sum((X[:, None, :] - X[None, :, :]) ** 2, axis=2)
    np.fill_diagonal(d2, np.inf)
    if np.any(d2 < tol_fix * tol_fix):
        raise PreconditionError("probes must be pairwise distinct")
