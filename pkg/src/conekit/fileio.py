"""Text fixture formats.

All formats are line-oriented, whitespace-separated decimals with ``#``
comments, and start with ``dim d``:

cone file            one generator per line
structured cone      ``[lineality]`` and ``[pointed]`` sections of vector lines
point cloud          one point per line; optional ``interior x1 .. xd`` line
hypersurface         rows ``u1 .. ud r`` (unit direction and radius)

Writers emit full-precision decimals so a round trip reproduces the data
exactly; readers re-validate every type invariant.
"""

import numpy as np

from .cone import PolyhedralCone, StructuredCone
from .errors import ParseError
from .hypersurface import SampledHypersurface, SphereSampling
from .linalg import orthonormalize
from .reporting import fmt
from .support import ConvexBody, SampledSet
from .tolerances import DEFAULT_TOL, ToleranceProfile


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_dim(lines) -> int:
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise ParseError("empty file")
    parts = first.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise ParseError(f"line {lineno}: expected 'dim d', got {first!r}")
    try:
        dim = int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: dimension is not an integer")
    if dim < 1:
        raise ParseError(f"line {lineno}: dimension must be positive")
    return dim


def _parse_floats(lineno: int, line: str, expect: int) -> np.ndarray:
    parts = line.split()
    if len(parts) != expect:
        raise ParseError(f"line {lineno}: expected {expect} numbers, got {len(parts)}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise ParseError(f"line {lineno}: malformed number")


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

def parse_cone(text: str) -> PolyhedralCone:
    lines = _content_lines(text)
    dim = _parse_dim(lines)
    rows = [_parse_floats(no, line, dim) for no, line in lines]
    gens = np.array(rows) if rows else np.zeros((0, dim))
    return PolyhedralCone(dim, gens)


def read_cone(path) -> PolyhedralCone:
    with open(path) as fh:
        return parse_cone(fh.read())


def write_vector_file(path, dim: int, rows, comment: str | None = None) -> None:
    """``dim d`` header plus one vector per line (cone-file layout)."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"dim {dim}")
    for g in np.atleast_2d(np.asarray(rows, dtype=float)) if np.size(rows) else []:
        lines.append(" ".join(fmt(c) for c in g))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_cone(path, cone: PolyhedralCone, comment: str | None = None) -> None:
    write_vector_file(path, cone.ambient_dim, cone.generators, comment)


def parse_structured_cone(text: str, tol: ToleranceProfile = DEFAULT_TOL) -> StructuredCone:
    lines = _content_lines(text)
    dim = _parse_dim(lines)
    section = None
    lin_rows: list[np.ndarray] = []
    pointed_rows: list[np.ndarray] = []
    for no, line in lines:
        if line == "[lineality]":
            section = "lineality"
            continue
        if line == "[pointed]":
            section = "pointed"
            continue
        if section is None:
            raise ParseError(f"line {no}: vector outside of a section")
        row = _parse_floats(no, line, dim)
        (lin_rows if section == "lineality" else pointed_rows).append(row)
    lineality = orthonormalize(lin_rows, tol, ambient_dim=dim)
    pointed = np.array(pointed_rows) if pointed_rows else np.zeros((0, dim))
    return StructuredCone(lineality, pointed)


def read_structured_cone(path, tol: ToleranceProfile = DEFAULT_TOL) -> StructuredCone:
    with open(path) as fh:
        return parse_structured_cone(fh.read(), tol)


def write_structured_cone(path, s: StructuredCone, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"dim {s.ambient_dim}")
    lines.append("[lineality]")
    for b in s.lineality.basis:
        lines.append(" ".join(fmt(c) for c in b))
    lines.append("[pointed]")
    for g in s.pointed_generators:
        lines.append(" ".join(fmt(c) for c in g))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# point clouds
# ---------------------------------------------------------------------------

def parse_point_cloud(text: str, tol: ToleranceProfile = DEFAULT_TOL):
    """Returns (SampledSet, interior_point or None)."""
    lines = _content_lines(text)
    dim = _parse_dim(lines)
    rows: list[np.ndarray] = []
    interior = None
    for no, line in lines:
        if line.startswith("interior"):
            rest = line[len("interior"):].strip()
            interior = _parse_floats(no, rest, dim)
            continue
        rows.append(_parse_floats(no, line, dim))
    if not rows:
        raise ParseError("point cloud has no points")
    return SampledSet(dim, np.array(rows), tol), interior


def read_point_cloud(path, tol: ToleranceProfile = DEFAULT_TOL):
    with open(path) as fh:
        return parse_point_cloud(fh.read(), tol)


def read_convex_body(path, tol: ToleranceProfile = DEFAULT_TOL) -> ConvexBody:
    s, interior = read_point_cloud(path, tol)
    if interior is None:
        raise ParseError(f"{path}: point cloud has no 'interior' line")
    return ConvexBody(s, interior)


def write_point_cloud(path, s: SampledSet, interior=None,
                      comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"dim {s.ambient_dim}")
    if interior is not None:
        lines.append("interior " + " ".join(fmt(c) for c in np.asarray(interior)))
    for p in s.points:
        lines.append(" ".join(fmt(c) for c in p))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# hypersurfaces
# ---------------------------------------------------------------------------

def parse_hypersurface(text: str,
                       min_spread_deg: float | None = None) -> SampledHypersurface:
    lines = _content_lines(text)
    dim = _parse_dim(lines)
    dirs: list[np.ndarray] = []
    radii: list[float] = []
    for no, line in lines:
        row = _parse_floats(no, line, dim + 1)
        dirs.append(row[:dim])
        radii.append(float(row[dim]))
    if not dirs:
        raise ParseError("hypersurface has no direction rows")
    kwargs = {} if min_spread_deg is None else {"min_spread_deg": min_spread_deg}
    sampling = SphereSampling(dim, np.array(dirs), **kwargs)
    return SampledHypersurface.from_radii(sampling, np.array(radii))


def read_hypersurface(path, min_spread_deg: float | None = None) -> SampledHypersurface:
    with open(path) as fh:
        return parse_hypersurface(fh.read(), min_spread_deg)


def write_hypersurface(path, phi: SampledHypersurface,
                       comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"dim {phi.ambient_dim}")
    radii = phi.radii
    for u, r in zip(phi.sampling.directions, radii):
        lines.append(" ".join(fmt(c) for c in u) + " " + fmt(r))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
