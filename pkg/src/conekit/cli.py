"""Command-line front end.

One command per process; every artifact (human report, machine records,
plot tables, output fixtures) lands in the output directory.  All
randomness derives from the single --seed through PCG64, so identical
configurations produce byte-identical artifacts.

Exit codes: 0 success, 1 negative verdict (e.g. not convex), 2 parse
error, 3 invariant/precondition violation, 4 indeterminate numerics.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fileio
from .cone import (
    decompose,
    default_probes,
    flatten_structured,
    polar,
    polar_generators,
    cone_member_batch,
    structured_member_batch,
)
from .errors import (
    ConekitError,
    DimensionMismatchError,
    IndeterminateResultError,
    InvariantViolationError,
    ParseError,
    PreconditionError,
)
from .hypersurface import (
    RadialMapTable,
    convexify,
    is_convex_hypersurface,
    affine_extension_check,
    psi_extend,
    psi_inverse,
    radial_homeo,
    sampling_for_dim,
)
from .randgen import GENERATOR_NAME, make_rng, unit_vectors
from .reporting import fmt, fmt_h, record_line, write_csv, write_lines, write_records
from .support import (
    boundary_indices,
    convexity_check_anf,
    convexity_check_body,
    hull_member_batch,
    is_extreme_point,
    project_onto_hull,
    strictly_interior,
    support_certificate,
)
from .tolerances import DEFAULT_TOL, ToleranceProfile

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_INDETERMINATE = 4

ENV_PREFIX = "CONEKIT_"

COMMANDS = ("decompose", "polar", "support", "project", "convexity-body",
            "convexity-anf", "ray-map", "psi-check", "convexify", "report")


@dataclass
class RunConfig:
    command: str
    input_paths: list[str]
    seed: int = 0
    probe_count: int = 1000
    directions: int = 64
    output_dir: str = "out"
    tol: ToleranceProfile = field(default=DEFAULT_TOL)


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise ParseError(f"environment variable {ENV_PREFIX + name} is not a valid {cast.__name__}")


def build_config(argv) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="conekit",
        description="Convex cone calculus, support certification, and "
                    "convex hypersurface tools.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("inputs", nargs="+", help="input fixture files")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--probes", type=int, default=None)
        p.add_argument("--directions", type=int, default=None)
        p.add_argument("--tol-mem", type=float, default=None)
        p.add_argument("--tol-ortho", type=float, default=None)
        p.add_argument("--tol-rank", type=float, default=None)
        p.add_argument("--tol-fix", type=float, default=None)
        p.add_argument("--max-iter", type=int, default=None)
    ns = parser.parse_args(argv)

    def pick(value, env_name, cast, fallback):
        if value is not None:
            return value
        return _env_default(env_name, cast, fallback)

    tol = ToleranceProfile(
        tol_mem=pick(ns.tol_mem, "TOL_MEM", float, DEFAULT_TOL.tol_mem),
        tol_ortho=pick(ns.tol_ortho, "TOL_ORTHO", float, DEFAULT_TOL.tol_ortho),
        tol_rank=pick(ns.tol_rank, "TOL_RANK", float, DEFAULT_TOL.tol_rank),
        tol_fix=pick(ns.tol_fix, "TOL_FIX", float, DEFAULT_TOL.tol_fix),
        max_iter=pick(ns.max_iter, "MAX_ITER", int, DEFAULT_TOL.max_iter),
    )
    return RunConfig(
        command=ns.command,
        input_paths=list(ns.inputs),
        seed=pick(ns.seed, "SEED", int, 0),
        probe_count=pick(ns.probes, "PROBES", int, 1000),
        directions=pick(ns.directions, "DIRECTIONS", int, 64),
        output_dir=pick(ns.out, "OUT", str, "out"),
        tol=tol,
    )


def _header(cfg: RunConfig) -> list[str]:
    t = cfg.tol
    return [
        f"conekit {cfg.command}",
        "inputs: " + " ".join(cfg.input_paths),
        f"seed: {cfg.seed} ({GENERATOR_NAME})",
        f"probes: {cfg.probe_count}",
        f"directions: {cfg.directions}",
        ("tolerances: "
         f"tol_mem={fmt(t.tol_mem)} tol_ortho={fmt(t.tol_ortho)} "
         f"tol_rank={fmt(t.tol_rank)} tol_fix={fmt(t.tol_fix)} "
         f"max_iter={t.max_iter}"),
        "",
    ]


def run(cfg: RunConfig) -> int:
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    handler = _HANDLERS[cfg.command]
    try:
        return handler(cfg, outdir)
    except ParseError as exc:
        _emit_error(cfg, outdir, "parse error", exc)
        return EXIT_PARSE
    except (InvariantViolationError, PreconditionError, DimensionMismatchError) as exc:
        _emit_error(cfg, outdir, "invariant violation", exc)
        return EXIT_INVARIANT
    except IndeterminateResultError as exc:
        _emit_error(cfg, outdir, "indeterminate result", exc)
        return EXIT_INDETERMINATE
    except OSError as exc:
        _emit_error(cfg, outdir, "io error", exc)
        return EXIT_PARSE


def _emit_error(cfg: RunConfig, outdir: Path, kind: str, exc: Exception):
    lines = _header(cfg) + [f"error: {kind}", f"detail: {exc}"]
    write_lines(outdir / "report.txt", lines)
    print(f"conekit {cfg.command}: {kind}: {exc}", file=sys.stderr)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_decompose(cfg: RunConfig, outdir: Path) -> int:
    c = fileio.read_cone(cfg.input_paths[0])
    s = decompose(c, cfg.tol)
    rng = make_rng(cfg.seed)
    probes = default_probes(c.ambient_dim, c.generators, rng, cfg.probe_count)
    ma = cone_member_batch(c, probes, cfg.tol)
    mb = structured_member_batch(s, probes, cfg.tol)
    agree = int(np.sum(ma == mb))

    fileio.write_structured_cone(outdir / "structured.cone", s,
                                 comment="lineality + pointed decomposition")
    records = [{"record": "lineality", "index": i, "vector": b}
               for i, b in enumerate(s.lineality.basis)]
    records += [{"record": "pointed", "index": i, "vector": g}
                for i, g in enumerate(s.pointed_generators)]
    records.append({"record": "probe_agreement", "agree": agree,
                    "total": probes.shape[0]})
    write_records(outdir / "records.txt", records)

    lines = _header(cfg)
    lines.append(f"generators: {c.generators.shape[0]} in dim {c.ambient_dim}")
    lines.append(f"lineality rank: {s.lineality.rank}")
    for b in s.lineality.basis:
        lines.append("  basis " + " ".join(fmt_h(x) for x in b))
    lines.append(f"pointed generators: {s.pointed_generators.shape[0]}")
    for g in s.pointed_generators:
        lines.append("  gen " + " ".join(fmt_h(x) for x in g))
    lines.append(f"membership round trip: {agree}/{probes.shape[0]} probes agree")
    write_lines(outdir / "report.txt", lines)

    if 2 <= c.ambient_dim <= 3:
        write_csv(outdir / "input_generators.csv", c.generators)
        write_csv(outdir / "lineality_basis.csv", s.lineality.basis)
        write_csv(outdir / "pointed_generators.csv", s.pointed_generators)
    return EXIT_OK if agree == probes.shape[0] else EXIT_NEGATIVE


def _cmd_polar(cfg: RunConfig, outdir: Path) -> int:
    c = fileio.read_cone(cfg.input_paths[0])
    h = polar(c)
    fileio.write_vector_file(outdir / "polar.cone", h.ambient_dim, h.normals,
                             comment="polar cone normals (H-representation)")
    records = [{"record": "normal", "index": i, "vector": nrm}
               for i, nrm in enumerate(h.normals)]
    lines = _header(cfg)
    lines.append(f"polar of {c.generators.shape[0]} generators in dim {c.ambient_dim}")
    lines.append(f"normals: {h.normals.shape[0]}")
    rays = None
    try:
        rays = polar_generators(c, cfg.tol)
    except PreconditionError:
        lines.append("polar extreme rays: skipped (generator rank above 3)")
    if rays is not None:
        lines.append(f"polar generating rays: {rays.shape[0]}")
        records += [{"record": "polar_ray", "index": i, "vector": r}
                    for i, r in enumerate(rays)]
    write_records(outdir / "records.txt", records)
    write_lines(outdir / "report.txt", lines)
    if 2 <= c.ambient_dim <= 3:
        write_csv(outdir / "input_generators.csv", c.generators)
        write_csv(outdir / "polar_normals.csv", h.normals)
        if rays is not None and rays.shape[0]:
            write_csv(outdir / "polar_rays.csv", rays)
    return EXIT_OK


def _cmd_support(cfg: RunConfig, outdir: Path) -> int:
    s, _ = fileio.read_point_cloud(cfg.input_paths[0], cfg.tol)
    records = []
    cert_rows = []
    n_support = 0
    n_extreme = 0
    for i, p in enumerate(s.points):
        interior = strictly_interior(s, p)
        extreme = is_extreme_point(s, p)
        cert = support_certificate(s, p)
        n_extreme += int(extreme)
        n_support += int(cert is not None)
        rec = {"record": "point", "index": i, "coords": p,
               "boundary": not interior, "extreme": extreme,
               "support": cert is not None}
        if cert is not None:
            rec["normal"] = cert.normal
            rec["slack"] = cert.slack
            cert_rows.append(np.concatenate([p, cert.normal]))
        records.append(rec)
    write_records(outdir / "records.txt", records)
    lines = _header(cfg)
    lines.append(f"points: {s.points.shape[0]} in dim {s.ambient_dim}")
    lines.append(f"extreme points: {n_extreme}")
    lines.append(f"support points: {n_support}")
    write_lines(outdir / "report.txt", lines)
    if 2 <= s.ambient_dim <= 3:
        write_csv(outdir / "points.csv", s.points)
        write_csv(outdir / "certificates.csv", cert_rows)
    return EXIT_OK


def _cmd_project(cfg: RunConfig, outdir: Path) -> int:
    if len(cfg.input_paths) < 2:
        raise ParseError("project needs a body file and a probe file")
    body = fileio.read_convex_body(cfg.input_paths[0], cfg.tol)
    probes_set, _ = fileio.read_point_cloud(cfg.input_paths[1], cfg.tol)
    records = []
    proj_rows = []
    seg_rows = []
    cert_rows = []
    for i, y in enumerate(probes_set.points):
        res = project_onto_hull(body, y)
        rec = {"record": "projection", "index": i, "probe": y,
               "inside": res.certificate is None,
               "point": res.point, "distance": res.distance}
        if res.certificate is not None:
            rec["normal"] = res.certificate.normal
            rec["slack"] = res.certificate.slack
            cert_rows.append(np.concatenate([res.point, res.certificate.normal]))
            seg_rows.append(np.concatenate([y, res.point]))
        records.append(rec)
        proj_rows.append(res.point)
    write_records(outdir / "records.txt", records)
    lines = _header(cfg)
    n_out = sum(1 for r in records if not r["inside"])
    lines.append(f"probes: {len(records)}, outside hull: {n_out}")
    write_lines(outdir / "report.txt", lines)
    if 2 <= body.ambient_dim <= 3:
        write_csv(outdir / "body_points.csv", body.base.points)
        write_csv(outdir / "probes.csv", probes_set.points)
        write_csv(outdir / "projections.csv", proj_rows)
        write_csv(outdir / "segments.csv", seg_rows)
        write_csv(outdir / "certificates.csv", cert_rows)
    return EXIT_OK


def _default_outside_probes(points: np.ndarray, rng, count: int) -> np.ndarray:
    centroid = points.mean(axis=0)
    radius = 2.0 * float(np.max(np.linalg.norm(points - centroid, axis=1)))
    return centroid + radius * unit_vectors(rng, count, points.shape[1])


def _cmd_convexity_body(cfg: RunConfig, outdir: Path) -> int:
    body = fileio.read_convex_body(cfg.input_paths[0], cfg.tol)
    s = body.base
    if len(cfg.input_paths) > 1:
        probes_set, _ = fileio.read_point_cloud(cfg.input_paths[1], cfg.tol)
        probes = probes_set.points
    else:
        probes = _default_outside_probes(s.points, make_rng(cfg.seed), cfg.probe_count)
    bnd = boundary_indices(s)
    rep = convexity_check_body(body, s.points[bnd], probes)
    records = []
    for entry, idx in zip(rep.entries, bnd):
        rec = {"record": "boundary_point", "index": idx, "coords": entry.point,
               "support": entry.certificate is not None}
        if entry.certificate is not None:
            rec["normal"] = entry.certificate.normal
            rec["slack"] = entry.certificate.slack
        records.append(rec)
    for i in rep.deficit_probes:
        records.append({"record": "deficit_probe", "index": i, "coords": probes[i]})
    records.append({"record": "verdict",
                    "convex_consistent": rep.convex_consistent,
                    "all_certified": rep.all_certified,
                    "containment_ok": rep.containment_ok,
                    "deficit_count": len(rep.deficit_probes)})
    write_records(outdir / "records.txt", records)
    lines = _header(cfg)
    lines.append(f"boundary points: {len(bnd)} of {s.points.shape[0]} samples")
    lines.append(f"certified: {sum(1 for e in rep.entries if e.certificate is not None)}")
    lines.append(f"half-space containment: {'ok' if rep.containment_ok else 'violated'}")
    lines.append(f"deficit probes: {len(rep.deficit_probes)}")
    lines.append("verdict: " + ("convex-consistent" if rep.convex_consistent
                                else "not convex-consistent"))
    write_lines(outdir / "report.txt", lines)
    if 2 <= s.ambient_dim <= 3:
        write_csv(outdir / "points.csv", s.points)
        write_csv(outdir / "boundary_points.csv", s.points[bnd])
        cert_rows = [np.concatenate([e.point, e.certificate.normal])
                     for e in rep.entries if e.certificate is not None]
        write_csv(outdir / "certificates.csv", cert_rows)
        write_csv(outdir / "deficit_probes.csv",
                  [probes[i] for i in rep.deficit_probes])
    return EXIT_OK if rep.convex_consistent and not rep.deficit_probes else EXIT_NEGATIVE


def _cmd_convexity_anf(cfg: RunConfig, outdir: Path) -> int:
    s, _ = fileio.read_point_cloud(cfg.input_paths[0], cfg.tol)
    if len(cfg.input_paths) > 1:
        probes_set, _ = fileio.read_point_cloud(cfg.input_paths[1], cfg.tol)
        probes = probes_set.points
    else:
        probes = _default_outside_probes(s.points, make_rng(cfg.seed), cfg.probe_count)
    rep = convexity_check_anf(s, probes)
    records = []
    for e in rep.entries:
        records.append({"record": "probe", "index": e.index, "coords": e.probe,
                        "in_hull": e.in_hull,
                        "witness": e.witness_index})
    records.append({"record": "verdict", "anf_covered": rep.anf_covered,
                    "uncovered_count": len(rep.uncovered),
                    "cover_slack": rep.cover_slack})
    write_records(outdir / "records.txt", records)
    lines = _header(cfg)
    lines.append(f"samples: {s.points.shape[0]} in dim {s.ambient_dim}")
    lines.append(f"probes: {len(rep.entries)}")
    lines.append(f"cover slack: {fmt_h(rep.cover_slack)}")
    lines.append(f"uncovered probes: {len(rep.uncovered)}")
    for i in rep.uncovered:
        lines.append("  uncovered " + " ".join(fmt_h(x) for x in probes[i]))
    lines.append("verdict: " + ("ANF-covered" if rep.anf_covered else "not ANF-covered"))
    write_lines(outdir / "report.txt", lines)
    if 2 <= s.ambient_dim <= 3:
        write_csv(outdir / "points.csv", s.points)
        write_csv(outdir / "probes.csv", probes)
        write_csv(outdir / "uncovered_probes.csv", [probes[i] for i in rep.uncovered])
    return EXIT_OK if rep.anf_covered else EXIT_NEGATIVE


def _sampling_for(cfg: RunConfig, dim: int):
    return sampling_for_dim(dim, cfg.directions, make_rng(cfg.seed))


def _cmd_ray_map(cfg: RunConfig, outdir: Path) -> int:
    body = fileio.read_convex_body(cfg.input_paths[0], cfg.tol)
    sampling = _sampling_for(cfg, body.ambient_dim)
    phi = radial_homeo(body, sampling, cfg.tol)
    fileio.write_hypersurface(outdir / "surface.hyp", phi,
                              comment="radial boundary map (body frame, interior at origin)")
    records = [{"record": "ray", "index": i, "direction": u, "radius": r}
               for i, (u, r) in enumerate(zip(sampling.directions, phi.radii))]
    write_records(outdir / "records.txt", records)
    lines = _header(cfg)
    lines.append(f"directions: {sampling.count}")
    lines.append(f"radius range: [{fmt_h(phi.radii.min())}, {fmt_h(phi.radii.max())}]")
    write_lines(outdir / "report.txt", lines)
    if 2 <= body.ambient_dim <= 3:
        write_csv(outdir / "body_points.csv", body.base.points)
        write_csv(outdir / "surface_points.csv", phi.points)
    return EXIT_OK


def _cmd_psi_check(cfg: RunConfig, outdir: Path) -> int:
    body = fileio.read_convex_body(cfg.input_paths[0], cfg.tol)
    sampling = _sampling_for(cfg, body.ambient_dim)
    table = RadialMapTable.from_body(body, sampling, cfg.tol)
    rng = make_rng(cfg.seed + 1)
    n = cfg.probe_count
    idx = rng.integers(0, sampling.count, size=n)
    radii = rng.uniform(1.0, 2.0, size=n)
    max_fwd = 0.0
    max_bwd = 0.0
    for i, r in zip(idx, radii):
        y = r * sampling.directions[i]
        z = psi_extend(table, y)
        y2 = psi_inverse(table, z)
        max_fwd = max(max_fwd, float(np.linalg.norm(y2 - y)))
        z2 = psi_extend(table, psi_inverse(table, z))
        max_bwd = max(max_bwd, float(np.linalg.norm(z2 - z)))
    # boundary branches (exact up to the ulp error of the norm evaluation)
    u = sampling.directions[0]
    branch_outer = float(np.linalg.norm(psi_extend(table, 2.0 * u)
                                        - table.gamma_norms[0] * u))
    branch_inner = float(np.linalg.norm(psi_extend(table, u) - u))
    branch_tol = 1e-13 * (1.0 + float(table.gamma_norms.max()))
    ok = (max_fwd <= cfg.tol.tol_fix and max_bwd <= cfg.tol.tol_fix
          and branch_outer <= branch_tol and branch_inner <= branch_tol)
    write_records(outdir / "records.txt", [
        {"record": "psi_roundtrip", "samples": n,
         "max_forward_error": max_fwd, "max_backward_error": max_bwd,
         "outer_branch_error": branch_outer, "inner_branch_error": branch_inner,
         "scale": table.scale, "gamma_min": float(table.gamma_norms.min()),
         "gamma_max": float(table.gamma_norms.max()), "passed": ok},
    ])
    lines = _header(cfg)
    lines.append(f"normalization scale: {fmt_h(table.scale)}")
    lines.append(f"gamma norms: [{fmt_h(table.gamma_norms.min())}, "
                 f"{fmt_h(table.gamma_norms.max())}]")
    lines.append(f"max round-trip error (psi then inverse): {fmt_h(max_fwd)}")
    lines.append(f"max round-trip error (inverse then psi): {fmt_h(max_bwd)}")
    lines.append(f"boundary branches exact: "
                 f"{branch_outer <= branch_tol and branch_inner <= branch_tol}")
    lines.append("verdict: " + ("pass" if ok else "fail"))
    write_lines(outdir / "report.txt", lines)
    if 2 <= body.ambient_dim <= 3:
        write_csv(outdir / "gamma_points.csv",
                  table.gamma_norms[:, None] * sampling.directions)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_convexify(cfg: RunConfig, outdir: Path) -> int:
    phi = fileio.read_hypersurface(cfg.input_paths[0])
    result = convexify(phi, cfg.tol)
    omega = result.omega
    fileio.write_hypersurface(outdir / "omega.hyp", omega,
                              comment="convexification (hull boundary on shared rays)")
    records = [{"record": "correspondence", "phi_index": i, "omega_index": j,
                "phi_radius": float(np.linalg.norm(phi.points[i])),
                "omega_radius": float(np.linalg.norm(omega.points[j]))}
               for i, j in result.correspondence]
    rep = is_convex_hypersurface(omega, cfg.tol)
    records.append({"record": "verdict", "convex": rep.convex,
                    "affine_extension_full": affine_extension_check(omega, cfg.tol)})
    write_records(outdir / "records.txt", records)
    lines = _header(cfg)
    lines.append(f"directions: {phi.sampling.count} in dim {phi.ambient_dim}")
    moved = np.linalg.norm(omega.points - phi.points, axis=1)
    lines.append(f"max radial change: {fmt_h(moved.max())}")
    lines.append(f"omega convex: {rep.convex}")
    write_lines(outdir / "report.txt", lines)
    if 2 <= phi.ambient_dim <= 3:
        write_csv(outdir / "input_points.csv", phi.points)
        write_csv(outdir / "omega_points.csv", omega.points)
    return EXIT_OK


def _cmd_report(cfg: RunConfig, outdir: Path) -> int:
    lines = _header(cfg)
    records = []
    last_invariant_error = None
    any_parsed = False
    for path in cfg.input_paths:
        with open(path) as fh:
            text = fh.read()
        parsed = None
        for kind, parser in (("cone", fileio.parse_cone),
                             ("structured-cone", fileio.parse_structured_cone),
                             ("hypersurface", fileio.parse_hypersurface),
                             ("point-cloud", fileio.parse_point_cloud)):
            try:
                obj = parser(text)
                parsed = (kind, obj)
                break
            except ParseError:
                continue
            except (InvariantViolationError, PreconditionError) as exc:
                last_invariant_error = exc
                continue
        if parsed is None:
            continue
        any_parsed = True
        kind, obj = parsed
        if kind == "point-cloud":
            s, interior = obj
            desc = f"{s.points.shape[0]} points in dim {s.ambient_dim}"
            if interior is not None:
                desc += " with interior point"
        elif kind == "cone":
            desc = f"{obj.generators.shape[0]} generators in dim {obj.ambient_dim}"
        elif kind == "structured-cone":
            desc = (f"lineality rank {obj.lineality.rank}, "
                    f"{obj.pointed_generators.shape[0]} pointed generators "
                    f"in dim {obj.ambient_dim}")
        else:
            desc = f"{obj.sampling.count} directions in dim {obj.ambient_dim}"
        lines.append(f"{path}: {kind} ({desc})")
        records.append({"record": "input", "path": path, "kind": kind})
    if not any_parsed:
        if last_invariant_error is not None:
            raise last_invariant_error
        raise ParseError("no input parsed as any fixture format")
    write_lines(outdir / "report.txt", lines)
    write_records(outdir / "records.txt", records)
    return EXIT_OK


_HANDLERS = {
    "decompose": _cmd_decompose,
    "polar": _cmd_polar,
    "support": _cmd_support,
    "project": _cmd_project,
    "convexity-body": _cmd_convexity_body,
    "convexity-anf": _cmd_convexity_anf,
    "ray-map": _cmd_ray_map,
    "psi-check": _cmd_psi_check,
    "convexify": _cmd_convexify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    cfg = build_config(argv if argv is not None else sys.argv[1:])
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
