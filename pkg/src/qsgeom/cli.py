"""Command-line front end.

Commands: verify, metric, curvature, geodesic, evolve, distance.
Contract: exit 0 on success / all checks passing, 1 on a failed check or a
domain/computation error, 2 on usage errors.  Output is deterministic for
fixed flags and seed; every number is printed with 9 significant digits.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .catalog import (
    FamilyId,
    GaussianParams,
    HydrogenParams,
    default_compare_stencil,
    make_family,
    oracle_metric,
)
from .config import ENV_TOL_SCALE, default_tolerances
from .dynamics import hamiltonian_from_json, evolve, trace_to_csv
from .errors import QsgeomError
from .families import ParamPoint, Stencil
from .geometry import best_fit_lambda, curvature, geodesic_integrate, geodesic_residual, path_to_csv
from .hilbert import state_from_json
from .metrics import ConfigMode, config_metric, fs_distance_sq, fs_pullback, signature
from .model_spaces import SPACE_NAMES, named_space
from .suites import SUITE_NAMES, run_suite

__all__ = ["main"]


def _fmt9(x: float) -> str:
    return f"{float(x):.9g}"


def _round9(x: float) -> float:
    return float(_fmt9(x))


def _jline(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _tol_scale() -> float:
    raw = os.environ.get(ENV_TOL_SCALE)
    return float(raw) if raw else 1.0


# ---------------------------------------------------------------------------
# verify


def _cmd_verify(args) -> int:
    tol = default_tolerances()
    records = run_suite(args.suite, tol, args.seed)
    if args.format == "json":
        print(_jline({"suite": args.suite, "seed": args.seed, "tol_scale": _round9(_tol_scale())}))
        for r in records:
            print(
                _jline(
                    {
                        "name": r.name,
                        "status": r.status,
                        "measured": _round9(r.measured),
                        "tolerance": _round9(r.tolerance),
                    }
                )
            )
    else:
        print(f"# suite={args.suite} seed={args.seed} tol_scale={_fmt9(_tol_scale())}")
        print("name,status,measured,tolerance")
        for r in records:
            print(f"{r.name},{r.status},{_fmt9(r.measured)},{_fmt9(r.tolerance)}")
    return 0 if all(r.passed for r in records) else 1


# ---------------------------------------------------------------------------
# metric


def _parse_at(parser: argparse.ArgumentParser, spec: str, chart) -> ParamPoint:
    given = {}
    for piece in spec.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            parser.error(f"--at expects name=value pairs, got {piece!r}")
        name, _, val = piece.partition("=")
        name = name.strip()
        if name not in chart.names:
            parser.error(f"unknown coordinate {name!r}; chart has {', '.join(chart.names)}")
        try:
            given[name] = float(val)
        except ValueError:
            parser.error(f"coordinate {name} needs a numeric value, got {val!r}")
    missing = [n for n in chart.names if n not in given]
    if missing:
        parser.error(f"missing coordinate(s): {', '.join(missing)}")
    return chart.point(**given)


def _signature_line(mat: np.ndarray) -> str:
    scale = float(np.max(np.abs(mat))) if mat.size else 0.0
    cut = 1e-9 * scale
    off = mat - np.diag(np.diag(mat))
    if mat.shape[0] == 1 or float(np.max(np.abs(off))) <= max(cut, 1e-300):
        vals = np.diag(mat)  # chart order for diagonal matrices
    else:
        vals = np.sort(np.linalg.eigvalsh(mat))[::-1]
    signs = ["+" if v > cut else "-" if v < -cut else "0" for v in vals]
    return ",".join(signs)


def _cmd_metric(args, parser) -> int:
    fid = FamilyId.from_name(args.family)
    if fid is FamilyId.GAUSSIAN_COHERENT:
        params = GaussianParams(lam=args.lam, hbar=args.hbar, dim=args.dim)
        mode = args.mode or "fs"
        if mode != "fs":
            parser.error("the gaussian family supports only --mode fs (ray-space pullback)")
    else:
        params = HydrogenParams(C0=args.c0, a0=args.a0, omega=args.omega, Zalpha=args.zalpha)
        mode = args.mode or "closed"
        if mode == "fs":
            parser.error("--mode fs applies to the gaussian family only")
    fam = make_family(fid, params)
    p = _parse_at(parser, args.at, fam.chart)
    if mode == "closed":
        M = oracle_metric(fid, params, p)
    elif mode == "fd-square":
        M = config_metric(fam, p, default_compare_stencil(fid, params), ConfigMode.ANALYTIC_SQUARE)
    elif mode == "fd-hermitian":
        M = config_metric(fam, p, default_compare_stencil(fid, params), ConfigMode.HERMITIAN)
    else:  # fs
        M = fs_pullback(fam, p, Stencil(order=4, step=1e-3 * params.lam))
    payload = {
        "chart": [[n, u] for n, u in M.chart.coords],
        "entries": [[_round9(v) for v in row] for row in M.entries],
    }
    print(_jline(payload))
    print(f"signature: {_signature_line(M.entries)}")
    return 0


# ---------------------------------------------------------------------------
# curvature


def _curvature_samples(space: str, mf, n: int, seed: int):
    rng = np.random.default_rng([seed, 7])
    pts = []
    for _ in range(n):
        if space in ("sphere", "cp1"):
            v = np.array([rng.uniform(0.7, np.pi - 0.7), rng.uniform(0.3, 5.9)])
        elif space == "cp2":
            v = rng.uniform(-0.6, 0.6, size=4)
        else:
            v = rng.uniform(-1.0, 1.0, size=mf.chart.dim)
        pts.append(ParamPoint(mf.chart, v))
    return pts


def _cmd_curvature(args) -> int:
    mf = named_space(args.space)
    pts = _curvature_samples(args.space, mf, args.samples, args.seed)
    reports = [curvature(mf, p, h=args.h, lam=0.0) for p in pts]
    gs = [mf(p).entries for p in pts]
    ks = []
    num = 0.0
    den = 0.0
    for rep, g in zip(reports, gs):
        ks.append(float(np.sum(rep.ricci * g) / np.sum(g * g)))
        e0 = rep.ricci - 0.5 * rep.scalar * g
        num -= float(np.sum(e0 * g))
        den += float(np.sum(g * g))
    degenerate = mf.chart.dim == 2
    lam = 0.0 if degenerate else num / den
    print("index," + ",".join(mf.chart.names) + ",scalar,k_fit,einstein_residual")
    for i, (rep, g, p) in enumerate(zip(reports, gs, pts)):
        e = rep.ricci - 0.5 * rep.scalar * g + lam * g
        row = [str(i)] + [_fmt9(v) for v in p.values]
        row += [_fmt9(rep.scalar), _fmt9(ks[i]), _fmt9(float(np.linalg.norm(e)))]
        print(",".join(row))
    summary = {
        "space": args.space,
        "samples": args.samples,
        "h": _round9(args.h),
        "seed": args.seed,
        "scalar_mean": _round9(float(np.mean([r.scalar for r in reports]))),
        "k_mean": _round9(float(np.mean(ks))),
        "k_rel_std": _round9(float(np.std(ks) / np.mean(ks))) if np.mean(ks) != 0 else 0.0,
        "lambda_fit": _round9(lam),
        "two_dim_degenerate": degenerate,
    }
    print(_jline(summary))
    return 0


# ---------------------------------------------------------------------------
# geodesic / evolve / distance


def _cmd_geodesic(args, parser) -> int:
    mf = named_space(args.space)
    try:
        x0 = np.array([float(v) for v in args.x0.split(",")])
        u0 = np.array([float(v) for v in args.u0.split(",")])
    except ValueError:
        parser.error("--x0/--u0 expect comma-separated numbers")
    if x0.size != mf.chart.dim or u0.size != mf.chart.dim:
        parser.error(f"{args.space} needs {mf.chart.dim} components in --x0 and --u0")
    path = geodesic_integrate(mf, ParamPoint(mf.chart, x0), u0, ds=args.ds, steps=args.steps)
    residuals = geodesic_residual(path, mf) if path.n_samples >= 3 else None
    sys.stdout.write(path_to_csv(path, residuals, fmt=_fmt9))
    return 0


def _cmd_evolve(args) -> int:
    with open(args.hamiltonian, "r", encoding="utf-8") as fh:
        H = hamiltonian_from_json(json.load(fh))
    with open(args.state, "r", encoding="utf-8") as fh:
        psi0 = state_from_json(json.load(fh))
    trace = evolve(H, psi0, dt=args.dt, steps=args.steps)
    sys.stdout.write(trace_to_csv(trace, fmt=_fmt9))
    return 0


def _cmd_distance(args) -> int:
    with open(args.a, "r", encoding="utf-8") as fh:
        a = state_from_json(json.load(fh))
    with open(args.b, "r", encoding="utf-8") as fh:
        b = state_from_json(json.load(fh))
    v = fs_distance_sq(a, b)
    if args.format == "json":
        print(_jline({"fs_distance_sq": _round9(v)}))
    else:
        print("fs_distance_sq")
        print(_fmt9(v))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsgeom",
        description="Geometry of quantum states: metrics, curvature, geodesics, "
        "evolution, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("--suite", choices=SUITE_NAMES, required=True)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--format", choices=("json", "csv"), default="json")

    pm = sub.add_parser("metric", help="metric matrix of a catalog family at a point")
    pm.add_argument("--family", choices=[f.value for f in FamilyId], required=True)
    pm.add_argument("--at", required=True, metavar="NAME=VAL,...")
    pm.add_argument(
        "--mode",
        choices=("closed", "fd-square", "fd-hermitian", "fs"),
        default=None,
        help="closed form (default), finite differences, or ray-space pullback (gaussian)",
    )
    pm.add_argument("--c0", type=float, default=1.0)
    pm.add_argument("--a0", type=float, default=1.0)
    pm.add_argument("--omega", type=float, default=1.0)
    pm.add_argument("--zalpha", type=float, default=0.0)
    pm.add_argument("--lam", type=float, default=1.0, help="gaussian width")
    pm.add_argument("--hbar", type=float, default=1.0)
    pm.add_argument("--dim", type=int, choices=(1, 3), default=1)

    pc = sub.add_parser("curvature", help="sampled curvature of a model space")
    pc.add_argument("--space", choices=SPACE_NAMES, required=True)
    pc.add_argument("--samples", type=int, default=20)
    pc.add_argument("--h", type=float, default=1e-2)
    pc.add_argument("--seed", type=int, default=42)

    pg = sub.add_parser("geodesic", help="integrate a geodesic in a model space")
    pg.add_argument("--space", choices=SPACE_NAMES, required=True)
    pg.add_argument("--x0", required=True, metavar="V0,V1,...")
    pg.add_argument("--u0", required=True, metavar="V0,V1,...")
    pg.add_argument("--ds", type=float, default=1e-3)
    pg.add_argument("--steps", type=int, default=100)

    pe = sub.add_parser("evolve", help="propagate a state file under a Hamiltonian file")
    pe.add_argument("--hamiltonian", required=True)
    pe.add_argument("--state", required=True)
    pe.add_argument("--dt", type=float, required=True)
    pe.add_argument("--steps", type=int, required=True)

    pd = sub.add_parser("distance", help="squared projective distance between two state files")
    pd.add_argument("--a", required=True)
    pd.add_argument("--b", required=True)
    pd.add_argument("--format", choices=("json", "csv"), default="json")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "metric":
            return _cmd_metric(args, parser)
        if args.command == "curvature":
            return _cmd_curvature(args)
        if args.command == "geodesic":
            return _cmd_geodesic(args, parser)
        if args.command == "evolve":
            return _cmd_evolve(args)
        if args.command == "distance":
            return _cmd_distance(args)
        parser.error(f"unknown command {args.command!r}")
    except QsgeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
