"""Command-line front end.

stdout carries exactly one JSON document per invocation; diagnostics go to
stderr.  Exit codes: 0 success, 1 failed validation, 2 bad arguments or
input files, 3 point outside the domain, 4 non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import netpbm
from .boundary import BoundarySpec, closed_form_from_coefficients, load_samples_csv
from .checks import fd_laplacian, is_harmonic, max_principle_check, poisson_field, solution_field
from .errors import ConvergenceError, DomainError, HarmonicError
from .fixtures import FIXTURES, fixture
from .imaging import denoise, dirichlet_energy, inpaint, upsample_harmonic
from .poisson import poisson_evaluate, quadrature_points, solve_poisson
from .polar import PolarPoint
from .spectral import DEFAULT_N_MAX, DiscSolution, eval_solution, evaluate, solve_spectral
from .stochastic import McConfig, mc_solve, simulate_exits

SCHEMA = "1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_NONCONVERGED = 0, 1, 2, 3, 4


# ---------------------------------------------------------------------------
# JSON with 17 significant digits


def _encode(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return format(x, ".17g")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_encode(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def emit(payload: dict) -> None:
    sys.stdout.write(_encode({"schema": SCHEMA, **payload}) + "\n")


# ---------------------------------------------------------------------------
# argument helpers


def _point(text: str) -> tuple[float, float]:
    try:
        r, theta = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected r,theta in radians, got {text!r}") from None
    if not (math.isfinite(r) and math.isfinite(theta)):
        raise argparse.ArgumentTypeError(f"non-finite point {text!r}")
    # left unvalidated so a radius outside the disc surfaces as a domain error (exit 3)
    return (r, theta)


def _boundary(args) -> BoundarySpec:
    if args.f_csv:
        return load_samples_csv(args.f_csv)
    if args.f is None:
        raise ValueError("one of --f or --f-csv is required")
    return BoundarySpec.closed(args.f)


def _add_boundary_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--f", help='boundary expression in t, e.g. "cos(t) + 3*sin(3*t)"')
    g.add_argument("--f-csv", help="single-column CSV of M boundary samples at uniform angles")
    p.add_argument("--R", type=float, default=1.0, help="disc radius (default 1)")


def _add_mc_args(p, *, method_flag):
    p.add_argument(method_flag, dest="mc_method", choices=["exact", "wos", "em"], default="exact")
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--seed", type=int, help="RNG seed (required for Monte Carlo)")
    p.add_argument("--eps-shell", type=float, default=1e-4)
    p.add_argument("--dt", type=float, default=1e-5)
    p.add_argument("--threads", type=int, default=1)


def _mc_config(args) -> McConfig:
    if args.seed is None:
        raise ValueError("--seed is required for Monte Carlo runs")
    return McConfig(args.paths, args.seed, args.mc_method, args.eps_shell, args.dt)


# ---------------------------------------------------------------------------
# commands


def _n_max(args, spec: BoundarySpec) -> int:
    if args.n_max is not None:
        return args.n_max
    if spec.kind == "sampled":
        return min(DEFAULT_N_MAX, spec.m // 2 - 1)
    return DEFAULT_N_MAX


def cmd_solve(args) -> int:
    spec = _boundary(args)
    n_max = _n_max(args, spec)
    R = args.R
    if args.grid:
        ticks = np.linspace(-R, R, args.grid)
        X, Y = np.meshgrid(ticks, ticks[::-1])
        inside = np.hypot(X, Y) <= R
        points = [(float(np.hypot(x, y)), float(math.atan2(y, x))) for x, y in zip(X[inside], Y[inside])]
    else:
        if not args.point:
            raise ValueError("give at least one --point r,theta or --grid N")
        points = [tuple(p) for p in args.point]
    for r, _ in points:
        if r < 0:
            raise DomainError(f"negative radius r={r}")

    out_points, diagnostics = [], {}
    if args.method == "spectral":
        sol = solve_spectral(spec, R, n_max)
        values = [eval_solution(sol, PolarPoint(r, t)) for r, t in points]
        diagnostics["n_max"] = n_max
    elif args.method == "poisson":
        sol = solve_spectral(spec, R, n_max) if spec.kind == "closed_form" or spec.m >= 2 * n_max + 2 else None
        values, used, deltas = [], [], []
        for r, t in points:
            v = solve_poisson(spec, R, PolarPoint(r, t), args.quad_points)
            values.append(v)
            used.append(0 if r >= R else quadrature_points(R, r, args.quad_points))
            if sol is not None:
                deltas.append(abs(v - eval_solution(sol, PolarPoint(r, t))))
        diagnostics["quad_points"] = used
        diagnostics["spectral_delta"] = deltas
        diagnostics["max_spectral_delta"] = max(deltas) if deltas else None
    else:
        cfg = _mc_config(args)
        values, errs, steps = [], [], []
        for r, t in points:
            est = mc_solve(spec, R, PolarPoint(r, t), cfg, threads=args.threads)
            values.append(est.mean)
            errs.append(est.std_error)
            steps.append(est.mean_steps)
        diagnostics.update(std_error=errs, mean_steps=steps, seed=cfg.seed, n_paths=cfg.n_paths, mc_method=cfg.method.value)
    for (r, t), v in zip(points, values):
        out_points.append({"r": r, "theta": t, "value": v})

    payload = {"command": "solve", "method": args.method, "R": R, "points": out_points, "diagnostics": diagnostics}
    if args.grid and args.pgm:
        img = np.zeros(X.shape)
        img[inside] = values
        lo, hi = float(min(values)), float(max(values))
        scale = 255.0 / (hi - lo) if hi > lo else 0.0
        pix = np.zeros(X.shape, dtype=np.uint8)
        pix[inside] = np.floor((img[inside] - lo) * scale + 0.5).astype(np.uint8)
        netpbm.write(args.pgm, pix)
        payload["image"] = {"path": args.pgm, "offset": lo, "scale": scale, "formula": "pixel = round((value - offset) * scale)"}
    emit(payload)
    return EXIT_OK


def cmd_mc(args) -> int:
    spec = _boundary(args)
    cfg = _mc_config(args)
    r, t = args.point
    p = PolarPoint(r, t)
    if p.r >= args.R:
        raise DomainError(f"start point r={p.r} must lie strictly inside R={args.R}")
    exits = simulate_exits(args.R, p, cfg, threads=args.threads)
    est = mc_solve(spec, args.R, p, cfg, exits=exits)
    if args.dump_exits:
        with open(args.dump_exits, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["exit_angle"])
            w.writerows([format(a, ".17g")] for a in exits.angles)
    emit({"command": "mc", **est.to_dict()})
    return EXIT_OK


def _read_image(path):
    return netpbm.to_float(netpbm.read(path))


def cmd_inpaint(args) -> int:
    image = _read_image(args.image)
    mask = netpbm.read_mask(args.mask)
    if mask.shape != image.shape[:2]:
        raise ValueError(f"mask {mask.shape} does not match image {image.shape[:2]}")
    out, report = inpaint(image, mask, tol=args.tol, max_iters=args.max_iters, method=args.method, omega=args.omega)
    netpbm.write(args.out, netpbm.to_uint8(out))
    emit({"command": "inpaint", "out": args.out, "unknown_pixels": int((~mask).sum()), "report": report.to_dict()})
    return EXIT_OK if report.converged else EXIT_NONCONVERGED


def cmd_denoise(args) -> int:
    image = _read_image(args.image)
    out = denoise(image, args.steps, args.step_size)
    netpbm.write(args.out, netpbm.to_uint8(out))
    emit(
        {
            "command": "denoise",
            "out": args.out,
            "steps": args.steps,
            "step_size": args.step_size,
            "energy_before": dirichlet_energy(image),
            "energy_after": dirichlet_energy(out),
        }
    )
    return EXIT_OK


def cmd_upsample(args) -> int:
    image = _read_image(args.image)
    out, report = upsample_harmonic(image, args.factor, tol=args.tol, max_iters=args.max_iters)
    netpbm.write(args.out, netpbm.to_uint8(out))
    emit({"command": "upsample", "out": args.out, "shape": list(out.shape), "report": report.to_dict()})
    return EXIT_OK if report.converged else EXIT_NONCONVERGED


def validation_checks(spec: BoundarySpec, R: float, n_max: int = DEFAULT_N_MAX) -> list[dict]:
    """Harmonicity, mean-value, max-principle and backend-agreement checks for one problem."""
    sol = solve_spectral(spec, R, n_max)
    field = solution_field(sol)
    ref = max(1.0, float(np.max(np.abs(evaluate(sol, R, 2 * np.pi * np.arange(1024) / 1024)))))
    checks = []

    probes = [(rf * R * math.cos(t), rf * R * math.sin(t)) for rf in (0.0, 0.3, 0.6, 0.9) for t in np.linspace(0, 2 * np.pi, 8, endpoint=False)]
    h = 1e-3 * R
    worst = max(abs(fd_laplacian(field, x, y, h)) * R * R for x, y in probes)
    tol = 1e-4 * ref
    checks.append({"name": "harmonicity", "status": "PASS" if worst <= tol else "FAIL", "max_abs_laplacian": worst, "tol": tol})

    rep = is_harmonic(field, tol=1e-10 * ref)
    checks.append({"name": "mean_value", "status": "PASS" if rep.harmonic else "FAIL", **rep.to_dict(), "tol": 1e-10 * ref})

    mp = max_principle_check(field, R)
    checks.append({"name": "max_principle", **mp.to_dict()})

    rr = np.linspace(0.0, 0.95 * R, 20)
    tt = np.linspace(0.0, 2 * np.pi, 20, endpoint=False)
    Rg, Tg = np.meshgrid(rr, tt)
    delta = float(np.max(np.abs(evaluate(sol, Rg, Tg) - poisson_evaluate(spec, R, Rg, Tg))))
    tol = 1e-8 * ref
    checks.append({"name": "backend_agreement", "status": "PASS" if delta <= tol else "FAIL", "max_delta": delta, "tol": tol})

    w = field - poisson_field(spec, R)
    urep = is_harmonic(w, tol=1e-8 * ref, grid=4)
    ok = urep.harmonic and delta <= 1e-6 * ref
    checks.append({"name": "uniqueness", "status": "PASS" if ok else "FAIL", "difference_field": urep.to_dict()})
    return checks


def cmd_validate(args) -> int:
    if args.solution:
        with open(args.solution) as fh:
            sol = DiscSolution.from_json(fh.read())
        R = sol.radius
        spec = closed_form_from_coefficients(sol.boundary_coefficients())
        n_max = sol.n_max
        source = {"solution": args.solution}
    else:
        spec = fixture(args.fixture)
        R = args.R
        n_max = DEFAULT_N_MAX
        source = {"fixture": args.fixture, "f": FIXTURES[args.fixture]}
    checks = validation_checks(spec, R, n_max)
    status = "PASS" if all(c["status"] == "PASS" for c in checks) else "FAIL"
    emit({"command": "validate", "status": status, "R": R, "source": source, "checks": checks})
    return EXIT_OK if status == "PASS" else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonic-disc", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="evaluate the disc solution at points or on a grid")
    _add_boundary_args(p)
    p.add_argument("--point", type=_point, action="append", help="r,theta (radians); repeatable")
    p.add_argument("--grid", type=int, help="evaluate on an N x N Cartesian grid over the disc")
    p.add_argument("--pgm", help="with --grid, write a PGM rendering of u")
    p.add_argument("--method", choices=["spectral", "poisson", "mc"], default="spectral")
    p.add_argument("--n-max", type=int, default=None, help="series truncation (default 64, capped at M/2 - 1 for sampled data)")
    p.add_argument("--quad-points", type=int)
    _add_mc_args(p, method_flag="--mc-method")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("mc", help="Monte Carlo estimate of u at one point")
    _add_boundary_args(p)
    p.add_argument("--point", type=_point, required=True, help="r,theta (radians)")
    _add_mc_args(p, method_flag="--method")
    p.add_argument("--dump-exits", help="write exit angles to this CSV file")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("inpaint", help="fill unknown pixels harmonically")
    p.add_argument("--image", required=True)
    p.add_argument("--mask", required=True, help="PGM: 0 = unknown, 255 = known")
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=100_000)
    p.add_argument("--method", choices=["jacobi", "gauss-seidel", "sor"], default="sor")
    p.add_argument("--omega", type=float)
    p.set_defaults(func=cmd_inpaint)

    p = sub.add_parser("denoise", help="gradient descent on the Dirichlet energy")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--step-size", type=float, default=0.2)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("upsample", help="harmonic interpolation onto a finer grid")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--factor", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=100_000)
    p.set_defaults(func=cmd_upsample)

    p = sub.add_parser("validate", help="run the harmonic property checks")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fixture", choices=sorted(FIXTURES))
    g.add_argument("--solution", help="JSON-serialized disc solution {radius, c0, A, B}")
    p.add_argument("--R", type=float, default=1.0)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (HarmonicError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
