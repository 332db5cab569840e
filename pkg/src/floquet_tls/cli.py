"""Command-line surface emitting CSV/JSON artifacts.

Subcommands: solve (trajectories), quasienergy (branch-continued sweeps),
resonance (resonance curves with triangle coordinates), bloch-siegert
(exact rational shift tables), validate (cross-check suite).

Exit codes: 0 success, 1 usage error, 2 math-domain failure, 3 validation
failure.  Identical configuration and seed produce byte-identical output.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import exact_models, fourier_rpl, quasienergy, resonance
from .bloch_dynamics import (
    DriveParams,
    monodromy_so3,
    monodromy_su2,
    periodic_orbit,
    quasienergy_from_monodromy,
    so3_angle,
)
from .errors import FloquetTlsError

SCHEMA_VERSION = "1"


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise _UsageExit(message)


def _fmt(x):
    if isinstance(x, float):
        if math.isnan(x):
            return "NaN"
        return format(x, ".17g")
    return str(x)


def _parse_sweep(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageExit(f"sweep must be start:stop:count, got {text!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2:
        raise _UsageExit("sweep count must be at least 2")
    return start, stop, count


def _threads(args):
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("FLOQUET_TLS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _resolved_config(args, keys):
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _emit(args, header, rows, payload_extra, config_keys):
    if args.format == "csv":
        _write_text(args.output, _csv_text(header, rows))
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "config": _resolved_config(args, config_keys),
            "columns": list(header),
            "rows": [list(row) for row in rows],
        }
        payload.update(payload_extra or {})
        _write_text(args.output, _json_text(payload))


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args):
    params = DriveParams(omega0=args.omega0, F=args.f, G=args.g, omega=args.omega)
    ts = np.arange(args.samples) * (params.T / args.samples)
    harmonics = None
    if args.method == "fourier":
        sol = fourier_rpl.solve_auto(params, "phi1", start=args.n_trunc).normalized()
        states = sol.evaluate(ts)
        harmonics = {"z0": sol.z0, "x": [float(v) for v in sol.x]}
    else:
        traj = periodic_orbit(params, tol=args.tol)
        states = traj(ts)
    rows = []
    compare_dev = None
    if args.compare:
        if args.method == "fourier":
            other = periodic_orbit(params, tol=args.tol)(ts)
        else:
            other = fourier_rpl.solve_auto(params, "phi1", start=args.n_trunc).normalized().evaluate(ts)
        if float(np.dot(states[0], other[0])) < 0:
            other = -other
        compare_dev = float(np.abs(states - other).max())
    norms = np.linalg.norm(states, axis=-1)
    for i, t in enumerate(ts):
        rows.append([float(t), states[i, 0], states[i, 1], states[i, 2], float(norms[i])])
    extra = {}
    if harmonics is not None:
        extra["harmonics"] = harmonics
    if compare_dev is not None:
        extra["compare_max_deviation"] = compare_dev
        print(f"max deviation between routes: {compare_dev:.3e}", file=sys.stderr)
    _emit(
        args,
        ["t", "X", "Y", "Z", "norm"],
        rows,
        extra,
        ["omega0", "f", "g", "omega", "method", "n_trunc", "samples", "tol", "seed"],
    )
    return 0


# ---------------------------------------------------------------------------
# quasienergy sweep


def cmd_quasienergy(args):
    params_base = DriveParams(omega0=args.omega0, F=args.f, G=args.g, omega=1.0)
    start, stop, count = _parse_sweep(args.omega_sweep)
    grid = np.linspace(start, stop, count)
    method = args.method
    if method == "auto":
        method = "fourier" if args.g == 0 else "ode"

    def compute(omega):
        p = DriveParams(args.omega0, args.f, args.g, float(omega))
        try:
            return quasienergy.quasienergy_at(p, method=method, n_trunc=args.n_trunc, tol=args.tol)
        except FloquetTlsError as exc:
            print(f"omega={omega:g}: {exc}", file=sys.stderr)
            return None

    nthreads = _threads(args)
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            points = list(pool.map(compute, grid))
    else:
        points = [compute(w) for w in grid]

    rows = []
    prev = None
    failures = 0
    for omega, point in zip(grid, points):
        if point is None:
            failures += 1
            rows.append([float(omega)] + [float("nan")] * 4 + [0])
            continue
        if prev is not None:
            point = quasienergy.continue_branch(point, prev)
        prev = point
        rows.append(
            [float(omega), point.epsilon, point.epsilon_mod, point.eps_g, point.eps_d, point.branch]
        )
    _emit(
        args,
        ["omega", "epsilon", "epsilon_mod", "eps_g", "eps_d", "branch"],
        rows,
        {},
        ["omega0", "f", "g", "omega_sweep", "method", "n_trunc", "tol", "threads", "seed"],
    )
    return 0 if failures <= 0.05 * len(grid) else 2


# ---------------------------------------------------------------------------
# resonance curves


def cmd_resonance(args):
    n_list = [int(v) for v in args.n_list.split(",") if v]
    start, stop, count = _parse_sweep(args.f_grid)
    if args.log_grid:
        grid = np.geomspace(start, stop, count)
    else:
        grid = np.linspace(start, stop, count)

    def curve(n):
        return resonance.resonance_curve(n, grid, omega0=args.omega0, n_trunc=args.n_trunc)

    nthreads = _threads(args)
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=min(nthreads, len(n_list))) as pool:
            curves = list(pool.map(curve, n_list))
    else:
        curves = [curve(n) for n in n_list]

    rows = []
    for n, pts in zip(n_list, curves):
        for pt in pts:
            p = DriveParams(omega0=args.omega0, F=pt.F, G=0.0, omega=pt.omega_res)
            tri = resonance.to_triangle(p)
            rows.append([n, pt.F, pt.omega_res, pt.residual, tri.x, tri.y])
    _emit(
        args,
        ["n", "F", "omega_res", "residual", "tri_x", "tri_y"],
        rows,
        {},
        ["omega0", "n_list", "f_grid", "log_grid", "n_trunc", "threads", "seed"],
    )
    return 0


# ---------------------------------------------------------------------------
# Bloch-Siegert table


def cmd_bloch_siegert(args):
    sigmas = resonance.bloch_siegert_coefficients(args.n, args.max_m, args.n_trunc)
    rows = [
        [args.n, 2 * (m + 1), str(s.numerator), str(s.denominator)]
        for m, s in enumerate(sigmas)
    ]
    extra = {
        "coefficients": [
            {"two_m": 2 * (m + 1), "numerator": str(s.numerator), "denominator": str(s.denominator)}
            for m, s in enumerate(sigmas)
        ],
        "n": args.n,
    }
    _emit(
        args,
        ["n", "two_m", "numerator", "denominator"],
        rows,
        extra,
        ["n", "max_m", "n_trunc", "seed"],
    )
    return 0


# ---------------------------------------------------------------------------
# validation suite


def _check_rpc_oracle(rng):
    worst = 0.0
    for f_amp in (0.3, 1.1, 2.4):
        for omega in (0.6, 1.0, 1.9):
            p = DriveParams(1.0, f_amp, f_amp, omega)
            ref = exact_models.rpc_quasienergies(p)
            res = quasienergy.quasienergy_classical(exact_models.rpc_trajectory(p, +1), p)
            worst = max(worst, abs(res.epsilon - ref.eps_plus))
            em_val = quasienergy_from_monodromy(monodromy_su2(p), p.T)
            dev = min(
                _circ_dist(em_val, ref.eps_plus, omega), _circ_dist(em_val, -ref.eps_plus, omega)
            )
            worst = max(worst, dev)
    return worst, 1e-8


def _circ_dist(a, b, omega):
    d = (a - b) % omega
    return min(d, omega - d)


def _check_toy_oracle(rng):
    worst = 0.0
    for f in (0.5, 1.0, 2.0):
        toy = exact_models.toy_example(f, 1.0)
        series = quasienergy.chi_series(toy.orbit, toy.drive, harmonics=12)
        worst = max(worst, abs(series.a0 - toy.epsilon))
        for n in range(1, 11):
            worst = max(worst, abs(series.cos_coeffs[n - 1] - toy.b_coefficient(n)))
    return worst, 1e-9


def _random_nonresonant_points(rng, count):
    pts = []
    while len(pts) < count:
        f_amp = float(rng.uniform(0.1, 1.5))
        omega = float(rng.uniform(1.35, 3.0))
        pts.append(DriveParams(1.0, f_amp, 0.0, omega))
    return pts


def _check_gradients(rng):
    worst = 0.0
    delta = 1e-4
    for p in _random_nonresonant_points(rng, 5):
        sol = fourier_rpl.solve_auto(p, "phi1").normalized()
        res = quasienergy.quasienergy_classical(sol.evaluate, p, method="fourier")

        def eps_at(params):
            s = fourier_rpl.solve_auto(params, "phi1").normalized()
            return quasienergy.quasienergy_classical(s.evaluate, params, method="fourier").epsilon

        fd_w0 = (
            eps_at(DriveParams(p.omega0 + delta, p.F, 0.0, p.omega))
            - eps_at(DriveParams(p.omega0 - delta, p.F, 0.0, p.omega))
        ) / (2 * delta)
        worst = max(worst, abs(fd_w0 - quasienergy.grad_omega0(sol.evaluate, p)))
        fd_f = (
            eps_at(DriveParams(p.omega0, p.F + delta, 0.0, p.omega))
            - eps_at(DriveParams(p.omega0, p.F - delta, 0.0, p.omega))
        ) / (2 * delta)
        worst = max(worst, abs(fd_f - quasienergy.grad_f(sol.evaluate, p)))
        fd_w = (
            eps_at(DriveParams(p.omega0, p.F, 0.0, p.omega + delta))
            - eps_at(DriveParams(p.omega0, p.F, 0.0, p.omega - delta))
        ) / (2 * delta)
        worst = max(worst, abs(fd_w - quasienergy.grad_omega(res)))
    return worst, 1e-5


def _check_homogeneity(rng):
    worst = 0.0
    for p in _random_nonresonant_points(rng, 3):
        base = quasienergy.quasienergy_at(p, method="fourier").epsilon
        for lam in (0.5, 2.0, 10.0):
            scaled = quasienergy.quasienergy_at(p.scaled(lam), method="fourier").epsilon
            worst = max(worst, abs(scaled - lam * base) / lam)
        sol = fourier_rpl.solve_auto(p, "phi1").normalized()
        res = quasienergy.quasienergy_classical(sol.evaluate, p, method="fourier")
        grads = {
            "omega0": quasienergy.grad_omega0(sol.evaluate, p),
            "F": quasienergy.grad_f(sol.evaluate, p),
            "G": quasienergy.grad_g(sol.evaluate, p),
            "omega": quasienergy.grad_omega(res),
        }
        worst = max(worst, quasienergy.euler_residual(p, grads, res.epsilon))
    return worst, 1e-5


def _check_split(rng):
    worst = 0.0
    for p in _random_nonresonant_points(rng, 4):
        res = quasienergy.quasienergy_at(p, method="fourier")
        worst = max(worst, abs(res.epsilon - res.eps_g - res.eps_d))
    return worst, 1e-8


def _check_fourier_vs_ode(rng):
    worst = 0.0
    for f_amp in (0.1, 0.5):
        p = DriveParams(1.0, f_amp, 0.0, 2.0)
        sol = fourier_rpl.solve_coefficients(fourier_rpl.build_system(p, 20), "phi1")
        states = sol.normalized().evaluate(np.linspace(0, p.T, 200))
        orbit = periodic_orbit(p, tol=1e-12)(np.linspace(0, p.T, 200))
        if float(np.dot(states[0], orbit[0])) < 0:
            orbit = -orbit
        worst = max(worst, float(np.abs(states - orbit).max()))
    return worst, 1e-6


def _check_lift(rng):
    worst = 0.0
    p = DriveParams(1.0, 0.5, 0.5, 1.0)
    eps = exact_models.rpc_quasienergies(p).eps_plus
    lifted = exact_models.lift_spectrum(1, eps, p.omega)
    m3 = monodromy_so3(p)
    rho = so3_angle(m3)
    so3_set = sorted({0.0, (rho / p.T) % p.omega, (-rho / p.T) % p.omega})
    for a, b in zip(lifted, so3_set):
        worst = max(worst, _circ_dist(a, b, p.omega))
    return worst, 1e-8


_CHECKS = {
    "rpc_oracle": _check_rpc_oracle,
    "toy_oracle": _check_toy_oracle,
    "gradients": _check_gradients,
    "homogeneity": _check_homogeneity,
    "split": _check_split,
    "fourier_vs_ode": _check_fourier_vs_ode,
    "lift": _check_lift,
}


def cmd_validate(args):
    names = list(_CHECKS)
    if args.only:
        wanted = [v for v in args.only.split(",") if v]
        unknown = [v for v in wanted if v not in _CHECKS]
        if unknown:
            raise _UsageExit(f"unknown checks: {', '.join(unknown)}")
        names = wanted
    rng = np.random.default_rng(args.seed)
    checks = []
    all_passed = True
    for name in names:
        try:
            worst, tol = _CHECKS[name](rng)
            passed = bool(worst <= tol)
            checks.append({"name": name, "passed": passed, "worst": worst, "tolerance": tol})
        except FloquetTlsError as exc:
            passed = False
            checks.append({"name": name, "passed": False, "error": str(exc)})
        all_passed = all_passed and passed
        print(f"{'PASS' if passed else 'FAIL'} {name}", file=sys.stderr)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": {"only": args.only, "seed": args.seed},
        "checks": checks,
        "all_passed": all_passed,
    }
    _write_text(args.output, _json_text(payload))
    return 0 if all_passed else 3


# ---------------------------------------------------------------------------


def _add_common(sub, output_default="-"):
    sub.add_argument("--output", "-o", default=output_default, help="output path, - for stdout")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--threads", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = _Parser(prog="floquet-tls", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("solve", help="periodic trajectory at one parameter point")
    sp.add_argument("--omega0", type=float, required=True)
    sp.add_argument("--f", type=float, required=True)
    sp.add_argument("--g", type=float, default=0.0)
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--method", choices=("ode", "fourier"), default="ode")
    sp.add_argument("--n-trunc", type=int, default=20)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--samples", type=int, default=1024)
    sp.add_argument("--compare", action="store_true", help="cross-check both routes")
    _add_common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = subs.add_parser("quasienergy", help="branch-continued quasienergy sweep")
    sp.add_argument("--omega0", type=float, required=True)
    sp.add_argument("--f", type=float, required=True)
    sp.add_argument("--g", type=float, default=0.0)
    sp.add_argument("--omega-sweep", required=True, help="start:stop:count")
    sp.add_argument("--method", choices=("auto", "ode", "fourier"), default="auto")
    sp.add_argument("--n-trunc", type=int, default=20)
    sp.add_argument("--tol", type=float, default=1e-12)
    _add_common(sp)
    sp.set_defaults(func=cmd_quasienergy)

    sp = subs.add_parser("resonance", help="resonance curves det A^(N) = 0")
    sp.add_argument("--n-list", default="1", help="comma-separated resonance indices")
    sp.add_argument("--f-grid", required=True, help="start:stop:count")
    sp.add_argument("--log-grid", action="store_true")
    sp.add_argument("--omega0", type=float, default=1.0)
    sp.add_argument("--n-trunc", type=int, default=50)
    _add_common(sp)
    sp.set_defaults(func=cmd_resonance)

    sp = subs.add_parser("bloch-siegert", help="exact rational shift coefficients")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-m", type=int, required=True)
    sp.add_argument("--n-trunc", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_bloch_siegert)

    sp = subs.add_parser("validate", help="cross-check suite")
    sp.add_argument("--only", default=None, help="comma-separated check names")
    _add_common(sp)
    sp.set_defaults(func=cmd_validate)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit:
        return 1
    try:
        return args.func(args)
    except _UsageExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FloquetTlsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
