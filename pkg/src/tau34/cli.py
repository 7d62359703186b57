"""Command-line front end: sweeps, certification runs and data emission.

Subcommands: sigma, certify, surface, tau, parametrix, critical, pi.
Global flags: --eta/--mu/--nu (point mode), --grid SPEC (per-axis
min:max:count[:log], comma-separated), --format csv|json, --out PATH,
--jobs N, --tol-scale F, --config PATH.  Outputs are deterministic and
bit-identical across runs; numbers are written with 17 significant digits.

Exit codes: 0 success, 1 certification failure, 2 usage/config error.
"""
import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from . import critical as cr
from . import lensing as ln
from . import param_domain as pd
from . import parametrix as px
from . import spectral_curve as sc
from . import tau_expansion as te


class ConfigError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    version: str
    records: list       # list of dicts, common keys
    n_failed: int
    wall_time: float

    @property
    def passed(self):
        return self.n_failed == 0


def fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def emit(report, columns, fmt_name, out_path):
    if fmt_name == "csv":
        lines = [",".join(columns)]
        for rec in report.records:
            lines.append(",".join(fmt(rec.get(c, "")) for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        rows = []
        for rec in report.records:
            row = {}
            for c in columns:
                v = rec.get(c)
                if isinstance(v, (np.integer,)):
                    v = int(v)
                elif isinstance(v, (np.floating,)):
                    v = float(v)
                elif isinstance(v, (np.bool_,)):
                    v = bool(v)
                row[c] = v
            rows.append(row)
        text = json.dumps(rows, indent=1, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_grid(spec):
    """Per-axis grid specs 'min:max:count[:log]', comma separated."""
    axes = []
    for part in spec.split(","):
        bits = part.split(":")
        if len(bits) not in (3, 4):
            raise ConfigError(f"bad grid spec {part!r}")
        try:
            lo, hi = float(bits[0]), float(bits[1])
            count = int(bits[2])
        except ValueError:
            raise ConfigError(f"bad grid spec {part!r}")
        logscale = len(bits) == 4 and bits[3] == "log"
        if len(bits) == 4 and not logscale:
            raise ConfigError(f"bad grid modifier {bits[3]!r}")
        if count < 1:
            raise ConfigError("grid counts must be >= 1")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ConfigError("grid ranges must be finite")
        if logscale:
            if lo <= 0 or hi <= 0:
                raise ConfigError("log grids need positive endpoints")
            vals = np.geomspace(lo, hi, count)
        else:
            vals = np.linspace(lo, hi, count)
        axes.append([float(v) for v in vals])
    return axes


def read_config(path):
    out = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(str(exc))
    return out


def point_grid(args):
    """Points from --grid (eta, mu, nu axes) or the single --eta/mu/nu."""
    if args.grid:
        axes = parse_grid(args.grid)
        defaults = [[args.eta], [args.mu], [args.nu]]
        while len(axes) < 3:
            axes.append(defaults[len(axes)])
        pts = [(e, m, n) for e in axes[0] for m in axes[1] for n in axes[2]]
    else:
        pts = [(args.eta, args.mu, args.nu)]
    if not pts:
        raise ConfigError("empty parameter grid")
    return pts


def map_points(points, func, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as exe:
            return list(exe.map(func, points))
    return [func(pt) for pt in points]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

SIGMA_COLUMNS = ["eta", "mu", "nu", "sigma", "margin", "in_D"]


def cmd_sigma(args):
    points = point_grid(args)

    def work(pt):
        rep = pd.in_domain_D(pd.Params(*pt))
        return {"eta": pt[0], "mu": pt[1], "nu": pt[2],
                "sigma": rep.sigma, "margin": rep.margin,
                "in_D": bool(rep.in_D)}

    records = map_points(points, work, args.jobs)
    return RunReport("sigma", __version__, records, 0, 0.0), SIGMA_COLUMNS


CERTIFY_COLUMNS = ["eta", "mu", "nu", "check", "value", "tolerance", "passed"]


def certify_point(pt, tol_scale, corrupt_stokes=False):
    eta, mu, nu = pt
    p = pd.Params(eta, mu, nu)
    records = []

    def add(check, value, tol, ok=None):
        ok = bool(value <= tol) if ok is None else bool(ok)
        records.append({"eta": eta, "mu": mu, "nu": nu, "check": check,
                        "value": value, "tolerance": tol, "passed": ok})

    rep = pd.in_domain_D(p)
    boundary = not rep.in_D
    sigma = rep.sigma if rep.in_D else None
    if boundary:
        if mu == 0.0 and eta > 0 and abs(nu - 125.0 * eta**3 / 108.0) \
                < 1e-9 * (1.0 + abs(nu)):
            sigma = 5.0 * eta / 3.0
        else:
            add("domain", 1.0, 0.0, ok=False)
            return records
    curve = sc.build_curve(p, sigma=sigma)

    for r in ln.verify_inequalities(curve):
        add(f"lensing:{r.contour.kind}", -r.min_signed_value, 0.0,
            ok=r.all_pass)

    garep = sc.check_g_asymptotics(curve)
    worst = max(abs(v[0] + 1.0 / 3.0) for v in garep.values())
    add("g-asymptotics-slope", worst, 0.02 * tol_scale)

    gp = px.GlobalParametrix(curve=curve)
    jr = px.jump_residuals(gp)
    add("M-jump-alpha", jr["alpha"], 1e-10 * tol_scale)
    add("M-jump-beta", jr["beta"], 1e-10 * tol_scale)
    add("M-normalization-slope",
        abs(px.normalization_slope(gp) + 1.0), 0.05 * tol_scale)

    data = px.StokesData.truncated()
    if corrupt_stokes:
        bad = dict(data.s)
        bad[5] = bad[5] + 1
        data = px.StokesData(s=bad)
    add("stokes-constraint", 0.0 if px.stokes_check(data) else 1.0, 0.0,
        ok=px.stokes_check(data))

    if not boundary:
        grad, closed = te.dlogtau_consistency(p)
        scale = 1.0 + abs(te.tau_leading(p, sigma=sigma).varpi0)
        add("dlogtau-gradients", max(map(abs, grad)) / scale,
            1e-6 * tol_scale)
        add("dlogtau-closedness", max(map(abs, closed)) / scale,
            1e-6 * tol_scale)
        flows = te.flow_compatibility(p)
        add("flow-compatibility", max(map(abs, flows)), 1e-10 * tol_scale)
        sol = pd.solve_sigma(p)
        tl = te.tau_leading(p, sigma=sol.sigma)
        chi_resid = abs(tl.chi + 2.0 * (5.0 * eta - 3.0 * sol.sigma)
                        * sol.dP_dsigma)
        add("chi-identity", chi_resid / (1.0 + abs(tl.chi)),
            1e-12 * tol_scale)
    return records


def cmd_certify(args):
    points = point_grid(args)
    records = []
    for pt in points:
        records.extend(certify_point(pt, args.tol_scale,
                                     corrupt_stokes=args.corrupt_stokes))
    n_failed = sum(not r["passed"] for r in records)
    return RunReport("certify", __version__, records, n_failed, 0.0), \
        CERTIFY_COLUMNS


SURFACE_COLUMNS = ["sigma", "eta", "nu", "mu_plus", "mu_minus",
                   "t1", "t2_plus", "t5", "abs_discriminant"]


def cmd_surface(args):
    sig_axis, eta_axis = (parse_grid(args.grid) + [[1.0]])[:2] if args.grid \
        else ([0.1 + 0.1 * k for k in range(30)], [args.eta])
    records = []
    for eta in eta_axis:
        for sig in sig_axis:
            if sig <= max(5.0 * eta / 3.0, 0.0):
                continue
            nu, mup, mum, t1, t2p, t5 = cr.surface_param(sig, eta)
            d = abs(float(cr.surface_discriminant(pd.Params(eta, mup, nu))))
            records.append({"sigma": sig, "eta": eta, "nu": nu,
                            "mu_plus": mup, "mu_minus": mum, "t1": t1,
                            "t2_plus": t2p, "t5": t5,
                            "abs_discriminant": d})
    gm_eta, gm_angle = cr.gauss_angle_max()
    records.append({"sigma": float("nan"), "eta": gm_eta, "nu": float("nan"),
                    "mu_plus": 0.0, "mu_minus": 0.0, "t1": float("nan"),
                    "t2_plus": 0.0, "t5": gm_eta,
                    "abs_discriminant": gm_angle})
    return RunReport("surface", __version__, records, 0, 0.0), \
        SURFACE_COLUMNS


TAU_COLUMNS = ["eta", "mu", "nu", "sigma", "varpi0", "chi",
               "h1_0", "h2_0", "h5_0"]


def cmd_tau(args):
    points = point_grid(args)

    def work(pt):
        p = pd.Params(*pt)
        sol = pd.solve_sigma(p)
        tl = te.tau_leading(p, sigma=sol.sigma)
        h = te.leading_hamiltonians(p, sigma=sol.sigma)
        return {"eta": pt[0], "mu": pt[1], "nu": pt[2], "sigma": sol.sigma,
                "varpi0": tl.varpi0, "chi": tl.chi, "h1_0": h.h1_0,
                "h2_0": h.h2_0, "h5_0": h.h5_0}

    records = map_points(points, work, args.jobs)
    return RunReport("tau", __version__, records, 0, 0.0), TAU_COLUMNS


PARAMETRIX_COLUMNS = ["kind", "key", "value"]


def cmd_parametrix(args):
    records = []
    data = px.StokesData.truncated()
    records.append({"kind": "stokes", "key": "constraint",
                    "value": px.stokes_check(data)})
    planes = px.plane_membership(px.TRUNCATED_S7)
    records.append({"kind": "stokes", "key": "planes",
                    "value": "|".join(str(k) for k in sorted(planes))})
    co = px.airy_series(args.kmax)
    for k in range(args.kmax + 1):
        records.append({"kind": "airy", "key": f"s_{k}", "value": str(co.s[k])})
        records.append({"kind": "airy", "key": f"t_{k}", "value": str(co.t[k])})
    p = pd.Params(args.eta, args.mu, args.nu)
    curve = sc.build_curve(p)
    gp = px.GlobalParametrix(curve=curve)
    jr = px.jump_residuals(gp)
    records.append({"kind": "parametrix", "key": "jump_alpha",
                    "value": jr["alpha"]})
    records.append({"kind": "parametrix", "key": "jump_beta",
                    "value": jr["beta"]})
    records.append({"kind": "parametrix", "key": "normalization_slope",
                    "value": px.normalization_slope(gp)})
    rd = px.residue_W1(gp)
    for i in range(3):
        for j in range(3):
            records.append({"kind": "residue", "key": f"W1_{i+1}{j+1}",
                            "value": float(np.real(rd.W1[i, j]))})
    records.append({"kind": "residue", "key": "pairing",
                    "value": float(np.real(-(rd.W1 + rd.W1_hat)[2, 0]))})
    return RunReport("parametrix", __version__, records, 0, 0.0), \
        PARAMETRIX_COLUMNS


CRITICAL_COLUMNS = ["eta0", "C_down", "tauhat0_exponent", "varpi0_boundary",
                    "normalizer_gap", "c_lead_plus", "c_lead_minus"]


def cmd_critical(args):
    eta_axis = parse_grid(args.grid)[0] if args.grid else [args.eta]
    records = []
    for eta0 in eta_axis:
        if eta0 <= 0:
            continue
        nu0 = 125.0 * eta0**3 / 108.0
        q = float(cr.tauhat0_exponent(eta0, nu0, eta0))
        v = te.tau_leading(pd.Params(eta0, 0.0, nu0),
                           sigma=5.0 * eta0 / 3.0).varpi0
        records.append({
            "eta0": eta0,
            "C_down": cr.scaling_constant_plus(eta0, (0.0, -1.0)),
            "tauhat0_exponent": q,
            "varpi0_boundary": v,
            "normalizer_gap": abs(q - v),
            "c_lead_plus": cr.tritronquee_constant(eta0, "plus"),
            "c_lead_minus": cr.tritronquee_constant(-eta0, "minus"),
        })
    if not records:
        raise ConfigError("no positive eta0 values in the grid")
    return RunReport("critical", __version__, records, 0, 0.0), \
        CRITICAL_COLUMNS


PI_COLUMNS = ["x", "q", "qprime", "H", "H_residual"]


def cmd_pi(args):
    if args.x_start > -20.0:
        raise ConfigError("x-start must be <= -20 (asymptotic seed region)")
    tr = cr.pi_integrate(args.x_start, args.x_end, n_points=args.x_count)
    resid = tr.hamiltonian_residuals()
    records = [{"x": float(tr.x[i]), "q": float(tr.q[i]),
                "qprime": float(tr.qprime[i]), "H": float(tr.H[i]),
                "H_residual": float(resid[i])}
               for i in range(len(tr.x))]
    # degeneration constants on both strata
    for side, e0 in (("plus", 1.0), ("minus", -1.0)):
        records.append({"x": float("nan"), "q": float("nan"),
                        "qprime": float("nan"),
                        "H": cr.tritronquee_constant(e0, side),
                        "H_residual": float("nan")})
    return RunReport("pi", __version__, records, 0, 0.0), PI_COLUMNS


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="tau34",
        description="Spectral-curve and tau-function numerics for the "
                    "(3,4) string equation")
    sub = ap.add_subparsers(dest="command", required=True)
    common = {
        "--config": dict(type=str, default=None,
                         help="flat key = value config file"),
        "--eta": dict(type=float, default=1.0),
        "--mu": dict(type=float, default=0.0),
        "--nu": dict(type=float, default=0.0),
        "--grid": dict(type=str, default=None,
                       help="per-axis min:max:count[:log], comma separated"),
        "--format": dict(dest="format_", choices=("csv", "json"),
                         default="csv"),
        "--out": dict(type=str, default=None),
        "--jobs": dict(type=int, default=1),
        "--tol-scale": dict(dest="tol_scale", type=float, default=1.0),
    }
    for name, fn in (("sigma", cmd_sigma), ("certify", cmd_certify),
                     ("surface", cmd_surface), ("tau", cmd_tau),
                     ("parametrix", cmd_parametrix),
                     ("critical", cmd_critical), ("pi", cmd_pi)):
        sp = sub.add_parser(name)
        for flag, kw in common.items():
            sp.add_argument(flag, **kw)
        sp.set_defaults(func=fn)
    sub.choices["certify"].add_argument("--corrupt-stokes",
                                        action="store_true",
                                        help="debug: negative control")
    sub.choices["parametrix"].add_argument("--kmax", type=int, default=5)
    sub.choices["pi"].add_argument("--x-start", type=float, default=-24.0)
    sub.choices["pi"].add_argument("--x-end", type=float, default=-1.0)
    sub.choices["pi"].add_argument("--x-count", type=int, default=231)
    return ap


def apply_config(args, argv):
    if not args.config:
        return args
    conf = read_config(args.config)
    passed_flags = {a.lstrip("-").split("=", 1)[0].replace("-", "_")
                    for a in argv if a.startswith("--")}
    mapping = {"eta": float, "mu": float, "nu": float, "grid": str,
               "format": str, "out": str, "jobs": int, "tol-scale": float,
               "kmax": int, "x-start": float, "x-end": float,
               "x-count": int}
    for key, raw in conf.items():
        if key not in mapping:
            raise ConfigError(f"unknown config key {key!r}")
        attr = key.replace("-", "_")
        if attr == "format":
            attr = "format_"
        if key.replace("-", "_") in passed_flags or key in passed_flags:
            continue    # flags override the file
        if not hasattr(args, attr):
            continue
        try:
            setattr(args, attr, mapping[key](raw))
        except ValueError as exc:
            raise ConfigError(f"config key {key!r}: {exc}")
    return args


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    t0 = time.perf_counter()
    try:
        args = apply_config(args, argv)
        report, columns = args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"tau34: error: {exc}", file=sys.stderr)
        return 2
    report.wall_time = time.perf_counter() - t0
    emit(report, columns, args.format_, args.out)
    print(f"tau34 {report.command}: {len(report.records)} records, "
          f"{report.n_failed} failed, {report.wall_time:.2f}s",
          file=sys.stderr)
    return 1 if report.n_failed else 0


if __name__ == "__main__":
    sys.exit(main())
