"""Command-line front end: one subcommand per experiment, CSV/JSON outputs.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, complexfn, metric, zeros
from .errors import DomainError, PoleError, ZcmError

COMMANDS = ("eval", "zeros", "gram", "positivity", "detscan", "hermiticity", "flow", "crossing")

DEFAULTS = {
    "alpha": 1.0,
    "n": 20,
    "t_max": 50.0,
    "grid": 101,
    "tol": 1e-10,
    "out": ".",
    "format": "csv",
    "s": "0.5+14.134725141734695j",
    "seed": 0,
}

FLOW_PROBES = (0.3 + 5j, 0.7 + 3j, 0.2 + 8j, 0.9 + 2j, 0.4 + 12j)


class UsageError(Exception):
    pass


def _complex(text) -> complex:
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}")


def _fmt(x) -> str:
    return repr(float(x))


CONVERT = {
    "alpha": float,
    "n": int,
    "t_max": float,
    "grid": int,
    "tol": float,
    "out": str,
    "format": str,
    "s": str,
    "seed": int,
}


def read_config(path) -> dict:
    """Flat ``key = value`` file; '#' starts a comment; dashes in keys allowed."""
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONVERT:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value
    return cfg


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, help="Gaussian kernel rate (default 1.0)")
    common.add_argument("--n", type=int, help="number of zeros (default 20)")
    common.add_argument("--t-max", dest="t_max", type=float, help="zero scan height (default 50)")
    common.add_argument("--grid", type=int, help="grid points (default 101)")
    common.add_argument("--tol", type=float, help="tolerance (default 1e-10)")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("--format", choices=("csv", "json"), help="table format (default csv)")
    common.add_argument("--config", help="flat key = value file; flags take precedence")
    common.add_argument("--s", help="complex argument for eval, e.g. 0.5+14.1j")
    common.add_argument("--seed", type=int, help="seed for random test pairs (default 0)")

    p = argparse.ArgumentParser(prog="zcm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "Gamma, zeta, zeta', M and the vacuum overlap at --s",
        "zeros": "critical-line zeros up to --t-max and rectangle counts",
        "gram": "Gram matrix of the first --n zeros at --alpha",
        "positivity": "minimal alpha for a positive Gram matrix, Schwartz margins",
        "detscan": "determinant of the 2x2 induced metric on a --grid scan",
        "hermiticity": "hermiticity residuals on both routes",
        "flow": "H(s, a) and dH/da on a grid in a",
        "crossing": "crossing identity residuals on random pairs",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return p


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags > config file > defaults and validate."""
    cfg = read_config(args.config) if args.config else {}
    conf = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key)
        if flag is not None:
            conf[key] = flag
        elif key in cfg:
            try:
                conf[key] = CONVERT[key](cfg[key])
            except ValueError:
                raise UsageError(f"config value for {key!r} is invalid: {cfg[key]!r}")
        else:
            conf[key] = default
    if not conf["tol"] > 0:
        raise UsageError("--tol must be > 0")
    if conf["n"] < 1:
        raise UsageError("--n must be >= 1")
    if not conf["alpha"] >= 0:
        raise UsageError("--alpha must be >= 0")
    if conf["grid"] < 3:
        raise UsageError("--grid must be >= 3")
    if not 0 < conf["t_max"] <= zeros.T_LIMIT:
        raise UsageError(f"--t-max must lie in (0, {zeros.T_LIMIT}]")
    if conf["format"] not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    _complex(conf["s"])
    conf["command"] = args.command
    if args.config:
        conf["config"] = str(args.config)
    return conf


# -- output -------------------------------------------------------------------

def write_table(out: Path, name: str, header, rows, fmt: str) -> str:
    out.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        fname = f"{name}.csv"
        with open(out / fname, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    else:
        fname = f"{name}.json"
        data = [dict(zip(header, r)) for r in rows]
        (out / fname).write_text(json.dumps({"columns": list(header), "rows": data}, indent=1) + "\n")
    return fname


def write_summary(out: Path, conf: dict, results: dict, files: list, **fields) -> dict:
    summary = {
        "command": conf["command"],
        "alpha": fields.get("alpha", conf["alpha"]),
        "n_zeros": fields.get("n_zeros", conf["n"]),
        "min_eigenvalue": fields.get("min_eigenvalue"),
        "minimal_alpha": fields.get("minimal_alpha"),
        "flags": {k: conf[k] for k in sorted(conf) if k != "command"},
        "results": results,
        "files": files,
    }
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# -- commands ----------------------------------------------------------------

def cmd_eval(conf, out):
    s = _complex(conf["s"])
    params = metric.KernelParams(conf["alpha"])
    rows, res = [], {}
    fns = [
        ("gamma", lambda: complexfn.gamma(s)),
        ("zeta", lambda: complexfn.zeta(s)),
        ("zeta_prime", lambda: complexfn.zeta_prime(s)),
        ("M", lambda: complexfn.metric_product_M(s)),
        ("G_closed_vacuum", lambda: metric.metric_closed(0.0, s, params).g),
    ]
    if s.real > 0:
        fns.append(("G_integral_vacuum", lambda: metric.metric_integral(0.0, s, params).g))
    for name, fn in fns:
        try:
            v = complex(fn())
        except PoleError:
            continue
        rows.append([name, _fmt(v.real), _fmt(v.imag)])
        res[name] = _cplx(v)
    files = [write_table(out, "eval", ["function", "re", "im"], rows, conf["format"])]
    write_summary(out, conf, res, files)
    z = res.get("zeta")
    return f"eval s={s}: zeta={complex(z['re'], z['im']) if z else 'pole'}"


def cmd_zeros(conf, out):
    recs = zeros.zeros_up_to(conf["t_max"])
    rows = [[r.index, "%.12g" % r.ordinate, "%.3e" % r.residual] for r in recs]
    files = [write_table(out, "zeros", ["index", "ordinate", "residual"], rows, conf["format"])]
    t = conf["t_max"]
    on_line = zeros.count_zeros_rectangle((0.0, 1.0), (0.0, t))
    off_line = zeros.count_zeros_rectangle((0.55, 0.95), (0.0, t))
    res = {
        "count": len(recs),
        "rectangle_strip": on_line,
        "rectangle_off_line": off_line,
        "max_residual": max((r.residual for r in recs), default=0.0),
    }
    write_summary(out, conf, res, files, n_zeros=len(recs))
    return f"zeros: {len(recs)} up to t={t:g}; strip rectangle counts {on_line}, off-line {off_line}"


def cmd_gram(conf, out):
    g = analysis.gram_matrix(conf["n"], conf["alpha"])
    n = len(g.ordinates)
    rows = [
        [i + 1, j + 1, _fmt(g.entries[i, j].real), _fmt(g.entries[i, j].imag)]
        for i in range(n)
        for j in range(n)
    ]
    files = [write_table(out, "gram", ["i", "j", "re", "im"], rows, conf["format"])]
    vac = metric.metric_closed(0.0, 0.0, metric.KernelParams(conf["alpha"])).g.real
    res = {
        "diagonal_max_dev": float(np.max(np.abs(np.diag(g.entries) - 1.0))),
        "hermiticity_residual": g.hermiticity_residual(),
        "eigenvalues": [float(v) for v in g.eigenvalues],
        "vacuum_norm": vac,
        "vacuum_norm_note": "flag: computed vacuum norm is +K(0)/2 > 0, not negative",
    }
    write_summary(out, conf, res, files, min_eigenvalue=g.min_eigenvalue)
    return f"gram n={n} alpha={conf['alpha']:g}: min eigenvalue {g.min_eigenvalue:.6g}"


def cmd_positivity(conf, out):
    n = conf["n"]
    search = analysis.minimal_alpha_search(n, conf["tol"])
    rows = [[_fmt(a), _fmt(lam)] for a, lam in sorted(search.trace)]
    files = [write_table(out, "positivity", ["alpha", "min_eigenvalue"], rows, conf["format"])]
    m = min(n, 10)
    margins = [
        [i, j, _fmt(analysis.schwartz_margin(i, j, 0.0))]
        for i in range(1, m + 1)
        for j in range(i + 1, m + 1)
    ]
    if margins:
        files.append(write_table(out, "schwartz", ["i", "j", "margin_alpha0"], margins, conf["format"]))
    at_given = analysis.gram_matrix(n, conf["alpha"]).min_eigenvalue
    res = {
        "trace_monotone": search.monotone,
        "min_eigenvalue_at_minimal_alpha": search.min_eigenvalue,
        "negative_margins_alpha0": sum(float(r[2]) < 0 for r in margins),
    }
    write_summary(
        out, conf, res, files, min_eigenvalue=at_given, minimal_alpha=search.alpha
    )
    return f"positivity n={n}: minimal alpha {search.alpha:.9g} (min eigenvalue there {search.min_eigenvalue:.3g})"


def cmd_detscan(conf, out):
    scan = analysis.det_scan(conf["grid"])
    rows = [
        [_fmt(m.x), _fmt(m.g11), _fmt(m.g22), _fmt(m.det), _fmt(m.eigenvalues[0]), _fmt(m.eigenvalues[1])]
        for m in scan
    ]
    files = [write_table(out, "detscan", ["x", "g11", "g22", "det", "eig1", "eig2"], rows, conf["format"])]
    stated = analysis.stated_boundary_metric()
    limit = analysis.induced_metric(0.0)
    off = [m.det for m in scan if m.x != 0.5]
    res = {
        "max_det_off_half": max(off),
        "symmetry_max_dev": max(abs(a.det - b.det) for a, b in zip(scan, scan[::-1])),
        "boundary_stated": {"g11": stated.g11, "g22": stated.g22, "det": stated.det, "eigenvalues": list(stated.eigenvalues)},
        "boundary_limit": {"g11": limit.g11, "g22": limit.g22, "det": limit.det, "eigenvalues": list(limit.eigenvalues)},
    }
    write_summary(out, conf, res, files, n_zeros=None, alpha=None)
    return f"detscan grid={conf['grid']}: max det off x=1/2 is {max(off):.6g}"


def _hermiticity_labels():
    rho = [complex(0.5, r.ordinate) for r in zeros.first_zeros(3)]
    return [0j, 0.3 + 0j, 0.4 + 2j, 0.25 + 1j, 0.7 - 3j] + rho


def cmd_hermiticity(conf, out):
    params = metric.KernelParams(conf["alpha"])
    labels = _hermiticity_labels()
    rows = []
    worst = {"closed": 0.0, "integral": 0.0}
    for i, z1 in enumerate(labels):
        for z2 in labels[i:]:
            rc = metric.hermiticity_residual(z1, z2, params, metric.Route.CLOSED)
            worst["closed"] = max(worst["closed"], rc)
            ri = ""
            if z1.real + z2.real > 0:
                v = metric.hermiticity_residual(z1, z2, params, metric.Route.INTEGRAL)
                worst["integral"] = max(worst["integral"], v)
                ri = _fmt(v)
            rows.append([_fmt(z1.real), _fmt(z1.imag), _fmt(z2.real), _fmt(z2.imag), _fmt(rc), ri])
    header = ["re_z1", "im_z1", "re_z2", "im_z2", "closed", "integral"]
    files = [write_table(out, "hermiticity", header, rows, conf["format"])]
    write_summary(out, conf, {"max_residual": worst}, files, n_zeros=3)
    return f"hermiticity: max residual closed {worst['closed']:.3g}, integral {worst['integral']:.3g}"


def cmd_flow(conf, out):
    rho1 = complex(0.5, zeros.first_zeros(1)[0].ordinate)
    a_grid = np.linspace(-0.5, 0.5, conf["grid"])
    rows = []
    worst = 0.0
    for s in (rho1,) + FLOW_PROBES:
        for a in a_grid:
            f = analysis.flow_H(s, float(a))
            if f.dH_da != 0:
                worst = max(worst, abs(f.dH_da - f.dH_da_fd) / abs(f.dH_da))
            rows.append([
                _fmt(s.real), _fmt(s.imag), _fmt(a),
                _fmt(f.H.real), _fmt(f.H.imag), _fmt(f.dH_da.real), _fmt(f.dH_da.imag),
            ])
    header = ["re_s", "im_s", "a", "re_H", "im_H", "re_dH", "im_dH"]
    files = [write_table(out, "flow", header, rows, conf["format"])]
    at_zero = analysis.flow_H(rho1, 0.0)
    res = {
        "H_at_first_zero": _cplx(at_zero.H),
        "dH_at_first_zero": _cplx(at_zero.dH_da),
        "max_rel_fd_mismatch": worst,
    }
    write_summary(out, conf, res, files, n_zeros=1, alpha=None)
    return f"flow: |H(rho1, 0)| = {abs(at_zero.H):.3g}, max analytic/FD mismatch {worst:.3g}"


def cmd_crossing(conf, out):
    params = metric.KernelParams(conf["alpha"])
    rng = np.random.default_rng(conf["seed"])
    rows = []
    worst = 0.0
    for _ in range(20):
        z1 = complex(rng.uniform(-1, 2), rng.uniform(-20, 20))
        z2 = complex(rng.uniform(-1, 2), rng.uniform(-20, 20))
        r = metric.crossing_check(z1, z2, params)
        worst = max(worst, r)
        rows.append([_fmt(z1.real), _fmt(z1.imag), _fmt(z2.real), _fmt(z2.imag), _fmt(r)])
    header = ["re_z1", "im_z1", "re_z2", "im_z2", "residual"]
    files = [write_table(out, "crossing", header, rows, conf["format"])]
    write_summary(out, conf, {"max_residual": worst}, files, n_zeros=None)
    return f"crossing: max residual {worst:.3g} over 20 pairs"


HANDLERS = {
    "eval": cmd_eval,
    "zeros": cmd_zeros,
    "gram": cmd_gram,
    "positivity": cmd_positivity,
    "detscan": cmd_detscan,
    "hermiticity": cmd_hermiticity,
    "flow": cmd_flow,
    "crossing": cmd_crossing,
}


def run(conf: dict) -> int:
    name = conf["command"]
    try:
        line = HANDLERS[name](conf, Path(conf["out"]))
    except (DomainError, PoleError, UsageError) as exc:
        print(f"zcm {name}: invalid input: {exc}", file=sys.stderr)
        return 2
    except (ZcmError, ArithmeticError) as exc:
        print(f"zcm {name}: {type(exc).__name__} (tol={conf['tol']:g}): {exc}", file=sys.stderr)
        return 3
    print(line)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        conf = resolve(args)
    except (UsageError, OSError) as exc:
        print(f"zcm {args.command}: invalid input: {exc}", file=sys.stderr)
        return 2
    return run(conf)


if __name__ == "__main__":
    sys.exit(main())
