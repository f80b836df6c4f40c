"""Experiment runner: reproducible CSV/SVG artifacts from the library.

Subcommands: ``evolve`` (probability heatmap after t steps), ``sigma``
(spreading-rate series and angle sweep), ``localization`` (critical-point
table and return-probability decay), ``search`` (scaling table and
marked-vertex probability curve).  Options come from an optional JSON
config file plus flag overrides; identical config and seed produce
bit-identical CSV output.

Exit codes: 0 ok, 1 invalid parameters, 2 numerical failure, 3 I/O error.
"""

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import dynamics, localization, search, spectral
from .errors import NumericalError
from .lattice import HexLattice

FIG3_THETAS = ("pi/30", "4pi/30", "7pi/30", "pi/3", "11pi/30")


def parse_angle(value):
    """Parse an angle given as a float or a 'pi' expression like ``2pi/3``."""
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip().replace(" ", "")
    if "pi" not in text:
        return float(text)
    m = re.fullmatch(r"([+-]?[0-9.]*)\*?pi(?:/([0-9.]+))?", text)
    if not m:
        raise ValueError(f"cannot parse angle {value!r}")
    lead, divisor = m.group(1), m.group(2)
    factor = {"": 1.0, "+": 1.0, "-": -1.0}.get(lead)
    if factor is None:
        factor = float(lead)
    angle = factor * math.pi
    if divisor:
        angle /= float(divisor)
    return angle


def parse_vertex(value):
    if isinstance(value, (tuple, list)):
        x, y, s = value
    else:
        parts = str(value).split(",")
        if len(parts) != 3:
            raise ValueError(f"marked vertex must be 'x,y,s', got {value!r}")
        x, y, s = (int(p) for p in parts)
    return (int(x), int(y), int(s))


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows, metadata):
    """Write a CSV with '#'-prefixed metadata lines and a fixed header row."""
    lines = [f"# {key}={_fmt(val)}" for key, val in metadata.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


_COLOR_ANCHORS = (
    (0.00, (255, 255, 255)),
    (0.25, (65, 105, 225)),
    (0.50, (60, 185, 80)),
    (0.75, (255, 200, 0)),
    (1.00, (214, 30, 60)),
)


def _color(v):
    v = min(max(float(v), 0.0), 1.0)
    for (lo, c_lo), (hi, c_hi) in zip(_COLOR_ANCHORS, _COLOR_ANCHORS[1:]):
        if v <= hi:
            w = (v - lo) / (hi - lo)
            rgb = tuple(round(a + w * (b - a)) for a, b in zip(c_lo, c_hi))
            return "#%02x%02x%02x" % rgb
    return "#%02x%02x%02x" % _COLOR_ANCHORS[-1][1]


def write_svg_heatmap(path, lat, probs, title=""):
    """Probability heatmap: one circle per vertex on the hexagonal embedding."""
    pos = lat.positions
    peak = float(probs.max())
    scale = 10.0
    x = pos[:, 0] * scale
    y = -pos[:, 1] * scale  # SVG y axis points down
    pad = 2.0 * scale
    x0, y0 = x.min() - pad, y.min() - pad
    width, height = x.max() - x.min() + 2 * pad, y.max() - y.min() + 2 * pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0:.1f} {y0:.1f} {width:.1f} {height:.1f}">',
        f'<rect x="{x0:.1f}" y="{y0:.1f}" width="{width:.1f}" height="{height:.1f}" '
        f'fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{x0 + 5:.1f}" y="{y0 + 12:.1f}" '
                     f'font-size="10" fill="#333">{title}</text>')
    radius = 0.36 * scale
    for i in range(lat.N):
        v = 0.0 if peak == 0.0 else math.sqrt(probs[i] / peak)
        parts.append(f'<circle cx="{x[i]:.1f}" cy="{y[i]:.1f}" r="{radius:.1f}" '
                     f'fill="{_color(v)}"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_evolve(opts):
    n = int(opts["n"])
    theta = parse_angle(opts["theta"])
    t_max = int(opts["tmax"])
    lat = HexLattice(n)
    state = dynamics.centered_state(lat, opts["init"])
    dynamics.check_spread_room(state, t_max, lat)
    state = spectral.spectral_evolve(state, t_max, theta, lat)
    probs = np.abs(state) ** 2
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    meta = {"command": "evolve", "n": n, "theta": theta, "tmax": t_max,
            "init": opts["init"], "seed": int(opts["seed"])}
    pos = lat.positions
    idx = np.arange(lat.N)
    rows = zip(idx % n, (idx // n) % n, idx // (n * n),
               pos[:, 0], pos[:, 1], probs)
    write_csv(out / "distribution.csv", ["x", "y", "s", "px", "py", "p"], rows, meta)
    write_svg_heatmap(out / "distribution.svg", lat, probs,
                      title=f"t={t_max} theta={theta:.4f} n={n}")
    return [out / "distribution.csv", out / "distribution.svg"]


def cmd_sigma(opts):
    thetas = [parse_angle(t) for t in opts["thetas"]]
    sweep_points = int(opts["sweep_points"])
    if not thetas and sweep_points == 0:
        raise ValueError("nothing to do: no angles given and sweep disabled")
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    written = []
    base_meta = {"command": "sigma", "init": opts["init"], "seed": int(opts["seed"])}
    if thetas:
        n = int(opts["n"])
        t_max = int(opts["tmax"])
        lat = HexLattice(n)
        meta = dict(base_meta, n=n, tmax=t_max,
                    thetas=";".join(repr(t) for t in thetas))
        series_rows = []
        fit_rows = []
        for theta in thetas:
            series = dynamics.sigma_series(opts["init"], theta, t_max, lat)
            series_rows.extend((theta, int(t), s)
                               for t, s in zip(series.times, series.sigmas))
            fit_rows.append((theta, series.slope, series.intercept,
                             series.r_squared, series.fit_window[0],
                             series.fit_window[1]))
        write_csv(out / "sigma_series.csv", ["theta", "t", "sigma"], series_rows, meta)
        write_csv(out / "sigma_fits.csv",
                  ["theta", "slope", "intercept", "r_squared", "fit_from", "fit_to"],
                  fit_rows, meta)
        written += [out / "sigma_series.csv", out / "sigma_fits.csv"]
    if sweep_points:
        sweep_n = int(opts["sweep_n"])
        t_probe = int(opts["sweep_tprobe"])
        lat = HexLattice(sweep_n)
        grid = np.linspace(0.0, np.pi, sweep_points)
        sweep = dynamics.theta_sweep(opts["init"], t_probe, grid, lat)
        meta = dict(base_meta, n=sweep_n, t_probe=t_probe, points=sweep_points)
        write_csv(out / "theta_sweep.csv", ["theta", "sigma_over_t"], sweep, meta)
        written.append(out / "theta_sweep.csv")
    return written


def cmd_localization(opts):
    theta = parse_angle(opts["theta"])
    n = int(opts["n"])
    t_start, t_end = int(opts["t_start"]), int(opts["t_end"])
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    meta = {"command": "localization", "theta": theta, "n": n,
            "t_start": t_start, "t_end": t_end, "init": opts["init"],
            "seed": int(opts["seed"])}
    rows = []
    for pt in localization.find_critical_points(theta):
        try:
            formula = localization.hessian_det_formula(pt.k, pt.l, theta)
        except NumericalError:
            formula = float("nan")
        rows.append((pt.k, pt.l, pt.grad_residual, pt.hessian_det, formula))
    write_csv(out / "critical_points.csv",
              ["k", "l", "grad_residual", "hessian_det_numeric", "hessian_det_formula"],
              rows, meta)
    lat = HexLattice(n)
    center = (n // 2, n // 2)
    init = dynamics.initial_state(lat, opts["init"], center=center)
    vertex = (center[0], center[1], 0)
    fit = localization.decay_fit(vertex, init, theta, (t_start, t_end), lat)
    decay_rows = ((int(t), p, fit.exponent)
                  for t, p in zip(fit.times, fit.probabilities))
    write_csv(out / "decay.csv", ["t", "p_vertex", "exponent"], decay_rows, meta)
    return [out / "critical_points.csv", out / "decay.csv"]


def cmd_search(opts):
    n_list = [int(v) for v in opts["n_list"]]
    if not n_list:
        raise ValueError("empty n list")
    theta = parse_angle(opts["theta"])
    t_max = None if opts["tmax"] is None else int(opts["tmax"])
    marked = parse_vertex(opts["marked"])
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    meta = {"command": "search", "theta": theta,
            "n_list": ";".join(str(v) for v in n_list),
            "marked": "%d,%d,%d" % marked, "seed": int(opts["seed"])}
    rows = []
    last = None
    for n in n_list:
        config = search.SearchConfig(n=n, marked=marked, theta=theta, t_max=t_max)
        result = search.run_search(config)
        last = result
        lam = float("nan") if result.lam is None else result.lam
        t_pred = float("nan") if result.t_pred is None else result.t_pred
        p_pred = float("nan") if result.p_pred is None else result.p_pred
        bounds_ok = ""
        if n >= 8:
            bounds_ok = "pass" if search.verify_appendix_bounds(n).all_hold else "fail"
        big_n = 2 * n * n
        rows.append((n, lam, search.c_constant(n), search.s_sum(n), t_pred, p_pred,
                     result.t_sim, result.p_sim,
                     result.t_sim / math.sqrt(big_n * math.log(big_n)),
                     bounds_ok, result.status))
    write_csv(out / "search_scaling.csv",
              ["n", "lambda", "C", "S", "t_pred", "P_pred", "t_sim", "P_sim",
               "t_sim_scaled", "bounds", "status"],
              rows, meta)
    curve_meta = dict(meta, n=last.config.n)
    write_csv(out / "p_marked.csv", ["t", "p_marked"],
              zip((int(t) for t in last.times), last.p_marked), curve_meta)
    return [out / "search_scaling.csv", out / "p_marked.csv"]


# ----------------------------------------------------------------------
# argument handling
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValueError(message)


def _build_parser():
    parser = _Parser(prog="hexwalk",
                     description="honeycomb-lattice quantum walk experiments")
    parser.add_argument("--config", help="JSON file with option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out")
        p.add_argument("--seed", type=int)
        p.add_argument("--init", choices=list(dynamics.INITIAL_STATE_KINDS[:3]))

    p = sub.add_parser("evolve", help="probability distribution heatmap")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--theta")
    p.add_argument("--tmax", type=int)

    p = sub.add_parser("sigma", help="spreading rate: series and angle sweep")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--tmax", type=int)
    p.add_argument("--thetas", nargs="*")
    p.add_argument("--sweep-points", type=int)
    p.add_argument("--sweep-tprobe", type=int)
    p.add_argument("--sweep-n", type=int)

    p = sub.add_parser("localization", help="critical points and decay fit")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--theta")
    p.add_argument("--t-start", type=int)
    p.add_argument("--t-end", type=int)

    p = sub.add_parser("search", help="marked-vertex search scaling")
    common(p)
    p.add_argument("--n-list", nargs="*")
    p.add_argument("--theta")
    p.add_argument("--tmax", type=int)
    p.add_argument("--marked")
    return parser


# applied only where neither the config file nor a flag set the option
_DEFAULTS = {
    "evolve": {"n": 128, "theta": "pi/3", "tmax": 58, "init": "two-node"},
    "sigma": {"n": 256, "tmax": 100, "thetas": list(FIG3_THETAS),
              "sweep_points": 0, "sweep_tprobe": 50, "sweep_n": 128,
              "init": "hexagon"},
    "localization": {"n": 1024, "theta": "pi/3", "t_start": 50, "t_end": 400,
                     "init": "two-node"},
    "search": {"n_list": [8, 16, 32], "theta": "pi/3", "tmax": None,
               "marked": "0,0,0", "init": "hexagon"},
}
_COMMON_DEFAULTS = {"out": "hexwalk-out", "seed": 0}


def _merge_options(args):
    opts = dict(_COMMON_DEFAULTS)
    opts.update(_DEFAULTS[args.command])
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        opts.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, value in vars(args).items():
        if key in ("config", "command") or value is None:
            continue
        opts[key] = value
    return opts


_DISPATCH = {"evolve": cmd_evolve, "sigma": cmd_sigma,
             "localization": cmd_localization, "search": cmd_search}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        opts = _merge_options(args)
        written = _DISPATCH[args.command](opts)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
