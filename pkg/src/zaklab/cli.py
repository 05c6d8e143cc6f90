"""Command-line interface: ``zaklab <command> ...``.

Exit codes: 0 on success, 2 on invalid input, 3 on a numerically unusable
problem (for instance an ill-conditioned Gram matrix).
"""

import os

_threads = os.environ.get("ZAKLAB_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[_var] = _threads

import argparse  # noqa: E402
import json  # noqa: E402
import sys  # noqa: E402
from fractions import Fraction  # noqa: E402
from pathlib import Path  # noqa: E402

import numpy as np  # noqa: E402

from .classify import TOL_ZERO, classify_gabor, find_zero, theorem_harness  # noqa: E402
from .errors import NumericalError, ValidationError  # noqa: E402
from .functions import gaussian_function, indicator_function  # noqa: E402
from .gabor import frame_sum_check, gabor_system  # noqa: E402
from .geometry import IntervalUnion, domain_from_json  # noqa: E402
from .lattice import check_pair, density_product, dual, fundamental_domain, lattice_from_json, make_lattice  # noqa: E402
from .presets import PRESET_IDS, load_domain, run_preset  # noqa: E402
from .serialize import dumps, grid_csv, write_pgm  # noqa: E402
from .spectral import (LatticeCosets, dual_coefficients, gram_section, orthogonality_check, riesz_bounds_estimate,  # noqa: E402
                       spectrum_from_json)
from .tiling import cover_set, multitiling_level  # noqa: E402
from .zak import Gaussian, Indicator, window_from_json, zak_eval, zak_grid, zak_section  # noqa: E402

NAMED_DOMAINS = {
    "parallelogram": "parallelogram",
    "lshape": "lshape",
    "octagon": "octagon",
    "irrational-gap": "irrational_gap",
    "tiling-c": "tiling_c",
}

SCHEMA_HELP = """\
input forms:
  --domain   unit-interval | parallelogram | lshape | octagon | irrational-gap | tiling-c
             | FILE.json with {"type": "intervals", "items": [[a, b], ...]}
               or {"type": "polygon", "vertices": [[x, y], ...]}
               or {"type": "polygon_union", "parts": [[[x, y], ...], ...]}
  --window   gaussian | gaussian2 | any --domain form (indicator window)
             | FILE.json with {"type": "indicator", "domain": {...}} or {"type": "gaussian", "dim": d}
  --M, --N   a number such as 1, 0.5 or 1/2 | I2 | inline JSON [[a, b], [c, d]]
             | FILE.json with {"gen": [[...]]}
  --spectrum Z | Z2 | FILE.json or inline JSON with {"type": "list", "freqs": [...]}
             or {"type": "cosets", "lattice": {"gen": ...}, "cosets": [...], "radius": r}
"""


def _load_json_arg(text):
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        try:
            return json.loads(path.read_text())
        except OSError as exc:
            raise ValidationError(f"cannot read {text}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{text} is not valid JSON: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"cannot parse {text!r}") from exc


def parse_domain(text):
    if text == "unit-interval":
        return IntervalUnion([(0.0, 1.0)])
    if text in NAMED_DOMAINS:
        return load_domain(NAMED_DOMAINS[text])
    return domain_from_json(_load_json_arg(text))


def parse_window(text):
    if text == "gaussian":
        return Gaussian(1)
    if text == "gaussian2":
        return Gaussian(2)
    if text == "unit-interval" or text in NAMED_DOMAINS:
        return Indicator(parse_domain(text))
    obj = _load_json_arg(text)
    if obj.get("type") in ("indicator", "gaussian"):
        return window_from_json(obj)
    return Indicator(domain_from_json(obj))


def parse_lattice(text):
    if text == "I2":
        return make_lattice(np.eye(2))
    try:
        return make_lattice(float(Fraction(text)))
    except (ValueError, ZeroDivisionError):
        pass
    obj = _load_json_arg(text)
    if isinstance(obj, dict):
        return lattice_from_json(obj)
    return make_lattice(obj)


def parse_spectrum(text, radius=None):
    if text in ("Z", "Z2"):
        lat = make_lattice(1.0 if text == "Z" else np.eye(2))
        return LatticeCosets(lat, None, radius or 10)
    spec = spectrum_from_json(_load_json_arg(text))
    if radius is not None and isinstance(spec, LatticeCosets):
        spec = spec.with_radius(radius)
    return spec


def _point(text, dim):
    try:
        vals = [float(Fraction(v)) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse point {text!r}") from exc
    if len(vals) != dim:
        raise ValidationError(f"expected {dim} comma-separated coordinates, got {text!r}")
    return np.array(vals)


def _emit(args, obj):
    text = dumps(obj)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_lattice(args):
    m = parse_lattice(args.M)
    report = {"lattice": m.to_json(), "det": m.det, "density": m.density(), "dual": dual(m).to_json()}
    if m.dim <= 2:
        report["fundamental_domain"] = fundamental_domain(m).to_json()
    if args.N:
        n = parse_lattice(args.N)
        report["pair"] = check_pair(m, n).to_json()
        report["density_product"] = density_product(m, n)
    _emit(args, report)


def cmd_tiling(args):
    dom = parse_domain(args.domain)
    m = parse_lattice(args.M)
    if args.action == "level":
        _emit(args, multitiling_level(dom, m, args.samples, args.seed))
    else:
        if not args.point:
            raise ValidationError("tiling cover needs --point")
        lams = cover_set(dom, m, _point(args.point, m.dim))
        _emit(args, {"point": args.point, "count": len(lams), "translations": lams})


def cmd_zak(args):
    w = parse_window(args.window)
    m, n = parse_lattice(args.M), parse_lattice(args.N)
    if args.action == "eval":
        if not (args.x and args.xi):
            raise ValidationError("zak eval needs --x and --xi")
        z = zak_eval(w, m, _point(args.x, m.dim), _point(args.xi, m.dim), args.truncation)
        _emit(args, {"x": args.x, "xi": args.xi, "value": z, "magnitude": abs(z)})
        return
    if args.action == "zero":
        _emit(args, find_zero(w, m, n, coarse_res=args.res, levels=args.levels))
        return
    res_xi = args.res_xi or args.res
    if m.dim == 1:
        grid = zak_grid(w, m, n, args.res, res_xi, args.truncation)
        xs, xis, values = grid.x_nodes, grid.xi_nodes, grid.values
        meta = {"truncation": grid.truncation, "tail_bound": grid.tail_bound}
    else:
        if not args.x:
            raise ValidationError("a 2-D zak grid is written as the xi-section at --x")
        x = _point(args.x, m.dim)
        xis, section = zak_section(w, m, n, x, res_xi, args.truncation)
        xs, values = x[None], section.reshape(1, -1)
        meta = {"x": x}
    mag = np.abs(values)
    if args.format == "csv":
        text = grid_csv(xs, xis, values)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    elif args.format == "pgm":
        if not args.out:
            raise ValidationError("--format pgm needs --out")
        image = mag if m.dim == 1 else mag.reshape(res_xi, res_xi)
        peak = write_pgm(args.out, image)
        sys.stdout.write(dumps({"written": args.out, "max_magnitude": peak}))
    else:
        _emit(args, {**meta, "x_nodes": xs, "xi_nodes": xis, "magnitude": mag,
                     "min_magnitude": float(mag.min()), "max_magnitude": float(mag.max())})


def cmd_classify(args):
    w = parse_window(args.window)
    m, n = parse_lattice(args.M), parse_lattice(args.N)
    res_x = args.res or (256 if m.dim == 1 else 8)
    res_xi = args.res_xi or (256 if m.dim == 1 else 32)
    grid = zak_grid(w, m, n, res_x, res_xi, args.truncation)
    _emit(args, classify_gabor(grid, tol_zero=args.tol_zero))


def cmd_spectral(args):
    dom = parse_domain(args.domain)
    spec = parse_spectrum(args.spectrum, args.radius)
    if args.action == "gram":
        g = gram_section(dom, spec)
        eig = g.eigenvalues()
        _emit(args, {"size": g.size, "min_eigenvalue": eig[0], "max_eigenvalue": eig[-1],
                     "freqs": g.freqs, "gram_real": g.entries.real, "gram_imag": g.entries.imag})
    elif args.action == "dual":
        g = gram_section(dom, spec)
        inv = dual_coefficients(g)
        residual = np.abs(g.entries @ inv - np.eye(g.size)).max()
        _emit(args, {"size": g.size, "residual": residual, "dual_real": inv.real, "dual_imag": inv.imag})
    elif args.action == "ortho":
        _emit(args, {"max_off_diagonal": orthogonality_check(dom, spec)})
    else:
        radii = [int(r) for r in args.radii.split(",")]
        _emit(args, riesz_bounds_estimate(dom, spec, radii))


def cmd_gabor(args):
    dom = parse_domain(args.domain)
    m, n = parse_lattice(args.M), parse_lattice(args.N)
    harness = theorem_harness(dom, m, n, seed=args.seed)
    battery = []
    if m.dim == 1:
        lo, hi = dom.bbox()
        width = 3.0
        tests = [gaussian_function(-width, width),
                 indicator_function(IntervalUnion([(lo[0] + 0.1 * (hi[0] - lo[0]), hi[0] - 0.1 * (hi[0] - lo[0]))]))]
        span = 2 * width + float(hi[0] - lo[0])
        shift_radius = int(np.ceil(span / abs(m.det))) + 1
        sys_ = gabor_system(dom, LatticeCosets(m, None, shift_radius), LatticeCosets(n, None, args.radius))
        for f in tests:
            battery.append({"test_function": f.name, **frame_sum_check(f, sys_, args.quad_res).to_json()})
    bounds = riesz_bounds_estimate(dom, LatticeCosets(n), [5, 10, 20] if m.dim == 1 else [2, 3, 4])
    k = harness.level or 0
    _emit(args, {"harness": harness, "frame_sums": battery, "exponential_bounds": bounds,
                 "ratio_window": [k * bounds.lower_estimates[-1], k * bounds.upper_estimates[-1]]})


def cmd_repro(args):
    report, heat, axes = run_preset(args.preset)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / args.preset
    peak = write_pgm(stem.with_suffix(".pgm"), heat)
    if heat.ndim == 2 and "x_nodes" in axes:
        csv_text = grid_csv(axes["x_nodes"], axes["xi_nodes"], heat.astype(complex))
    else:
        xs = np.asarray(axes["x"], dtype=float)[None]
        csv_text = grid_csv(xs, axes["xi_nodes"], heat.reshape(1, -1).astype(complex))
    stem.with_suffix(".csv").write_text(csv_text)
    report["heatmap"] = {"pgm": str(stem.with_suffix(".pgm")), "csv": str(stem.with_suffix(".csv")),
                         "rows": axes["rows"], "cols": axes["cols"], "max_magnitude": peak}
    text = dumps(report)
    stem.with_suffix(".json").write_text(text)
    sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="zaklab", description="Zak transform and Gabor system toolkit",
                                     epilog=SCHEMA_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, epilog=SCHEMA_HELP,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write the report here instead of stdout")
        return p

    p = add("lattice", cmd_lattice, "describe a lattice and optionally a pair (M, N)")
    p.add_argument("--M", required=True)
    p.add_argument("--N")

    p = add("tiling", cmd_tiling, "multi-tiling level or cover set")
    p.add_argument("action", choices=["level", "cover"])
    p.add_argument("--domain", required=True)
    p.add_argument("--M", "--lattice", dest="M", required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--point", help="comma-separated point for 'cover'")

    p = add("zak", cmd_zak, "evaluate the Zak transform")
    p.add_argument("action", choices=["grid", "eval", "zero"])
    p.add_argument("--window", required=True)
    p.add_argument("--M", required=True)
    p.add_argument("--N", required=True)
    p.add_argument("--res", type=int, default=64)
    p.add_argument("--res-xi", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--levels", type=int, default=14)
    p.add_argument("--x")
    p.add_argument("--xi")
    p.add_argument("--format", choices=["json", "csv", "pgm"], default="json")

    p = add("classify", cmd_classify, "classify G(w, M Z^d x N Z^d)")
    p.add_argument("--window", required=True)
    p.add_argument("--M", required=True)
    p.add_argument("--N", required=True)
    p.add_argument("--res", type=int)
    p.add_argument("--res-xi", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--tol-zero", type=float, default=TOL_ZERO, help="|Z| below this counts as zero")

    p = add("spectral", cmd_spectral, "Gram sections of exponential systems")
    p.add_argument("action", choices=["gram", "dual", "ortho", "bounds"])
    p.add_argument("--domain", required=True)
    p.add_argument("--spectrum", required=True)
    p.add_argument("--radius", type=int)
    p.add_argument("--radii", default="5,10,20")

    p = add("gabor", cmd_gabor, "theorem harness plus frame-sum checks")
    p.add_argument("action", choices=["check"])
    p.add_argument("--domain", required=True)
    p.add_argument("--M", required=True)
    p.add_argument("--N", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=100, help="modulation index radius")
    p.add_argument("--quad-res", type=int, default=256)

    p = sub.add_parser("repro", help="run a reproduction preset")
    p.set_defaults(func=cmd_repro)
    p.add_argument("preset", choices=PRESET_IDS)
    p.add_argument("--out-dir", default=".", help="directory for <preset>.json/.pgm/.csv")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except ValidationError as exc:
        sys.stderr.write(f"zaklab: invalid input: {exc}\n")
        return 2
    except NumericalError as exc:
        sys.stderr.write(f"zaklab: numerical failure: {exc}\n")
        return 3
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
