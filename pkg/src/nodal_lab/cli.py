"""Command-line interface: ``nodal-lab <subcommand> ...``.

Every run prints one JSON document ``{"manifest": ..., "result": ...}``
(or CSV polylines for ``trace --format csv``). The manifest echoes the
command line and every parameter; wall time goes to stderr so that reruns
with the same arguments are byte-identical on stdout.

Exit codes: 0 success, 1 computation error (JSON ``{"error": ...}`` on
stdout), 2 usage error.
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from . import mean_measure as mm
from .harmonics import RealHarmonic, sample_uniform
from .legendre import J0_FIRST_ZERO, legendre_roots, theta_bound_check
from .mesh import icosphere, level_for_degree
from .nodal_geometry import (
    common_zeros,
    critical_points,
    crofton_length,
    inner_radius,
    nodal_length,
    trace_nodal,
)
from .nullcone import ComplexHarmonic, PoleSet, poles, reconstruct
from .prescribed_zeros import (
    DEFAULT_RANK_TOL,
    PointConfiguration,
    harmonic_vanishing_at,
    independence_rank,
    interpolate,
)
from .verify import SUITES, all_passed, run_suite

PROG = "nodal-lab"


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read input {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"input {path!r} is not valid JSON: {exc}") from exc


def _unwrap(data, key="harmonic"):
    if isinstance(data, dict) and "result" in data:
        data = data["result"]
    if isinstance(data, dict) and key in data and isinstance(data[key], dict):
        data = data[key]
    return data


def _require_seed(args):
    if args.seed is None:
        raise UsageError(f"'{args.command}' is stochastic: --seed is required")


def _harmonic_arg(args, key="u", degree=None, stream=0):
    """Harmonic from ``--input`` or a seeded uniform draw of ``--degree``."""
    if args.input is not None:
        data = _unwrap(_load_json(args.input))
        if isinstance(data, dict) and key in data:
            data = data[key]
        try:
            return RealHarmonic.from_dict(data)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"input is not a harmonic: missing {exc}") from exc
    degree = args.degree if degree is None else degree
    if degree is None:
        raise UsageError("give --input FILE or --degree N (random harmonic)")
    _require_seed(args)
    return sample_uniform(degree, [args.seed, stream])


def _mesh(args, n):
    level = args.mesh_level if args.mesh_level is not None else level_for_degree(n)
    return icosphere(level)


def cmd_roots(args):
    if args.degree is None or args.degree < 1:
        raise UsageError("--degree N with N >= 1 is required")
    n = args.degree
    r = legendre_roots(n)
    theta, bound, ok = theta_bound_check(n)
    return {
        "degree": n,
        "roots": r.roots,
        "theta_n": theta,
        "bound": bound,
        "j0": J0_FIRST_ZERO,
        "bound_holds": ok,
    }


def _points_input(args):
    data = _load_json(args.input) if args.input is not None else None
    if not isinstance(data, dict) or "degree" not in data or "points" not in data:
        raise UsageError("--input must hold {degree, points, ...}")
    return data


def cmd_construct(args):
    data = _points_input(args)
    n = int(data["degree"])
    pts = np.asarray(data["points"], dtype=float)
    if "y" not in data:
        raise UsageError("construct input needs an auxiliary point 'y'")
    rank, independent = independence_rank(PointConfiguration(n, pts), args.tol)
    u = harmonic_vanishing_at(pts, n, data["y"])
    # for dependent points the determinant vanishes identically
    residual = float(np.max(np.abs(u(pts))) / u.norm) if independent else None
    return {"harmonic": u.to_dict(), "rank": rank, "independent": independent, "max_relative_residual": residual}


def cmd_interpolate(args):
    data = _points_input(args)
    if "values" not in data:
        raise UsageError("interpolate input needs 'values'")
    u = interpolate(data["points"], data["values"], int(data["degree"]), args.tol)
    return {"harmonic": u.to_dict()}


def cmd_poles(args):
    _require_seed(args)
    if args.input is None:
        raise UsageError("poles needs --input FILE (harmonic JSON)")
    data = _unwrap(_load_json(args.input))
    try:
        p = ComplexHarmonic.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"input is not a harmonic: missing {exc}") from exc
    result = poles(p, seed=args.seed).to_dict()
    result["degree"] = p.degree
    return result


def cmd_reconstruct(args):
    _require_seed(args)
    if args.input is None:
        raise UsageError("reconstruct needs --input FILE (poles JSON)")
    data = _unwrap(_load_json(args.input), key="poles")
    try:
        ps = PoleSet.from_dict(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"input is not a pole set: {exc}") from exc
    n = args.degree if args.degree is not None else data.get("degree", ps.total // 2)
    p = reconstruct(ps, int(n), seed=args.seed)
    return {"harmonic": p.to_dict()}


def cmd_trace(args):
    u = _harmonic_arg(args)
    curves = trace_nodal(u, _mesh(args, u.degree))
    if args.format == "csv":
        return curves.to_csv()
    out = curves.to_dict()
    out["length"] = nodal_length(curves)
    return out


def cmd_length(args):
    _require_seed(args)
    u = _harmonic_arg(args)
    curves = trace_nodal(u, _mesh(args, u.degree))
    est, err = crofton_length(u, args.circles, args.seed)
    return {
        "mesh_length": nodal_length(curves),
        "crofton_estimate": est,
        "crofton_stderr": err,
        "circles": args.circles,
        "regular": curves.regular,
        "upper_bound": 2 * math.pi * u.degree,
        "lower_bound": 2 * math.pi / J0_FIRST_ZERO * (u.degree + 0.5),
    }


def cmd_inr(args):
    u = _harmonic_arg(args)
    mesh = _mesh(args, u.degree)
    return {
        "inner_radius": inner_radius(u, mesh),
        "lower_bound": math.asin(1.0 / u.degree),
        "upper_bound": legendre_roots(u.degree).theta_n,
        "mesh_edge": mesh.edge_length,
    }


def cmd_common_zeros(args):
    if args.input is not None:
        u = _harmonic_arg(args, "u")
        v = _harmonic_arg(args, "v")
    else:
        if args.degree is None:
            raise UsageError("give --input FILE with {u, v} or --degree N [--degree2 M]")
        u = _harmonic_arg(args, degree=args.degree, stream=0)
        v = _harmonic_arg(args, degree=args.degree2 or args.degree, stream=1)
    z = common_zeros(u, v, _mesh(args, max(u.degree, v.degree)))
    out = z.to_dict()
    out["bezout_bound"] = 2 * u.degree * v.degree
    return out


def cmd_critical(args):
    _require_seed(args)
    u = _harmonic_arg(args)
    z = critical_points(u, _mesh(args, u.degree), seed=args.seed)
    out = z.to_dict()
    out["upper_bound"] = 2 * u.degree**2
    return out


def cmd_verify(args):
    report = run_suite(args.suite, 0 if args.seed is None else args.seed)
    return {"suites": report, "passed": all_passed(report)}


def cmd_mean(args):
    if (args.closed is None) == (args.mc is None):
        raise UsageError("give exactly one of --closed M K N1 ... or --mc {length,zeros}")
    if args.closed is not None:
        if len(args.closed) < 3:
            raise UsageError("--closed needs M K and K degrees")
        m, k, *degrees = args.closed
        spec = mm.MeanSpec(m, k, tuple(degrees))
        return {"closed_form": mm.mean_measure_closed(spec)}
    _require_seed(args)
    if args.degree is None:
        raise UsageError("--mc needs --degree N")
    if args.mc == "length":
        closed = mm.mean_measure_closed(mm.MeanSpec(2, 1, (args.degree,)))
        r = mm.mc_mean_nodal_length(args.degree, args.samples, args.seed, circles=args.circles)
    else:
        n2 = args.degree2 or args.degree
        closed = mm.mean_measure_closed(mm.MeanSpec(2, 2, (args.degree, n2)))
        r = mm.mc_mean_common_zeros(args.degree, n2, args.samples, args.seed, args.mesh_level)
    out = {"closed_form": closed}
    out.update(r.to_dict())
    return out


COMMANDS = {
    "roots": (cmd_roots, "Legendre roots, theta_n and its Bessel-zero bound"),
    "construct": (cmd_construct, "harmonic vanishing at given points (kernel determinant)"),
    "interpolate": (cmd_interpolate, "minimal-norm harmonic with prescribed values"),
    "poles": (cmd_poles, "pole lines of a harmonic on the null cone"),
    "reconstruct": (cmd_reconstruct, "harmonic from 2n distinct poles"),
    "trace": (cmd_trace, "nodal curves as closed polylines"),
    "length": (cmd_length, "nodal length by mesh and by Crofton sampling"),
    "inr": (cmd_inr, "inner radius of the nodal set"),
    "common-zeros": (cmd_common_zeros, "common zeros of two harmonics"),
    "critical": (cmd_critical, "critical points of a harmonic"),
    "verify": (cmd_verify, "run invariant suites"),
    "mean": (cmd_mean, "mean nodal measures: closed form or Monte Carlo"),
}


def _add_common(p):
    p.add_argument("--seed", type=int, default=None, help="random seed (required for stochastic commands)")
    p.add_argument("--mesh-level", type=int, default=None, help="icosphere subdivision level")
    p.add_argument("--samples", type=int, default=1000, help="Monte Carlo samples")
    p.add_argument("--circles", type=int, default=10_000, help="great circles for Crofton estimates")
    p.add_argument("--tol", type=float, default=DEFAULT_RANK_TOL, help="relative rank tolerance")
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--input", default=None, help="input JSON file ('-' for stdin)")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--degree2", type=int, default=None, help="second degree for pairs")


def build_parser():
    parser = argparse.ArgumentParser(prog=PROG, description="Spherical harmonics and their nodal sets.")
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_common(p)
        if name == "verify":
            p.add_argument("suite", choices=SUITES + ("all",))
        if name == "mean":
            p.add_argument("--closed", type=int, nargs="+", metavar="INT", help="M K N1 ... NK")
            p.add_argument("--mc", choices=("length", "zeros"))
    return parser


def _manifest(argv, args):
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command",)}
    return {
        "command": [PROG, *argv],
        "subcommand": args.command,
        "seed": args.seed,
        "mesh_level": args.mesh_level,
        "version": __version__,
        "parameters": params,
    }


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    if args.format == "csv" and args.command != "trace":
        parser.error("--format csv is only available for 'trace'")
    manifest = _manifest(argv, args)
    start = time.perf_counter()
    fn = COMMANDS[args.command][0]
    try:
        result = fn(args)
    except UsageError as exc:
        print(f"usage: {PROG} {args.command} [options]  (see --help)", file=sys.stderr)
        print(f"{PROG} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, ArithmeticError, np.linalg.LinAlgError) as exc:
        doc = {"manifest": manifest, "error": {"type": type(exc).__name__, "message": str(exc)}}
        _emit(json.dumps(_jsonable(doc), indent=2) + "\n", args.out)
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    finally:
        print(f"wall_time_s: {time.perf_counter() - start:.3f}", file=sys.stderr)
    if isinstance(result, str):
        _emit(result, args.out)
    else:
        _emit(json.dumps(_jsonable({"manifest": manifest, "result": result}), indent=2) + "\n", args.out)
    if args.command == "verify" and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
