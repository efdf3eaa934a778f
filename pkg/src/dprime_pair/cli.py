"""Command-line front end: every computation as a subcommand emitting CSV or JSON.

Exit status is 0 on success, 2 for invalid arguments and 3 when a numerical
routine fails. Output depends only on the flags (and the optional key=value
config file), so repeated invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .cutoff import CONVERGENCE_COLUMNS, convergence_run
from .eigenfunctions import BoundStateFunction, sample
from .formatting import csv_text, json_text
from .limits import COALESCENCE_COLUMNS, DEGENERACY_COLUMNS, coalescence_report, degeneracy_report
from .model import EXCITED, GROUND, ModelParams
from .quadrature import DEFAULT_SPEC, QuadratureError, QuadratureSpec
from .resonances import CURVE_COLUMNS, POLE_COLUMNS, SearchBox, curve_points, find_poles
from .spectrum import DEFAULT_TOL, SWEEP_COLUMNS, SolverError, solve_eigenvalue, sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

EIGEN_COLUMNS = ("beta", "x0", "branch", "energy", "residual")
EIGENFUNCTION_COLUMNS = ("x", "f")

DEFAULT_COALESCE_X0 = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
DEFAULT_DEGENERACY_X0 = tuple(float(v) for v in np.linspace(2.0, 6.0, 9))


class UsageError(Exception):
    """Invalid flag value; the message names the flag."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(self.prog, message)


# --------------------------------------------------------------------------
# validation helpers


def _need(args, dest: str, flag: str):
    value = getattr(args, dest)
    if value is None:
        raise UsageError(flag, "required flag is missing")
    return value


def _finite(value: float, flag: str) -> float:
    if not math.isfinite(value):
        raise UsageError(flag, "must be finite")
    return value


def _negative_beta(args, dest: str = "beta", flag: str = "--beta") -> float:
    beta = _finite(_need(args, dest, flag), flag)
    if not beta < 0.0:
        raise UsageError(flag, "beta must be negative")
    return beta


def _positive(args, dest: str, flag: str) -> float:
    value = _finite(_need(args, dest, flag), flag)
    if not value > 0.0:
        raise UsageError(flag, f"{dest} must be positive")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _spec(args) -> QuadratureSpec:
    if not (args.rel_tol > 0.0 and args.abs_tol > 0.0 and args.max_subdivisions >= 0):
        raise UsageError("--rel-tol/--abs-tol/--max-subdivisions", "quadrature tolerances out of range")
    return QuadratureSpec(args.rel_tol, args.abs_tol, args.max_subdivisions)


def _tol(args) -> float:
    if not args.tol > 0.0:
        raise UsageError("--tol", "tol must be positive")
    return args.tol


# --------------------------------------------------------------------------
# subcommands; each returns (columns, records, json payload or None)


def cmd_eigen(args):
    beta = _negative_beta(args)
    x0 = _positive(args, "x0", "--x0")
    branches = (GROUND, EXCITED) if args.branch == "both" else (GROUND if args.branch == "ground" else EXCITED,)
    tol = _tol(args)
    records = [solve_eigenvalue(b, ModelParams(beta, x0), tol).as_dict() for b in branches]
    return EIGEN_COLUMNS, records, None


def cmd_sweep(args):
    if args.axis == "x0":
        if args.x0 is not None:
            raise UsageError("--x0", "not used with --axis x0; fix beta with --beta")
        fixed = _negative_beta(args)
    else:
        if args.beta is not None:
            raise UsageError("--beta", "not used with --axis beta; fix x0 with --x0")
        fixed = _positive(args, "x0", "--x0")
    lo = _finite(_need(args, "lo", "--lo"), "--lo")
    hi = _finite(_need(args, "hi", "--hi"), "--hi")
    if args.points < 2:
        raise UsageError("--points", "points must be at least 2")
    if not lo < hi:
        raise UsageError("--lo/--hi", "range must satisfy lo < hi")
    if args.axis == "x0" and not lo > 0.0:
        raise UsageError("--lo", "x0 range must be positive")
    if args.axis == "beta" and not hi < 0.0:
        raise UsageError("--hi", "beta range must be negative")
    if args.spacing == "log" and lo < 0.0 < hi:
        raise UsageError("--spacing", "log spacing needs a range that excludes 0")
    table = sweep(args.axis, fixed, (lo, hi), args.points, args.spacing, _tol(args))
    return SWEEP_COLUMNS, table.records(), None


def cmd_resonances(args):
    has_alpha = args.alpha is not None
    has_pair = args.beta is not None or args.x0 is not None
    if has_alpha and has_pair:
        raise UsageError("--alpha", "give either --alpha or --beta with --x0, not both")
    if has_alpha:
        alpha = _finite(args.alpha, "--alpha")
        if not alpha < 0.0:
            raise UsageError("--alpha", "alpha must be negative")
    elif has_pair:
        beta = _negative_beta(args)
        x0 = _positive(args, "x0", "--x0")
        alpha = 4.0 * x0 / beta
    else:
        raise UsageError("--alpha", "give --alpha or both --beta and --x0")
    if not (math.isfinite(args.q1_max) and args.q1_max > 0.0):
        raise UsageError("--q1-max", "q1_max must be positive")
    if not (math.isfinite(args.q2_min) and args.q2_min < 0.0):
        raise UsageError("--q2-min", "q2_min must be negative")
    if args.max_pairs is not None and args.max_pairs < 1:
        raise UsageError("--max-pairs", "max_pairs must be at least 1")
    if args.curve_samples < 2:
        raise UsageError("--curve-samples", "curve_samples must be at least 2")

    box = SearchBox(q1_max=args.q1_max, q2_min=args.q2_min)
    poles = [p.as_dict() for p in find_poles(args.family, alpha, box, args.max_pairs)]
    if not args.dump_curves:
        return POLE_COLUMNS, poles, None

    q1 = np.linspace(0.0, args.q1_max, args.curve_samples)
    curves = []
    for equation in ("real", "imag"):
        for a, b in curve_points(args.family, equation, alpha, q1, q2_min=args.q2_min):
            curves.append({"family": args.family, "equation": equation, "alpha": alpha, "q1": a, "q2": b})
    text = csv_text(POLE_COLUMNS, poles) + "\n" + csv_text(CURVE_COLUMNS, curves)
    return None, text, {"poles": poles, "curves": curves}


def cmd_cutoff(args):
    beta = _negative_beta(args)
    x0 = _positive(args, "x0", "--x0")
    absE = _positive(args, "absE", "--absE")
    if args.n_max < 1:
        raise UsageError("--n-max", "n_max must be at least 1")
    run = convergence_run(ModelParams(beta, x0), absE, args.n_max, _spec(args))
    return CONVERGENCE_COLUMNS, run.records(), None


def cmd_limits(args):
    beta = _negative_beta(args)
    if args.mode == "coalesce":
        absE = _positive(args, "absE", "--absE")
        xs = args.x0_values or list(DEFAULT_COALESCE_X0)
        if any(not (math.isfinite(x) and x > 0.0) for x in xs) or any(b >= a for a, b in zip(xs, xs[1:])):
            raise UsageError("--x0-values", "coalesce mode needs positive, strictly decreasing values")
        table = coalescence_report(beta, xs, absE, _spec(args))
        return COALESCENCE_COLUMNS, table.records(), None
    xs = args.x0_values or list(DEFAULT_DEGENERACY_X0)
    if any(not (math.isfinite(x) and x > 0.0) for x in xs) or any(b <= a for a, b in zip(xs, xs[1:])):
        raise UsageError("--x0-values", "degeneracy mode needs positive, strictly increasing values")
    table = degeneracy_report(beta, xs, _tol(args))
    return DEGENERACY_COLUMNS, table.records(), None


def cmd_eigenfunction(args):
    beta = _negative_beta(args)
    x0 = _positive(args, "x0", "--x0")
    _finite(args.xmin, "--xmin")
    _finite(args.xmax, "--xmax")
    if not args.xmin < args.xmax:
        raise UsageError("--xmin/--xmax", "need xmin < xmax")
    if args.points < 2:
        raise UsageError("--points", "points must be at least 2")
    point = solve_eigenvalue(args.branch, ModelParams(beta, x0), _tol(args))
    f = BoundStateFunction.from_point(point, normalize=args.normalize)
    x, y = sample(f, args.xmin, args.xmax, args.points)
    return EIGENFUNCTION_COLUMNS, [{"x": float(a), "f": float(b)} for a, b in zip(x, y)], None


# --------------------------------------------------------------------------
# parser


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="write here instead of standard output")
    p.add_argument("--config", metavar="PATH", help="key=value file; flags on the command line win")


def _add_tol(p):
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="residual tolerance of the eigenvalue solver")


def _add_quadrature(p):
    p.add_argument("--rel-tol", type=float, default=DEFAULT_SPEC.rel_tol)
    p.add_argument("--abs-tol", type=float, default=DEFAULT_SPEC.abs_tol)
    p.add_argument("--max-subdivisions", type=int, default=DEFAULT_SPEC.max_subdivisions)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dprime-pair", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("eigen", help="solve the bound-state eigenvalues")
    p.add_argument("--beta", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--branch", choices=("ground", "excited", "both"), default="both")
    _add_tol(p)
    _add_common(p)
    p.set_defaults(handler=cmd_eigen)

    p = sub.add_parser("sweep", help="both eigenvalues along a grid in x0 or beta")
    p.add_argument("--axis", choices=("x0", "beta"), required=True)
    p.add_argument("--beta", type=float, help="fixed coupling for --axis x0")
    p.add_argument("--x0", type=float, help="fixed half-distance for --axis beta")
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    _add_tol(p)
    _add_common(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("resonances", help="resonance poles in the complex q plane")
    p.add_argument("--family", choices=("ground", "excited"), required=True)
    p.add_argument("--alpha", type=float, help="4 x0 / beta")
    p.add_argument("--beta", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--q1-max", type=float, default=4.0 * math.pi)
    p.add_argument("--q2-min", type=float, default=-6.0)
    p.add_argument("--max-pairs", type=int)
    p.add_argument("--dump-curves", action="store_true",
                   help="also emit the real-part and imaginary-part zero curves")
    p.add_argument("--curve-samples", type=int, default=241)
    _add_common(p)
    p.set_defaults(handler=cmd_resonances)

    p = sub.add_parser("cutoff", help="cutoff denominators along k_n = n pi / x0")
    p.add_argument("--beta", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--absE", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=200)
    _add_quadrature(p)
    _add_common(p)
    p.set_defaults(handler=cmd_cutoff)

    p = sub.add_parser("limits", help="coalescence (x0 -> 0) or degeneracy (x0 -> inf) tables")
    p.add_argument("--beta", type=float)
    p.add_argument("--mode", choices=("coalesce", "degeneracy"), required=True)
    p.add_argument("--absE", type=float, default=1.0, help="energy scale for coalesce mode")
    p.add_argument("--x0-values", type=_float_list, help="comma-separated x0 sequence")
    _add_tol(p)
    _add_quadrature(p)
    _add_common(p)
    p.set_defaults(handler=cmd_limits)

    p = sub.add_parser("eigenfunction", help="sample a bound-state wavefunction")
    p.add_argument("--beta", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--branch", choices=("ground", "excited"), default="ground")
    p.add_argument("--xmin", type=float, default=-5.0)
    p.add_argument("--xmax", type=float, default=5.0)
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--normalize", action="store_true")
    _add_tol(p)
    _add_common(p)
    p.set_defaults(handler=cmd_eigenfunction)
    return parser


def _subparser(parser, command):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action if command is None else action.choices[command]
    raise KeyError(command)


def read_config(path: str) -> dict[str, str]:
    """Parse a key=value file; blank lines and lines starting with # are ignored."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError("--config", f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _config_path(argv) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def _apply_config(parser, argv, path: str) -> None:
    """Install config values as subcommand defaults, so explicit flags still win."""
    command = next((t for t in argv if t in _subparser(parser, None).choices), None)
    if command is None:
        return
    try:
        values = read_config(path)
    except OSError as exc:
        raise UsageError("--config", f"cannot read {path}: {exc.strerror}") from None
    sub = _subparser(parser, None).choices[command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, text in values.items():
        action = actions.get(key)
        if action is None or key in ("config", "help"):
            raise UsageError("--config", f"unknown key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = text.lower() in ("1", "true", "yes", "on")
            continue
        try:
            value = action.type(text) if action.type else text
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError("--config", f"bad value for {key}: {text!r}") from None
        if action.choices is not None and value not in action.choices:
            raise UsageError("--config", f"{key} must be one of {sorted(action.choices)}")
        defaults[key] = value
        # a required flag may now come from the config
        action.required = False
    sub.set_defaults(**defaults)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        path = _config_path(argv)
        if path is not None:
            _apply_config(parser, argv, path)
        args = parser.parse_args(argv)
        columns, records, payload = args.handler(args)
        if args.format == "json":
            text = json_text(payload if payload is not None else records)
        else:
            text = records if columns is None else csv_text(columns, records)
        _emit(text, args.out)
    except UsageError as exc:
        print(f"dprime-pair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, QuadratureError, RuntimeError, ArithmeticError) as exc:
        print(f"dprime-pair: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # library-side validation not caught above
        print(f"dprime-pair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dprime-pair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
