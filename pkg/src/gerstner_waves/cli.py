"""Command-line front end: parameter resolution, simulation, verification,
classification, and figure reproduction.

Exit codes: 0 success, 2 usage or parse error, 3 constraint violation,
4 numerical failure.  All numeric output carries 17 significant digits and
identical invocations produce byte-identical files.
"""

import argparse
import sys

import numpy as np

from . import analysis, fields, figures, kinematics
from .errors import ConvergenceError, DomainError
from .formats import (
    dumps_json,
    parse_key_value,
    surface_csv,
    trajectory_csv,
    write_text_atomic,
)
from .params import (
    EARTH_ROTATION_RATE,
    PhysicalConstants,
    WaveParameters,
    regime_constants,
    resolve_classical,
    resolve_geophysical_from_current,
    resolve_geophysical_from_m,
    validate,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONSTRAINT = 3
EXIT_NUMERIC = 4

_PARAM_KEYS = ("omega", "g", "rho", "p0", "k", "b0", "m", "U", "branch", "sign_m")


class _UsageError(Exception):
    pass


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("parameters (inline flags or --config, not both)")
    group.add_argument("--config", metavar="FILE", help="key=value parameter file")
    group.add_argument("--regime", choices=["classical", "geo"], help="expected regime")
    group.add_argument("--omega", type=float, help="rotation rate, rad/s")
    group.add_argument("--g", type=float, help="gravitational acceleration, m/s^2")
    group.add_argument("--rho", type=float, help="water density, kg/m^3")
    group.add_argument("--p0", type=float, help="atmospheric pressure, Pa")
    group.add_argument("--k", type=float, help="wave number, 1/m")
    group.add_argument("--b0", type=float, help="surface label, m (<= 0)")
    group.add_argument("--m", type=float, help="orbital parameter, m/s (geophysical)")
    group.add_argument("--U", type=float, help="current velocity, m/s")
    group.add_argument("--branch", choices=["lower", "upper"],
                       help="quadratic root for --U in the geophysical regime")
    group.add_argument("--sign-m", dest="sign_m", type=int, choices=[1, -1],
                       help="sign of m for --U in the classical regime")


def _param_mapping_from_args(args) -> dict[str, str]:
    if args.config is not None:
        inline = [key for key in _PARAM_KEYS if getattr(args, key) is not None]
        if inline:
            raise _UsageError(
                f"--config excludes inline parameter flags (got --{inline[0]})"
            )
        try:
            with open(args.config) as handle:
                return parse_key_value(handle.read())
        except OSError as exc:
            raise _UsageError(f"cannot read config file: {exc}") from exc
        except ValueError as exc:
            raise _UsageError(f"bad config file: {exc}") from exc
    mapping = {}
    for key in _PARAM_KEYS:
        value = getattr(args, key)
        if value is not None:
            mapping[key] = str(value)
    return mapping


def resolve_from_mapping(mapping: dict[str, str], regime: str | None = None) -> WaveParameters:
    """Build parameters from a flat key=value mapping.

    Exactly one of {m}, {U, branch}, {U, sign_m} selects the resolver; the
    regime follows from that choice and must match an explicit ``regime``
    if one is given.  Omitted constants fall back to the shipped defaults,
    with omega defaulting to 0 for the classical combination.
    """
    unknown = set(mapping) - set(_PARAM_KEYS)
    if unknown:
        raise _UsageError(f"unknown parameter keys: {sorted(unknown)}")

    has_m = "m" in mapping
    has_branch = "branch" in mapping
    has_sign = "sign_m" in mapping
    has_u = "U" in mapping
    combos = [has_m, has_u and has_branch, has_u and has_sign]
    if sum(combos) != 1:
        raise _UsageError(
            "exactly one of {m}, {U with branch}, {U with sign_m} must be given"
        )
    if has_m and (has_u or has_branch or has_sign):
        raise _UsageError("m excludes U, branch, and sign_m")
    if has_branch and has_sign:
        raise _UsageError("branch and sign_m are mutually exclusive")

    classical = has_sign
    inferred = "classical" if classical else "geo"
    if regime is not None and regime != inferred:
        raise _UsageError(
            f"--regime {regime} contradicts the supplied parameter combination ({inferred})"
        )

    def fget(key: str, default: float | None = None) -> float:
        if key not in mapping:
            if default is None:
                raise _UsageError(f"missing required parameter {key!r}")
            return default
        try:
            return float(mapping[key])
        except ValueError as exc:
            raise _UsageError(f"parameter {key!r} is not a number: {mapping[key]!r}") from exc

    defaults = PhysicalConstants()
    constants = PhysicalConstants(
        omega=fget("omega", 0.0 if classical else EARTH_ROTATION_RATE),
        g=fget("g", defaults.g),
        rho=fget("rho", defaults.rho),
        p0=fget("p0", defaults.p0),
    )
    k = fget("k")
    b0 = fget("b0", 0.0)
    if has_m:
        return resolve_geophysical_from_m(constants, k, fget("m"), b0)
    if classical:
        sign_raw = mapping["sign_m"]
        try:
            sign_m = int(float(sign_raw))
        except ValueError as exc:
            raise _UsageError(f"sign_m is not a number: {sign_raw!r}") from exc
        return resolve_classical(constants, k, sign_m, fget("U"), b0)
    return resolve_geophysical_from_current(constants, k, fget("U"), mapping["branch"], b0)


def _resolve_params(args) -> WaveParameters:
    return resolve_from_mapping(_param_mapping_from_args(args), args.regime)


def _parse_grid(spec: str, flag: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise _UsageError(f"{flag} expects lo:hi:n, got {spec!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _UsageError(f"{flag} expects lo:hi:n, got {spec!r}") from exc
    if n < 2 or not hi > lo:
        raise _UsageError(f"{flag} needs hi > lo and n >= 2, got {spec!r}")
    return lo, hi, n


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text_atomic(out, text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gerstner-waves",
        description="Exact trochoidal deep-water wave flows over a uniform current.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="resolve and validate a parameter set")
    _add_param_flags(p)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("simulate", help="sample one particle path as CSV")
    _add_param_flags(p)
    p.add_argument("--a", type=float, default=0.0, help="label abscissa, m")
    p.add_argument("--b", type=float, default=None, help="label depth, m (default: b0)")
    p.add_argument("--periods", type=float, default=None,
                   help="duration in orbital periods")
    p.add_argument("--seconds", type=float, default=None, help="duration in seconds")
    p.add_argument("--t0", type=float, default=0.0, help="start time, s")
    p.add_argument("--samples", type=int, default=256, help="number of rows")
    p.add_argument("--surface", action="store_true",
                   help="emit the free surface over --grid-x instead of a path")
    p.add_argument("--grid-x", default=None, help="surface sampling range lo:hi:n")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("verify", help="finite-difference residuals of the governing system")
    _add_param_flags(p)
    p.add_argument("--t", type=float, default=0.0, help="evaluation time, s")
    p.add_argument("--grid-x", default=None, help="interior grid lo:hi:n (default: one wavelength)")
    p.add_argument("--grid-z", default="-3.0:-1.5:8", help="interior grid lo:hi:n")
    p.add_argument("--h", type=float, default=1e-3, help="differencing step")
    p.add_argument("--order-study", action="store_true",
                   help="repeat at h, h/2, h/4 and report observed orders")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("classify", help="classify particle paths at one or more depths")
    _add_param_flags(p)
    p.add_argument("--b", type=float, default=None, help="single label depth (default: b0)")
    p.add_argument("--depths", default=None, help="comma-separated label depths")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("figures", help="write the reference figure sets as SVG panels")
    p.add_argument("--which", choices=["1", "2", "both"], default="both")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--samples", type=int, default=1001, help="points per path")
    p.add_argument("--format", choices=["svg"], default="svg")

    return parser


def cmd_params(args) -> int:
    params = _resolve_params(args)
    rc = regime_constants(params.constants, params.k)
    issues = validate(params)
    payload = {
        "params": params.as_dict(),
        "regime_constants": {"m1": rc.m1, "m2": rc.m2, "m3": rc.m3, "m4": rc.m4},
        "validation": issues,
    }
    _write_output(dumps_json(payload), args.out)
    return EXIT_OK if not issues else EXIT_CONSTRAINT


def _validated_params(args) -> WaveParameters:
    params = _resolve_params(args)
    issues = validate(params)
    if issues:
        raise DomainError("invalid parameter set: " + "; ".join(issues))
    return params


def cmd_simulate(args) -> int:
    params = _validated_params(args)
    if args.surface:
        if args.grid_x is None:
            raise _UsageError("--surface requires --grid-x lo:hi:n")
        lo, hi, n = _parse_grid(args.grid_x, "--grid-x")
        xs = np.linspace(lo, hi, n)
        etas = kinematics.surface_profile(params, args.t0, xs)
        _write_output(surface_csv(args.t0, xs, etas), args.out)
        return EXIT_OK
    if (args.periods is None) == (args.seconds is None):
        raise _UsageError("exactly one of --periods or --seconds is required")
    if args.periods is not None:
        if params.m == 0.0:
            raise DomainError(
                "duration in periods is undefined for m = 0; use --seconds"
            )
        duration = args.periods * analysis.orbit_period(params)
    else:
        duration = args.seconds
    if not duration > 0.0:
        raise _UsageError("the requested duration must be positive")
    b = params.b0 if args.b is None else args.b
    samples = kinematics.sample_trajectory(
        params, args.a, b, args.t0, args.t0 + duration, args.samples
    )
    _write_output(trajectory_csv(args.a, b, samples), args.out)
    return EXIT_OK


def _report_payload(params, args, h: float):
    if args.grid_x is None:
        x_min, x_max, nx = 0.0, params.wavelength, 12
    else:
        x_min, x_max, nx = _parse_grid(args.grid_x, "--grid-x")
    z_min, z_max, nz = _parse_grid(args.grid_z, "--grid-z")
    report = fields.residual_report(
        params,
        t=args.t,
        x_min=x_min,
        x_max=x_max,
        nx=nx,
        z_min=z_min,
        z_max=z_max,
        nz=nz,
        h=h,
    )
    return report


def cmd_verify(args) -> int:
    params = _validated_params(args)
    report = _report_payload(params, args, args.h)
    payload = report.as_dict()
    failed = report.n_failed
    if args.order_study:
        hs = [args.h, args.h / 2.0, args.h / 4.0]
        reports = [report] + [_report_payload(params, args, h) for h in hs[1:]]
        failed = max(r.n_failed for r in reports)
        study = {"h": hs}
        for name in ("momentum_x", "momentum_z", "divergence"):
            series = [getattr(r, name) for r in reports]
            study[name] = series
        study["orders"] = {
            name: fields.richardson_orders(hs, study[name])
            for name in ("momentum_x", "momentum_z", "divergence")
        }
        payload["order_study"] = study
    _write_output(dumps_json(payload), args.out)
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_classify(args) -> int:
    params = _validated_params(args)
    if args.depths is not None and args.b is not None:
        raise _UsageError("--b and --depths are mutually exclusive")
    if args.depths is not None:
        try:
            depths = [float(part) for part in args.depths.split(",") if part.strip()]
        except ValueError as exc:
            raise _UsageError(f"bad --depths list: {args.depths!r}") from exc
        if not depths:
            raise _UsageError("--depths produced an empty list")
    else:
        depths = [params.b0 if args.b is None else args.b]
    records = []
    for b in depths:
        record = analysis.classification_record(params, b)
        if params.m != 0.0:
            oracle = analysis.classify_oracle(params, b)
        else:
            oracle = None
        if oracle is None:
            record["oracle"] = None
            record["agreement"] = None
        else:
            record["oracle"] = {
                "kind": oracle.kind.value,
                "subtype": oracle.shape.value if oracle.shape is not None else None,
                "orientation": (
                    oracle.orientation.value if oracle.orientation is not None else None
                ),
            }
            record["agreement"] = (
                record["kind"] == record["oracle"]["kind"]
                and record["subtype"] == record["oracle"]["subtype"]
                and record["orientation"] == record["oracle"]["orientation"]
            )
        records.append(record)
    payload = {"params": params.as_dict(), "classifications": records}
    _write_output(dumps_json(payload), args.out)
    return EXIT_OK


def cmd_figures(args) -> int:
    which = [1, 2] if args.which == "both" else [int(args.which)]
    written: list[str] = []
    for index in which:
        written.extend(figures.write_figure_set(index, args.out, n_samples=args.samples))
    sys.stdout.write(dumps_json({"files": written}))
    return EXIT_OK


_HANDLERS = {
    "params": cmd_params,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "figures": cmd_figures,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
