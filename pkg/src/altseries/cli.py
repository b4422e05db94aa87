"""Command-line surface: eval, sweep, figure, poles, verify.

Exit codes: 0 success (and, for verify, all checks passing), 1 failed
verification, 2 usage or domain errors.  All numeric output goes through
the harness's repr-based formatting, so repeated runs with identical flags
are byte-identical.  Configuration comes only from flags and an optional
key=value file; no environment variables are consulted.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import harness
from .core import DomainError, RangeError, ToleranceSpec, WorkLimitError
from .hankel import QuadConfig
from .poles import StripParams, default_strip, pole_location, q_eval, strip_width_b

_CONFIG_KEYS = {
    "a1": float, "a": float, "a2": float,
    "truncation_x": float, "panel_rule_order": int, "max_panels": int,
    "acceleration_depth": int,
    "abs_tol": float, "rel_tol": float, "max_work": int,
}


def _load_config(path: str | None):
    """key=value file -> (QuadConfig | None, StripParams | None,
    ToleranceSpec | None).  Unknown keys are an error, not a warning."""
    if path is None:
        return None, None, None
    raw = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{ln}: expected key=value")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise DomainError(f"{path}:{ln}: unknown key {key!r}")
            raw[key] = _CONFIG_KEYS[key](val.strip())

    quad_cfg = None
    quad_keys = {k: raw[k] for k in
                 ("truncation_x", "panel_rule_order", "max_panels",
                  "acceleration_depth") if k in raw}
    if quad_keys:
        quad_cfg = QuadConfig(**quad_keys)

    strip = None
    if any(k in raw for k in ("a1", "a", "a2")):
        base = default_strip()
        a1 = raw.get("a1", base.a1)
        a = raw.get("a", base.a)
        a2 = raw.get("a2", base.a2)
        strip = StripParams(a1, a, a2, strip_width_b(a))

    tol = None
    tol_keys = {k: raw[k] for k in ("abs_tol", "rel_tol", "max_work")
                if k in raw}
    if tol_keys:
        base_tol = ToleranceSpec()
        tol = ToleranceSpec(
            abs_tol=tol_keys.get("abs_tol", base_tol.abs_tol),
            rel_tol=tol_keys.get("rel_tol", base_tol.rel_tol),
            max_work=tol_keys.get("max_work", base_tol.max_work))
    return quad_cfg, strip, tol


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="altseries",
        description="Multi-method evaluation of the alternating series "
                    "S(t) and its scaled form S*(lambda).")
    p.add_argument("--config", metavar="PATH",
                   help="key=value file: strip a1/a/a2, quadrature orders, budgets")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate S at one point")
    g = pe.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=float, help="t argument of S(t)")
    g.add_argument("--lambda", dest="lam", type=float,
                   help="lambda argument of S*(lambda) = S(lambda^2/4)")
    pe.add_argument("--method", default="auto",
                    choices=["series", "hankel", "fourier2d", "residue",
                             "asym", "auto"])
    pe.add_argument("--tol", type=float, default=None,
                    help="absolute and relative tolerance target")
    pe.add_argument("--json", action="store_true",
                    help="emit the evaluation as JSON")

    ps = sub.add_parser("sweep", help="tabulate every method over a lambda grid")
    ps.add_argument("--lambda-min", type=float, required=True)
    ps.add_argument("--lambda-max", type=float, required=True)
    ps.add_argument("--points", type=int, required=True)
    ps.add_argument("--out", required=True, metavar="PATH.CSV")

    pf = sub.add_parser("figure", help="reproduce the scaled-decay figure data")
    pf.add_argument("--lambda-min", type=float, required=True)
    pf.add_argument("--lambda-max", type=float, required=True)
    pf.add_argument("--points", type=int, required=True)
    pf.add_argument("--csv", required=True, metavar="PATH")
    pf.add_argument("--svg", default=None, metavar="PATH")

    pp = sub.add_parser("poles", help="pole locations of 1/(1+e^(z^2+y^2))")
    g = pp.add_mutually_exclusive_group(required=True)
    g.add_argument("--y", type=float, help="single ordinate")
    g.add_argument("--grid", type=int, help="N interior samples of (-b, b)")

    pv = sub.add_parser("verify", help="run the acceptance checklist")
    pv.add_argument("--quick", action="store_true",
                    help="reduced grids; same checks")
    return p


def _cmd_eval(args, quad_cfg, strip, file_tol) -> int:
    if args.lam is not None:
        lam = args.lam
    else:
        if args.t < 0:
            raise DomainError(f"need t >= 0, got {args.t}")
        lam = 2.0 * math.sqrt(args.t)
    tol = file_tol
    if args.tol is not None:
        tol = ToleranceSpec(abs_tol=args.tol, rel_tol=args.tol)
    out = harness.evaluate(args.method, lam, tol, quad_cfg, strip)

    if out.method == "residue":
        from .residue import s_star_via_residue
        scaled_numeric = -s_star_via_residue(lam, strip).scaled_value
    elif lam * harness.SQRT_HALF_PI < 709.0:
        scaled_numeric = harness._scaled_of(lam, out.value)
    else:
        scaled_numeric = math.inf
    scaled_asym = (harness.asym_s_star(lam).scaled_value if lam > 0 else 0.0)
    row = harness.SweepRow(
        lam=lam,
        methods={out.method: (out.value, out.error_estimate)},
        scaled_numeric=scaled_numeric,
        scaled_asym=scaled_asym,
    )
    if args.json:
        print(harness.sweep_row_json(row))
    else:
        print(f"lambda          {row.lam!r}")
        print(f"t               {lam * lam / 4.0!r}")
        print(f"method          {out.method}")
        print(f"value           {out.value!r}")
        print(f"error_estimate  {out.error_estimate!r}")
        print(f"work            {out.work}")
        print(f"scaled_numeric  {scaled_numeric!r}")
        print(f"scaled_asym     {scaled_asym!r}")
    return 0


def _cmd_sweep(args, quad_cfg, strip) -> int:
    table = harness.sweep_data(args.lambda_min, args.lambda_max, args.points)
    harness.write_csv(table, args.out)
    print(f"wrote {len(table.rows)} rows to {args.out}")
    return 0


def _cmd_figure(args, quad_cfg, strip) -> int:
    table = harness.figure_data(args.lambda_min, args.lambda_max, args.points,
                                quad_cfg, strip)
    harness.write_csv(table, args.csv)
    print(f"wrote {len(table.rows)} rows to {args.csv}")
    if args.svg:
        harness.write_svg(table, args.svg)
        print(f"wrote figure to {args.svg}")
    return 0


def _cmd_poles(args, strip) -> int:
    strip = strip or default_strip()
    if args.y is not None:
        ys = [args.y]
    else:
        if args.grid < 1:
            raise DomainError("need --grid >= 1")
        b = strip.b
        ys = [-b + (k + 0.5) * (2.0 * b / args.grid) for k in range(args.grid)]
    print("y,x_star,u_star,q_residual")
    for y in ys:
        loc = pole_location(y)
        resid = abs(q_eval(loc.z, y))
        print(f"{y!r},{loc.x_star!r},{loc.u_star!r},{resid!r}")
    return 0


def _cmd_verify(args) -> int:
    report = harness.run_acceptance(quick=args.quick)
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        line = (f"{c.status.upper():4}  {c.name:<{width}}  "
                f"measured={c.measured:.6e}  threshold={c.threshold:.6e}")
        if c.note:
            line += f"  [{c.note}]"
        print(line)
    kappa = report.calibration["kappa"]
    cenv = report.calibration["C_envelope"]
    print(f"calibration: kappa={kappa!r} C_envelope={cenv!r}")
    n_pass = sum(c.passed for c in report.checks)
    print(f"{n_pass}/{len(report.checks)} checks passed")
    return 0 if report.all_passed else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        quad_cfg, strip, tol = _load_config(args.config)
        if args.command == "eval":
            return _cmd_eval(args, quad_cfg, strip, tol)
        if args.command == "sweep":
            return _cmd_sweep(args, quad_cfg, strip)
        if args.command == "figure":
            return _cmd_figure(args, quad_cfg, strip)
        if args.command == "poles":
            return _cmd_poles(args, strip)
        if args.command == "verify":
            return _cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except (DomainError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WorkLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(f"partial value: {exc.partial.value!r} "
                  f"(error estimate {exc.partial.error_estimate!r})",
                  file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
