"""Command-line interface: ``tiltstab <subcommand> [flags]``.

Every subcommand prints exact values as strings.  JSON goes to stdout, the
version header to stderr.  Exit codes: 0 success, 1 domain error (a value
outside the range of an operation), 2 usage error (bad flags or scalars).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__, bg3, bounds, clifford, figures, stab, verify, walls
from .chern import GEOMETRIES, ChernVector2, ChernVector3, get_geometry
from .config import grid_config
from .exactnum import Scalar, parse_scalar


def scalar_arg(text: str) -> Scalar:
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed scalar {text!r}: {exc}") from None


def ch_arg(text: str) -> tuple[Scalar, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError("--ch takes 3 or 4 comma-separated scalars")
    return tuple(scalar_arg(p) for p in parts)


def _s(v):
    return None if v is None else str(v)


# -- handlers -------------------------------------------------------------------

def cmd_xi(args):
    return {"t": str(args.t), "value": str(bounds.xi_abs(args.t))}


def cmd_upsilon(args):
    fn = bounds.upsilon_tilde_value if args.tilde else bounds.upsilon_value
    return {"x": str(args.x), "tilde": args.tilde, "value": str(fn(args.x))}


def cmd_omega(args):
    return {"x": str(args.x), "y": str(args.y), "value": str(bounds.omega(args.x, args.y))}


def cmd_wall(args):
    return walls.first_wall(args.t, args.variety).to_json()


def cmd_bn_bounds(args):
    up, low = walls.bn_slope_bounds(args.t, args.variety)
    return {"t": str(args.t), "upper": str(up), "lower": str(low)}


def cmd_clifford(args):
    res = clifford.clifford_bound(args.t, args.variety)
    out = res.to_json()
    out["stated"] = str(clifford.printed_bound(args.t, args.variety))
    if args.brute:
        out["bruteforce"] = str(clifford.clifford_bound_bruteforce(args.t, args.variety, args.grid or grid_config().brute))
    return out


def cmd_restriction_bound(args):
    mu = args.mu
    return {
        "mu": str(mu),
        "bound": str(clifford.restriction_bound(mu, args.variety)),
        "stated": str(clifford.printed_restriction(mu, args.variety)),
        "xi": str(bounds.xi(mu)),
    }


def cmd_strong_bg_check(args):
    ch = args.ch
    v = ChernVector2(*ch[:3]) if args.level == "surfaceT" else ChernVector3(*(ch + (0,) * (4 - len(ch))))
    res = clifford.strong_bg_check(v, args.variety, args.level)
    return {"holds": res.holds, "margin": str(res.margin), "mu": str(res.mu)}


def _vec3(ch) -> ChernVector3:
    if len(ch) != 4:
        raise ValueError("--ch needs four entries r,a,b,c")
    return ChernVector3(*ch)


def cmd_qgamma(args):
    p = bg3.QGammaParams.make(args.alpha, args.beta, args.variety, args.gamma)
    return {"value": str(bg3.q_gamma(_vec3(args.ch), p, args.variety)), "gamma": str(p.gamma_coeff)}


def cmd_delta(args):
    return bg3.delta_report(args.variety, use_stated=not args.literal).to_json()


def cmd_gamma(args):
    g = get_geometry(args.variety)
    return {"gamma": str(bg3.gamma_from_delta(g)), "registry": str(g.gamma)}


def cmd_reduction_region(args):
    return {"alpha": str(args.alpha), "beta": str(args.beta), "inside": bg3.reduction_region(args.alpha, args.beta)}


def cmd_kernel_check(args):
    p = bg3.QGammaParams.make(args.alpha, args.beta, args.variety, args.gamma)
    res = bg3.q_kernel_seminegativity(args.alpha, args.beta, p)
    return {
        "holds": res.holds,
        "gram": [[str(x) for x in row] for row in res.gram],
        "witness": None if res.witness is None else [str(x) for x in res.witness.as_tuple()],
    }


def _stab_params(args) -> stab.StabParams:
    gamma = args.gamma if args.gamma is not None else Scalar(get_geometry(args.variety).gamma)
    return stab.StabParams(args.alpha, args.beta, args.a, args.b, gamma)


def cmd_ugamma(args):
    p = _stab_params(args)
    return {"params": p.to_json(), "inside": stab.in_u_gamma(p)}


def cmd_support_interval(args):
    p = _stab_params(args)
    lo, hi = stab.support_interval(p)
    m = stab.kernel_matrix(p)
    return {"K_lo": str(lo), "K_hi": str(hi), "verified_midpoint": m.is_negative_definite((lo + hi) / 2),
            "matrix": m.to_json()}


def cmd_central_charge(args):
    return stab.central_charge(_vec3(args.ch), _stab_params(args), args.variety).to_json()


def cmd_weights(args):
    return [t.to_json() for t in bg3.enumerate_weight_tuples(args.max)]


def cmd_verify_all(args):
    varieties = sorted(GEOMETRIES) if args.variety == "all" else [args.variety]
    return [verify.verify_all(v).to_json() for v in varieties]


_CURVES = {
    "xi": lambda g, lo, hi: bounds.make_xi().restrict(lo, hi),
    "upsilon": lambda g, lo, hi: bounds.make_upsilon(lo, hi),
    "upsilon-tilde": lambda g, lo, hi: bounds.make_upsilon_tilde(lo, hi),
    "restriction": lambda g, lo, hi: clifford.restriction_curve(g).restrict(lo, hi),
}


def cmd_curve(args):
    lo = args.lo if args.lo is not None else Scalar(0)
    hi = args.hi if args.hi is not None else Scalar(1)
    curve = _CURVES[args.name](get_geometry(args.variety), lo, hi)
    if args.format == "csv":
        step = args.step if args.step is not None else Scalar(Fraction(1, grid_config().plot))
        return [{"x": str(x), "y": str(y)} for x, y in curve.sample(step)]
    return curve.to_json()


def cmd_figure(args):
    kw = {} if args.t is None else {"t": args.t}
    fmt = "csv" if args.format == "csv" else "svg"
    return figures.emit_figure(args.name, args.variety, None, fmt, args.samples or grid_config().plot, **kw)


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variety", default="triple", choices=sorted(GEOMETRIES))
    common.add_argument("--format", default="json", choices=("json", "csv", "svg"))
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="tiltstab", description="Exact tilt-stability bound calculator")
    parser.add_argument("--version", action="version", version=f"tiltstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    add("xi", cmd_xi, "bound curve Xi at |t|").add_argument("--t", type=scalar_arg, required=True)
    p = add("upsilon", cmd_upsilon, "Upsilon or Upsilon-tilde at x")
    p.add_argument("--x", type=scalar_arg, required=True)
    p.add_argument("--tilde", action="store_true")
    p = add("omega", cmd_omega, "section count bound of a segment")
    p.add_argument("--x", type=scalar_arg, required=True)
    p.add_argument("--y", type=scalar_arg, required=True)
    add("wall", cmd_wall, "first possible wall at t").add_argument("--t", type=scalar_arg, required=True)
    add("bn-bounds", cmd_bn_bounds, "BN slope bounds at t").add_argument("--t", type=scalar_arg, required=True)
    p = add("clifford", cmd_clifford, "Clifford-type bound at t")
    p.add_argument("--t", type=scalar_arg, required=True)
    p.add_argument("--brute", action="store_true", help="also run the lattice search")
    p.add_argument("--grid", type=int)
    add("restriction-bound", cmd_restriction_bound, "bound for ch2/ch0 on the surface").add_argument(
        "--mu", type=scalar_arg, required=True)
    p = add("strong-bg-check", cmd_strong_bg_check, "check ch2/ch0 <= Xi(|mu|)")
    p.add_argument("--ch", type=ch_arg, required=True)
    p.add_argument("--level", default="threefold", choices=("threefold", "surfaceT"))
    p = add("qgamma", cmd_qgamma, "quadratic form Q at (alpha, beta)")
    p.add_argument("--ch", type=ch_arg, required=True)
    p.add_argument("--alpha", type=scalar_arg, default=Scalar(0))
    p.add_argument("--beta", type=scalar_arg, default=Scalar(0))
    p.add_argument("--gamma", type=scalar_arg)
    add("delta", cmd_delta, "the constant delta").add_argument("--literal", action="store_true")
    add("gamma", cmd_gamma, "gamma = delta - td2 coefficient")
    p = add("reduction-region", cmd_reduction_region, "membership in the reduction region")
    p.add_argument("--alpha", type=scalar_arg, required=True)
    p.add_argument("--beta", type=scalar_arg, required=True)
    p = add("kernel-check", cmd_kernel_check, "semi-negativity of Q on the weak kernel")
    p.add_argument("--alpha", type=scalar_arg, required=True)
    p.add_argument("--beta", type=scalar_arg, required=True)
    p.add_argument("--gamma", type=scalar_arg)
    for name, handler, text in (("ugamma", cmd_ugamma, "membership in U_gamma"),
                                ("support-interval", cmd_support_interval, "interval of K for the support property"),
                                ("central-charge", cmd_central_charge, "central charge Z of a class")):
        p = add(name, handler, text)
        p.add_argument("--alpha", type=scalar_arg, required=True)
        p.add_argument("--beta", type=scalar_arg, default=Scalar(0))
        p.add_argument("--a", type=scalar_arg, required=True)
        p.add_argument("--b", type=scalar_arg, default=Scalar(0))
        p.add_argument("--gamma", type=scalar_arg)
        if name == "central-charge":
            p.add_argument("--ch", type=ch_arg, required=True)
    add("weights", cmd_weights, "weighted projective spaces").add_argument("--max", type=int, default=30)
    p = add("figure", cmd_figure, "render one of the figures")
    p.add_argument("name", choices=figures.FIGURES)
    p.add_argument("--t", type=scalar_arg)
    p.add_argument("--samples", type=int)
    p = add("curve", cmd_curve, "dump a bound curve")
    p.add_argument("name", choices=sorted(_CURVES))
    p.add_argument("--lo", type=scalar_arg)
    p.add_argument("--hi", type=scalar_arg)
    p.add_argument("--step", type=scalar_arg)
    # verify-all also accepts "all", so it gets its own copy of the common flags
    p = sub.add_parser("verify-all", help="run every consistency check")
    p.add_argument("--variety", default="all", choices=sorted(GEOMETRIES) + ["all"])
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--out")
    p.set_defaults(handler=cmd_verify_all)
    return parser


def _to_csv(payload) -> str:
    rows = payload if isinstance(payload, list) else [payload]
    rows = [r if isinstance(r, dict) else {"value": r} for r in rows]
    keys = list(dict.fromkeys(k for r in rows for k in r))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v
                    for k, v in r.items()})
    return buf.getvalue()


def render(payload, fmt: str) -> str:
    if isinstance(payload, str):
        return payload
    if fmt == "csv":
        return _to_csv(payload)
    return json.dumps(payload, separators=(",", ":")) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "svg" and args.command != "figure":
        print("tiltstab: --format svg is only available for 'figure'", file=sys.stderr)
        return 2
    try:
        grid_config()
    except ValueError as exc:
        print(f"tiltstab: {exc}", file=sys.stderr)
        return 2
    print(f"tiltstab {__version__}", file=sys.stderr)
    try:
        payload = args.handler(args)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
