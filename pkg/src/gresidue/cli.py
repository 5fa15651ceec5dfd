"""Command-line interface: ``gresidue <command> SYSTEM_FILE [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Callable

from . import series as series_mod
from .cones import build_cones, degree_bound_single, degree_bound_total, interior_weights
from .errors import (
    BasisError,
    ConeError,
    GResidueError,
    InfeasibleError,
    InvariantError,
    ParseError,
    ZeroDimensionalityError,
)
from .linalg import char_poly, determinant, eigen_sign_counts, format_rational
from .normal_form import anti_triangular_report, dual_matrix, normal_form, quotient_algebra
from .poly import Polynomial, jacobian_determinant, parse_polynomial
from .polyhedra import primitive
from .residues import residue_batch, residue_monomial, residue_polynomial
from .roots import chow_form, count_roots, log_chow, mapping_degree, trace_form, count_roots_weighted
from .sysfile import bundled_system, parse_system_file
from .transform import extended_buchberger, residue_general
from .weights import discover_weight, verify_basis

log = logging.getLogger("gresidue")

EXIT_OK, EXIT_PARSE, EXIT_BASIS, EXIT_INVARIANT = 0, 2, 3, 4
_TIMING = "_timing"


def _jsonable(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Polynomial):
        return str(x)
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _exponent(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ParseError(f"exponent vector expected, got {text!r}") from None


def _digest(sys, weight) -> str:
    text = "|".join([",".join(sys.variables), ",".join(map(str, weight or ()))]
                    + [str(g) for g in sys.generators])
    return hashlib.sha256(text.encode()).hexdigest()


class Context:
    """Lazily built objects shared by one command invocation."""

    def __init__(self, args):
        self.args = args
        self.system, declared = parse_system_file(args.system)
        if args.weight:
            declared = _exponent(args.weight)
        self.declared_weight = declared
        self._profile = None

    @property
    def weight(self) -> tuple:
        if self.declared_weight is None:
            self.declared_weight = discover_weight(self.system)
        return self.declared_weight

    @property
    def profile(self):
        if self._profile is None:
            self._profile = verify_basis(self.system, self.weight)
        return self._profile

    def poly(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.system.variables)


# -- commands -----------------------------------------------------------------


def cmd_check(ctx: Context) -> dict:
    p = ctx.profile
    return {
        "weight": p.w, "r": p.r, "d": p.d, "d_w": p.d_w, "dim_V": p.dim,
        "permutation": p.permutation, "leading_scalars": p.leading_scalars,
        "scale": p.scale, "variables": list(p.variables),
    }


def cmd_discover_weight(ctx: Context) -> dict:
    w = discover_weight(ctx.system)
    return {"weight": w}


def _residue_one(ctx: Context, h: Polynomial, method: str):
    p = ctx.profile
    out = {}
    if method in ("nf", "both"):
        alg = quotient_algebra(p)
        out["nf"] = alg.residue(alg.reduce(h))
    if method in ("series", "both"):
        out["series"] = residue_polynomial(p, h)
    if method == "both" and out["nf"] != out["series"]:
        raise InvariantError(
            f"methods disagree: nf {format_rational(out['nf'])}, series {format_rational(out['series'])}")
    return out["nf"] if "nf" in out else out["series"]


def cmd_residue(ctx: Context) -> dict:
    a = ctx.args
    if a.batch is not None:
        table = residue_batch(ctx.profile, a.batch)
        return {"bound": a.batch, "entries": table.entries, "nonzero": len(table.nonzero())}
    if a.monomial is not None:
        e = _exponent(a.monomial)
        h = Polynomial.monomial(ctx.system.variables, e)
    elif a.poly is not None:
        h = ctx.poly(a.poly)
    else:
        raise ParseError("residue needs --monomial, --poly or --batch")
    try:
        value = _residue_one(ctx, h, a.method)
        route = a.method
    except BasisError:
        if not a.general:
            raise
        value = residue_general(ctx.system, h)
        route = "transform"
    result = {"value": value, "method": route}
    if a.monomial is not None and route != "transform":
        result["vanishes_by_cone"] = not build_cones(ctx.profile).in_Wstar(
            tuple(x - y for x, y in zip(_exponent(a.monomial), ctx.profile.r)))
    return result


def cmd_normal_form(ctx: Context) -> dict:
    nf = normal_form(ctx.profile, ctx.poly(ctx.args.poly))
    return {"normal_form": str(nf), "terms": len(nf.coefficients),
            "highest": nf.highest, "reductions": nf.reductions}


def cmd_trace(ctx: Context) -> dict:
    alg = quotient_algebra(ctx.profile)
    return {"trace": alg.trace(alg.reduce(ctx.poly(ctx.args.poly)))}


def cmd_dual_matrix(ctx: Context) -> dict:
    m = dual_matrix(ctx.profile, method=ctx.args.method, order=ctx.args.order)
    pos, neg, zero = eigen_sign_counts(m)
    out = {"order": ctx.args.order, "matrix": m.tolist(), "determinant": determinant(m),
           "signature": pos - neg, "rank": pos + neg}
    out.update(anti_triangular_report(m))
    return out


def cmd_trace_form(ctx: Context) -> dict:
    h = ctx.poly(ctx.args.weight_poly) if ctx.args.weight_poly else None
    tf = trace_form(ctx.profile, h, order=ctx.args.order)
    pos, neg, zero = eigen_sign_counts(tf.T)
    return {"matrix": tf.T.tolist(), "rank": pos + neg, "signature": pos - neg,
            "positive_eigenvalues": pos, "negative_eigenvalues": neg,
            "characteristic_polynomial": char_poly(tf.T)}


def cmd_count_roots(ctx: Context) -> dict:
    if ctx.args.weight_poly:
        return {"weighted_signature": count_roots_weighted(ctx.profile, ctx.poly(ctx.args.weight_poly))}
    rep = count_roots(ctx.profile)
    return dict(rep.__dict__)


def cmd_degree(ctx: Context) -> dict:
    return {"mapping_degree": mapping_degree(ctx.profile)}


def cmd_chow(ctx: Context) -> dict:
    d = ctx.args.degree
    s = log_chow(ctx.profile, d) if ctx.args.log else chow_form(ctx.profile, d)
    return {"degree": s.degree, "series": str(s.as_polynomial()),
            "coefficients": s.coefficients}


def cmd_cones(ctx: Context) -> dict:
    c = build_cones(ctx.profile)
    return {"W_inequalities": c.W_inequalities, "W_rays": c.W_rays, "W_lines": c.W_lines,
            "Wstar_rays": c.Wstar_rays, "Wstar_lines": c.Wstar_lines,
            "Wstar_inequalities": c.Wstar_inequalities, "interior_point": c.interior_point}


def cmd_bounds(ctx: Context) -> dict:
    p = ctx.profile
    c = build_cones(p)
    a = _exponent(ctx.args.monomial)
    extra = [_exponent(x) for x in ctx.args.interior or ()]
    per = []
    for i, q in enumerate(p.tails):
        for e, _ in sorted(q.items()):
            b = degree_bound_single(c, p, a, i, e)
            per.append({"generator": i + 1, "exponent": e,
                        "bound": "unbounded" if b is None else b})
    return {"monomial": a, "total": degree_bound_total(c, p, a, extra),
            "interior_points": interior_weights(c, extra), "per_coefficient": per}


def cmd_transform_residue(ctx: Context) -> dict:
    w = _exponent(ctx.args.weight) if ctx.args.weight else None
    basis = extended_buchberger(ctx.system, w, max_elements=ctx.args.max_elements)
    h = ctx.poly(ctx.args.poly) if ctx.args.poly else Polynomial.constant(ctx.system.variables, 1)
    return {"value": residue_general(ctx.system, h, basis=basis),
            "f": [str(g) for g in basis.f.generators], "detA": str(basis.detA),
            "weight": basis.weight, "steps": basis.steps}


def cmd_bench_series(ctx: Context) -> dict:
    p = ctx.profile
    rows = []
    seconds = {}
    s = series_mod.invert_series(p, 0)
    for j in range(ctx.args.jmax + 1):
        t0 = time.perf_counter()
        rows.append({"j": j, "terms": s.term_count(j)})
        seconds[f"B_{j}"] = f"{time.perf_counter() - t0:.6f}"
    # per-row timings go to the report's timing section
    return {"rows": rows, _TIMING: seconds}


def _reproduce_checks() -> list[tuple[str, Callable[[], bool]]]:
    sys_, w = parse_system_file(bundled_system())
    p = verify_basis(sys_, w)
    V = sys_.variables
    alg = quotient_algebra(p)
    J = jacobian_determinant(sys_)

    def series_counts():
        s = series_mod.invert_series(p, 40)
        want = {2: 7, 5: 41, 10: 216, 15: 569, 20: 1102, 25: 1803, 30: 2682, 35: 3744, 40: 4964}
        return all(s.term_count(j) == v for j, v in want.items())

    big = -258756707658424020014953731203

    def chow_ok():
        R = chow_form(p, 3)
        want = {(0, 1, 0): 5, (0, 0, 1): -5, (1, 1, 0): 37, (1, 0, 1): -121, (0, 2, 0): -5,
                (0, 1, 1): 81, (0, 0, 2): -230, (3, 0, 0): 17, (2, 1, 0): -74, (2, 0, 1): 177,
                (1, 2, 0): 13, (1, 1, 1): -254, (1, 0, 2): -81, (0, 3, 0): -5, (0, 2, 1): -112,
                (0, 1, 2): -596}
        return all(R.coefficient(e) == v for e, v in want.items())

    def lead_nf():
        nf = normal_form(p, J)
        return nf.highest == 30 and nf.coefficient((0, 0, 0)) == 177 and len(nf.coefficients) == 27

    def roots_ok():
        rep = count_roots(p)
        return (rep.distinct_complex, rep.distinct_real, rep.positive_eigenvalues,
                rep.negative_eigenvalues) == (20, 6, 13, 7)

    def b2_ok():
        s = series_mod.invert_series(p, 2)
        want = {(-10, -4, 0): 1, (-3, -4, -3): -1, (-5, 1, -5): 1, (-10, 3, -4): 1,
                (-15, -2, 1): 1, (-5, 8, -9): 1, (-5, -6, -1): 1}
        return dict(s.B(2).items()) == want

    def cones_ok():
        c = build_cones(p)
        W = {(4, 5, 10), (1, 1, 2), (5, 6, 10), (2, 3, 5)}
        Wstar = {(5, 0, -2), (0, 2, -1), (-2, 0, 1), (0, -5, 3)}
        return ({primitive(v) for v in c.W_rays} == W
                and {primitive(v) for v in c.Wstar_rays} == Wstar)

    def dual_ok():
        m = dual_matrix(p, order="weighted")
        rep = anti_triangular_report(m)
        return all(rep.values()) and determinant(m) in (1, -1) and mapping_degree(p) == 0

    return [
        ("basis (4,1,2), d_w 44, dim 30", lambda: (p.r, p.d_w, p.dim) == ((4, 1, 2), 44, 30)),
        ("tr(1) = 30", lambda: alg.trace(alg.reduce(Polynomial.constant(V, 1))) == 30),
        ("B_2", b2_ok),
        ("series term counts", series_counts),
        ("Res(x^r) = 1", lambda: residue_monomial(p, (4, 1, 2)) == 1),
        ("Res(x^(15,15,15)) by normal form", lambda: alg.residue(alg.monomial((15, 15, 15))) == big),
        ("Res(x^(15,15,15)) by the series", lambda: residue_monomial(p, (15, 15, 15)) == big),
        ("Res(x^(6,1,1)) = 0", lambda: residue_monomial(p, (6, 1, 1)) == 0),
        ("NF(J)", lead_nf),
        ("tr(x^(8,2,4)) = 16049138278", lambda: alg.trace_monomial((8, 2, 4)) == 16049138278),
        ("root counts 20 complex, 6 real", roots_ok),
        ("dual matrix and mapping degree", dual_ok),
        ("Chow form through degree 3", chow_ok),
        ("cones W and W*", cones_ok),
    ]


def cmd_reproduce(ctx: Context | None) -> dict:
    results = []
    seconds = {}
    for name, check in _reproduce_checks():
        t0 = time.perf_counter()
        results.append({"check": name, "pass": bool(check())})
        seconds[name] = f"{time.perf_counter() - t0:.3f}"
    failed = [r["check"] for r in results if not r["pass"]]
    return {"checks": results, "failed": failed, _TIMING: seconds}


COMMANDS = {
    "check": cmd_check,
    "discover-weight": cmd_discover_weight,
    "residue": cmd_residue,
    "normal-form": cmd_normal_form,
    "trace": cmd_trace,
    "dual-matrix": cmd_dual_matrix,
    "trace-form": cmd_trace_form,
    "count-roots": cmd_count_roots,
    "degree": cmd_degree,
    "chow": cmd_chow,
    "cones": cmd_cones,
    "bounds": cmd_bounds,
    "transform-residue": cmd_transform_residue,
    "bench-series": cmd_bench_series,
    "reproduce-paper": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--threads", type=int, default=1,
                        help="worker cap (computations run in one thread)")
    common.add_argument("-v", "--verbose", action="store_true")

    def with_system(sp):
        sp.add_argument("system", help="system file (vars:/weight:/g: lines)")
        sp.add_argument("--weight", help="override the weight, e.g. 3,4,7")

    parser = argparse.ArgumentParser(prog="gresidue", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("check", "discover-weight", "degree", "cones"):
        with_system(sub.add_parser(name, parents=[common]))

    sp = sub.add_parser("residue", parents=[common])
    with_system(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--monomial", help="exponent vector, e.g. 15,15,15")
    g.add_argument("--poly", help="polynomial expression")
    g.add_argument("--batch", type=int, metavar="D", help="all monomials of weighted degree <= D")
    sp.add_argument("--method", choices=("nf", "series", "both"), default="nf")
    sp.add_argument("--general", action="store_true",
                    help="fall back to the cofactor transformation for unverifiable systems")

    for name in ("normal-form", "trace"):
        sp = sub.add_parser(name, parents=[common])
        with_system(sp)
        sp.add_argument("--poly", required=True)

    sp = sub.add_parser("dual-matrix", parents=[common])
    with_system(sp)
    sp.add_argument("--method", choices=("nf", "series"), default="nf")
    sp.add_argument("--order", choices=("lex", "weighted"), default="lex")

    sp = sub.add_parser("trace-form", parents=[common])
    with_system(sp)
    sp.add_argument("--weight-poly")
    sp.add_argument("--order", choices=("lex", "weighted"), default="lex")

    sp = sub.add_parser("count-roots", parents=[common])
    with_system(sp)
    sp.add_argument("--weight-poly", help="count real roots by the sign of this polynomial")

    sp = sub.add_parser("chow", parents=[common])
    with_system(sp)
    sp.add_argument("--degree", type=int, help="truncation degree (default dim V)")
    sp.add_argument("--log", action="store_true", help="print log R instead of R")

    sp = sub.add_parser("bounds", parents=[common])
    with_system(sp)
    sp.add_argument("--monomial", required=True)
    sp.add_argument("--interior", action="append", help="extra interior weight of W")

    sp = sub.add_parser("transform-residue", parents=[common])
    sp.add_argument("system")
    sp.add_argument("--weight", help="term-order weight for the completion")
    sp.add_argument("--poly", help="numerator (default 1)")
    sp.add_argument("--max-elements", type=int, default=10_000)

    sp = sub.add_parser("bench-series", parents=[common])
    with_system(sp)
    sp.add_argument("--jmax", type=int, default=40)

    sub.add_parser("reproduce-paper", aliases=["reproduce-example"], parents=[common],
                   help="run the checks on the bundled three-variable example")
    return parser


def _render_text(command: str, result: dict) -> str:
    lines = []
    for k, v in _jsonable(result).items():
        if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
            lines.append(f"{k}:")
            for row in v:
                lines.append("  " + (json.dumps(row) if isinstance(row, dict) else " ".join(row)))
        elif isinstance(v, dict):
            lines.append(f"{k}:")
            for kk, vv in v.items():
                lines.append(f"  {kk}: {vv}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    command = "reproduce-paper" if args.command == "reproduce-example" else args.command
    t0 = time.perf_counter()
    try:
        ctx = Context(args) if hasattr(args, "system") else None
        result = COMMANDS[command](ctx)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BasisError, ZeroDimensionalityError, InfeasibleError, ConeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BASIS
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (GResidueError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BASIS
    elapsed = time.perf_counter() - t0
    timing = {"seconds": f"{elapsed:.6f}"}
    timing.update(result.pop(_TIMING, {}))
    digest = _digest(ctx.system, ctx.declared_weight) if ctx is not None else None
    if args.json:
        report = {
            "command": command,
            "system_digest": digest,
            "result": _jsonable(result),
            "timing": timing,
            "cache": _jsonable(series_mod.cache_stats()),
        }
        print(json.dumps(report, sort_keys=True))
    else:
        print(_render_text(command, result))
        if len(timing) > 1:
            print(_render_text(command, {"timing": timing}))
    if result.get("failed"):
        print("failed checks: " + ", ".join(result["failed"]), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
