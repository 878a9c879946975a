"""``minmod`` command line: series, operators, and the verification harness.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
"""
import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import characters, hypergeom, modforms, numeric, ode
from .verify import SUITES, Config, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
# options whose values may start with '-' (negative rationals, complex taus)
_VALUE_OPTIONS = {"--k", "--tau", "--from", "--to"}


class UsageError(Exception):
    pass


def parse_rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def parse_tau(text):
    try:
        tau = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")
    if tau.imag <= 0:
        raise argparse.ArgumentTypeError("tau must lie in the upper half plane")
    return tau


def _positive_int(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _join_negative_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=_positive_int, help="coefficient steps kept (env MINMOD_TRUNC)")
    common.add_argument("--fd-step", type=float, help="finite-difference step (default 1e-5)")
    common.add_argument("--density", type=_positive_int, help="initial RK4 steps per unit of |dtau|")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), help="output format (default json)")
    common.add_argument("--json", action="store_true", help="shorthand for --format json")

    p = argparse.ArgumentParser(prog="minmod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("forms", parents=[common], help="q-expansion of a catalog form")
    f.add_argument("--name", required=True, help=", ".join(modforms.FORM_NAMES))

    c = sub.add_parser("chars", parents=[common], help="(2,nu) character q-series")
    c.add_argument("--nu", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--method", choices=("product", "sum"), default="product")

    d = sub.add_parser("derive-ode", parents=[common], help="exact modular ODE coefficients")
    d.add_argument("--nu", type=int, required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    v.add_argument("--workers", type=_positive_int)

    n = sub.add_parser("numeric", help="floating-point checks on the torus family")
    nsub = n.add_subparsers(dest="check", required=True)
    for name in ("omega-check", "dtau-check"):
        x = nsub.add_parser(name, parents=[common])
        x.add_argument("--tau", type=parse_tau, default=0.3 + 1.1j)
        x.add_argument("--lam", type=float, default=1.0)
    x = nsub.add_parser("integrate", parents=[common])
    x.add_argument("--from", dest="tau0", type=parse_tau, default=1.5j)
    x.add_argument("--to", dest="tau1", type=parse_tau, default=0.9j)
    x.add_argument("--s", type=int, choices=(1, 2), default=1)
    x = nsub.add_parser("smatrix", parents=[common])
    x.add_argument("--matrix", choices=("rotation", "symmetric"), default="rotation")

    h = sub.add_parser("hypergeom", parents=[common], help="hypergeometric reduction of the (2,5) equation")
    h.add_argument("--k", type=parse_rational, required=True)
    return p


# -- formatting ---------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def series_rows(series):
    return [(str(e), c.numerator, c.denominator) for e, c in series.items()]


def render(payload, fmt, rows=None):
    if fmt == "json":
        return json.dumps(_jsonable(payload), indent=2) + "\n"
    if fmt == "csv":
        if rows is None:
            raise UsageError("csv output is only available for coefficient tables (forms, chars)")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("exponent", "numerator", "denominator"))
        w.writerows(rows)
        return buf.getvalue()
    return _text(_jsonable(payload)) + "\n"


def _text(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if "checks" in obj:
            lines = [f"{pad}suite {obj['suite']} ({obj['wall_time']} s)"]
            for c in obj["checks"]:
                res = "" if c["residual"] is None else f" residual={c['residual']:.3e}"
                lines.append(f"{pad}  {c['status'].upper():4} {c['id']}{res}  {c['detail']}")
            return "\n".join(lines)
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}{v}" if not isinstance(v, (dict, list)) else _text(v, indent) for v in obj)
    return f"{pad}{obj}"


# -- commands -----------------------------------------------------------------

def cmd_forms(args, cfg):
    try:
        entry = modforms.form(args.name, cfg.truncation)
    except KeyError as exc:
        raise UsageError(exc.args[0])
    payload = {"name": entry.name, "weight": entry.weight, **entry.series.to_dict()}
    return payload, series_rows(entry.series), True


def cmd_chars(args, cfg):
    try:
        spec = characters.ModelSpec(args.nu)
        build = characters.character_sum if args.method == "sum" else characters.character_product
        f = build(spec, args.s, cfg.truncation)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc))
    payload = {"nu": args.nu, "s": args.s, "central_charge": spec.central_charge, **f.to_dict()}
    return payload, series_rows(f), True


def cmd_derive_ode(args, cfg):
    try:
        spec = characters.ModelSpec(args.nu)
        op = ode.derive_alphas(spec)
    except ValueError as exc:
        raise UsageError(str(exc))
    payload = {"nu": args.nu, **op.to_dict(), "kappas": list(spec.kappas)}
    return payload, None, True


def cmd_verify(args, cfg):
    if args.suite in ("ode", "all") and cfg.truncation < 16:
        raise UsageError("ODE suites need --trunc >= 16")
    report = run_suite(args.suite, cfg, args.workers)
    return report.to_dict(), None, report.passed


def cmd_numeric(args, cfg):
    tol = 1e-6
    if args.check == "omega-check":
        d = numeric.omega_formula_details(args.tau, cfg.fd_step, args.lam)
        ok = max(d["residual_determinant"], d["residual_log_delta0"]) < tol
    elif args.check == "dtau-check":
        d = numeric.dtau_formula_details(args.tau, cfg.fd_step, args.lam)
        ok = d["residual"] < tol
    elif args.check == "integrate":
        d = numeric.integrate_report(args.s, args.tau0, args.tau1, cfg.rk4_density)
        ok = max(d["rel_err_one"], d["rel_err_a1"]) < tol
    else:
        d = numeric.check_smatrix()
        key = f"{args.matrix}_residual"
        d["checked"] = args.matrix
        ok = d[key] < 1e-7 and d["norm_invariance"] < 1e-7
    return {"check": args.check, **d, "status": "pass" if ok else "fail"}, None, ok


def cmd_hypergeom(args, cfg):
    try:
        p = hypergeom.params_for_k(args.k)
    except hypergeom.InvalidK as exc:
        raise UsageError(str(exc))
    n = cfg.truncation
    sols = {}
    ok = p.consistent()
    for label, q, second in (("z0_first", p, False), ("z0_second", p, True),
                             ("z1_first", p.at_one(), False), ("z1_second", p.at_one(), True)):
        try:
            sol = hypergeom.f21_series(q, n, second)
        except hypergeom.DegenerateParameters as exc:
            sols[label] = {"error": str(exc)}
            continue
        zero = not any(hypergeom.substitution_residual(sol))
        ok = ok and zero
        sols[label] = {"exponent": sol.exponent_at_0, "C": q.C, "residual_zero": zero,
                       "coefficients": list(sol.coefficients)}
    payload = {
        "k": p.k, "A": p.A, "B": p.B, "C": p.C,
        "relations": p.relations(),
        "exponents_at_0": list(p.exponents_at_zero()),
        "gauge_exponent": hypergeom.gauge_exponent(p.k),
        "hypergeometric": hypergeom.gauge_ode_check(p.k, hypergeom.C_25)["hypergeometric"],
        "solutions": sols,
        "status": "pass" if ok else "fail",
    }
    return payload, None, ok


COMMANDS = {
    "forms": cmd_forms, "chars": cmd_chars, "derive-ode": cmd_derive_ode,
    "verify": cmd_verify, "numeric": cmd_numeric, "hypergeom": cmd_hypergeom,
}


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        env = os.environ.get("MINMOD_TRUNC")
        cfg = Config.from_env(fd_step=args.fd_step, rk4_density=args.density)
        if args.trunc is not None:
            cfg.truncation = args.trunc
        elif env is not None and int(env) <= 0:
            raise UsageError("MINMOD_TRUNC must be a positive integer")
        cfg.output = "json" if args.json else (args.format or "json")
        payload, rows, ok = COMMANDS[args.command](args, cfg)
        text = render(payload, cfg.output, rows)
    except (UsageError, ValueError) as exc:
        print(f"minmod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
