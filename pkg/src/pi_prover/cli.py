"""Command-line front end.

Exit codes: 0 all certifications passed, 2 a check was proved false,
3 inconclusive (precision exhausted), 64 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .errors import CertifiedFailure, Inconclusive, ProverError
from .modeq import validate_modular_polynomial
from .numcore import ComplexBall, Precision, contains_zero, pi_oracle
from .prover import CATALOG_DEGREES, ProofResult, SeriesParams, load_polynomial, prove
from .series import KNOWN_SERIES, VerificationReport, verify_against_pi

EXIT_OK = 0
EXIT_FAILURE = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64

DEFAULT_PRECISION = 200
DEFAULT_DIGITS = 1000
BALL_DIGITS = 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- serialization -------------------------------------------------------------------------


def ball_json(x: ComplexBall, digits: int = BALL_DIGITS) -> dict[str, Any]:
    re, im = x.real, x.imag
    return {
        "re": re.mid_str(digits),
        "im": im.mid_str(digits),
        "radius_exponent": x.radius_exponent(),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def params_json(params: SeriesParams) -> dict[str, Any]:
    out = params.to_dict()
    out["display"] = {"z": str(params.z), "a": str(params.a), "b": str(params.b)}
    return out


def verification_json(rep: VerificationReport) -> dict[str, Any]:
    return {
        "digits_requested": rep.digits_requested,
        "digits_matched": rep.digits_matched,
        "terms_used": rep.terms_used,
        "residual": ball_json(rep.residual, 10),
        "pi_formula": rep.formula,
        "passed": rep.passed,
        "elapsed": round(rep.elapsed, 6),
    }


def proof_json(res: ProofResult, verification: VerificationReport | None, wall: float) -> dict[str, Any]:
    pf = res.poly_file
    return {
        "tool": "pi-prover",
        "version": __version__,
        "command": "prove",
        "degree": res.d,
        "form": res.solution.form.file_form,
        "precision_digits": res.digits,
        "polynomial_file": {
            "path": str(pf.path) if pf.path else None,
            "sha256": pf.sha256,
            "form": pf.form,
            "terms": len(pf.poly),
        },
        "solution": {
            "u0_expr": str(res.solution.u0),
            "v0_expr": str(res.solution.v0),
            "u0": ball_json(res.chain.u0),
            "v0": ball_json(res.chain.v0),
        },
        "residuals": {
            "w_difference": ball_json(res.check.w_residual, 10),
            "polynomial": ball_json(res.check.p_residual, 10),
            "degenerate": res.check.degenerate,
        },
        "chain": {k: ball_json(v) for k, v in res.chain.balls().items()},
        "degree_test": ball_json(res.degree_residual, 10),
        "series_balls": {k: ball_json(getattr(res.balls, k)) for k in ("z", "a", "b", "m_ratio")},
        "params": params_json(res.params),
        "verification": verification_json(verification) if verification else None,
        "status": "certified" if verification is None or verification.passed else "failed",
        "wall_time": round(wall, 6),
    }


# -- subcommands ----------------------------------------------------------------------------


def _precision(n: int) -> Precision:
    try:
        return Precision(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _verify_exit(rep: VerificationReport) -> int:
    if rep.passed:
        return EXIT_OK
    return EXIT_INCONCLUSIVE if contains_zero(rep.residual) else EXIT_FAILURE


def cmd_prove(args, out) -> int:
    start = time.perf_counter()
    res = prove(args.degree, _precision(args.precision), args.data_dir, args.poly_file)
    rep = verify_against_pi(res.params, args.verify) if args.verify else None
    wall = time.perf_counter() - start
    if args.json:
        out.write(dumps(proof_json(res, rep, wall)))
    else:
        pf = res.poly_file
        out.write(f"degree {res.d}: form {res.solution.form.file_form}, {pf.path} (sha256 {pf.sha256[:16]})\n")
        out.write(f"u0 = {res.chain.u0.mid_str(30)}\n")
        out.write(f"v0 = {res.chain.v0.mid_str(30)}\n")
        out.write(f"w(u0) - w(v0) contains 0, radius <= 1e{res.check.w_residual.radius_exponent()}\n")
        out.write(f"P(u0, v0) contains 0, radius <= 1e{res.check.p_residual.radius_exponent()}\n")
        out.write(f"m0 = {res.chain.m0.mid_str(30)}\n")
        out.write(f"|m0|^2 * {res.d} - 1 contains 0\n")
        out.write(f"z = {res.params.z}\n")
        out.write(f"a = {res.params.a}\n")
        out.write(f"b = {res.params.b}\n")
        if rep:
            out.write(f"series matches 1/pi to {rep.digits_matched} digits ({rep.terms_used} terms)\n")
        out.write(f"time {wall:.2f} s\n")
    return _verify_exit(rep) if rep else EXIT_OK


def _load_params(path: str) -> SeriesParams:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if "params" in data:
            data = data["params"]
        return SeriesParams.from_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read series parameters from {path}: {exc}") from None


def cmd_verify_series(args, out) -> int:
    if args.params:
        params, label = _load_params(args.params), args.params
    elif args.known:
        params, label = KNOWN_SERIES[args.known], args.known
    else:
        params = prove(args.degree, _precision(args.precision), args.data_dir, args.poly_file).params
        label = f"degree {args.degree}"
    rep = verify_against_pi(params, args.digits, formula=args.pi_formula)
    if args.json:
        out.write(dumps({"command": "verify-series", "series": label, "params": params_json(params),
                         "verification": verification_json(rep), "version": __version__}))
    else:
        out.write(f"{label}: z = {params.z}, a = {params.a}, b = {params.b}\n")
        out.write(f"digits_matched = {rep.digits_matched} of {rep.digits_requested} "
                  f"({rep.terms_used} terms, {rep.elapsed:.2f} s)\n")
    return _verify_exit(rep)


def cmd_validate_modeq(args, out) -> int:
    pf = load_polynomial(args.degree, args.data_dir, args.poly_file)
    try:
        t = Fraction(args.tau)
    except ValueError:
        raise UsageError(f"--tau must be a rational number, got {args.tau!r}") from None
    if t < Fraction(1, 2):
        raise UsageError("--tau must be >= 1/2")
    rep = validate_modular_polynomial(pf.poly, args.degree, t, _precision(args.precision), pf.form)
    if args.json:
        out.write(dumps({
            "command": "validate-modeq",
            "degree": rep.degree,
            "tau": str(rep.t),
            "form": rep.form,
            "sha256": pf.sha256,
            "passed": rep.passed,
            "degenerate": rep.degenerate,
            "residual_direct": ball_json(rep.residual_direct, 10) if rep.residual_direct else None,
            "residual_swapped": ball_json(rep.residual_swapped, 10) if rep.residual_swapped else None,
            "notes": rep.notes,
            "version": __version__,
        }))
    else:
        verdict = "pass" if rep.passed else "FAIL"
        out.write(f"degree {rep.degree} ({rep.form}, sha256 {pf.sha256[:16]}) at t = {rep.t}: {verdict}\n")
        for note in rep.notes:
            out.write(f"  {note}\n")
    if rep.passed:
        return EXIT_OK
    return EXIT_FAILURE if rep.certified_nonzero else EXIT_INCONCLUSIVE


def truncated_digits(x: ComplexBall, decimals: int) -> str | None:
    """Decimal expansion of a positive real ball cut after ``decimals`` places, if certified."""
    mid, rad = x.real.mid[0], x.radius
    scale = 10**decimals
    lo, hi = math.floor((mid - rad) * scale), math.floor((mid + rad) * scale)
    if lo != hi or lo < 0:
        return None
    text = str(lo).rjust(decimals + 1, "0")
    return f"{text[:-decimals]}.{text[-decimals:]}" if decimals else text


def cmd_constants(args, out) -> int:
    digits = _precision(args.digits).digits
    pi = pi_oracle(Precision(digits + 10), args.pi_formula)
    text = truncated_digits(pi, digits - 1)
    if text is None:
        raise Inconclusive("pi enclosure straddles a digit boundary")
    if args.json:
        out.write(dumps({"command": "constants", "name": "pi", "digits": text, "formula": args.pi_formula,
                         "radius_exponent": pi.radius_exponent()}))
    else:
        out.write(text + "\n")
    return EXIT_OK


def cmd_all(args, out) -> int:
    start = time.perf_counter()
    rows, code = [], EXIT_OK
    for d in CATALOG_DEGREES:
        res = prove(d, _precision(args.precision), args.data_dir)
        rep = verify_against_pi(res.params, args.digits)
        rows.append({"degree": d, "params": params_json(res.params), "verification": verification_json(rep)})
        code = max(code, _verify_exit(rep))
        if not args.json:
            out.write(f"d={d:<3} z = {res.params.z}  a = {res.params.a}  b = {res.params.b}  "
                      f"[{rep.digits_matched} digits]\n")
    for name, params in KNOWN_SERIES.items():
        rep = verify_against_pi(params, args.digits)
        rows.append({"series": name, "params": params_json(params), "verification": verification_json(rep)})
        code = max(code, _verify_exit(rep))
        if not args.json:
            out.write(f"{name}: z = {params.z}  [{rep.digits_matched} digits]\n")
    wall = time.perf_counter() - start
    if args.json:
        out.write(dumps({"command": "all", "results": rows, "wall_time": round(wall, 6), "version": __version__}))
    else:
        out.write(f"time {wall:.2f} s\n")
    return code


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--data-dir", help="directory holding weber_<d>.txt (default: $PI_PROVER_DATA or bundled)")

    parser = _Parser(prog="pi-prover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    degree = dict(type=int, choices=CATALOG_DEGREES, metavar="D", help=f"one of {CATALOG_DEGREES}")
    precision = dict(type=int, default=DEFAULT_PRECISION, help="working precision in digits (default 200)")

    p = sub.add_parser("prove", parents=[common], help="derive z, a, b for one degree")
    p.add_argument("--degree", required=True, **degree)
    p.add_argument("--precision", **precision)
    p.add_argument("--poly-file", help="polynomial file to use instead of the data directory")
    p.add_argument("--verify", type=int, metavar="DIGITS", help="also check the series against 1/pi")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify-series", parents=[common], help="check a series against 1/pi")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--degree", **degree)
    src.add_argument("--params", metavar="FILE", help="JSON with s, level, z, a, b")
    src.add_argument("--known", choices=sorted(KNOWN_SERIES), help="a bundled positive series")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--precision", **precision)
    p.add_argument("--poly-file")
    p.add_argument("--pi-formula", default="machin", choices=["machin", "stormer", "gauss"])
    p.set_defaults(func=cmd_verify_series)

    p = sub.add_parser("validate-modeq", parents=[common], help="check a polynomial file against q-series")
    p.add_argument("--degree", required=True, **degree)
    p.add_argument("--tau", default="1", help="rational t >= 1/2; tests the pair (f(it), f(idt))")
    p.add_argument("--precision", type=int, default=100)
    p.add_argument("--poly-file")
    p.set_defaults(func=cmd_validate_modeq)

    p = sub.add_parser("constants", parents=[common], help="print a reference constant")
    p.add_argument("name", choices=["pi"])
    p.add_argument("--digits", type=int, default=100)
    p.add_argument("--pi-formula", default="machin", choices=["machin", "stormer", "gauss"])
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("all", parents=[common], help="prove and verify every catalog degree")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--precision", **precision)
    p.set_defaults(func=cmd_all)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "digits", None) is not None and args.command in ("verify-series", "all") and args.digits < 50:
            raise UsageError("--digits must be >= 50")
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"pi-prover: error: {exc}\n")
        return EXIT_USAGE
    except CertifiedFailure as exc:
        err.write(f"pi-prover: certified failure: {type(exc).__name__}: {exc}\n")
        return EXIT_FAILURE
    except Inconclusive as exc:
        err.write(f"pi-prover: inconclusive: {type(exc).__name__}: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (ProverError, OSError, ValueError) as exc:
        err.write(f"pi-prover: error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
