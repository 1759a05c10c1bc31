"""Command-line front end.

    quatfact <command> [--var s|t] [--order 0,2,1] [--eps 1e-9]
             [--format json|text] <files...>

Commands: nfc, factor, enumerate, equiv, lift, verify.  Polynomial files
hold either the term-map JSON ({"terms": [{"t": i, "s": j, "c": [w,x,y,z]}]})
or a plain-text expression in t, s, i, j, k.  Factorization files hold the
JSON emitted by ``factor``.  The QUATFACT_EPS environment variable
overrides the default tolerance.

Exit codes: 0 success, 1 residual above tolerance, 2 norm polynomial not
separable, 3 mismatched polynomials, 64 unparseable input, 70 internal
numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bifactor import (cofactor_factorize, enumerate_factorizations, equivalent,
                       norm_split, s_equivalent, strip_real_content, t_equivalent,
                       verify_factorization)
from .duallift import build_lift_system, solve_lift, verify_lift
from .errors import (DifferentPolynomials, MismatchedPolynomials, NFCViolated,
                     ParseError, QuatFactError)
from .exprparse import parse_poly
from .quaternion import DEFAULT_EPS
from .quatpoly import QuatPoly
from .realpoly import quadratic_factors
from .unifactor import Factorization, quaternion_linear_factors

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_NFC = 2
EXIT_MISMATCH = 3
EXIT_PARSE = 64
EXIT_INTERNAL = 70


def _default_eps() -> float:
    env = os.environ.get("QUATFACT_EPS")
    if env is None:
        return DEFAULT_EPS
    try:
        value = float(env)
    except ValueError:
        raise ParseError(f"QUATFACT_EPS={env!r} is not a number")
    if value <= 0:
        raise ParseError("QUATFACT_EPS must be positive")
    return value


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def load_polynomial(path: str) -> QuatPoly:
    text = _read_file(path)
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from exc
        if "terms" not in data:
            raise ParseError(f"{path}: polynomial JSON needs a 'terms' key")
        try:
            return QuatPoly.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path}: malformed term map: {exc}") from exc
    return parse_poly(stripped)


def load_factorization(path: str) -> Factorization:
    text = _read_file(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if "factors" not in data:
        raise ParseError(f"{path}: factorization JSON needs a 'factors' key")
    try:
        return Factorization.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed factorization: {exc}") from exc


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _fmt_quat(q) -> str:
    return "[" + ", ".join(f"{c:.12g}" for c in q.as_list()) + "]"


def _fmt_poly(p) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if abs(c) <= 1e-12 * max(1.0, p.max_abs()):
            continue
        mono = "" if k == 0 else (p.var if k == 1 else f"{p.var}^{k}")
        parts.append(f"{c:.12g}{('*' + mono) if mono else ''}")
    return " + ".join(parts) if parts else "0"


def cmd_nfc(args) -> int:
    q = load_polynomial(args.files[0])
    p_part, r_part = norm_split(q, args.eps)
    payload = {"P": p_part.as_dict(), "R": r_part.as_dict()}
    _emit(payload, args.format,
          [f"P(t) = {_fmt_poly(p_part)}", f"R(s) = {_fmt_poly(r_part)}"])
    return EXIT_OK


def _parse_order(text, count):
    if text is None:
        return list(range(count))
    try:
        idx = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"--order must be comma-separated integers: {text!r}") from exc
    if sorted(idx) != list(range(count)):
        raise ParseError(
            f"--order must be a permutation of 0..{count - 1}, got {text!r}")
    return idx


def _factor_with_content(q, var, order_text, eps):
    """Strip real content, run the cofactor factorization, reassemble."""
    content_t, content_s, prim = strip_real_content(q, eps)
    p_part, r_part = norm_split(prim, eps)
    part = r_part if var == "s" else p_part
    if part.degree() >= 2:
        tup = quadratic_factors(part.monic(), eps)
        order = [tup[i] for i in _parse_order(order_text, len(tup))]
    else:
        order = []
        _parse_order(order_text, 0)
    k_poly, fact = cofactor_factorize(prim, order, eps)
    lead = []
    for content in (content_t, content_s):
        if content.degree() >= 1:
            lead.extend(quaternion_linear_factors(content, eps))
    if lead:
        fact = Factorization(fact.unit, fact.K, tuple(lead) + fact.factors)
    return k_poly, fact


def cmd_factor(args) -> int:
    q = load_polynomial(args.files[0])
    k_poly, fact = _factor_with_content(q, args.var, args.order, args.eps)
    residual = verify_factorization(q, fact)
    payload = fact.as_dict()
    payload["residual"] = residual
    payload["k_is_one"] = fact.k_is_one(10 * args.eps)
    lines = [f"K = {_fmt_poly(k_poly)}", f"unit = {_fmt_quat(fact.unit)}"]
    lines += [f"  ({f.var} - h), h = {_fmt_quat(f.h)}" for f in fact.factors]
    lines.append(f"residual = {residual:.17g}")
    _emit(payload, args.format, lines)
    return EXIT_OK if residual <= 10 * args.eps else EXIT_RESIDUAL


def cmd_enumerate(args) -> int:
    q = load_polynomial(args.files[0])
    content_t, content_s, prim = strip_real_content(q, args.eps)
    variables = ("s", "t") if args.var == "both" else (args.var,)
    report = enumerate_factorizations(prim, variables=variables, eps=args.eps)
    lead = []
    for content in (content_t, content_s):
        if content.degree() >= 1:
            lead.extend(quaternion_linear_factors(content, args.eps))
    records = []
    for entry in report.entries:
        rec = entry.as_record()
        if lead:
            rec["factors"] = [f.as_dict() for f in lead] + rec["factors"]
        records.append(rec)
    summary = {"summary": True, "permutations": len(report.entries),
               "k_one": report.num_k_one(), "classes": report.num_classes()}
    if args.format == "json":
        for rec in records:
            print(json.dumps(rec))
        print(json.dumps(summary))
    else:
        for rec in records:
            korder = ",".join(str(i) for i in rec["order"])
            print(f"var={rec['var']} order=({korder}) K_is_one={rec['k_is_one']}"
                  f" class={rec['class']}")
        print(f"{summary['k_one']} of {summary['permutations']} permutations"
              f" give K = 1 in {summary['classes']} equivalence class(es)")
    return EXIT_OK


def cmd_equiv(args) -> int:
    f1 = load_factorization(args.files[0])
    f2 = load_factorization(args.files[1])
    result = {
        "equivalent": equivalent(f1, f2, eps=args.eps),
        "t_equivalent": t_equivalent(f1, f2, eps=args.eps),
        "s_equivalent": s_equivalent(f1, f2, eps=args.eps),
    }
    _emit(result, args.format, [
        f"equivalent: {result['equivalent']}",
        f"t-equivalent: {result['t_equivalent']}",
        f"s-equivalent: {result['s_equivalent']}",
    ])
    return EXIT_OK


def cmd_lift(args) -> int:
    f1 = load_factorization(args.files[0])
    f2 = load_factorization(args.files[1])
    system = build_lift_system(f1, f2, args.eps)
    solution = solve_lift(system, args.rank_tol)
    residuals = [verify_lift(f1, f2, row, args.eps) for row in solution.basis]
    payload = solution.as_dict()
    payload["residuals"] = residuals
    lines = [f"unknowns = {system.num_unknowns()}",
             f"equations = {system.num_rows()}",
             f"dimension = {solution.dimension}"]
    lines += [f"  basis[{k}] residual = {r:.3e}" for k, r in enumerate(residuals)]
    _emit(payload, args.format, lines)
    ok = all(r <= 10 * args.eps for r in residuals)
    return EXIT_OK if ok else EXIT_RESIDUAL


def cmd_verify(args) -> int:
    fact = load_factorization(args.files[0])
    q = load_polynomial(args.files[1])
    residual = verify_factorization(q, fact)
    _emit({"residual": residual}, args.format, [f"residual = {residual:.17g}"])
    return EXIT_OK if residual <= 10 * args.eps else EXIT_RESIDUAL


_COMMANDS = {
    "nfc": (cmd_nfc, 1, "check that the norm polynomial splits as P(t)*R(s)"),
    "factor": (cmd_factor, 1, "factor K*q into univariate linear factors"),
    "enumerate": (cmd_enumerate, 1, "run all orderings of the norm factors"),
    "equiv": (cmd_equiv, 2, "decide equivalence of two factorizations"),
    "lift": (cmd_lift, 2, "lift two factorizations to dual quaternions"),
    "verify": (cmd_verify, 2, "recompute the residual of a stored factorization"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatfact",
        description="factorization of bivariate quaternionic polynomials")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, nfiles, help_text) in _COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--eps", type=float, default=None,
                         help="base tolerance (default 1e-9 or QUATFACT_EPS)")
        cmd.add_argument("--format", choices=("json", "text"), default="text")
        if name in ("factor", "enumerate"):
            default_var = "s" if name == "factor" else "both"
            choices = ("s", "t") if name == "factor" else ("s", "t", "both")
            cmd.add_argument("--var", choices=choices, default=default_var,
                             help="variable whose norm factors are ordered")
        if name == "factor":
            cmd.add_argument("--order", default=None,
                             help="comma-separated permutation of factor indices")
        if name == "lift":
            cmd.add_argument("--rank-tol", type=float, default=1e-10,
                             help="relative singular value cutoff")
        cmd.add_argument("files", nargs=nfiles, metavar="file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.eps is None:
            args.eps = _default_eps()
        elif args.eps <= 0:
            raise ParseError("--eps must be positive")
        handler = _COMMANDS[args.command][0]
        return handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NFCViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NFC
    except (MismatchedPolynomials, DifferentPolynomials) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except QuatFactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
