"""Command-line interface.

Exit codes: 0 success, 1 verification or solving failure, 2 usage error.
Results go to stdout as JSON with sorted keys; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import congruence, oracle
from .classify import IsoWitness, build_witness, classify, verify_witness
from .errors import BudgetExceeded, NoSolution, NotAUnit, QuatringError
from .modint import factorize, is_prime
from .quat import RingParams


class UsageError(Exception):
    pass


def _dump(obj, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, sort_keys=True) + "\n")


def _ring_args(sub):
    sub.add_argument("-n", type=int, required=True)
    sub.add_argument("-a", type=int, required=True)
    sub.add_argument("-b", type=int, required=True)


_FORM = re.compile(
    r"^\s*(?P<a>[+-]?\s*\d*)\s*\*?\s*x\^2\s*"
    r"(?:(?P<bsign>[+-])\s*(?P<b>\d*)\s*\*?\s*y\^2\s*)?"
    r"=\s*(?P<c>[+-]?\s*\d+)\s*$"
)


def _coef(text: str | None, default: int = 1) -> int:
    text = (text or "").replace(" ", "")
    if text in ("", "+"):
        return default
    if text == "-":
        return -default
    return int(text)


def parse_form(text: str) -> tuple[int, int | None, int]:
    """``"a x^2 + b y^2 = c"`` -> (a, b, c); b is None for ``"a x^2 = c"``."""
    m = _FORM.match(text)
    if not m:
        raise UsageError(f"cannot parse form {text!r}; expected 'a x^2 + b y^2 = c'")
    a = _coef(m.group("a"))
    b = None
    if m.group("bsign"):
        b = _coef(m.group("b"))
        if m.group("bsign") == "-":
            b = -b
    return a, b, _coef(m.group("c"))


def parse_prime_power(text: str) -> tuple[int, int]:
    if "^" in text:
        p_text, s_text = text.split("^", 1)
        p, s = int(p_text), int(s_text)
    else:
        mod = factorize(int(text))
        if len(mod.factors) != 1:
            raise UsageError(f"{text} is not a prime power")
        p, s = mod.factors[0]
    if not is_prime(p) or s < 1:
        raise UsageError(f"{text} is not a prime power")
    return p, s


def cmd_classify(args) -> int:
    _dump(classify(args.n, args.a, args.b).to_json())
    return 0


def cmd_witness(args) -> int:
    w = build_witness(args.n, args.a, args.b)
    text = json.dumps(w.to_json(), sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    report = verify_witness(w)
    for f in report.failures:
        print(f, file=sys.stderr)
    return 0 if report else 1


def cmd_verify(args) -> int:
    try:
        with open(args.infile) as fh:
            data = json.load(fh)
        w = IsoWitness.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _dump({"ok": False, "failures": [f"unreadable witness: {exc}"]})
        return 1
    report = verify_witness(w)
    _dump({"ok": report.ok, "failures": report.failures})
    return 0 if report else 1


def cmd_solve(args) -> int:
    a, b, c = parse_form(args.form)
    p, s = parse_prime_power(args.mod)
    q = p**s
    try:
        if p != 2:
            if b is None:
                raise UsageError("odd moduli need a binary form 'a x^2 + b y^2 = c'")
            x, y = congruence.solve_binary_form_odd(a, b, c, p, s)
            result = {"x": x, "y": y}
        elif b is None:
            result = {"x": congruence.solve_scalar_square_2adic(a, c, s)}
        else:
            if (a - b) % q or a % 2 == 0:
                raise UsageError("mod 2^s only forms with equal odd coefficients a = b are supported")
            x, y = congruence.solve_sum_two_squares_2adic(c * pow(a, -1, q) % q, s)
            result = {"x": x, "y": y}
    except NoSolution as exc:
        _dump({"error": "NoSolution", "detail": str(exc)})
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result["mod"] = q
    _dump(result)
    return 0


def cmd_census(args) -> int:
    fp = oracle.census(RingParams(args.n, args.a, args.b))
    _dump(fp.to_json())
    return 0


def cmd_crosscheck(args) -> int:
    suites = list(oracle.CROSSCHECKS) if args.suite == "all" else [args.suite]
    bad = 0
    for kind in suites:
        if kind == "binary_form_odd":
            report = oracle.crosscheck_binary_form_odd(
                moduli=oracle.acceptance_moduli(args.max_modulus),
                full_budget=args.budget, keep_records=args.verbose)
        elif kind == "scalar_square_2adic":
            report = oracle.crosscheck_scalar_square_2adic(keep_records=args.verbose)
        else:
            report = oracle.crosscheck_sum_two_squares_2adic()
        for line in report.json_lines():
            sys.stdout.write(line + "\n")
        bad += report.mismatches
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatring", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="canonical class of (a,b / Z/n)")
    _ring_args(p)
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("witness", help="emit an isomorphism witness as JSON")
    _ring_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = subs.add_parser("verify", help="re-check a witness file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("solve", help="solve a quadratic congruence mod p^s")
    p.add_argument("--form", required=True)
    p.add_argument("--mod", required=True)
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("census", help="invariant fingerprint by full enumeration")
    _ring_args(p)
    p.set_defaults(func=cmd_census)

    p = subs.add_parser("crosscheck", help="validate solvers against enumeration")
    p.add_argument("--suite", default="all", choices=["all", *oracle.CROSSCHECKS])
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="largest number of (a,b,c) triples run exhaustively per modulus")
    p.add_argument("--max-modulus", type=int, default=49)
    p.add_argument("--verbose", action="store_true", help="one record per checked tuple")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, NotAUnit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuatringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
