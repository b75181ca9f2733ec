"""Command-line entry point.

Exit codes: 0 success / feasible / valid, 1 infeasible or invalid
instance, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import mpmath

from . import constants
from .couple import couple, verify_coupling
from .decompose import simple_decompose, verify_decomposition
from .errors import InstanceError
from .exactdist import DEFAULT_DIGITS, entropy, is_decreasing, mean
from .formats import (
    FormatError,
    format_certificate,
    format_coupling,
    format_decomposition,
    format_dist_file,
    parse_coupling,
    parse_dist_file,
    parse_trisystem,
)
from .oracle import check_certificate, compatible_oracle
from .sumfree import verify_trisystem

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _real(x, digits: int) -> str:
    return mpmath.nstr(x, digits, strip_zeros=False)


def _triple(path: str):
    dists = parse_dist_file(_read(path))
    if len(dists) != 3:
        raise UsageError(f"{path}: expected exactly three distributions, found {len(dists)}")
    return dists


def cmd_theta(args) -> int:
    res = constants.theta(args.p, args.digits)
    print(f"theta_{args.p} = {_real(res.theta, args.digits)}")
    print(f"beta* = {_real(res.beta_star, args.digits)}")
    return EXIT_OK


def cmd_rho(args) -> int:
    res = constants.rho(args.p, args.digits)
    print(f"rho_{args.p} = {_real(res.rho, args.digits)}")
    lo, hi = res.bracket
    print(f"bracket = [{lo}, {hi}]")
    return EXIT_OK


def cmd_psi(args) -> int:
    if args.rational:
        d = constants.psi_rational(args.p, args.digits)
        _emit(format_dist_file([d], comment=f"exact stand-in for psi_rho, p={args.p}, mean={mean(d)}"), args.output)
        return EXIT_OK
    approx = constants.psi(args.p, args.digits)
    lines = [f"# psi_rho for p={args.p}, rho={_real(approx.rho, args.digits)}"]
    lines += [f"{j} {_real(m, args.digits)}" for j, m in enumerate(approx.masses)]
    lines.append(f"# mean {_real(approx.mean, args.digits)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_couple(args) -> int:
    pi1, pi2, pi3 = _triple(args.input)
    c = couple(pi1, pi2, pi3)
    _emit(format_coupling(c), args.output)
    return EXIT_OK


def cmd_decompose(args) -> int:
    dists = parse_dist_file(_read(args.input))
    if not dists:
        raise UsageError(f"{args.input}: no distributions")
    dec = simple_decompose(dists)
    sys.stdout.write(format_decomposition(dec))
    print(f"verified {verify_decomposition(dists, dec)}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    pi1, pi2, pi3 = _triple(args.input)
    res = compatible_oracle(pi1, pi2, pi3, args.s)
    print(res.verdict.value)
    if res.feasible:
        sys.stdout.write(format_coupling(res.witness))
        return EXIT_OK
    sys.stdout.write(format_certificate(res.certificate))
    print(f"# certificate verified: {check_certificate(res, pi1, pi2, pi3, args.s)}")
    return EXIT_INVALID


def cmd_verify_coupling(args) -> int:
    c = parse_coupling(_read(args.input))
    pi1, pi2, pi3 = _triple(args.against)
    report = verify_coupling(c, pi1, pi2, pi3)
    print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_sumfree(args) -> int:
    ts = parse_trisystem(_read(args.input))
    report = verify_trisystem(ts)
    if report.ok:
        print(f"sum-free: {len(ts)} triples in Z_{ts.p}^{ts.n}")
        return EXIT_OK
    i, j, k = report.violation
    print(f"NOT sum-free: first violation (i, j, k) = ({i}, {j}, {k})")
    return EXIT_INVALID


def cmd_demo(args) -> int:
    p, digits = args.p, args.digits
    d = constants.psi_rational(p, digits)
    print(f"p = {p}")
    shown = ", ".join(_real(mpmath.mpf(m.numerator) / m.denominator, 8) for m in d.mass)
    print(f"psi (exact stand-in, shown rounded): ({shown})")
    print(f"mean = {mean(d)}  decreasing = {is_decreasing(d)}")
    c = couple(d, d, d)
    report = verify_coupling(c, d, d, d)
    print(f"coupling of three copies: {len(c)} support points, s = {c.s}, verified = {report.ok}")
    if args.output:
        _emit(format_coupling(c), args.output)
    eta = entropy(d, digits)
    log_theta = mpmath.log(constants.theta(p, digits).theta)
    print(f"entropy(psi)  = {_real(eta, digits)}")
    print(f"log(theta_p)  = {_real(log_theta, digits)}")
    print(f"|difference|  = {mpmath.nstr(abs(eta - log_theta), 3)}")
    return EXIT_OK if report.ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tricoupling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def digits(sp):
        sp.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    sp = add("theta", cmd_theta, "cap-set growth constant theta_p")
    sp.add_argument("-p", type=int, required=True)
    digits(sp)
    sp = add("rho", cmd_rho, "ratio of the max-entropy geometric law")
    sp.add_argument("-p", type=int, required=True)
    digits(sp)
    sp = add("psi", cmd_psi, "max-entropy law with mean (p-1)/3")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--rational", action="store_true", help="emit the exact stand-in as .dist")
    sp.add_argument("-o", "--output")
    digits(sp)
    sp = add("couple", cmd_couple, "constant-sum coupling of a decreasing triple")
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("-o", "--output")
    sp = add("decompose", cmd_decompose, "simple convex decomposition")
    sp.add_argument("-i", "--input", required=True)
    sp = add("oracle", cmd_oracle, "exact LP compatibility check")
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("-s", type=int, required=True)
    sp = add("verify-coupling", cmd_verify_coupling, "check a .cpl against a .dist triple")
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("--against", required=True)
    sp = add("sumfree-verify", cmd_sumfree, "check a tri-coloured sum-free system")
    sp.add_argument("-i", "--input", required=True)
    sp = add("demo", cmd_demo, "couple three copies of psi and compare entropy with log theta")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-o", "--output")
    digits(sp)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "digits", 1) < 1:
        print("error: --digits must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceError as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
