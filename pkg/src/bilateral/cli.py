"""Command-line front end.

    bilateral eval 3 1/2
    bilateral scan --kmax 11 --qmax 12
    bilateral zeta-audit 1 1/2
    bilateral selftest

Exit status: 0 when everything verified, 1 on any failure or undecided
cell, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial

from .ball import s_series_ball
from .cotpoly import q_polynomial, s_exact
from .errors import DomainError, InsufficientPrecision
from .exact import parse_rational
from .theorems import (
    certify,
    gmr_formula_residual,
    lemma3_audit,
    reflection_residual,
    scan,
    supported_alphas,
)
from .zeta import Parity, corollary3_audit, cot_taylor_residual, zeta_even, zeta_series_closed, zeta_series_sum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CERT_HEADER = [
    "k", "alpha", "status", "is_null", "reason", "exact_coefficient", "pi_power",
    "midpoint", "radius_log2", "precision_bits", "pi_power_check", "separation",
]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    precision_cap: int = 1024
    k_range: tuple = (2, 11)
    q_max: int = 12
    output_format: str = "json"
    grid_step: Fraction = Fraction(1, 10)

    def validate(self) -> RunConfig:
        if not 64 <= self.precision_bits <= self.precision_cap:
            raise UsageError("need 64 <= --precision-bits <= --precision-cap")
        k_min, k_max = self.k_range
        if not 2 <= k_min <= k_max <= 64:
            raise UsageError("need 2 <= --kmin <= --kmax <= 64 (k > 1 required)")
        if self.q_max < 2:
            raise UsageError("--qmax must be at least 2")
        if self.output_format not in ("json", "csv"):
            raise UsageError("--format must be json or csv")
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["k_range"] = list(self.k_range)
        d["grid_step"] = str(self.grid_step)
        return d


def _cert_row(cert) -> list:
    exact = cert.exact
    return [
        cert.k, str(cert.alpha), cert.status, cert.verdict.is_null, cert.verdict.reason.value,
        "" if exact is None else str(exact.coefficient), cert.k,
        cert.numeric.midpoint_decimal(), cert.numeric.radius_log2, cert.numeric.prec,
        cert.pi_power_check, cert.separation,
    ]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands ---------------------------------------------------------------


def _parse_alpha(text: str, name: str = "alpha") -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"malformed {name} {text!r}: expected a/q") from exc


def cmd_eval(k: int, alpha: Fraction, config: RunConfig, out) -> int:
    if k < 2:
        raise UsageError("k must be an integer > 1")
    if alpha.denominator == 1:
        raise UsageError("alpha must be non-integral")
    try:
        cert = certify(k, alpha, config.precision_bits, config.precision_cap)
    except InsufficientPrecision as exc:
        cert = exc.certificate
        print(f"undecided: {exc}", file=sys.stderr)
    if config.output_format == "csv":
        out.write(_csv(CERT_HEADER, [_cert_row(cert)]))
    else:
        out.write(_json(cert.to_dict()))
    return EXIT_OK if cert.verified else EXIT_FAIL


def cmd_scan(config: RunConfig, out, jobs: int = 1) -> int:
    k_min, k_max = config.k_range
    report = scan(k_min, k_max, config.q_max, config.precision_bits, config.precision_cap, jobs=jobs)
    if config.output_format == "csv":
        out.write(_csv(CERT_HEADER, [_cert_row(c) for c in report.certificates]))
    else:
        out.write(_json(report.to_dict()))
    summary = report.summary()
    return EXIT_OK if summary["failed"] == 0 and summary["undecided"] == 0 else EXIT_FAIL


def cmd_zeta_audit(m: int, z: Fraction, config: RunConfig, out) -> int:
    if m < 1:
        raise UsageError("m must be a positive integer")
    if z == 0 or abs(z) >= 1:
        raise UsageError("z must satisfy 0 < |z| < 1")
    report = corollary3_audit(m, z, config.precision_bits)
    if config.output_format == "csv":
        rows = []
        for e in report.entries:
            d = e.to_dict()
            closed = d["closed_value"] or {}
            rows.append([
                m, str(z), e.parity.value, d["direct_ball"]["midpoint"], d["direct_ball"]["radius_log2"],
                closed.get("rational", ""), closed.get("pi_coefficient", ""), closed.get("pi_power", ""),
                e.agreement, e.category, e.paper_claim_text, e.match,
            ])
        header = ["m", "z", "parity", "midpoint", "radius_log2", "rational", "pi_coefficient",
                  "pi_power", "agreement", "category", "paper_claim", "match"]
        out.write(_csv(header, rows))
    else:
        out.write(_json(report.to_dict()))
    return EXIT_OK if report.all_agree else EXIT_FAIL


# -- selftest ---------------------------------------------------------------

REFLECTION_ALPHAS = [Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
                     Fraction(2, 3), Fraction(3, 4), Fraction(5, 6)]
ZETA_POINTS = [Fraction(s, d) for d in (2, 3, 4, 6) for s in (1, -1)]


def _suite(name: str, checks: list) -> dict:
    failures = [label for label, ok in checks if not ok]
    return {"name": name, "checks": len(checks), "passed": not failures, "failures": failures}


def _suite_null_certificates(config):
    checks = []
    for k in (3, 5, 7, 9):
        for alpha in (Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(7, 2)):
            ball = s_series_ball(k, alpha, config.precision_bits)
            checks.append((f"S_{k}({alpha}) ball contains 0", ball.contains_zero()))
            checks.append((f"S_{k}({alpha}) exact null", s_exact(k, alpha).is_zero()))
    return checks


def _suite_scan(config):
    k_min, k_max = config.k_range
    report = scan(k_min, k_max, config.q_max, config.precision_bits, config.precision_cap)
    checks = [(f"S_{c.k}({c.alpha}) {c.status}", c.verified) for c in report.certificates]
    expected = [(k, a) for k in range(k_min, k_max + 1) if k % 2
                for a in [Fraction(1, 2)]]
    checks.append(("null set is exactly odd k x {1/2}", report.null_cases == expected))
    return checks


def _suite_closed_form(config):
    checks = []
    for k in range(2, 11):
        for alpha in supported_alphas():
            series = s_series_ball(k, alpha, config.precision_bits)
            closed = s_exact(k, alpha).to_ball(config.precision_bits)
            checks.append((f"S_{k}({alpha}) closed form", series.overlaps(closed)))
    return checks


def _suite_reflection(config):
    return [
        (f"reflection k={k} alpha={a}", reflection_residual(k, a, config.precision_bits).contains_zero())
        for k in range(2, 7) for a in REFLECTION_ALPHAS
    ]


def _suite_gmr(config):
    inputs = [(2, Fraction(1, 2)), (3, Fraction(1, 2)), (2, Fraction(1, 4))]
    return [
        (f"GMR formula k={k} alpha={a} disagrees", gmr_formula_residual(k, a, config.precision_bits).excludes_zero())
        for k, a in inputs
    ]


def _suite_lemma3(config):
    report = lemma3_audit(6, config.grid_step, config.precision_bits)
    return [(f"{c.check} k={c.k} alpha={c.alpha}", c.passed) for c in report.cells]


def _suite_bernoulli(config):
    checks = []
    for j in range(1, 9):
        lhs = q_polynomial(2 * j - 1)(0)
        rhs = -factorial(2 * j - 1) * 2 * (2 ** (2 * j) - 1) * zeta_even(j).coefficient
        checks.append((f"Q_{2 * j - 1}(0) vs zeta({2 * j})", lhs == rhs))
    return checks


def _suite_zeta(config):
    checks = []
    for m in (1, 2, 3):
        for z in ZETA_POINTS:
            for parity in Parity:
                direct = zeta_series_sum(m, z, parity, config.precision_bits)
                closed = zeta_series_closed(m, z, parity).to_ball(config.precision_bits)
                checks.append((f"{parity.value} m={m} z={z}", direct.overlaps(closed)))
                if parity is Parity.ODD_ORDER:
                    checks.append((f"odd series positive m={m} z={z}", direct.is_positive()))
    for z, n in [(Fraction(1, 4), 40), (Fraction(1, 2), 60), (Fraction(-1, 3), 50)]:
        checks.append((f"cot Taylor z={z} N={n}", cot_taylor_residual(z, n, config.precision_bits).contains_zero()))
    return checks


SUITES = [
    ("null_certificates", _suite_null_certificates),
    ("theorem_scan", _suite_scan),
    ("closed_form_vs_series", _suite_closed_form),
    ("reflection", _suite_reflection),
    ("gmr_negative_control", _suite_gmr),
    ("lemma3_audit", _suite_lemma3),
    ("bernoulli_links", _suite_bernoulli),
    ("zeta_identities", _suite_zeta),
]


def cmd_selftest(config: RunConfig, out) -> int:
    suites = [_suite(name, fn(config)) for name, fn in SUITES]
    ok = all(s["passed"] for s in suites)
    if config.output_format == "csv":
        out.write(_csv(["suite", "checks", "passed", "failures"],
                       [[s["name"], s["checks"], s["passed"], ";".join(s["failures"])] for s in suites]))
    else:
        out.write(_json({"config": config.to_dict(), "suites": suites, "passed": ok}))
    if not ok:
        print("selftest failed; retry with a larger --precision-bits", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=128)
    common.add_argument("--precision-cap", type=int, default=1024)
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = _Parser(prog="bilateral", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="certify one (k, alpha)")
    p.add_argument("k", type=int)
    p.add_argument("alpha")

    p = sub.add_parser("scan", parents=[common], help="certify a (k, a/q) grid")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=11)
    p.add_argument("--qmax", type=int, default=12)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("zeta-audit", parents=[common], help="audit the derived zeta series at z")
    p.add_argument("m", type=int)
    p.add_argument("z")

    p = sub.add_parser("selftest", parents=[common], help="run every invariant suite")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=11)
    p.add_argument("--qmax", type=int, default=12)
    p.add_argument("--grid-step", default="1/10")
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        config = RunConfig(
            precision_bits=args.precision_bits,
            precision_cap=args.precision_cap,
            k_range=(getattr(args, "kmin", 2), getattr(args, "kmax", 11)),
            q_max=getattr(args, "qmax", 12),
            output_format=args.format,
            grid_step=_parse_alpha(getattr(args, "grid_step", "1/10"), "grid step"),
        ).validate()
        if args.command == "eval":
            return cmd_eval(args.k, _parse_alpha(args.alpha), config, out)
        if args.command == "scan":
            return cmd_scan(config, out, jobs=args.jobs)
        if args.command == "zeta-audit":
            return cmd_zeta_audit(args.m, _parse_alpha(args.z, "z"), config, out)
        return cmd_selftest(config, out)
    except (UsageError, DomainError) as exc:
        print(f"bilateral: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
