"""Null/non-null classification of S_k(alpha) and the checks that certify it.

``classify`` states the dichotomy: for rational non-integer alpha and k > 1,
S_k(alpha) vanishes exactly when k is odd and alpha is a half-integer, and
is otherwise a nonzero algebraic multiple of pi^k.  ``certify`` backs one
verdict with the exact closed form (where available) and a certified
numeric enclosure.  The remaining functions are audits run over grids.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from math import factorial, gcd
from typing import Optional

from .ball import (
    Ball,
    GUARD,
    check_precision,
    cot_pi_ball,
    pi_ball,
    polygamma_ball,
    s_series_ball,
)
from .cotpoly import PiMultiple, q_polynomial, s_exact
from .errors import DomainError, ExactModeUnavailable, InsufficientPrecision
from .exact import EXACT_DENOMINATORS, as_rational

DEFAULT_PRECISION_CAP = 1024


class NullReason(str, enum.Enum):
    ODD_K_HALF_INTEGER = "OddKHalfInteger"
    NON_NULL_BY_THEOREM = "NonNullByTheorem1"


@dataclass(frozen=True)
class NullityVerdict:
    is_null: bool
    reason: NullReason

    def to_dict(self) -> dict:
        return {"is_null": self.is_null, "reason": self.reason.value}


def _check_args(k, alpha) -> Fraction:
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer > 1, got {k}")
    alpha = as_rational(alpha)
    if alpha.denominator == 1:
        raise DomainError("alpha must be non-integral")
    return alpha


def classify(k: int, alpha) -> NullityVerdict:
    alpha = _check_args(k, alpha)
    if k % 2 == 1 and alpha.denominator == 2:
        return NullityVerdict(True, NullReason.ODD_K_HALF_INTEGER)
    return NullityVerdict(False, NullReason.NON_NULL_BY_THEOREM)


@dataclass
class Certificate:
    k: int
    alpha: Fraction
    verdict: NullityVerdict
    exact: Optional[PiMultiple]
    numeric: Ball
    pi_power_check: bool
    separation: bool
    undecided: bool = False

    @property
    def verified(self) -> bool:
        return self.pi_power_check and self.separation and not self.undecided

    @property
    def status(self) -> str:
        if self.undecided:
            return "undecided"
        return "verified" if self.verified else "failed"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "alpha": str(self.alpha),
            "verdict": self.verdict.to_dict(),
            "exact": self.exact.to_dict() if self.exact is not None else None,
            "numeric": self.numeric.to_dict(),
            "precision_bits": self.numeric.prec,
            "pi_power_check": self.pi_power_check,
            "separation": self.separation,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Certificate:
        verdict = NullityVerdict(data["verdict"]["is_null"], NullReason(data["verdict"]["reason"]))
        exact = PiMultiple.from_dict(data["exact"]) if data["exact"] is not None else None
        return cls(
            k=int(data["k"]),
            alpha=Fraction(data["alpha"]),
            verdict=verdict,
            exact=exact,
            numeric=Ball.from_dict(data["numeric"], int(data["precision_bits"])),
            pi_power_check=bool(data["pi_power_check"]),
            separation=bool(data["separation"]),
            undecided=data["status"] == "undecided",
        )


def closed_form_ball(k: int, alpha, prec: int) -> Ball:
    """``(-1)^(k-1)/(k-1)! * pi^k * Q_{k-1}(cot pi alpha)`` in ball arithmetic.

    Works for any rational non-integer alpha; the exact path is not used.
    """
    wp = prec + GUARD
    t = cot_pi_ball(alpha, wp)
    value = q_polynomial(k - 1)(t) * pi_ball(wp) ** k
    sign = 1 if k % 2 else -1
    return value.scale(Fraction(sign, factorial(k - 1))).round_to(prec)


def _certify_once(k: int, alpha: Fraction, verdict: NullityVerdict, prec: int) -> Certificate:
    try:
        exact = s_exact(k, alpha)
    except ExactModeUnavailable:
        exact = None
    numeric = s_series_ball(k, alpha, prec)
    if exact is not None:
        reference = exact.to_ball(prec)
    else:
        reference = closed_form_ball(k, alpha, prec)
    pi_power_check = numeric.overlaps(reference)
    if verdict.is_null:
        separation = numeric.contains_zero() and (exact is None or exact.is_zero())
    else:
        separation = numeric.excludes_zero() and (exact is None or not exact.is_zero())
    return Certificate(k, alpha, verdict, exact, numeric, pi_power_check, separation)


def certify(k: int, alpha, prec: int = 128, cap: int = DEFAULT_PRECISION_CAP) -> Certificate:
    """Certificate for one ``(k, alpha)``.

    A non-null verdict whose ball still straddles zero is retried at doubled
    precision up to ``cap``; past the cap ``InsufficientPrecision`` is raised
    with the last (undecided) certificate attached.
    """
    alpha = _check_args(k, alpha)
    check_precision(prec)
    verdict = classify(k, alpha)
    while True:
        cert = _certify_once(k, alpha, verdict, prec)
        if verdict.is_null or not cert.numeric.contains_zero():
            return cert
        if prec * 2 > cap:
            cert.undecided = True
            raise InsufficientPrecision(
                f"S_{k}({alpha}) not separated from 0 at {prec} bits; raise the precision cap",
                certificate=cert,
            )
        prec *= 2


def reduced_fractions(q_max: int):
    """All reduced a/q with 1 <= a < q <= q_max, ordered by (q, a)."""
    for q in range(2, q_max + 1):
        for a in range(1, q):
            if gcd(a, q) == 1:
                yield Fraction(a, q)


@dataclass
class ScanReport:
    certificates: list = field(default_factory=list)

    @property
    def null_cases(self) -> list:
        return [(c.k, c.alpha) for c in self.certificates if c.verdict.is_null]

    def summary(self) -> dict:
        statuses = [c.status for c in self.certificates]
        return {
            "cells": len(statuses),
            "verified": statuses.count("verified"),
            "failed": statuses.count("failed"),
            "undecided": statuses.count("undecided"),
            "null_cases": [{"k": k, "alpha": str(a)} for k, a in self.null_cases],
        }

    def to_dict(self) -> dict:
        return {
            "certificates": [c.to_dict() for c in self.certificates],
            "summary": self.summary(),
        }


def _scan_cell(args) -> Certificate:
    k, alpha, prec, cap = args
    try:
        return certify(k, alpha, prec, cap)
    except InsufficientPrecision as exc:
        return exc.certificate


def scan(k_min: int, k_max: int, q_max: int, prec: int = 128,
         cap: int = DEFAULT_PRECISION_CAP, jobs: int = 1) -> ScanReport:
    """Certify every ``(k, a/q)`` with ``k_min <= k <= k_max`` and ``q <= q_max``.

    Cells are ordered by ``(k, q, a)`` whatever ``jobs`` is.
    """
    if not 2 <= k_min <= k_max:
        raise ValueError(f"need 2 <= k_min <= k_max, got k_min={k_min}, k_max={k_max}")
    if q_max < 2:
        raise ValueError(f"q_max must be >= 2, got {q_max}")
    check_precision(prec)
    cells = [(k, alpha, prec, cap) for k in range(k_min, k_max + 1)
             for alpha in reduced_fractions(q_max)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            certs = list(pool.map(_scan_cell, cells, chunksize=8))
    else:
        certs = [_scan_cell(c) for c in cells]
    return ScanReport(certs)


def reflection_residual(k: int, alpha, prec: int = 128) -> Ball:
    """``(k-1)! S_k(a) - psi_{k-1}(1-a) - (-1)^k psi_{k-1}(a)``; encloses 0."""
    alpha = _check_args(k, alpha)
    if not 0 < alpha < 1:
        raise DomainError(f"reflection check needs 0 < alpha < 1, got {alpha}")
    lhs = s_series_ball(k, alpha, prec) * factorial(k - 1)
    psi_reflected = polygamma_ball(k - 1, 1 - alpha, prec)
    psi_direct = polygamma_ball(k - 1, alpha, prec)
    if k % 2:
        return lhs - psi_reflected + psi_direct
    return lhs - psi_reflected - psi_direct


def gmr_formula_residual(k: int, alpha, prec: int = 128) -> Ball:
    """Discrepancy of the published formula ``1/a + (-1)^k/(k-1)! D^{k-1}(pi cot pi z)|_a``.

    Returns that right-hand side minus the true series value.
    """
    alpha = _check_args(k, alpha)
    wp = prec + GUARD
    derivative = q_polynomial(k - 1)(cot_pi_ball(alpha, wp)) * pi_ball(wp) ** k
    sign = 1 if k % 2 == 0 else -1
    claimed = derivative.scale(Fraction(sign, factorial(k - 1))) + (1 / alpha)
    truth = s_series_ball(k, alpha, wp)
    return (claimed - truth).round_to(prec)


# -- property audit -------------------------------------------------------------


@dataclass(frozen=True)
class PropertyCell:
    check: str
    k: int
    alpha: Optional[Fraction]
    passed: bool
    vacuous: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "k": self.k,
            "alpha": None if self.alpha is None else str(self.alpha),
            "passed": self.passed,
            "vacuous": self.vacuous,
            "detail": self.detail,
        }


@dataclass
class PropertyReport:
    cells: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def failures(self) -> list:
        return [c for c in self.cells if not c.passed]

    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.cells)
        return {
            "cells": len(self.cells),
            "passed": n_pass,
            "failed": len(self.cells) - n_pass,
            "vacuous": sum(c.vacuous for c in self.cells),
        }

    def to_dict(self) -> dict:
        return {"cells": [c.to_dict() for c in self.cells], "summary": self.summary()}


def _sci(x: Fraction) -> str:
    return format(Decimal(x.numerator) / Decimal(x.denominator), ".3e")


def audit_grid(grid_step) -> list:
    step = as_rational(grid_step)
    if step <= 0 or step >= 1 or step.numerator != 1:
        raise DomainError(f"grid step must be 1/n with n >= 2, got {step}")
    return [j * step for j in range(1, step.denominator)]


def abs_series_bound(j: int, lo: Fraction, hi: Fraction) -> Fraction:
    """Upper bound of ``sum_n |n + x|^-j`` for all x in ``[lo, hi]`` within (0, 1).

    The n = 0 and n = -1 terms are bounded at the interval ends; every other
    term is at most ``m^-j`` for some m >= 1, twice, and
    ``sum_{m>=1} m^-j <= 1 + 1/(j-1)``.
    """
    return lo ** -j + (1 - hi) ** -j + 2 * (1 + Fraction(1, j - 1))


def derivative_check(m: int, alpha, h, prec: int) -> tuple[bool, Ball, Fraction]:
    """Central-difference test of dS_{2m+1}/dz = -(2m+1) S_{2m+2} at ``alpha``.

    Returns ``(passed, residual_ball, tolerance)``.  The truncation error of
    the central difference is at most ``h^2/6 * max|S'''|`` and
    ``S_k''' = -k(k+1)(k+2) S_{k+3}``, bounded on ``[alpha-h, alpha+h]``.
    """
    alpha, h = as_rational(alpha), as_rational(h)
    k = 2 * m + 1
    lo, hi = alpha - h, alpha + h
    if lo <= 0 or hi >= 1:
        raise DomainError("finite-difference stencil must stay inside (0, 1)")
    wp = prec + GUARD
    diff = (s_series_ball(k, hi, wp) - s_series_ball(k, lo, wp)).scale(1 / (2 * h))
    residual = diff + s_series_ball(k + 1, alpha, wp) * k
    third = k * (k + 1) * (k + 2) * abs_series_bound(k + 3, lo, hi)
    tolerance = h * h / 6 * third
    return abs(residual.midpoint) <= tolerance + residual.radius, residual, tolerance


def lemma3_audit(k_max: int = 6, grid_step=Fraction(1, 10), prec: int = 128,
                 h=Fraction(1, 1024)) -> PropertyReport:
    """Periodicity, even-k positivity, odd-k strict decrease, derivative identity."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    grid = audit_grid(grid_step)
    report = PropertyReport()
    cells = report.cells
    for k in range(2, k_max + 1):
        balls = [s_series_ball(k, a, prec) for a in grid]
        for a, b in zip(grid, balls):
            shifted = s_series_ball(k, a + 1, prec)
            cells.append(PropertyCell("periodicity", k, a, b.overlaps(shifted)))
            if k % 2 == 0:
                cells.append(PropertyCell("positivity", k, a, b.is_positive()))
        if k % 2 == 1:
            if len(grid) < 2:
                cells.append(PropertyCell("strict_decrease", k, None, True, vacuous=True,
                                          detail="fewer than two grid points"))
            for (a1, b1), (a2, b2) in zip(zip(grid, balls), zip(grid[1:], balls[1:])):
                ok = b1.strictly_greater(b2)
                cells.append(PropertyCell("strict_decrease", k, a1, ok,
                                          detail=f"vs alpha={a2}"))
    for m in range(1, (k_max - 2) // 2 + 1):
        for a in grid:
            if a - h <= 0 or a + h >= 1:
                continue
            ok, residual, tol = derivative_check(m, a, h, prec)
            cells.append(PropertyCell(
                "derivative_identity", 2 * m + 1, a, ok,
                detail=f"|residual| ~ {_sci(abs(residual.midpoint))} <= {_sci(tol)}",
            ))
    return report


def supported_alphas() -> list:
    """Reduced alphas in (0, 1) with denominator 2, 3, 4 or 6."""
    return [a for a in reduced_fractions(6) if a.denominator in EXACT_DENOMINATORS]
