"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line; run with ``-s`` to see them.
"""

from __future__ import annotations

import io
from fractions import Fraction
from math import factorial

import pytest

from bilateral.ball import pi_ball, s_series_ball, sqrt3_ball
from bilateral.cli import main
from bilateral.cotpoly import q_polynomial, s_exact
from bilateral.exact import QuadraticNumber, bernoulli
from bilateral.theorems import (
    classify,
    gmr_formula_residual,
    lemma3_audit,
    reflection_residual,
    scan,
)
from bilateral.zeta import Parity, corollary3_audit, zeta_even, zeta_series_closed, zeta_series_sum

F = Fraction
PREC = 128
TIGHT = F(1, 2**100)
GMR_TOL = F(1, 2**90)
EIGHT_TOL = F(1, 2**60)
ZETA_POINTS = [F(s, d) for d in (2, 3, 4, 6) for s in (1, -1)]


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        with capsys.disabled():
            print("\n" + line + (f" ({detail})" if detail else ""))
        assert ok, line

    return emit


def test_criterion_1_null_counterexamples(report):
    bad = []
    for k in (3, 5, 7, 9):
        for alpha in (F(1, 2), F(-1, 2), F(3, 2), F(7, 2)):
            b = s_series_ball(k, alpha, PREC)
            if not (b.contains_zero() and b.radius <= TIGHT and s_exact(k, alpha).is_zero()):
                bad.append((k, alpha))
    report(1, "odd k at half-integers is null (ball and exact)", not bad, f"failures={bad}")


def test_criterion_2_nullity_scan(report):
    rep = scan(2, 11, 12, PREC, cap=1024)
    s = rep.summary()
    agree = all(c.verdict.is_null == classify(c.k, c.alpha).is_null for c in rep.certificates)
    expected = [(k, a) for k in range(2, 12) for a in (F(1, 2),) if k % 2]
    ok = s["cells"] == 450 and s["failed"] == 0 and s["undecided"] == 0 and agree
    ok = ok and all(c.verified for c in rep.certificates) and rep.null_cases == expected
    report(2, "scan k=2..11, q<=12 at cap 1024", ok, f"cells={s['cells']} failed={s['failed']} undecided={s['undecided']}")


def test_criterion_3_closed_form_vs_series(report):
    bad = []
    for q in (2, 3, 4, 6):
        for a in range(1, q):
            alpha = F(a, q)
            if alpha.denominator != q:
                continue
            for k in range(2, 11):
                series = s_series_ball(k, alpha, PREC)
                closed = s_exact(k, alpha).to_ball(PREC)
                gap = abs(series.midpoint - closed.midpoint)
                if gap > series.radius + closed.radius or max(series.radius, closed.radius) > TIGHT:
                    bad.append((k, alpha))

    pi, r3 = pi_ball(2 * PREC), sqrt3_ball(2 * PREC)
    spots = [
        (2, F(1, 2), pi**2),
        (4, F(1, 2), (pi**4).scale(F(1, 3))),
        (3, F(1, 4), (pi**3).scale(2)),
        (3, F(1, 6), (r3 * pi**3).scale(4)),
    ]
    for k, alpha, ref in spots:
        if not s_series_ball(k, alpha, PREC).overlaps(ref.round_to(PREC)):
            bad.append(("spot", k, alpha))
    exact_spots = [
        s_exact(2, F(1, 2)).coefficient == 1,
        s_exact(4, F(1, 2)).coefficient == QuadraticNumber(F(1, 3)),
        s_exact(3, F(1, 4)).coefficient == 2,
        s_exact(3, F(1, 6)).coefficient == QuadraticNumber(0, 4),
    ]
    report(3, "closed form agrees with series, k<=10, q in {2,3,4,6}", not bad and all(exact_spots), f"failures={bad}")


def test_criterion_4_reflection(report):
    alphas = [F(1, 6), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(5, 6)]
    bad = [(k, a) for k in range(2, 7) for a in alphas if not reflection_residual(k, a, PREC).contains_zero()]
    report(4, "reflection identity residual contains 0", not bad, f"failures={bad}")


def test_criterion_5_gmr_negative_control(report):
    r = gmr_formula_residual(2, F(1, 2), PREC)
    pi = pi_ball(2 * PREC)
    expected = (2 - 2 * pi * pi).round_to(PREC)
    ok = r.excludes_zero() and r.overlaps(expected) and abs(r.midpoint - expected.midpoint) <= GMR_TOL
    report(5, "published formula rejected at k=2, alpha=1/2", ok, f"residual~{r.midpoint_decimal(12)}")


def test_criterion_6_property_audit(report):
    rep = lemma3_audit(6, F(1, 10), PREC, F(1, 2**10))
    s = rep.summary()
    checks = {c.check for c in rep.cells}
    ok = rep.passed and checks == {"periodicity", "positivity", "strict_decrease", "derivative_identity"}
    report(6, "periodicity, positivity, decrease, derivative identity", ok, f"cells={s['cells']} failed={s['failed']}")


def test_criterion_7_bernoulli_zeta(report):
    ok = bernoulli(12) == F(-691, 2730)
    ok = ok and [zeta_even(n).coefficient for n in (1, 2, 3)] == [F(1, 6), F(1, 90), F(1, 945)]
    for j in range(1, 9):
        lhs = q_polynomial(2 * j - 1)(0)
        ok = ok and lhs == -factorial(2 * j - 1) * 2 * (2 ** (2 * j) - 1) * zeta_even(j).coefficient
    report(7, "Bernoulli numbers, even zeta values, cotangent link j<=8", ok)


def test_criterion_8_zeta_series(report):
    bad = []
    for m in (1, 2, 3):
        for z in ZETA_POINTS:
            for parity in Parity:
                direct = zeta_series_sum(m, z, parity, PREC)
                closed = zeta_series_closed(m, z, parity).to_ball(PREC)
                if abs(direct.midpoint - closed.midpoint) > direct.radius + closed.radius:
                    bad.append((m, z, parity.value))
    even = zeta_series_sum(1, F(1, 2), Parity.EVEN_ORDER, PREC)
    near_eight = even.contains(8) and even.radius <= EIGHT_TOL and abs(even.midpoint - 8) <= EIGHT_TOL
    audit = corollary3_audit(1, F(1, 2), PREC).even
    flagged = audit.agreement and audit.paper_claim == "null" and not audit.match
    report(8, "zeta series identities; even series at z=1/2 is 8, claim of nullity flagged",
           not bad and near_eight and flagged, f"failures={bad}")


def test_criterion_9_selftest_determinism(report):
    outputs = []
    codes = []
    for _ in range(2):
        out = io.StringIO()
        codes.append(main(["selftest"], out=out))
        outputs.append(out.getvalue().encode())
    ok = codes == [0, 0] and outputs[0] == outputs[1]
    report(9, "selftest JSON byte-identical across runs", ok, f"bytes={len(outputs[0])}")
