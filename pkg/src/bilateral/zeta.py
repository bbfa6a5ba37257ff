"""Even zeta values, the cotangent Taylor series, and the derived zeta series.

From ``pi cot(pi z) = 1/z - 2 sum_{n>=1} zeta(2n) z^(2n-1)`` (|z| < 1),
differentiating ``j`` times gives

    D^j(pi cot pi z) = (-1)^j j!/z^(j+1) - 2 sum_{n} zeta(2n) (2n-1)...(2n-j) z^(2n-1-j)

so each derived zeta series equals a rational number plus an element of
Q(sqrt 3) times a power of pi whenever cot(pi z) is exact.  The audit here
compares that decomposition with direct summation and reports which shape
the value has.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .ball import GUARD, Ball, check_precision, cot_pi_ball, pi_ball, quad_times_pi_power
from .cotpoly import q_polynomial
from .errors import DomainError, ExactModeUnavailable
from .exact import QuadraticNumber, as_rational, bernoulli, cot_exact

__all__ = [
    "AuditEntry",
    "AuditReport",
    "Parity",
    "SeriesDecomposition",
    "ZetaEvenValue",
    "bernoulli",
    "corollary3_audit",
    "cot_taylor_residual",
    "zeta_even",
    "zeta_series_closed",
    "zeta_series_sum",
]


class Parity(str, enum.Enum):
    EVEN_ORDER = "even_order"
    ODD_ORDER = "odd_order"


@dataclass(frozen=True)
class ZetaEvenValue:
    """``zeta(2n) = coefficient * pi^(2n)``."""

    n: int
    coefficient: Fraction


def zeta_even(n: int) -> ZetaEvenValue:
    if n < 1:
        raise DomainError("zeta_even needs n >= 1")
    sign = 1 if n % 2 == 1 else -1
    coeff = sign * 2 ** (2 * n - 1) * bernoulli(2 * n) / factorial(2 * n)
    return ZetaEvenValue(n, coeff)


def _check_z(z) -> Fraction:
    z = as_rational(z)
    if z == 0:
        raise DomainError("z = 0: the 1/z term is singular")
    if abs(z) >= 1:
        raise DomainError(f"series diverges for |z| >= 1, got z={z}")
    return z


def cot_taylor_residual(z, n_terms: int, prec: int = 128) -> Ball:
    """``pi cot(pi z) - [1/z - 2 sum_{n<=N} zeta(2n) z^(2n-1)]`` minus a tail enclosure.

    For n > N, ``zeta(2n) <= zeta(2N+2) <= 1 + 2^-(2N+2) (1 + 2/(2N+1))``, so
    the omitted part is at most ``2 zeta(2N+2) |z|^(2N+1) / (1 - z^2)``.
    """
    z = _check_z(z)
    check_precision(prec)
    wp = prec + GUARD
    pi = pi_ball(wp)
    lhs = pi * cot_pi_ball(z, wp)
    pi2 = pi * pi
    power = pi2
    partial = Ball.exact(1 / z, wp)
    for n in range(1, n_terms + 1):
        partial = partial - (power * zeta_even(n).coefficient).scale(2 * z ** (2 * n - 1))
        power = power * pi2
    s = 2 * n_terms + 2
    zeta_bound = 1 + Fraction(1, 2**s) * (1 + Fraction(2, s - 1))
    tail = 2 * zeta_bound * abs(z) ** (2 * n_terms + 1) / (1 - z * z)
    return (lhs - partial + Ball.from_bounds(Fraction(0), tail, wp)).round_to(prec)


def _falling_product(n: int, m: int, parity: Parity) -> tuple[int, int]:
    """(2n-1)(2n-2)...(lowest factor), and the exponent of z, for term n."""
    length = 2 * m if parity is Parity.EVEN_ORDER else 2 * m + 1
    out = 1
    for i in range(2 * n - length, 2 * n):
        out *= i
    return out, 2 * n - 1 - length


def _check_m(m: int) -> None:
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")


def zeta_series_sum(m: int, z, parity, prec: int = 128) -> Ball:
    """Direct summation of ``sum_{n>=m+1} zeta(2n) (2n-1)...(2n-j) z^(2n-1-j)``.

    ``j = 2m`` for even order and ``2m + 1`` for odd order.  Each zeta(2n)
    enters as its exact rational multiple of pi^(2n).  Summation stops once
    the term ratio bound ``z^2 F(n+1)/F(n)`` (decreasing in n) is at most 1/2;
    the tail is then at most twice the first omitted term, using zeta <= 2.
    """
    _check_m(m)
    parity = Parity(parity)
    z = _check_z(z)
    check_precision(prec)
    wp = prec + GUARD
    pi2 = pi_ball(wp) ** 2
    power = pi2 ** (m + 1)
    total = Ball(0, 0, wp)
    tol = Fraction(1, 1 << (wp + 2))
    n = m + 1
    while True:
        f, e = _falling_product(n, m, parity)
        total = total + (power * zeta_even(n).coefficient).scale(f * z**e)
        power = power * pi2
        f_next, e_next = _falling_product(n + 1, m, parity)
        f_after, _ = _falling_product(n + 2, m, parity)
        ratio = z * z * Fraction(f_after, f_next)
        first_omitted = 2 * f_next * abs(z) ** e_next
        if ratio <= Fraction(1, 2) and 2 * first_omitted <= tol:
            break
        n += 1
    return (total + Ball.from_bounds(Fraction(0), 2 * first_omitted, wp)).round_to(prec)


@dataclass(frozen=True)
class SeriesDecomposition:
    """``rational_part + pi_coefficient * pi^pi_power``."""

    rational_part: Fraction
    pi_coefficient: QuadraticNumber
    pi_power: int

    def to_ball(self, prec: int) -> Ball:
        return Ball.exact(self.rational_part, prec) + quad_times_pi_power(
            self.pi_coefficient, self.pi_power, prec
        )

    def to_dict(self) -> dict:
        return {
            "rational": str(self.rational_part),
            "pi_coefficient": str(self.pi_coefficient),
            "pi_power": self.pi_power,
        }

    @classmethod
    def from_dict(cls, data: dict) -> SeriesDecomposition:
        return cls(
            Fraction(data["rational"]),
            QuadraticNumber.parse(data["pi_coefficient"]),
            int(data["pi_power"]),
        )

    def category(self) -> str:
        has_rational = self.rational_part != 0
        has_pi = not self.pi_coefficient.is_zero()
        if has_rational and has_pi:
            return "mixed"
        if has_rational:
            return "rational"
        if has_pi:
            return "pi_multiple"
        return "null"


def _closed_parts(m: int, z: Fraction, parity: Parity) -> tuple[Fraction, int, int]:
    """(rational part, derivative order j, pi power) of the closed form."""
    if parity is Parity.EVEN_ORDER:
        j = 2 * m
        return Fraction(factorial(j), 2) / z ** (j + 1), j, j + 1
    j = 2 * m + 1
    return -Fraction(factorial(j), 2) / z ** (j + 1), j, j + 1


def zeta_series_closed(m: int, z, parity) -> SeriesDecomposition:
    """Exact value of the series via the derivative formulas.

    even: ``(2m)!/(2 z^(2m+1)) - pi^(2m+1) Q_{2m}(cot pi z)/2``
    odd:  ``-(2m+1)!/(2 z^(2m+2)) - pi^(2m+2) Q_{2m+1}(cot pi z)/2``
    """
    _check_m(m)
    parity = Parity(parity)
    z = _check_z(z)
    rational, j, power = _closed_parts(m, z, parity)
    coeff = QuadraticNumber.coerce(q_polynomial(j)(cot_exact(z))) * Fraction(-1, 2)
    return SeriesDecomposition(rational, coeff, power)


def _closed_ball(m: int, z: Fraction, parity: Parity, prec: int) -> tuple[Fraction, Ball, int]:
    """Same decomposition with the pi coefficient as a ball (any rational z)."""
    rational, j, power = _closed_parts(m, z, parity)
    wp = prec + GUARD
    coeff = q_polynomial(j)(cot_pi_ball(z, wp)).scale(Fraction(-1, 2))
    return rational, coeff.round_to(prec), power


_CLAIM_TEXT = {
    "null": "null",
    "pi_multiple": "algebraic multiple of pi^{power}",
}


@dataclass(frozen=True)
class AuditEntry:
    m: int
    z: Fraction
    parity: Parity
    direct: Ball
    closed: SeriesDecomposition | None
    closed_ball: Ball
    agreement: bool
    category: str
    paper_claim: str
    paper_claim_text: str

    @property
    def match(self) -> bool:
        return self.category == self.paper_claim

    def to_dict(self) -> dict:
        return {
            "input": {"m": self.m, "z": str(self.z), "parity": self.parity.value},
            "direct_ball": self.direct.to_dict(),
            "closed_value": self.closed.to_dict() if self.closed is not None else None,
            "closed_ball": self.closed_ball.to_dict(),
            "agreement": self.agreement,
            "category": self.category,
            "paper_claim": self.paper_claim_text,
            "match": self.match,
        }


@dataclass(frozen=True)
class AuditReport:
    entries: tuple

    @property
    def even(self) -> AuditEntry:
        return self.entries[0]

    @property
    def odd(self) -> AuditEntry:
        return self.entries[1]

    @property
    def all_agree(self) -> bool:
        return all(e.agreement for e in self.entries)

    def to_dict(self) -> list:
        return [e.to_dict() for e in self.entries]


def _claimed_category(z: Fraction, parity: Parity) -> str:
    if parity is Parity.EVEN_ORDER and abs(z) == Fraction(1, 2):
        return "null"
    return "pi_multiple"


def _audit_one(m: int, z: Fraction, parity: Parity, prec: int) -> AuditEntry:
    direct = zeta_series_sum(m, z, parity, prec)
    try:
        closed = zeta_series_closed(m, z, parity)
    except ExactModeUnavailable:
        closed = None
    if closed is not None:
        closed_ball = closed.to_ball(prec)
        category = closed.category()
    else:
        rational, coeff, power = _closed_ball(m, z, parity, prec)
        wp = prec + GUARD
        closed_ball = (Ball.exact(rational, wp) + coeff.round_to(wp) * pi_ball(wp) ** power).round_to(prec)
        # the rational part never vanishes; the pi coefficient is nonzero if its ball says so
        category = "mixed" if coeff.excludes_zero() else "undetermined"
    claim = _claimed_category(z, parity)
    power = 2 * m + 1 if parity is Parity.EVEN_ORDER else 2 * m + 2
    return AuditEntry(
        m=m,
        z=z,
        parity=parity,
        direct=direct,
        closed=closed,
        closed_ball=closed_ball,
        agreement=direct.overlaps(closed_ball),
        category=category,
        paper_claim=claim,
        paper_claim_text=_CLAIM_TEXT[claim].format(power=power),
    )


def corollary3_audit(m: int, z, prec: int = 128) -> AuditReport:
    """Compare direct and closed evaluations of both derived series at ``z``.

    Each entry records whether the two evaluations agree, the shape of the
    value (null, rational, pi_multiple, mixed), the shape claimed for it in
    the published statement, and whether the two coincide.  Mismatches are
    reported, not corrected.
    """
    _check_m(m)
    z = _check_z(z)
    check_precision(prec)
    return AuditReport(tuple(_audit_one(m, z, p, prec) for p in Parity))
