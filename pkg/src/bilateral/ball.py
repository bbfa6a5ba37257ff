"""Midpoint-radius ball arithmetic on binary fixed-point integers.

A :class:`Ball` at precision ``P`` stores integers ``mid`` and ``rad`` and
represents every real in ``[(mid - rad) 2^-P, (mid + rad) 2^-P]``.  Each
primitive rounds the midpoint to nearest and charges one unit in the last
place to the radius whenever rounding happened; propagated error is always
rounded up.

Series evaluations (``pi``, ``cot``, the bilateral sums, polygamma) run at
``P + GUARD`` bits and round the final ball down to ``P`` bits.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import factorial, isqrt

from .errors import DomainError
from .exact import QuadraticNumber, as_rational, bernoulli

MIN_PRECISION = 64
GUARD = 32
EXACT_HEAD = 64


def check_precision(prec: int) -> int:
    if int(prec) != prec or prec < MIN_PRECISION:
        raise ValueError(f"precision must be an integer >= {MIN_PRECISION} bits, got {prec}")
    return int(prec)


def _rdiv(a: int, b: int) -> int:
    """Round ``a / b`` to the nearest integer (ties up); ``b > 0``."""
    return (2 * a + b) // (2 * b)


def _cdiv(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class Ball:
    mid: int
    rad: int
    prec: int

    # -- construction -------------------------------------------------

    @classmethod
    def exact(cls, x, prec: int) -> Ball:
        x = as_rational(x)
        num = x.numerator << prec
        mid = _rdiv(num, x.denominator)
        return cls(mid, 0 if num % x.denominator == 0 else 1, prec)

    @classmethod
    def from_bounds(cls, mid: Fraction, radius: Fraction, prec: int) -> Ball:
        """Smallest representable ball containing ``[mid - radius, mid + radius]``."""
        centre = cls.exact(mid, prec)
        return cls(centre.mid, centre.rad + _cdiv(radius.numerator << prec, radius.denominator), prec)

    # -- views --------------------------------------------------------

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.mid, 1 << self.prec)

    @property
    def radius(self) -> Fraction:
        return Fraction(self.rad, 1 << self.prec)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.mid - self.rad, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.mid + self.rad, 1 << self.prec)

    @property
    def radius_log2(self) -> int:
        """Smallest integer ``e`` with ``radius <= 2**e``."""
        if self.rad == 0:
            return -self.prec
        return (self.rad - 1).bit_length() - self.prec

    def contains(self, x) -> bool:
        if isinstance(x, Ball):
            return self.lower <= x.lower and x.upper <= self.upper
        x = as_rational(x)
        return abs(x * (1 << self.prec) - self.mid) <= self.rad

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def excludes_zero(self) -> bool:
        return abs(self.mid) > self.rad

    def is_positive(self) -> bool:
        return self.mid > self.rad

    def is_negative(self) -> bool:
        return self.mid < -self.rad

    def overlaps(self, other: Ball) -> bool:
        """True when the two balls share a point (midpoint gap <= sum of radii)."""
        if self.prec == other.prec:
            return abs(self.mid - other.mid) <= self.rad + other.rad
        return abs(self.midpoint - other.midpoint) <= self.radius + other.radius

    def strictly_greater(self, other: Ball) -> bool:
        return self.lower > other.upper

    # -- precision ----------------------------------------------------

    def round_to(self, prec: int) -> Ball:
        shift = self.prec - prec
        if shift == 0:
            return self
        if shift < 0:
            return Ball(self.mid << -shift, self.rad << -shift, prec)
        d = 1 << shift
        mid = _rdiv(self.mid, d)
        return Ball(mid, _cdiv(self.rad, d) + (self.mid % d != 0), prec)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> Ball:
        if isinstance(other, Ball):
            if other.prec != self.prec:
                raise ValueError(f"precision mismatch: {self.prec} vs {other.prec}")
            return other
        return Ball.exact(other, self.prec)

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.prec)

    def __abs__(self):
        return self if self.mid >= 0 else -self

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Ball(self.mid + other.mid, self.rad + other.rad, self.prec)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Ball(self.mid - other.mid, self.rad + other.rad, self.prec)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> Ball:
        """Multiply by an exact rational."""
        f = as_rational(factor)
        num = self.mid * f.numerator
        mid = _rdiv(num, f.denominator)
        inexact = num % f.denominator != 0
        rad = _cdiv(self.rad * abs(f.numerator), f.denominator) + inexact
        return Ball(mid, rad, self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Ball):
            return NotImplemented
        other = self._coerce(other)
        p = self.prec
        prod = self.mid * other.mid
        mid = _rdiv(prod, 1 << p)
        err = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        rad = _cdiv(err, 1 << p) + (prod % (1 << p) != 0)
        return Ball(mid, rad, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("ball division by zero")
            return self.scale(1 / as_rational(other))
        if not isinstance(other, Ball):
            return NotImplemented
        other = self._coerce(other)
        m1, r1, m2, r2 = self.mid, self.rad, other.mid, other.rad
        if abs(m2) <= r2:
            raise ZeroDivisionError("divisor ball contains zero")
        if m2 < 0:
            m1, m2 = -m1, -m2
        p = self.prec
        num = m1 << p
        mid = _rdiv(num, m2)
        err = (r1 * m2 + abs(m1) * r2) << p
        rad = _cdiv(err, m2 * (m2 - r2)) + (num % m2 != 0)
        return Ball(mid, rad, p)

    def __rtruediv__(self, other):
        return Ball.exact(other, self.prec) / self

    def __pow__(self, n: int):
        if n < 0:
            return 1 / self**-n
        result = Ball.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- serialization ------------------------------------------------

    def midpoint_decimal(self, digits: int | None = None) -> str:
        """Midpoint as a decimal string rounded to ``digits`` fractional places."""
        if digits is None:
            digits = (self.prec * 30103 + 99999) // 100000
        scaled = _rdiv(abs(self.mid) * 10**digits, 1 << self.prec)
        sign = "-" if self.mid < 0 and scaled else ""
        whole, frac = divmod(scaled, 10**digits)
        if digits == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{frac:0{digits}d}"

    def to_dict(self) -> dict:
        return {"midpoint": self.midpoint_decimal(), "radius_log2": self.radius_log2}

    @classmethod
    def from_dict(cls, data: dict, prec: int) -> Ball:
        """Rebuild an enclosing ball from its serialized form.

        The decimal midpoint is rounded, so one extra ulp is charged.
        """
        mid = Fraction(Decimal(data["midpoint"]))
        e = int(data["radius_log2"]) + prec
        rad = (1 << e) if e >= 0 else 1
        centre = cls.exact(mid, prec)
        return cls(centre.mid, centre.rad + rad + 1, prec)

    def __str__(self):
        return f"[{self.midpoint_decimal(min(40, self.prec // 3))} +/- 2^{self.radius_log2}]"


# -- constants -----------------------------------------------------------


def _arctan_inv(x: int, wp: int) -> tuple[int, int]:
    """Return ``(value, err)`` with ``|arctan(1/x) * 2^wp - value| <= err``."""
    x2 = x * x
    power = (1 << wp) // x
    total = 0
    j = 0
    while power:
        term = power // (2 * j + 1)
        total += -term if j & 1 else term
        power //= x2
        j += 1
    # truncated powers are below the truth by < 2, each quotient adds < 1;
    # the first omitted term of the alternating tail is < 2
    return total, 3 * j + 2


@functools.lru_cache(maxsize=None)
def pi_ball(prec: int) -> Ball:
    """Enclosure of pi via pi/4 = 4 arctan(1/5) - arctan(1/239)."""
    check_precision(prec)
    wp = prec + GUARD
    a, ea = _arctan_inv(5, wp)
    b, eb = _arctan_inv(239, wp)
    mid = 16 * a - 4 * b
    err = 16 * ea + 4 * eb
    d = 1 << GUARD
    return Ball(_rdiv(mid, d), _cdiv(err, d) + 1, prec)


@functools.lru_cache(maxsize=None)
def sqrt3_ball(prec: int) -> Ball:
    return Ball(isqrt(3 << (2 * prec)), 1, prec)


def quad_ball(x: QuadraticNumber, prec: int) -> Ball:
    x = QuadraticNumber.coerce(x)
    ball = Ball.exact(x.rat, prec)
    if x.coef_sqrt3:
        ball = ball + sqrt3_ball(prec).scale(x.coef_sqrt3)
    return ball


def quad_times_pi_power(c: QuadraticNumber, k: int, prec: int) -> Ball:
    """Ball for ``c * pi**k``; exactly zero when ``c`` is."""
    if QuadraticNumber.coerce(c).is_zero():
        return Ball(0, 0, prec)
    wp = prec + GUARD
    return (quad_ball(c, wp) * pi_ball(wp) ** k).round_to(prec)


def _reduce_unit(alpha) -> Fraction:
    alpha = as_rational(alpha)
    if alpha.denominator == 1:
        raise DomainError(f"pole at integer alpha={alpha}")
    return alpha - (alpha.numerator // alpha.denominator)


def cot_pi_ball(alpha, prec: int) -> Ball:
    """Enclosure of ``cot(pi * alpha)`` for non-integer rational ``alpha``.

    ``alpha`` is reduced into ``(0, 1/2]`` exactly, then sin and cos are summed
    as Taylor series with a Lagrange remainder bound.
    """
    check_precision(prec)
    x = _reduce_unit(alpha)
    sign = 1
    if x > Fraction(1, 2):
        x, sign = 1 - x, -1
    wp = prec + GUARD
    theta = pi_ball(wp).scale(x)
    theta2 = theta * theta
    # |theta| <= pi/2 < 8/5; stop once (8/5)^n / n! <= 2^-wp
    n = 1
    bound = Fraction(8, 5)
    while bound * (1 << wp) > 1:
        n += 1
        bound = bound * Fraction(8, 5) / n
    one = Ball.exact(1, wp)
    cos_sum, sin_sum = one, theta
    cos_term, sin_term = one, theta
    for j in range(1, n // 2 + 2):
        cos_term = -(cos_term * theta2).scale(Fraction(1, (2 * j - 1) * (2 * j)))
        sin_term = -(sin_term * theta2).scale(Fraction(1, (2 * j) * (2 * j + 1)))
        cos_sum = cos_sum + cos_term
        sin_sum = sin_sum + sin_term
    # both sums run past degree n, so the remainder is below (8/5)^(n+1)/(n+1)!
    tail = Ball(0, 1, wp)
    cot = (cos_sum + tail) / (sin_sum + tail)
    return (cot * sign).round_to(prec)


# -- bilateral series and polygamma ------------------------------------------


def integral_tail_bound(k: int, a, n: int) -> Fraction:
    """Upper bound ``(n + a)^(1-k) / (k-1)`` for ``sum_{j > n} (j + a)^(-k)``."""
    a = as_rational(a)
    return Fraction(1, k - 1) / (n + a) ** (k - 1)


def _rising(s: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= s + i
    return out


def em_remainder_bound(s: int, x0: int, q: int) -> Fraction:
    """Bound on the Euler-Maclaurin remainder for sum_{n>=N} (n+a)^-s, x0 <= N+a.

    |R| <= 2 zeta(2q) / (2 pi)^(2q) * (s)_(2q-1) * x0^(1-s-2q), with zeta(2q) < 2
    and pi > 3.
    """
    return Fraction(4 * _rising(s, 2 * q - 1), 36**q * x0 ** (s + 2 * q - 1))


@functools.lru_cache(maxsize=None)
def _em_plan(s: int, wp: int) -> tuple[int, int]:
    """Pick head length ``N`` and correction order ``q`` for a ``2^-wp`` remainder."""
    tol = Fraction(1, 1 << (wp + 2))
    n = max(16, wp // 4)
    while True:
        prev = None
        q = 1
        while True:
            b = em_remainder_bound(s, n, q)
            if b <= tol:
                return n, q
            if prev is not None and b >= prev:
                break
            prev = b
            q += 1
        n *= 2


def _em_terms(s: int, x: Fraction, q: int) -> list[Fraction]:
    """Euler-Maclaurin approximation terms of sum_{n>=0} (n + x)^-s."""
    inv = 1 / x
    terms = [inv ** (s - 1) / (s - 1), inv**s / 2]
    for j in range(1, q + 1):
        coeff = bernoulli(2 * j) * _rising(s, 2 * j - 1) / factorial(2 * j)
        terms.append(coeff * inv ** (s + 2 * j - 1))
    return terms


def _round_scaled(x: Fraction, wp: int) -> tuple[int, int]:
    num = x.numerator << wp
    return _rdiv(num, x.denominator), (num % x.denominator != 0)


def hurwitz_pair_ball(s: int, a: Fraction, b: Fraction | None, sign: int, wp: int) -> Ball:
    """Enclose ``sum_{n>=0} [(n+a)^-s + sign (n+b)^-s]`` at ``wp`` bits.

    Paired terms are combined exactly before rounding, so for ``a == b`` and
    ``sign == -1`` every contribution vanishes identically.  The first
    ``EXACT_HEAD`` pairs are accumulated as one exact rational.
    """
    n_head, q = _em_plan(s, wp)

    def pair(x: Fraction) -> Fraction:
        t = 1 / x**s
        if b is not None and sign:
            t += sign / (x - a + b) ** s
        return t

    mid = 0
    rad = 0
    exact = sum((pair(n + a) for n in range(min(n_head, EXACT_HEAD))), Fraction(0))
    m, e = _round_scaled(exact, wp)
    mid += m
    rad += e
    for n in range(EXACT_HEAD, n_head):
        m, e = _round_scaled(pair(n + a), wp)
        mid += m
        rad += e
    tail_a = _em_terms(s, n_head + a, q)
    tail_b = _em_terms(s, n_head + b, q) if b is not None and sign else None
    for i, t in enumerate(tail_a):
        if tail_b is not None:
            t = t + sign * tail_b[i]
        m, e = _round_scaled(t, wp)
        mid += m
        rad += e
    remainder = em_remainder_bound(s, n_head, q) * (2 if tail_b is not None else 1)
    rad += _cdiv(remainder.numerator << wp, remainder.denominator)
    return Ball(mid, rad, wp)


def _check_k(k: int) -> None:
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer > 1, got {k}")


def s_series_ball(k: int, alpha, prec: int) -> Ball:
    """Enclosure of ``S_k(alpha) = sum over all integers n of (n + alpha)^-k``.

    The two half-series are folded onto the fractional part ``a`` of alpha:
    ``S_k = sum_{n>=0} [(n+a)^-k + (-1)^k (n+1-a)^-k]``.
    """
    _check_k(k)
    check_precision(prec)
    a = _reduce_unit(alpha)
    sign = -1 if k % 2 else 1
    return hurwitz_pair_ball(k, a, 1 - a, sign, prec + GUARD).round_to(prec)


def polygamma_ball(k: int, alpha, prec: int) -> Ball:
    """Enclosure of ``psi_k(alpha) = (-1)^(k+1) k! sum_{n>=0} (alpha+n)^-(k+1)``."""
    if int(k) != k or k < 1:
        raise DomainError(f"polygamma order must be >= 1 (digamma unsupported), got {k}")
    check_precision(prec)
    alpha = as_rational(alpha)
    if not 0 < alpha < 1:
        raise DomainError(f"polygamma_ball needs 0 < alpha < 1, got {alpha}")
    zeta = hurwitz_pair_ball(k + 1, alpha, None, 0, prec + GUARD)
    factor = factorial(k) if k % 2 else -factorial(k)
    return (zeta * factor).round_to(prec)
