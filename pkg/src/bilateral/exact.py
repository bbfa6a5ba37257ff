"""Exact arithmetic: rationals, the field Q(sqrt 3), integer polynomials.

Rationals are plain :class:`fractions.Fraction` objects, which are always
reduced with a positive denominator.  ``QuadraticNumber`` holds ``a + b*sqrt(3)``
with rational ``a`` and ``b``; that field contains ``cot(pi*a/q)`` for every
``q`` in ``{2, 3, 4, 6}``, which is all the exact machinery needs.
"""

from __future__ import annotations

import operator
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Sequence, Union

from .errors import DomainError, ExactModeUnavailable

Rational = Fraction

EXACT_DENOMINATORS = frozenset({2, 3, 4, 6})

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Raises ``ValueError`` on malformed input."""
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"malformed rational {text!r}; expected p/q")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(x)


def rational_arith(a, b, op: str) -> Fraction:
    """Apply ``op`` (one of ``+ - * /``) to two rationals exactly.

    Division by zero raises ``ZeroDivisionError``.
    """
    if op not in _OPS:
        raise ValueError(f"unknown operator {op!r}")
    a, b = as_rational(a), as_rational(b)
    if op == "/" and b == 0:
        raise ZeroDivisionError(f"{a} / 0")
    return _OPS[op](a, b)


@dataclass(frozen=True)
class QuadraticNumber:
    """``rat + coef_sqrt3 * sqrt(3)`` with rational components."""

    rat: Fraction = Fraction(0)
    coef_sqrt3: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", as_rational(self.rat))
        object.__setattr__(self, "coef_sqrt3", as_rational(self.coef_sqrt3))

    @classmethod
    def coerce(cls, x) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            return x
        return cls(as_rational(x))

    def is_zero(self) -> bool:
        return self.rat == 0 and self.coef_sqrt3 == 0

    def is_rational(self) -> bool:
        return self.coef_sqrt3 == 0

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.rat, -self.coef_sqrt3)

    def norm(self) -> Fraction:
        return self.rat * self.rat - 3 * self.coef_sqrt3 * self.coef_sqrt3

    def sign(self) -> int:
        """Sign of the real value, decided exactly."""
        a, b = self.rat, self.coef_sqrt3
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0 or (a > 0) == (b > 0):
            return 1 if b > 0 else -1
        # a and b have opposite signs: compare a^2 with 3 b^2
        if a * a > 3 * b * b:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __bool__(self):
        return not self.is_zero()

    def __neg__(self):
        return QuadraticNumber(-self.rat, -self.coef_sqrt3)

    def __add__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.rat + other.rat, self.coef_sqrt3 + other.coef_sqrt3)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.rat - other.rat, self.coef_sqrt3 - other.coef_sqrt3)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.rat, self.coef_sqrt3, other.rat, other.coef_sqrt3
        return QuadraticNumber(a * c + 3 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        n = other.norm()
        num = self * other.conjugate()
        return QuadraticNumber(num.rat / n, num.coef_sqrt3 / n)

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return QuadraticNumber(1) / self**-n
        result, base = QuadraticNumber(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadraticNumber(other)
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return self.rat == other.rat and self.coef_sqrt3 == other.coef_sqrt3

    def __hash__(self):
        if self.coef_sqrt3 == 0:
            return hash(self.rat)
        return hash((self.rat, self.coef_sqrt3))

    def __str__(self):
        return f"{self.rat} + {self.coef_sqrt3}*sqrt3"

    def __repr__(self):
        return f"QuadraticNumber({str(self.rat)!r}, {str(self.coef_sqrt3)!r})"

    def approx(self, digits: int = 30) -> Fraction:
        """Rational approximation accurate to about ``digits`` decimal places."""
        scale = 10**digits
        s3 = Fraction(isqrt(3 * scale * scale), scale)
        return self.rat + self.coef_sqrt3 * s3

    @classmethod
    def parse(cls, text: str) -> QuadraticNumber:
        m = re.fullmatch(r"\s*([+-]?\d+(?:/\d+)?)\s*\+\s*([+-]?\d+(?:/\d+)?)\*sqrt3\s*", text)
        if not m:
            raise ValueError(f"malformed quadratic number {text!r}")
        return cls(Fraction(m.group(1)), Fraction(m.group(2)))


def quad_arith(x, y, op: str) -> QuadraticNumber:
    if op not in _OPS:
        raise ValueError(f"unknown operator {op!r}")
    return _OPS[op](QuadraticNumber.coerce(x), QuadraticNumber.coerce(y))


SQRT3 = QuadraticNumber(0, 1)

# cot(pi x) for x in (0, 1/2]
_COT_TABLE = {
    Fraction(1, 2): QuadraticNumber(0),
    Fraction(1, 3): QuadraticNumber(0, Fraction(1, 3)),
    Fraction(1, 4): QuadraticNumber(1),
    Fraction(1, 6): QuadraticNumber(0, 1),
}


def cot_exact(alpha) -> QuadraticNumber:
    """Exact ``cot(pi * alpha)`` for reduced denominators 2, 3, 4, 6."""
    alpha = as_rational(alpha)
    if alpha.denominator == 1:
        raise DomainError(f"cot(pi*alpha) has a pole at integer alpha={alpha}")
    if alpha.denominator not in EXACT_DENOMINATORS:
        raise ExactModeUnavailable(
            f"no exact cotangent for denominator {alpha.denominator}"
        )
    x = alpha - (alpha.numerator // alpha.denominator)
    if x > Fraction(1, 2):
        return -_COT_TABLE[1 - x]
    return _COT_TABLE[x]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; ``coefficients[i]`` multiplies ``t**i``."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @classmethod
    def from_seq(cls, coeffs: Sequence[int]) -> IntPolynomial:
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))
        )

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __call__(self, t):
        """Horner evaluation; ``t`` may be int, Fraction, QuadraticNumber or Ball."""
        if not self.coefficients:
            return 0 * t
        acc = self.coefficients[-1] + 0 * t
        for c in reversed(self.coefficients[:-1]):
            acc = acc * t + c
        return acc

    def __str__(self):
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) or "0"


_bernoulli_cache = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``.

    Uses sum_{j=0}^{m} C(m+1, j) B_j = 0, memoized.
    """
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n < len(_bernoulli_cache):
        return _bernoulli_cache[n]
    with _bernoulli_lock:
        cache = _bernoulli_cache
        for m in range(len(cache), n + 1):
            if m > 1 and m % 2 == 1:
                cache.append(Fraction(0))
                continue
            acc = Fraction(0)
            for j in range(m):
                if cache[j]:
                    acc += comb(m + 1, j) * cache[j]
            cache.append(-acc / (m + 1))
        return cache[n]
