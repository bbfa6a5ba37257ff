"""Cotangent derivative polynomials and the exact closed form of S_k.

With ``t = cot(pi z)`` we have ``dt/dz = -pi (1 + t^2)``, so every derivative
``D^m (pi cot pi z)`` equals ``pi^(m+1) * Q_m(t)`` for an integer polynomial
``Q_m`` obeying ``Q_0 = t`` and ``Q_{m+1} = -(1 + t^2) Q_m'``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DomainError
from .exact import IntPolynomial, QuadraticNumber, as_rational, cot_exact

_ONE_PLUS_T2 = IntPolynomial((1, 0, 1))

_q_cache = [IntPolynomial((0, 1))]
_q_lock = threading.Lock()


def _next_q(q: IntPolynomial) -> IntPolynomial:
    return -(_ONE_PLUS_T2 * q.derivative())


def q_polynomial(m: int, *, use_cache: bool = True) -> IntPolynomial:
    """Return ``Q_m`` such that ``D^m(pi cot pi z) = pi^(m+1) Q_m(cot pi z)``."""
    if m < 0:
        raise DomainError("derivative order must be non-negative")
    if not use_cache:
        q = IntPolynomial((0, 1))
        for _ in range(m):
            q = _next_q(q)
        return q
    if m < len(_q_cache):
        return _q_cache[m]
    with _q_lock:
        while len(_q_cache) <= m:
            _q_cache.append(_next_q(_q_cache[-1]))
        return _q_cache[m]


@dataclass(frozen=True)
class PiMultiple:
    """The exact real number ``coefficient * pi**pi_power``."""

    coefficient: QuadraticNumber
    pi_power: int

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def to_dict(self) -> dict:
        return {"coefficient": str(self.coefficient), "pi_power": self.pi_power}

    @classmethod
    def from_dict(cls, data: dict) -> PiMultiple:
        return cls(QuadraticNumber.parse(data["coefficient"]), int(data["pi_power"]))

    def to_ball(self, prec: int):
        from .ball import quad_times_pi_power

        return quad_times_pi_power(self.coefficient, self.pi_power, prec)

    def __str__(self):
        return f"({self.coefficient})*pi^{self.pi_power}"


def _check_k(k: int) -> None:
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer > 1, got {k}")


def s_coefficient(k: int, t) -> QuadraticNumber:
    """Exact ``c`` with ``S_k(z) = c * pi^k`` where ``t = cot(pi z)``.

    ``c = (-1)^(k-1) Q_{k-1}(t) / (k-1)!``; the quotient need not be integral.
    """
    _check_k(k)
    value = QuadraticNumber.coerce(q_polynomial(k - 1)(QuadraticNumber.coerce(t)))
    sign = -1 if k % 2 == 0 else 1
    return value * Fraction(sign, factorial(k - 1))


def s_exact(k: int, alpha) -> PiMultiple:
    """Closed form of ``sum_n (n + alpha)^(-k)`` for denominators 2, 3, 4, 6.

    Raises ``DomainError`` for integer alpha and ``ExactModeUnavailable`` for
    other denominators.
    """
    _check_k(k)
    alpha = as_rational(alpha)
    if alpha.denominator == 1:
        raise DomainError(f"S_k diverges at integer alpha={alpha}")
    return PiMultiple(s_coefficient(k, cot_exact(alpha)), k)
