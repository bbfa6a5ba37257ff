"""Exact and certified evaluation of the bilateral series sum_n (n + alpha)^-k."""

from .ball import Ball, cot_pi_ball, pi_ball, polygamma_ball, s_series_ball
from .cotpoly import PiMultiple, q_polynomial, s_coefficient, s_exact
from .errors import DomainError, ExactModeUnavailable, InsufficientPrecision
from .exact import IntPolynomial, QuadraticNumber, Rational, bernoulli, cot_exact

__all__ = [
    "Ball",
    "DomainError",
    "ExactModeUnavailable",
    "InsufficientPrecision",
    "IntPolynomial",
    "PiMultiple",
    "QuadraticNumber",
    "Rational",
    "bernoulli",
    "cot_exact",
    "cot_pi_ball",
    "pi_ball",
    "polygamma_ball",
    "q_polynomial",
    "s_coefficient",
    "s_exact",
    "s_series_ball",
]
