"""
Exact rational helpers: floor, ceiling, fractional part and p-adic digits.

Rationals are `fractions.Fraction` values, always in lowest terms with a
positive denominator.
"""
from fractions import Fraction
from typing import Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]


def as_rational(q: Number) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def floor(q: Number) -> int:
    q = as_rational(q)
    return q.numerator // q.denominator


def ceil(q: Number) -> int:
    q = as_rational(q)
    return -((-q.numerator) // q.denominator)


def frac(q: Number) -> Fraction:
    """Fractional part <q> = q - floor(q), always in [0, 1)."""
    q = as_rational(q)
    return q - floor(q)


def p_adic_digits(k: int, p: int, ell: int) -> Tuple[int, ...]:
    """
    Digits (a_1, ..., a_ell) of k in base p, least significant first.

    Raises:
        ValueError: if k is outside [0, p**ell)
    """
    if ell < 0:
        raise ValueError(f"ell must be non-negative, got {ell}")
    if not 0 <= k < p**ell:
        raise ValueError(f"k={k} out of range [0, {p}^{ell})")
    digits = []
    for _ in range(ell):
        k, a = divmod(k, p)
        digits.append(a)
    return tuple(digits)


def from_p_adic_digits(digits: Tuple[int, ...], p: int) -> int:
    return sum(a * p**j for j, a in enumerate(digits))
