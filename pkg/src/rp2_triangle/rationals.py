"""Exact rational parsing and canonical formatting."""

from fractions import Fraction

from .errors import DomainError

SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def parse_rational(text):
    """Parse ``"3/10"``, ``"0.3"`` or ``"1"`` into an exact Fraction.

    Decimal strings are read digit-for-digit, so ``"0.3"`` is exactly 3/10.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise DomainError("floats are not accepted; pass a decimal or fraction string")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse {text!r} as an exact rational") from exc


def format_rational(value):
    """Lowest-terms ``"p/q"`` with a positive denominator, including ``"0/1"``."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def sub(i):
    return str(i).translate(SUBSCRIPTS)
