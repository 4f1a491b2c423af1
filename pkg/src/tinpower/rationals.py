"""Exact-rational parsing and rendering."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction


def parse_rational(value) -> Fraction:
    """Coerce a number or string to an exact rational.

    Floats go through their shortest decimal rendering first, so 0.1 becomes
    exactly 1/10 rather than the underlying binary value. Strings may be
    decimal ("0.25", "1e-3") or explicit "p/q".
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not valid rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            return Fraction(text)
        try:
            return Fraction(Decimal(text))
        except InvalidOperation:
            raise ValueError(f"not a decimal or p/q rational: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def render_rational(value: Fraction) -> str:
    """Exact decimal string when the value terminates, else "p/q"."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    rest = den
    twos = fives = 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{num}/{den}"
    shift = max(twos, fives)
    digits = str(abs(num) * 10**shift // den).rjust(shift + 1, "0")
    sign = "-" if num < 0 else ""
    return f"{sign}{digits[:-shift]}.{digits[-shift:]}"
