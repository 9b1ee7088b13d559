"""
Rational number backend.

MPQ is the constructor for exact rationals. It is gmpy2.mpq when gmpy2 can be
imported and FRICKE_NOGMPY is not set in the environment, otherwise
fractions.Fraction. Callers must create rationals through `rational` (never
by mixing the two types) and compare with "==", not "is".
"""
import fractions
import numbers
import os

gmpy = None
BACKEND = 'python'
MPQ = fractions.Fraction

if 'FRICKE_NOGMPY' not in os.environ:
    try:
        import gmpy2 as gmpy
        BACKEND = 'gmpy'
        MPQ = gmpy.mpq
    except ImportError:
        pass


def rational(num, den=1):
    """
    Builds an exact rational of the active backend.

    Args:
        num (int | MPQ | str): Numerator, an existing rational, or a "p/q" string.
        den (int): Denominator, ignored when num is a string.

    Returns:
        MPQ: Reduced rational.
    """
    if isinstance(num, str):
        return parse_rational(num)
    if den == 1:
        if isinstance(num, numbers.Integral):
            return MPQ(int(num))
        return MPQ(int(numerator(num)), int(denominator(num)))
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return MPQ(int(num), int(den))


def numerator(x):
    return int(x.numerator)


def denominator(x):
    return int(x.denominator)


def is_integral(x):
    return denominator(x) == 1


def floor(x):
    return numerator(x) // denominator(x)


def parse_rational(text):
    """Parses "p" or "p/q" (optional sign, surrounding blanks allowed)."""
    text = text.strip()
    if '/' in text:
        num, den = text.split('/', 1)
        return rational(int(num), int(den))
    return rational(int(text))


def format_rational(x):
    """Renders x as "p/q", or "p" when the denominator is 1."""
    num, den = numerator(x), denominator(x)
    if den == 1:
        return str(num)
    return f"{num}/{den}"
