"""
Canonical text and JSON forms of FracQSeries.

Text: terms in increasing exponent order followed by an O(...) tail, e.g.
"q^-1 + 744 + 196884*q + O(q^2)". Irrational coefficients are written in
parentheses in the z = zeta_M notation of CycloElem.render, and a prefix
"[M=..,D=..] " records the cyclotomic order and exponent denominator when
either differs from 1.
"""
import re

from exactnum.backend import rational, numerator, denominator, format_rational
from exactnum.cyclotomic import CycloElem
from exactnum.errors import UsageError

from .series import FracQSeries

_HEADER = re.compile(r'^\[M=(\d+),D=(\d+)\]\s*')
_TERM = re.compile(
    r'^(?P<neg>-)?'
    r'(?:\((?P<cyc>[^()]*)\)|(?P<rat>\d+(?:/\d+)?))?'
    r'(?P<star>\*)?'
    r'(?P<q>q(?:\^(?:\((?P<frac>-?\d+/\d+)\)|(?P<int>-?\d+)))?)?$')


def _q_power(e):
    if e == 0:
        return ''
    if e == 1:
        return 'q'
    if denominator(e) == 1:
        return f'q^{numerator(e)}'
    return f'q^({format_rational(e)})'


def _term(exponent, coeff):
    """Returns (negative, body) for one nonzero term."""
    qpart = _q_power(exponent)
    if coeff.is_rational():
        value = coeff.coeffs[0]
        magnitude = abs(value)
        if not qpart:
            return value < 0, format_rational(magnitude)
        if magnitude == 1:
            return value < 0, qpart
        return value < 0, f'{format_rational(magnitude)}*{qpart}'
    body = f'({coeff.render()})'
    return False, body + ('*' + qpart if qpart else '')


def to_text(series):
    parts = [_term(e, c) for e, c in series.terms.items()]
    trunc = series.trunc
    parts.append((False, 'O(1)' if trunc == 0 else f'O({_q_power(trunc)})'))
    negative, body = parts[0]
    text = ('-' if negative else '') + body
    for negative, body in parts[1:]:
        text += (' - ' if negative else ' + ') + body
    if series.cyclo_order > 1 or series.exp_den > 1:
        text = f'[M={series.cyclo_order},D={series.exp_den}] ' + text
    return text


def _split_terms(body):
    pieces = []
    depth = 0
    current = ''
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if depth == 0 and body[i:i + 3] in (' + ', ' - '):
            pieces.append(current)
            current = '-' if body[i + 1] == '-' else ''
            i += 3
            continue
        current += ch
        i += 1
    pieces.append(current)
    return pieces


def _exponent(match):
    if not match.group('q'):
        return rational(0)
    if match.group('frac'):
        return rational(match.group('frac'))
    if match.group('int'):
        return rational(int(match.group('int')))
    return rational(1)


def from_text(text):
    """
    Parses the canonical text form.

    Raises:
        UsageError: on malformed input.
    """
    text = text.strip()
    order, den = 1, 1
    header = _HEADER.match(text)
    if header:
        order, den = int(header.group(1)), int(header.group(2))
        text = text[header.end():]
    pieces = _split_terms(text)
    tail = pieces.pop()
    if not (tail.startswith('O(') and tail.endswith(')')):
        raise UsageError(f"series text must end with an O(...) term: {text!r}")
    inner = tail[2:-1]
    if inner == '1':
        trunc = rational(0)
    else:
        match = _TERM.match(inner)
        if not match or not match.group('q') or match.group('rat') or match.group('cyc'):
            raise UsageError(f"bad truncation term {tail!r}")
        trunc = _exponent(match)
    terms = {}
    for piece in pieces:
        match = _TERM.match(piece)
        if not match or not (match.group('rat') or match.group('cyc') or match.group('q')):
            raise UsageError(f"cannot parse series term {piece!r}")
        if match.group('cyc') is not None:
            coeff = CycloElem.parse(match.group('cyc'), order)
        elif match.group('rat'):
            coeff = CycloElem.from_rational(rational(match.group('rat')), order)
        else:
            coeff = CycloElem.one(order)
        if match.group('neg'):
            coeff = -coeff
        exponent = _exponent(match)
        if exponent in terms:
            raise UsageError(f"repeated exponent {format_rational(exponent)}")
        terms[exponent] = coeff
    return FracQSeries.from_terms(terms, trunc, cyclo_order=order, exp_den=den)


def to_json(series):
    terms = series.terms
    return {
        "cyclo_order": series.cyclo_order,
        "exp_den": series.exp_den,
        "trunc": format_rational(series.trunc),
        "exponents": [format_rational(e) for e in terms],
        "coefficients": [[format_rational(c) for c in coeff.coeffs] for coeff in terms.values()],
    }


def from_json(data):
    order = int(data["cyclo_order"])
    terms = {}
    for e, coeffs in zip(data["exponents"], data["coefficients"]):
        terms[rational(e)] = CycloElem(order, [rational(c) for c in coeffs])
    return FracQSeries.from_terms(terms, rational(data["trunc"]), cyclo_order=order,
                                  exp_den=int(data["exp_den"]))
