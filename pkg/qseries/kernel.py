"""
Dense integer kernel behind FracQSeries.

A series is handled here as a list of integer rows, one row per exponent
slot, each row holding the coordinates of a cyclotomic coefficient. Products
go through Kronecker substitution: both operands are packed into one big
integer each, multiplied once, and unpacked again.
"""
import math


def zero_row(width):
    return (0,) * width


def effective_width(rows):
    """1 when every row has rational entries only, else the full row width."""
    for row in rows:
        if any(row[1:]):
            return len(row)
    return 1


def max_abs(rows, width):
    best = 0
    for row in rows:
        for c in row[:width]:
            if c > best:
                best = c
            elif -c > best:
                best = -c
    return best


def _pack(rows, row_width, stride, nbytes):
    zero = bytes(nbytes)
    pad = zero * (stride - row_width)
    pos = bytearray()
    neg = bytearray()
    for row in rows:
        for c in row[:row_width]:
            if c > 0:
                pos += c.to_bytes(nbytes, 'little')
                neg += zero
            elif c < 0:
                pos += zero
                neg += (-c).to_bytes(nbytes, 'little')
            else:
                pos += zero
                neg += zero
        pos += pad
        neg += pad
    return int.from_bytes(pos, 'little') - int.from_bytes(neg, 'little')


def mul_kronecker(ra, wa, rb, wb, length):
    """
    Truncated product of two row sequences.

    Args:
        ra (list): Rows of the first factor; only the first wa entries of each are used.
        wa (int): Row width of the first factor.
        rb (list): Rows of the second factor.
        wb (int): Row width of the second factor.
        length (int): Number of result rows wanted.

    Returns:
        list: `length` tuples of wa + wb - 1 integers (unreduced in z).
    """
    width = wa + wb - 1
    ra = ra[:length]
    rb = rb[:length]
    if not ra or not rb or length <= 0:
        return [zero_row(width)] * max(length, 0)
    bound = max_abs(ra, wa) * max_abs(rb, wb)
    if bound == 0:
        return [zero_row(width)] * length
    bound *= min(len(ra), len(rb)) * min(wa, wb)
    nbytes = bound.bit_length() // 8 + 1
    product = _pack(ra, wa, width, nbytes) * _pack(rb, wb, width, nbytes)

    nrows = min(length, len(ra) + len(rb) - 1)
    slots = (len(ra) + len(rb) - 1) * width
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, 'little') * slots, 'little')
    buf = (product + bias).to_bytes(slots * nbytes, 'little')

    out = []
    step = width * nbytes
    for r in range(nrows):
        base = r * step
        out.append(tuple(int.from_bytes(buf[base + i * nbytes:base + (i + 1) * nbytes], 'little') - half
                         for i in range(width)))
    out.extend([zero_row(width)] * (length - nrows))
    return out


def reduce_rows(rows, field):
    """Reduces every row modulo Phi_M; rows already of width phi(M) pass through."""
    phi = field.degree
    out = []
    for row in rows:
        if len(row) == phi:
            out.append(tuple(row))
        else:
            out.append(tuple(field.reduce(row)))
    return out


def widen(rows, width):
    return [tuple(row) + (0,) * (width - len(row)) if len(row) < width else tuple(row) for row in rows]


def mul_rows(ra, rb, length, field):
    """Truncated product of two series in Q(zeta_M), rows of width phi(M) in and out."""
    wa = effective_width(ra[:length])
    wb = effective_width(rb[:length])
    rows = mul_kronecker(ra, wa, rb, wb, length)
    if wa == 1 or wb == 1:
        return widen(rows, field.degree)
    return reduce_rows(rows, field)


def mul_row(row, factor, field):
    """Product of two single cyclotomic coordinate rows."""
    return mul_rows([row], [factor], 1, field)[0]


def content(rows, scale):
    """gcd of every row entry together with the scale."""
    g = scale
    for row in rows:
        for c in row:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    return 1
    return g


def normalize(rows, scale):
    if scale < 0:
        rows = [tuple(-c for c in row) for row in rows]
        scale = -scale
    g = content(rows, scale)
    if g > 1:
        rows = [tuple(c // g for c in row) for row in rows]
        scale //= g
    return rows, scale


def newton_inverse(rows, scale, length, field):
    """
    Inverse of a unit series u = rows / scale whose constant coordinate row is (scale, 0, ...).

    Returns:
        tuple: (rows, scale) of 1/u to `length` rows.
    """
    phi = field.degree
    one = (1,) + (0,) * (phi - 1)
    w_rows, w_scale = [one], 1
    have = 1
    while have < length:
        have = min(2 * have, length)
        e_rows = mul_rows(rows, w_rows, have, field)
        e_scale = scale * w_scale
        f_rows = [tuple(-c for c in row) for row in e_rows]
        f_rows[0] = (f_rows[0][0] + 2 * e_scale,) + f_rows[0][1:]
        w_rows = mul_rows(w_rows, f_rows, have, field)
        w_rows, w_scale = normalize(w_rows, w_scale * e_scale)
    return w_rows[:length], w_scale


