from exactnum.cyclotomic import cyclo_field
from qseries.series import FracQSeries


class CyclicRows:
    """
    Scratch buffer for series in q^(1/N) with coefficients in Z[zeta_N].

    Each slot holds N integers, index e standing for zeta_N^e, so products with
    roots of unity are plain rotations; `to_series` reduces modulo Phi_N once.

    Args:
        level (int): N.
        prec (int): Number of slots (truncation slot of the result).
    """
    def __init__(self, level, prec):
        self.level = level
        self.prec = prec
        self.rows = [[0] * level for _ in range(prec)]

    def add(self, slot, power, value):
        """Adds value * zeta^power * q^(slot/N) when slot is below the truncation."""
        if 0 <= slot < self.prec:
            self.rows[slot][power % self.level] += value

    def times_binomial(self, shift, power):
        """In-place product with (1 - zeta^power * q^(shift/N)), shift >= 1."""
        n = self.level
        rows = self.rows
        for k in range(self.prec - 1, shift - 1, -1):
            src = rows[k - shift]
            if not any(src):
                continue
            dst = rows[k]
            for i, c in enumerate(src):
                if c:
                    dst[(i + power) % n] -= c

    def to_series(self):
        field = cyclo_field(self.level)
        rows = [tuple(field.reduce(row)) for row in self.rows]
        return FracQSeries(self.level, self.level, 0, rows, 1, self.prec)
