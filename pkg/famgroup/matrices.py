"""
2x2 matrices over Z/NZ and the finite groups built from them.

Enumerations run over the full entry grid with numpy and keep the rows whose
determinant qualifies, so their order is lexicographic in (a, b, c, d).
"""
import functools
import logging
import math

import numpy as np

from exactnum.errors import UsageError
from modforms.indices import IndexVector

log = logging.getLogger(__name__)


class MatModN:
    """
    An invertible matrix [[a, b], [c, d]] mod N.

    Args:
        a, b, c, d (int): Entries, reduced mod N on construction.
        level (int): N >= 2.

    Raises:
        UsageError: if the determinant is not a unit mod N.
    """
    __slots__ = ('a', 'b', 'c', 'd', 'level')

    def __init__(self, a, b, c, d, level):
        if level < 2:
            raise UsageError(f"level must be at least 2, got {level}")
        self.a, self.b, self.c, self.d = a % level, b % level, c % level, d % level
        self.level = level
        if math.gcd(self.det(), level) != 1:
            raise UsageError(f"{self} is not invertible mod {level}")

    @classmethod
    def identity(cls, level):
        return cls(1, 0, 0, 1, level)

    @classmethod
    def diag(cls, d, level):
        """diag(1, d)."""
        return cls(1, 0, 0, d, level)

    @classmethod
    def parse(cls, text, level):
        """Reads "a,b;c,d"."""
        try:
            rows = [[int(x) for x in row.split(',')] for row in text.replace(' ', '').split(';')]
        except ValueError:
            raise UsageError(f"matrix must look like 'a,b;c,d', got {text!r}")
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise UsageError(f"matrix must look like 'a,b;c,d', got {text!r}")
        return cls(rows[0][0], rows[0][1], rows[1][0], rows[1][1], level)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def det(self):
        return (self.a * self.d - self.b * self.c) % self.level

    def transpose(self):
        return MatModN(self.a, self.c, self.b, self.d, self.level)

    def inverse(self):
        inv = pow(self.det(), -1, self.level)
        return MatModN(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, self.level)

    def __mul__(self, other):
        if other.level != self.level:
            raise UsageError(f"level mismatch {self.level} vs {other.level}")
        return MatModN(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                       self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
                       self.level)

    def __neg__(self):
        return MatModN(-self.a, -self.b, -self.c, -self.d, self.level)

    def apply(self, v):
        """The index (this matrix) . v."""
        return v.transformed(self.a, self.b, self.c, self.d)

    def pm_key(self):
        """Key shared by the matrix and its negative."""
        return min(self.entries(), (-self).entries())

    def equal_mod_pm(self, other):
        return self.level == other.level and self.pm_key() == other.pm_key()

    def is_upper_unipotent_diag(self):
        """True for [[1, k], [0, d]] up to sign."""
        for m in (self, -self):
            if m.a == 1 % self.level and m.c == 0:
                return True
        return False

    def __eq__(self, other):
        return isinstance(other, MatModN) and self.level == other.level and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.entries(), self.level))

    def __str__(self):
        return f"[{self.a},{self.b};{self.c},{self.d}]"

    def __repr__(self):
        return f"MatModN({self.a}, {self.b}, {self.c}, {self.d}, level={self.level})"


def _grid(level):
    return np.indices((level,) * 4).reshape(4, -1)


@functools.lru_cache(maxsize=32)
def enumerate_sl2(level):
    """Every element of SL2(Z/NZ)."""
    grid = _grid(level)
    a, b, c, d = grid
    mask = (a * d - b * c) % level == 1
    return [MatModN(*(int(x) for x in col), level) for col in grid[:, mask].T]


@functools.lru_cache(maxsize=32)
def enumerate_gl2(level):
    """Every element of GL2(Z/NZ)."""
    grid = _grid(level)
    a, b, c, d = grid
    mask = np.gcd((a * d - b * c) % level, level) == 1
    return [MatModN(*(int(x) for x in col), level) for col in grid[:, mask].T]


def modulo_pm(matrices):
    """First representative of every class mod +-I, keeping the input order."""
    seen = set()
    out = []
    for m in matrices:
        key = m.pm_key()
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out


@functools.lru_cache(maxsize=32)
def cosets_mod_pm_gamma(level):
    """
    Representatives of SL2(Z)/+-Gamma(N), realised as SL2(Z/NZ)/{+-I}.

    Returns:
        list: One MatModN per class, identity first.
    """
    reps = modulo_pm(enumerate_sl2(level))
    identity = MatModN.identity(level).pm_key()
    reps.sort(key=lambda m: m.pm_key() != identity)
    log.debug("level %d: %d cosets mod +-Gamma(N)", level, len(reps))
    return reps


def sl2_order(level):
    """|SL2(Z/NZ)| = N^3 prod_{p | N} (1 - 1/p^2)."""
    order = level ** 3
    for p in _primes_dividing(level):
        order = order * (p * p - 1) // (p * p)
    return order


def _primes_dividing(n):
    p, out = 2, []
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gl2_decompose(alpha):
    """
    Splits alpha = diag(1, d) . S with det S = 1.

    Returns:
        tuple: (MatModN diag(1, det alpha), MatModN in SL2).
    """
    d = alpha.det()
    g_part = MatModN.diag(d, alpha.level)
    sl_part = MatModN.diag(pow(d, -1, alpha.level), alpha.level) * alpha
    return g_part, sl_part


def qn_set(level):
    """
    a in [1, N/2] with a != +-1 and a^2 = +-1 mod N, for odd N.

    Raises:
        UsageError: for even N.
    """
    if level % 2 == 0:
        raise UsageError(f"Q_N is defined for odd N only, got {level}")
    out = []
    for a in range(1, level // 2 + 1):
        if a % level in (1, level - 1):
            continue
        if (a * a) % level in (1, level - 1):
            out.append(a)
    return out


class IndexClass:
    """
    The class {v, -v} mod Z^2 of an index.

    Attributes:
        representative (IndexVector): Lexicographically least of v and -v.
    """
    __slots__ = ('representative',)

    def __init__(self, v):
        a, b = v.class_key()
        self.representative = IndexVector(a, b, v.level)

    def key(self):
        return self.representative.key()

    def __contains__(self, v):
        return v.level == self.representative.level and v.class_key() == self.key()

    def __eq__(self, other):
        return isinstance(other, IndexClass) and self.representative == other.representative

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.representative)

    def __str__(self):
        return f"+-{self.representative}"

    def __repr__(self):
        return f"IndexClass({self.representative!r})"


@functools.lru_cache(maxsize=32)
def index_vectors(level):
    """V_N: indices whose exact denominator is N, in (a, b) order."""
    a, b = np.indices((level, level)).reshape(2, -1)
    mask = np.gcd(np.gcd(a, b), level) == 1
    return [IndexVector(int(x), int(y), level) for x, y in np.argwhere(mask.reshape(level, level))]


@functools.lru_cache(maxsize=32)
def index_classes(level):
    """V_N / +-, sorted by representative."""
    return sorted({IndexClass(v) for v in index_vectors(level)})
