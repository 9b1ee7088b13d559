import math

from exactnum.backend import rational, numerator, denominator, format_rational
from exactnum.errors import UsageError


class IndexVector:
    """
    The index v = [a/N, b/N] of a family member.

    Args:
        a (int): Numerator of the first coordinate.
        b (int): Numerator of the second coordinate.
        level (int): N >= 2.
    """
    __slots__ = ('a', 'b', 'level')

    def __init__(self, a, b, level):
        if level < 2:
            raise UsageError(f"level must be at least 2, got {level}")
        if a % level == 0 and b % level == 0:
            raise UsageError(f"[{a}/{level}, {b}/{level}] is integral")
        self.a = a % level
        self.b = b % level
        self.level = level

    @classmethod
    def parse(cls, text, level):
        """Reads "a/N,b/N" (denominators must divide the level, bare integers allowed)."""
        parts = text.replace(' ', '').split(',')
        if len(parts) != 2:
            raise UsageError(f"index must look like 'a/N,b/N', got {text!r}")
        nums = []
        for part in parts:
            try:
                value = rational(part)
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad index coordinate {part!r}")
            scaled = value * level
            if denominator(scaled) != 1:
                raise UsageError(f"coordinate {part} is not in (1/{level})Z")
            nums.append(numerator(scaled))
        return cls(nums[0], nums[1], level)

    def in_v_n(self):
        """True when N is the least common denominator of the coordinates."""
        return math.gcd(math.gcd(self.a, self.b), self.level) == 1

    def components(self):
        return rational(self.a, self.level), rational(self.b, self.level)

    def __neg__(self):
        return IndexVector(-self.a, -self.b, self.level)

    def scaled(self, k):
        return IndexVector(k * self.a, k * self.b, self.level)

    def transformed(self, p, q, r, s):
        """The index [[p, q], [r, s]] . v."""
        return IndexVector(p * self.a + q * self.b, r * self.a + s * self.b, self.level)

    def key(self):
        return (self.a, self.b)

    def class_key(self):
        """Lexicographically least of v and -v mod Z^2."""
        return min((self.a, self.b), ((-self.a) % self.level, (-self.b) % self.level))

    def __eq__(self, other):
        return (isinstance(other, IndexVector) and self.level == other.level
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.a, self.b, self.level))

    def __str__(self):
        v1, v2 = self.components()
        return f"[{format_rational(v1)},{format_rational(v2)}]"

    def __repr__(self):
        return f"IndexVector({self.a}, {self.b}, {self.level})"
