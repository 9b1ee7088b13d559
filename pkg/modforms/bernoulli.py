from exactnum.backend import rational, floor


def frac_part(x):
    """<x>, the fractional part in [0, 1)."""
    x = rational(x)
    return x - floor(x)


def frac_part_pm(x):
    """<+-x> = min(<x>, <-x>)."""
    return min(frac_part(x), frac_part(-x))


class Bernoulli2:
    """The second Bernoulli polynomial B2(x) = x^2 - x + 1/6."""

    def value(self, x):
        x = rational(x)
        return x * x - x + rational(1, 6)

    __call__ = value


bernoulli2 = Bernoulli2()
