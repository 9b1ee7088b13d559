"""
Run-wide defaults. Each attribute can be overridden through an environment
variable, read once when Settings is constructed; CLI flags override both.
"""
import os

from exactnum.backend import BACKEND
from exactnum.errors import UsageError


class Settings:
    """
    Attributes:
        trunc (int): Default truncation T in q-units.
        prec_bits (int): Working precision of complex evaluation.
        tol (float): Distinctness and tail tolerance.
        integrality_tol (float): Distance allowed from the lattice Z + Z tau_K.
        zero_tol (float): Values below this modulus count as zero.
        max_level (int): Largest N accepted by the pairwise scans.
        workers (int): Thread-pool size for independent member computations.
    """

    # attribute -> (environment variable, default, parser)
    FIELDS = {
        "trunc": ("FRICKE_TERMS", 60, int),
        "prec_bits": ("FRICKE_PREC_BITS", 128, int),
        "tol": ("FRICKE_TOL", 1e-6, float),
        "integrality_tol": ("FRICKE_INTEGRALITY_TOL", 1e-4, float),
        "zero_tol": ("FRICKE_ZERO_TOL", 1e-30, float),
        "max_level": ("FRICKE_MAX_LEVEL", 12, int),
        "workers": ("FRICKE_WORKERS", 1, int),
    }

    def __init__(self, environ=None):
        environ = os.environ if environ is None else environ
        for name, (var, default, parse) in self.FIELDS.items():
            raw = environ.get(var)
            if raw is None:
                setattr(self, name, default)
                continue
            try:
                setattr(self, name, parse(raw))
            except ValueError:
                raise UsageError(f"{var}={raw!r} is not a valid {parse.__name__}")
        if self.workers < 1:
            raise UsageError(f"FRICKE_WORKERS must be positive, got {self.workers}")

    @property
    def backend(self):
        return BACKEND

    def header(self):
        """One-line summary of every effective default."""
        return (f"T={self.trunc} prec_bits={self.prec_bits} tol={self.tol:g} "
                f"integrality_tol={self.integrality_tol:g} zero_tol={self.zero_tol:g} "
                f"max_level={self.max_level} workers={self.workers} backend={self.backend}")
