import hashlib
import logging

from exactnum.errors import UsageError
from modforms.fricke import fricke_series
from modforms.siegel import siegel_power_series, siegel_order
from qseries.series import apply_sigma, shift_tau_plus_one

from .matrices import MatModN, qn_set

log = logging.getLogger(__name__)

# Slot transform [[0, -1], [1, 0]] of the second Siegel factor in the generator g.
ROTATION = (0, -1, 1, 0)
IDENTITY = (1, 0, 0, 1)


class FamilyDescriptor:
    """
    Symbolic description of a family {h_v} of level N.

    Descriptors are immutable and hashable so that member series can be
    cached per (descriptor, index, truncation).
    """

    # Family kinds
    FRICKE = "fricke"
    SIEGEL = "siegel"
    DIFF = "diff"
    PRODUCT = "product"

    def __init__(self, kind, level, **kwargs):
        """
        Args:
            kind (str): FRICKE, SIEGEL, DIFF or PRODUCT.
            level (int): N.
            **kwargs: Kind-specific parameters:
                - For SIEGEL: exponent (int), a multiple of 12N
                - For DIFF: a (int), an element of Q_N
                - For PRODUCT: factors (tuple of ((p, q, r, s), m)); member is prod g_{[[p,q],[r,s]] v}^m
                - name (str), optional display name
        """
        if level < 2:
            raise UsageError(f"level must be at least 2, got {level}")
        self.kind = kind
        self.level = level
        self.params = kwargs
        self._validate()

    def _validate(self):
        n = self.level
        if self.kind == self.SIEGEL:
            if self.params["exponent"] % (12 * n):
                raise UsageError(f"Siegel exponent {self.params['exponent']} is not a multiple of 12N = {12 * n}")
        elif self.kind == self.DIFF:
            a = self.params["a"]
            if n % 2 == 0:
                raise UsageError(f"difference families need odd N, got {n}")
            if a not in qn_set(n):
                raise UsageError(f"a = {a} is not in Q_{n} = {qn_set(n)}")
        elif self.kind == self.PRODUCT:
            factors = self.params["factors"]
            if not factors:
                raise UsageError("product family needs at least one factor")
            for transform, m in factors:
                MatModN(*transform, n)
                if m % (12 * n):
                    raise UsageError(f"Siegel exponent {m} is not a multiple of 12N = {12 * n}")
        elif self.kind != self.FRICKE:
            raise UsageError(f"unknown family kind {self.kind!r}")

    @property
    def exponent(self):
        return self.params.get("exponent")

    @property
    def a(self):
        return self.params.get("a")

    @property
    def factors(self):
        return self.params.get("factors", ())

    def is_gl2_homogeneous(self):
        """True when h_v^alpha = h_{alpha^T v} for the descriptor's own indexing."""
        return self.kind != self.PRODUCT

    def label(self):
        if "name" in self.params:
            return self.params["name"]
        if self.kind == self.SIEGEL:
            return f"siegel^{self.exponent}"
        if self.kind == self.DIFF:
            return f"diff:{self.a}"
        if self.kind == self.PRODUCT:
            return "product(" + ", ".join(f"{t}^{m}" for t, m in self.factors) + ")"
        return "fricke"

    def get_hash(self):
        """Returns a short hash of the descriptor, stable across runs."""
        key = f"{self.kind}|{self.level}|{sorted(self.params.items())}"
        return hashlib.md5(key.encode()).hexdigest()[:6].upper()

    def _key(self):
        return (self.kind, self.level, tuple(sorted(self.params.items())))

    def __eq__(self, other):
        return isinstance(other, FamilyDescriptor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FamilyDescriptor({self.label()}, N={self.level}, id={self.get_hash()})"


def fricke(level):
    return FamilyDescriptor(FamilyDescriptor.FRICKE, level)


def siegel_power(level, exponent=None):
    """SiegelPow(m); m defaults to 12N."""
    return FamilyDescriptor(FamilyDescriptor.SIEGEL, level,
                            exponent=12 * level if exponent is None else exponent)


def difference(level, a):
    """h_v = f_v - f_{av}."""
    return FamilyDescriptor(FamilyDescriptor.DIFF, level, a=a)


def product(level, factors, name=None):
    factors = tuple((tuple(t), m) for t, m in factors)
    if name is None:
        return FamilyDescriptor(FamilyDescriptor.PRODUCT, level, factors=factors)
    return FamilyDescriptor(FamilyDescriptor.PRODUCT, level, factors=factors, name=name)


def siegel_generator(level, n):
    """
    The generator g with member g_v^(12Nn) g_{[-v2, v1]}^(24Nn); at v = [1/N, 0] this is
    g_{[1/N,0]}^(12Nn) g_{[0,1/N]}^(24Nn).
    """
    if n == 0:
        raise UsageError("n must be nonzero")
    return product(level, [(IDENTITY, 12 * level * n), (ROTATION, 24 * level * n)],
                   name=f"sgen:{n}")


def _check_index(F, v):
    if v.level != F.level:
        raise UsageError(f"index {v} has level {v.level}, family has level {F.level}")
    if not v.in_v_n():
        raise UsageError(f"index {v} is not in V_{F.level}")


def _transform(t, v):
    return v.transformed(*t)


def product_series(factors, indices, T):
    """
    prod g_{u_i}^{m_i} to trunc T, each factor computed only as far as the others' orders allow.
    """
    orders = [siegel_order(u, m) for u, (_, m) in zip(indices, factors)]
    total = sum(orders)
    result = None
    for u, (_, m), order in zip(indices, factors, orders):
        member = siegel_power_series(u, m, T - (total - order))
        result = member if result is None else result * member
    return result


def member_order(F, v):
    """ord_q(h_v) when it is known symbolically (Siegel kinds), else None."""
    if F.kind == F.SIEGEL:
        return siegel_order(v, F.exponent)
    if F.kind == F.PRODUCT:
        return sum(siegel_order(_transform(t, v), m) for t, m in F.factors)
    return None


def family_series(F, v, T):
    """
    q-expansion of the member h_v to trunc T.

    Raises:
        UsageError: if v is not an index of level N with exact denominator N.
    """
    _check_index(F, v)
    if F.kind == F.FRICKE:
        return fricke_series(v, T)
    if F.kind == F.SIEGEL:
        return siegel_power_series(v, F.exponent, T)
    if F.kind == F.DIFF:
        return fricke_series(v, T) - fricke_series(v.scaled(F.a), T)
    return product_series(F.factors, [_transform(t, v) for t, _ in F.factors], T)


def act_F3(v, alpha):
    """The index alpha^T v, reduced mod Z^2."""
    return alpha.transpose().apply(v)


def galois_conjugate_series(F, v, alpha, T, path="f3"):
    """
    Series of h_v^alpha.

    Args:
        path (str): "f3" transforms the index (for product families every
            factor index u_i becomes alpha^T u_i); "a1a2" applies sigma_d to the
            coefficients and then tau -> tau + k, valid for alpha = +-[[1, k], [0, d]].

    Raises:
        UsageError: for "a1a2" with any other alpha, or an unknown path.
    """
    _check_index(F, v)
    if path == "f3":
        if F.kind == F.PRODUCT:
            indices = [act_F3(_transform(t, v), alpha) for t, _ in F.factors]
            return product_series(F.factors, indices, T)
        return family_series(F, act_F3(v, alpha), T)
    if path != "a1a2":
        raise UsageError(f"unknown conjugation path {path!r}")
    if not alpha.is_upper_unipotent_diag():
        raise UsageError(f"the A1/A2 path needs alpha = +-[1,k;0,d], got {alpha}")
    if alpha.a != 1 % alpha.level:
        alpha = -alpha
    series = apply_sigma(family_series(F, v, T), alpha.d)
    for _ in range(alpha.b):
        series = shift_tau_plus_one(series)
    return series
