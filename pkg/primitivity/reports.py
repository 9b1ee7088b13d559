from exactnum.backend import format_rational
from qseries.series import Distinct


class NonConstantRatio:
    """
    h_u / h_v has a nonzero coefficient at `exponent` != 0, so no power of h_u equals h_v's.
    """

    def __init__(self, exponent):
        self.exponent = exponent

    resolved = True

    def to_json(self):
        return {"kind": "NonConstantRatio", "exponent": format_rational(self.exponent)}

    def __repr__(self):
        return f"NonConstantRatio({format_rational(self.exponent)})"


class ConstantRatioCandidate:
    """
    h_u / h_v agrees with the constant c to the working precision.

    Attributes:
        constant (CycloElem): c.
        root_of_unity_order (int | None): Order of c, None when c is not a root of unity.
        proved (bool): The identity h_u = c h_v is known exactly, not only to precision.
    """

    def __init__(self, constant, root_of_unity_order, proved=False):
        self.constant = constant
        self.root_of_unity_order = root_of_unity_order
        self.proved = proved

    @property
    def resolved(self):
        # the leading coefficient alone separates every power when c is not a root of unity
        return self.root_of_unity_order is None

    def to_json(self):
        order = self.root_of_unity_order
        return {
            "kind": "ConstantRatioCandidate",
            "constant": self.constant.render(),
            "root_of_unity_order": "not a root of unity" if order is None else order,
            "proved": self.proved,
        }

    def __repr__(self):
        return f"ConstantRatioCandidate({self.constant.render()}, order={self.root_of_unity_order})"


class InconclusivePair:
    """A member was zero-to-precision, so no ratio could be formed."""

    resolved = False

    def __init__(self, reason):
        self.reason = reason

    def to_json(self):
        return {"kind": "InconclusivePair", "reason": self.reason}

    def __repr__(self):
        return f"InconclusivePair({self.reason!r})"


class PairResult:
    """
    Outcome for one unordered pair of index classes.

    Attributes:
        u, v (IndexClass): The pair, u < v.
        certificate (Distinct | UndecidedToPrecision): Difference of the members.
        ratio: NonConstantRatio, ConstantRatioCandidate, InconclusivePair or None.
    """

    def __init__(self, u, v, certificate, ratio=None):
        self.u = u
        self.v = v
        self.certificate = certificate
        self.ratio = ratio

    def key(self):
        return (self.u.key(), self.v.key())

    def to_json(self):
        data = {
            "u": str(self.u.representative),
            "v": str(self.v.representative),
            "certificate": self.certificate.to_json(),
        }
        if self.ratio is not None:
            data["ratio"] = self.ratio.to_json()
        return data


class PrimitivityReport:
    """
    Result of a pairwise primitivity scan.

    Attributes:
        family (str): Descriptor label.
        level (int): N.
        trunc (rational): T.
        verdict (str): PRIMITIVE, NOT_PRIMITIVE or UNDECIDED.
        pairs (list): PairResult per scanned pair, sorted by key.
        witness (PairResult | None): The pair behind a negative verdict.
    """

    PRIMITIVE = "Primitive"
    NOT_PRIMITIVE = "NotPrimitive"
    UNDECIDED = "Undecided"

    kind = "PrimitivityReport"

    def __init__(self, family, level, trunc, verdict, pairs, witness=None):
        self.family = family
        self.level = level
        self.trunc = trunc
        self.verdict = verdict
        self.pairs = pairs
        self.witness = witness

    @property
    def affirmative(self):
        return self.verdict == self.PRIMITIVE

    def unresolved(self):
        return [p for p in self.pairs if not self._pair_resolved(p)]

    def _pair_resolved(self, pair):
        return isinstance(pair.certificate, Distinct)

    def to_json(self):
        return {
            "kind": self.kind,
            "family": self.family,
            "level": self.level,
            "trunc": format_rational(self.trunc),
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_json(),
            "pairs": [p.to_json() for p in self.pairs],
        }


class TotalPrimitivityReport(PrimitivityReport):
    """Same fields as PrimitivityReport; every pair carries a ratio analysis."""

    TOTALLY_PRIMITIVE = "TotallyPrimitive"
    NOT_TOTALLY_PRIMITIVE = "NotTotallyPrimitive"

    kind = "TotalPrimitivityReport"

    @property
    def affirmative(self):
        return self.verdict == self.TOTALLY_PRIMITIVE

    def _pair_resolved(self, pair):
        return pair.ratio is not None and pair.ratio.resolved
