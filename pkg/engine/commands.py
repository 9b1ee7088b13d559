"""
The subcommands. Each one validates its flags, calls into the library and
renders the result through render.report_view.
"""
import logging
import math

from cm.evaluate import CMReport, cm_conjugates
from cm.field import make_field
from exactnum.backend import rational, format_rational
from exactnum.errors import UsageError, PrecisionError
from famgroup.family import fricke, siegel_power, difference, siegel_generator, family_series
from famgroup.matrices import qn_set
from modelcurve.model import model_polynomial
from modelcurve.stabilizer import (StabilizerReport, stabilizer_check_fricke, stabilizer_check_siegel,
                                   stabilizer_check_rational, stabilizer_check_pair)
from modforms.eisenstein import LEVEL_ONE
from modforms.indices import IndexVector
from primitivity.checks import check_primitive, check_totally_primitive
from primitivity.orbits import orbit
from primitivity.reports import PrimitivityReport, TotalPrimitivityReport
from qseries import codec
from render.report_view import primitivity_lines, stabilizer_lines, cm_lines, orbit_lines

from .basic_objects import Command

log = logging.getLogger(__name__)

FAMILY_HELP = "fricke | siegel | diff:a | sgen"


def build_family(name, level, n=None):
    """
    Family descriptor for a --family value at level N.

    Args:
        name (str): "fricke", "siegel" (SiegelPow(12N)), "diff:a" or "sgen".
        n (int | None): The generator's n for "sgen"; defaults to 1.

    Raises:
        UsageError: for unknown names or invalid parameters.
    """
    if level is None:
        raise UsageError(f"--N is required for family {name!r}")
    if name == "fricke":
        return fricke(level)
    if name == "siegel":
        return siegel_power(level)
    if name == "sgen":
        return siegel_generator(level, 1 if n is None else n)
    if name.startswith("diff:"):
        try:
            a = int(name[len("diff:"):])
        except ValueError:
            raise UsageError(f"difference family must look like 'diff:a', got {name!r}")
        return difference(level, a)
    raise UsageError(f"unknown family {name!r}; expected {FAMILY_HELP}")


def parse_index(config, default=None):
    if config.v is None:
        if default is None:
            raise UsageError("--v is required")
        return default
    return IndexVector.parse(config.v, config.N)


def leading_window(compute, slots, limit):
    """
    The series returned by compute(T), truncated `slots` exponent slots past its q-order.

    The truncation grows until the q-order is visible and the window fits.

    Raises:
        PrecisionError: if the series is still zero to precision at `limit`.
    """
    T = 1
    while True:
        series = compute(T)
        if series.is_zero_to_precision():
            if T >= limit:
                raise PrecisionError(f"series is zero to precision at trunc {T}")
            T = min(2 * T, limit)
            continue
        target = series.ord_q().value + rational(slots, series.exp_den)
        if target <= series.trunc:
            return series.truncate(target)
        T = int(math.ceil(target))
        log.debug("raising trunc to %d for a %d-slot window", T, slots)


def _add_level(parser, required=True):
    parser.add_argument("--N", type=int, required=required, help="level N >= 2")


def _add_terms(parser, text="truncation T in q-units"):
    parser.add_argument("--terms", type=int, metavar="T", help=text)


def _add_workers(parser):
    parser.add_argument("--workers", type=int, help="threads for independent member computations")


class QexpCommand(Command):
    name = "qexp"
    help = "q-expansion of a family member or a level-one form"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--family", required=True,
                            help=FAMILY_HELP + " | " + " | ".join(LEVEL_ONE))
        _add_level(parser, required=False)
        parser.add_argument("--v", help="index 'a/N,b/N'")
        parser.add_argument("--n", type=int,
                            help="siegel: print g_v^(12n), default n = N; sgen: the generator's n")
        _add_terms(parser, "number of exponent slots from the q-order on")

    def update(self, config):
        if config.family in LEVEL_ONE:
            compute = LEVEL_ONE[config.family]
        else:
            if config.family == "siegel":
                if config.N is None:
                    raise UsageError("--N is required for family 'siegel'")
                F = siegel_power(config.N, 12 * (config.N if config.n is None else config.n))
            else:
                F = build_family(config.family, config.N, config.n)
            v = parse_index(config)

            def compute(T):
                return family_series(F, v, T)
        return leading_window(compute, config.terms, 4 * max(config.settings.trunc, config.terms))

    def lines(self, result, config):
        return [codec.to_text(result)]

    def to_json(self, result, config):
        return codec.to_json(result)


class FamilyCheckCommand(Command):
    name = "family-check"
    help = "certify primitivity or total primitivity of a family"
    verdicts = (PrimitivityReport.PRIMITIVE, PrimitivityReport.NOT_PRIMITIVE,
                TotalPrimitivityReport.TOTALLY_PRIMITIVE, TotalPrimitivityReport.NOT_TOTALLY_PRIMITIVE,
                PrimitivityReport.UNDECIDED)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--family", required=True, help=FAMILY_HELP)
        _add_level(parser)
        parser.add_argument("--n", type=int, help="the generator's n for sgen")
        _add_terms(parser)
        parser.add_argument("--total", action="store_true", help="check total primitivity")
        parser.add_argument("--orbit-reduction", action="store_true",
                            help="scan only pairs through [1/N,0] for GL2-homogeneous families")
        parser.add_argument("--detail", action="store_true", help="list every scanned pair")
        _add_workers(parser)

    def update(self, config):
        F = build_family(config.family, config.N, config.n)
        check = check_totally_primitive if config.total else check_primitive
        return check(F, config.terms, orbit_reduction=config.orbit_reduction,
                     workers=config.workers, max_level=config.max_level)

    def lines(self, result, config):
        return primitivity_lines(result, detail=config.detail)


class QnSetCommand(Command):
    name = "qn-set"
    help = "list Q_N for odd N"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        _add_level(parser)

    def update(self, config):
        return qn_set(config.N)

    def lines(self, result, config):
        return [" ".join(str(a) for a in result)]

    def to_json(self, result, config):
        return {"level": config.N, "qn_set": result}


class ModelCommand(Command):
    name = "model"
    help = "the plane model f_N(x, y) of X(N) in g and j"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        _add_level(parser)
        parser.add_argument("--n", type=int, default=1, help="power n > 0 of the generator (default 1)")
        _add_terms(parser, "truncation T; raised automatically to the required precision")
        _add_workers(parser)

    def update(self, config):
        T = config.terms if config.trunc_given else None
        return model_polynomial(config.N, config.n, T, workers=config.workers)

    def lines(self, result, config):
        return [result.render()]

    def to_json(self, result, config):
        return {"level": config.N, "n": config.n, "coefficients": result.to_json()}


class CmCommand(Command):
    name = "cm"
    help = "conjugates of a family member at tau_K under the reciprocity group"
    verdicts = (CMReport.DISTINCT, CMReport.COINCIDENT, CMReport.NOT_INTEGRAL)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--family", default="siegel", help=FAMILY_HELP + " (default siegel)")
        _add_level(parser)
        parser.add_argument("--dk", type=int, required=True, help="fundamental discriminant d_K < 0")
        parser.add_argument("--n", type=int, default=1, help="power applied to every conjugate value")
        parser.add_argument("--v", help="index 'a/N,b/N' (default [0,1/N])")
        parser.add_argument("--prec-bits", type=int, help="working precision in bits")
        parser.add_argument("--tol", type=float, help="distinctness and tail tolerance")
        _add_terms(parser)
        _add_workers(parser)

    def update(self, config):
        K = make_field(config.dk)
        F = build_family(config.family, config.N)
        v = parse_index(config, default=IndexVector(0, 1, config.N))
        return cm_conjugates(F, v, config.n, K, config.N, prec_bits=config.prec_bits, T=config.terms,
                             tol=config.tol, integrality_tol=config.integrality_tol,
                             zero_tol=config.zero_tol, workers=config.workers)

    def lines(self, result, config):
        return cm_lines(result)


class OrbitCommand(Command):
    name = "orbit"
    help = "conjugates of a member: image index, class and q-order per group element"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--family", required=True, help=FAMILY_HELP)
        _add_level(parser)
        parser.add_argument("--n", type=int, help="the generator's n for sgen")
        parser.add_argument("--v", help="base index 'a/N,b/N' (default [1/N,0])")
        parser.add_argument("--gl2", action="store_true", help="walk GL2(Z/N) mod +- instead of the cosets")
        _add_terms(parser, "truncation for series-based orders (chosen automatically by default)")

    def update(self, config):
        F = build_family(config.family, config.N, config.n)
        v = parse_index(config, default=IndexVector(1, 0, config.N))
        T = config.terms if config.trunc_given else None
        return F, v, orbit(F, v, T, gl2=config.gl2)

    def lines(self, result, config):
        F, v, entries = result
        group = "GL2 mod +-" if config.gl2 else "SL2/+-Gamma(N)"
        return [f"{F.label()} level {F.level} base {v} over {group}: {len(entries)} elements"] + orbit_lines(entries)

    def to_json(self, result, config):
        F, v, entries = result
        return {
            "family": F.label(),
            "level": F.level,
            "base": str(v),
            "gl2": config.gl2,
            "entries": [e.to_json() for e in entries],
            "orders": sorted({format_rational(e.order) for e in entries}),
        }


class StabilizerCommand(Command):
    name = "stabilizer"
    help = "certify that the generators of the function field of X(N) have trivial stabilizer"
    verdicts = (StabilizerReport.TRIVIAL, StabilizerReport.UNDECIDED)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--family", default="fricke",
                            help="fricke | sgen; with --pair any of " + FAMILY_HELP)
        _add_level(parser)
        parser.add_argument("--n", type=int, default=1, help="the generator's n for sgen")
        _add_terms(parser)
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument("--rational", action="store_true",
                          help="check that diag(1,d) moves zeta_N times the generator")
        mode.add_argument("--pair", action="store_true",
                          help="check that no coset fixes both h_[1/N,0] and h_[0,1/N]")

    def update(self, config):
        if config.pair:
            return stabilizer_check_pair(build_family(config.family, config.N, config.n), config.terms)
        kinds = {"fricke": "fricke", "sgen": "siegel"}
        if config.family not in kinds:
            raise UsageError(f"stabilizer checks run for fricke or sgen, got {config.family!r}")
        kind = kinds[config.family]
        if config.rational:
            return stabilizer_check_rational(kind, config.N, config.n, config.terms)
        if kind == "fricke":
            return stabilizer_check_fricke(config.N, config.terms)
        return stabilizer_check_siegel(config.N, config.n, config.terms)

    def lines(self, result, config):
        return stabilizer_lines(result)


COMMANDS = (QexpCommand, FamilyCheckCommand, QnSetCommand, ModelCommand, CmCommand,
            OrbitCommand, StabilizerCommand)
