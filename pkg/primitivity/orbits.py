"""
Orbit listings: where each coset representative (or GL2 element) sends an
index, which class it lands in, and the q-order of the conjugate member.
"""
import logging

from exactnum.backend import format_rational
from famgroup.family import act_F3
from famgroup.matrices import IndexClass, cosets_mod_pm_gamma, enumerate_gl2, modulo_pm
from modforms.siegel import siegel_order

from .checks import order_profile

log = logging.getLogger(__name__)


class OrbitEntry:
    """
    Attributes:
        element (MatModN): gamma.
        image (IndexVector): gamma^T v.
        index_class (IndexClass): Class of the image mod +-.
        order (rational): ord_q of h_v^gamma.
    """

    def __init__(self, element, image, order):
        self.element = element
        self.image = image
        self.index_class = IndexClass(image)
        self.order = order

    def to_json(self):
        return {
            "element": str(self.element),
            "image": str(self.image),
            "class": str(self.index_class),
            "ord": format_rational(self.order),
        }


def conjugate_order(F, v, gamma, T=None):
    """ord_q(h_v^gamma); symbolic for Siegel kinds, read off the series otherwise."""
    if F.kind == F.PRODUCT:
        return sum(siegel_order(act_F3(v.transformed(*t), gamma), m) for t, m in F.factors)
    image = act_F3(v, gamma)
    if F.kind == F.SIEGEL:
        return siegel_order(image, F.exponent)
    return order_profile(F, image, T)


def orbit(F, v, T=None, gl2=False):
    """
    Lists every conjugate of h_v.

    Args:
        F (FamilyDescriptor): The family.
        v (IndexVector): Base index.
        T: Truncation for series-based orders; chosen automatically when None.
        gl2 (bool): Walk GL2(Z/N) mod +- instead of SL2(Z)/+-Gamma(N).

    Returns:
        list: OrbitEntry per group element, in enumeration order.
    """
    elements = modulo_pm(enumerate_gl2(F.level)) if gl2 else cosets_mod_pm_gamma(F.level)
    entries = [OrbitEntry(gamma, act_F3(v, gamma), conjugate_order(F, v, gamma, T))
               for gamma in elements]
    log.info("%s orbit of %s over %d elements: %d classes reached", F.label(), v,
             len(entries), len({e.index_class for e in entries}))
    return entries
