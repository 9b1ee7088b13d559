import logging

import numpy as np

from exactnum.errors import UsageError
from famgroup.matrices import MatModN, modulo_pm

log = logging.getLogger(__name__)


class ReciprocityGroup:
    """
    W_{K,N}: the matrices [t - B_K s, -C_K s; s, t] invertible mod N.

    Attributes:
        level (int): N.
        field (ImagQuadData): K.
        pairs (list): (s, t) per element, sorted.
        elements (list): MatModN per element, same order.
        pm_classes (list): First element of each class mod +-I.
    """

    def __init__(self, field, level, pairs):
        self.field = field
        self.level = level
        self.pairs = pairs
        self.elements = [element(field, level, s, t) for s, t in pairs]
        self.pm_classes = modulo_pm(self.elements)

    def pm_pairs(self):
        """(s, t) of each class representative."""
        lookup = dict(zip(self.elements, self.pairs))
        return [lookup[m] for m in self.pm_classes]

    def is_closed(self):
        members = set(self.elements)
        return all(a * b in members for a in self.elements for b in self.elements)

    def __len__(self):
        return len(self.elements)

    def to_json(self):
        return {
            "level": self.level,
            "d_K": self.field.d_K,
            "order": len(self.elements),
            "pm_classes": [list(p) for p in self.pm_pairs()],
        }


def element(field, level, s, t):
    return MatModN(t - field.B_K * s, -field.C_K * s, s, t, level)


def determinant(field, level, s, t):
    """t^2 - B_K s t + C_K s^2 mod N."""
    return (t * t - field.B_K * s * t + field.C_K * s * s) % level


def reciprocity_group(field, level):
    if level < 2:
        raise UsageError(f"level must be at least 2, got {level}")
    s, t = np.indices((level, level)).reshape(2, -1)
    det = (t * t - field.B_K * s * t + field.C_K * s * s) % level
    mask = np.gcd(det, level) == 1
    pairs = sorted((int(x), int(y)) for x, y in zip(s[mask], t[mask]))
    group = ReciprocityGroup(field, level, pairs)
    log.debug("W for d_K=%d, N=%d: %d elements, %d classes mod +-I",
              field.d_K, level, len(group.elements), len(group.pm_classes))
    return group
