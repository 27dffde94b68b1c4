"""Published orthogonal Weingarten values for n <= 4, in unreduced form.

Each entry is ``(numerator coefficients ascending, denominator roots)``;
the denominator is ``prod(d - r)``.  Comparison happens after canonical
reduction, so shared factors in the published forms are harmless.
"""
from .algebra import Poly, RationalFunction

_N4_ROOTS = (0, -1, -2, -4, -6, 1, 2, 3)

ORTHOGONAL_TABLE = {
    (1,): ((1,), (0,)),
    (1, 1): ((1, 1), (0, 1, -2)),
    (2,): ((-1,), (0, 1, -2)),
    (1, 1, 1): ((-2, 3, 1), (0, 1, 2, -2, -4)),
    (2, 1): ((-1,), (0, 1, 2, -4)),
    (3,): ((2,), (0, 1, 2, -2, -4)),
    (4,): ((-6, -5), _N4_ROOTS),
    (3, 1): ((8, 2), (-1, -2, -4, -6, 1, 2, 3)),
    (2, 2): ((18, 5, 1), _N4_ROOTS),
    (2, 1, 1): ((6, -3, -6, -1), _N4_ROOTS),
    (1, 1, 1, 1): ((-6, -35, 1, 7, 1), _N4_ROOTS),
}


def golden_orthogonal(mu) -> RationalFunction:
    num, roots = ORTHOGONAL_TABLE[tuple(mu)]
    return RationalFunction(Poly(num), Poly.from_roots(roots))
