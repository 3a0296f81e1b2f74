"""Built-in datum for the group of affine transformations of the complex
line, together with its two independent checks: a closed-form genus
formula and a recursion that computes the same values along a different
route.

The coefficient module has rank 2; its generators are the class supported
at the identity and the class of the nontrivial translations.  All
outputs are polynomials in q.
"""

from __future__ import annotations

from .poly import LaurentPoly, ONE, Q, ZERO
from .tqft import TqftDatum

__all__ = ["affc_datum", "affc_closed_form", "xk_epoly", "AFFC_E_GROUP"]

#: Class of the group itself: C* x C has class q(q - 1).
AFFC_E_GROUP = Q * (Q - 1)


def affc_datum() -> TqftDatum:
    """Rank-2 datum with the genus-tube matrix stored including its
    overall q(q-1) factor; the engine's end-of-word division removes it
    again, which the test suite checks explicitly."""
    q = Q
    f = AFFC_E_GROUP
    inner = (
        (q**3 - q**2, q**4 - 3 * q**3 + 2 * q**2),
        (q**3 - 2 * q**2, q**4 - 3 * q**3 + 3 * q**2),
    )
    genus_tube = tuple(tuple(f * entry for entry in row) for row in inner)
    return TqftDatum(
        rank=2,
        e_g=f,
        genus_tube=genus_tube,
        puncture_tubes={},
        identity_tube=None,
        disc_in=(ONE, ZERO),
        disc_out=(ONE, ZERO),
    )


def affc_inner_genus_matrix() -> tuple:
    """The genus-tube matrix with the q(q-1) factor already cancelled,
    as used in the pre-cancelled evaluation route."""
    q = Q
    return (
        (q**3 - q**2, q**4 - 3 * q**3 + 2 * q**2),
        (q**3 - 2 * q**2, q**4 - 3 * q**3 + 3 * q**2),
    )


def affc_closed_form(genus: int) -> LaurentPoly:
    """q^(2g-1) ((q-1)^(2g) + q - 1), expanded."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    return Q ** (2 * genus - 1) * ((Q - 1) ** (2 * genus) + Q - 1)


def xk_epoly(k: int) -> LaurentPoly:
    """Recursion values e(X_1) = 2q - 2 and
    e(X_k) = (q-2) q^(k-1) (q-1)^(k-1) + q e(X_(k-1));
    xk_epoly(2g) must agree with affc_closed_form(g)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    value = 2 * Q - 2
    for i in range(2, k + 1):
        value = (Q - 2) * Q ** (i - 1) * (Q - 1) ** (i - 1) + Q * value
    return value
