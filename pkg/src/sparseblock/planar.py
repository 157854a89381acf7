"""Large-``d`` limit with ``sigma^2 = 1/d``: planar pairing counts and moments."""

from __future__ import annotations

from dataclasses import dataclass

from . import _backend
from .poly import Poly
from .transform import Series, compose_f_from_a
from .walks import enumerate_tree_walks, irreducible_expansion
from .words import has_even_labels

#: largest order computed by direct tree-walk enumeration in moment_large_d
DEFAULT_ENUMERATION_BUDGET = 16


def planar_value(w) -> int:
    """Non-crossing perfect matchings of the cyclic word pairing equal labels.

    Equals ``lim (1/d) <tr W>`` at ``sigma^2 = 1/d``.  Odd label counts give 0.
    """
    w = tuple(w)
    if not has_even_labels(w):
        return 0
    return int(_backend.planar_count(w))


@dataclass(frozen=True)
class PlanarMoment:
    order: int
    poly: Poly  # in Z
    route: str = "enumeration"

    @property
    def z_coeffs(self) -> list[int]:
        """``[c1, ..., cp]``: coefficients of ``Z .. Z^p``."""
        return [self.poly[k] for k in range(1, self.order // 2 + 1)]

    def to_dict(self) -> dict:
        return {"order": self.order, "z_coeffs": self.z_coeffs}


def moment_large_d_enumerated(p: int) -> Poly:
    total = Poly((), "Z")
    for t in enumerate_tree_walks(p).terms:
        total = total + Poly.monomial(t.h, t.multiplicity * planar_value(t.representative), "Z")
    return total


def irreducible_series(p_max: int) -> Series:
    """``a(x, Z)``: irreducible orbits weighted by size, ``Z**h`` and planar value."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    coeffs = [Poly((), "Z") for _ in range(2 * p_max + 1)]
    for l in range(1, p_max + 1):
        total = Poly((), "Z")
        for t in irreducible_expansion(l).terms:
            total = total + Poly.monomial(t.h, t.multiplicity * planar_value(t.representative), "Z")
        coeffs[2 * l] = total
    return Series(coeffs)


def moment_large_d(p: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> PlanarMoment:
    """``mu_{2p}`` at ``d -> infinity`` as a polynomial in ``Z``.

    Orders within ``budget`` come from direct enumeration; higher orders are
    assembled from the irreducible series through the non-crossing transform.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if 2 * p <= budget:
        return PlanarMoment(2 * p, moment_large_d_enumerated(p))
    f = compose_f_from_a(irreducible_series(p))
    return PlanarMoment(2 * p, f[2 * p], route="transform")


def planar_moments(p_max: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[PlanarMoment]:
    """``mu_2 .. mu_{2 p_max}``, sharing a single transform for the high orders."""
    out = [moment_large_d(p, budget) for p in range(1, min(p_max, budget // 2) + 1)]
    if p_max > budget // 2:
        f = compose_f_from_a(irreducible_series(p_max))
        for p in range(budget // 2 + 1, p_max + 1):
            out.append(PlanarMoment(2 * p, f[2 * p], route="transform"))
    return out
