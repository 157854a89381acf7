"""Finite-``d`` GOE averages of block words via the Wick theorem.

All arithmetic is exact.  ``sigma`` never appears as a number: a value of
``<tr W>`` is a polynomial in ``d`` times ``sigma**L`` with ``L`` the word
length, recorded as ``sigma_grade``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod

from . import _backend
from .poly import Poly
from .walks import enumerate_tree_walks
from .words import canonicalize, factorize, has_even_labels, orbit_rep

DEFAULT_BUDGET = 10**9


class WickBudgetError(RuntimeError):
    """The contraction sum would exceed the configured term budget."""


@dataclass(frozen=True)
class DPoly:
    """``poly(d) * sigma**sigma_grade``.  ``odd`` flags a word whose average vanishes by parity."""

    poly: Poly
    sigma_grade: int
    odd: bool = False

    def __call__(self, d):
        return self.poly(d)

    @property
    def coefficients(self) -> tuple:
        return self.poly.coeffs

    def __str__(self):
        return f"({self.poly}) sigma^{self.sigma_grade}"


def _double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


def matching_count(w) -> int:
    """Number of perfect matchings pairing equal labels: prod (2m_i - 1)!!."""
    counts = {}
    for s in w:
        counts[s] = counts.get(s, 0) + 1
    if any(c % 2 for c in counts.values()):
        return 0
    return prod(_double_factorial(c - 1) for c in counts.values())


def term_count(w) -> int:
    """Elementary terms in the Wick sum: matchings times 2 per propagator."""
    return matching_count(w) * 2 ** (len(w) // 2)


def wick_trace(w, budget: int = DEFAULT_BUDGET) -> DPoly:
    """Exact ``<tr W>`` for independent GOE blocks, not divided by ``d``.

    Each propagator ``<X_ab X_cd> = (d_ac d_bd + d_ad d_bc) sigma^2`` doubles
    the term count; a global choice contributes ``d**loops``.
    """
    w = tuple(w)
    if not has_even_labels(w):
        return DPoly(Poly((), "d"), len(w), odd=True)
    if term_count(w) > budget:
        raise WickBudgetError(
            f"word of length {len(w)} needs {term_count(w)} terms (budget {budget})"
        )
    return DPoly(Poly(_backend.wick_loop_counts(canonicalize(w)), "d"), len(w))


@lru_cache(maxsize=None)
def _irreducible_value(rep: tuple, budget: int) -> Poly:
    return wick_trace(rep, budget).poly


def wick_trace_factorized(w, budget: int = DEFAULT_BUDGET) -> DPoly:
    """``<tr W>`` assembled from irreducible factors; each extracted factor brings ``1/d``."""
    w = tuple(w)
    if not has_even_labels(w):
        return DPoly(Poly((), "d"), len(w), odd=True)
    if not w:
        return wick_trace(w)
    fac = factorize(w)
    value = _irreducible_value(orbit_rep(canonicalize(fac.core)), budget)
    for piece in fac.pieces:
        value = value * _irreducible_value(orbit_rep(piece), budget).shift(-1)
    return DPoly(value, len(w))


@dataclass(frozen=True)
class FiniteDMoment:
    """``lim (1/Nd) <tr A^order>`` as ``poly(Z, d) * sigma**order``."""

    order: int
    poly: Poly  # in Z; coefficients are polynomials in d

    def at(self, Z, d, sigma2=1):
        """Numeric (or exact rational) value at given parameters."""
        value = self.poly.subs("d", d)
        value = value(Z) if isinstance(value, Poly) else value
        return value * sigma2 ** (self.order // 2)

    def z_coefficient(self, k: int) -> Poly:
        c = self.poly[k]
        return c if isinstance(c, Poly) else Poly([c], "d")

    def to_dict(self) -> dict:
        terms = []
        for k in range(1, self.poly.degree + 1):
            terms.append({"z_power": k, "d_poly": list(self.z_coefficient(k).int_list())})
        return {"order": self.order, "terms": terms, "sigma_power": self.order}


def moment_finite_d(p: int, budget: int = DEFAULT_BUDGET) -> FiniteDMoment:
    """Finite-d moment: sum over tree-walk orbits of mult * Z**h * <tr W>/d."""
    exp = enumerate_tree_walks(p)
    total = Poly((), "Z")
    for t in exp.terms:
        value = wick_trace_factorized(t.representative, budget).poly.shift(-1)
        total = total + Poly.monomial(t.h, t.multiplicity * value, "Z")
    return FiniteDMoment(2 * p, total)


@dataclass(frozen=True)
class SumRuleResult:
    ok: bool
    lhs: object
    rhs: object
    words: dict

    def __bool__(self):
        return self.ok

    def report(self) -> str:
        if self.ok:
            return "sum rule holds"
        return f"sum rule violated: expanded={self.lhs} expected={self.rhs}"


def multinomial_words(k: int, length: int) -> dict:
    """Group the ``k**length`` words of ``(X1+...+Xk)**length`` by trace orbit."""
    counts = {}
    for raw in itertools.product(range(1, k + 1), repeat=length):
        rep = orbit_rep(canonicalize(raw))
        counts[rep] = counts.get(rep, 0) + 1
    return counts


def sum_rule_check(k: int, n: int, d=None, budget: int = DEFAULT_BUDGET) -> SumRuleResult:
    """Check ``<tr (X1+...+Xk)^{2n}> = k^n <tr X^{2n}>`` exactly.

    ``d=None`` keeps ``d`` symbolic; an integer compares numeric values.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    words = multinomial_words(k, 2 * n)
    lhs = Poly((), "d")
    for rep, c in words.items():
        lhs = lhs + c * wick_trace_factorized(rep, budget).poly
    rhs = k**n * wick_trace((1,) * (2 * n), budget).poly
    if d is not None:
        lhs, rhs = lhs(d), rhs(d)
    return SumRuleResult(lhs == rhs, lhs, rhs, words)


def gaussian_even_moment(m: int) -> int:
    """``<X^{2m}>`` for a scalar with variance 2: ``2^m (2m-1)!!``."""
    return 2**m * _double_factorial(2 * m - 1)


def d1_moments(j_max: int, edge_moment=gaussian_even_moment) -> list[Poly]:
    """Moments ``mu_2 .. mu_{2 j_max}`` at ``d = 1, sigma = 1`` by the edge recursion.

    ``edge_moment(m)`` is the average of an edge weight raised to ``2m``;
    the default is the GOE scalar law, ``lambda m: 1`` gives the bare graph.

    ``H[j][mb]`` is a polynomial in ``y`` with ``Z``-polynomial coefficients;
    ``H[j][1]`` counts walks of ``2j`` steps below a vertex, ``y`` marking
    how often the walk returns to it, and ``mb`` the number of times the
    edge above is traversed up and down.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    Z = Poly([0, 1], "Z")
    one_y = Poly([1], "y")
    H = {0: {}}

    def get(j, mb):
        if j == 0:
            return one_y
        return H[j][mb]

    def at_one(poly):
        return poly(1)

    moments = []
    for j in range(1, j_max + 1):
        h1 = Poly((), "y")
        for mb in range(1, j + 1):
            inner = Poly((), "y")
            for j1 in range(0, j - mb + 1):
                j2 = j - mb - j1
                inner = inner + get(j1, mb) * at_one(get(j2, mb))
            h1 = h1 + inner.shift(mb) * (edge_moment(mb) * Z)
        H[j] = {1: h1}
        for mb in range(2, j_max + 1):
            H[j][mb] = Poly(
                [h1[m] * comb(m + mb - 1, mb - 1) if m >= 1 else 0 for m in range(h1.degree + 1)],
                "y",
            )
        moments.append(at_one(h1))
    return moments
