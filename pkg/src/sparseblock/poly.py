"""Exact univariate polynomials with nestable coefficients.

A :class:`Poly` is a tuple of coefficients, lowest power first, tagged with
a variable name.  Coefficients may be ``int``, ``Fraction`` or another
:class:`Poly` in a *different* variable, which is how the package spells
polynomials in several variables (e.g. a polynomial in ``Z`` whose
coefficients are polynomials in ``d``).

Arithmetic between two polynomials in the same variable convolves; a
polynomial in another variable is treated as a scalar coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _is_zero(c) -> bool:
    return not c


def _normalize_scalar(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, Poly):
        if not c.coeffs:
            return 0
        if len(c.coeffs) == 1 and not isinstance(c.coeffs[0], Poly):
            return c.coeffs[0]
    return c


class Poly:
    """Immutable polynomial ``sum(coeffs[k] * var**k)``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "x"):
        cs = [_normalize_scalar(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, power: int, coeff=1, var: str = "x") -> "Poly":
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [coeff], var)

    @classmethod
    def const(cls, c, var: str = "x") -> "Poly":
        return cls([c], var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.var, self.coeffs))

    def _same(self, other) -> bool:
        return isinstance(other, Poly) and other.var == self.var

    def __eq__(self, other):
        if self._same(other):
            return self.coeffs == other.coeffs
        # constant polynomial compared with a scalar (or a poly in another var)
        if len(self.coeffs) <= 1:
            return self[0] == other
        return False

    def __add__(self, other):
        if self._same(other):
            n = max(len(self.coeffs), len(other.coeffs))
            return Poly([self[k] + other[k] for k in range(n)], self.var)
        if isinstance(other, (Rational, Poly)):
            cs = list(self.coeffs) or [0]
            cs[0] = cs[0] + other
            return Poly(cs, self.var)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._same(other):
            if not self.coeffs or not other.coeffs:
                return Poly((), self.var)
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if _is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    if not _is_zero(b):
                        out[i + j] = out[i + j] + a * b
            return Poly(out, self.var)
        if isinstance(other, (Rational, Poly)):
            return Poly([c * other for c in self.coeffs], self.var)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Rational, Poly)):
            return Poly([other * c for c in self.coeffs], self.var)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, k: int) -> "Poly":
        """Divide every coefficient by the integer ``k``; raises if inexact."""
        out = []
        for c in self.coeffs:
            if isinstance(c, Poly):
                out.append(c.exact_div(k))
            else:
                q = Fraction(c) / k
                if q.denominator != 1:
                    raise ArithmeticError(f"{c} not divisible by {k}")
                out.append(int(q))
        return Poly(out, self.var)

    def shift(self, n: int) -> "Poly":
        """Multiply by ``var**n`` (``n`` may be negative if the low terms vanish)."""
        if n >= 0:
            return Poly([0] * n + list(self.coeffs), self.var)
        if any(not _is_zero(c) for c in self.coeffs[:-n]):
            raise ArithmeticError(f"cannot divide by {self.var}^{-n}")
        return Poly(self.coeffs[-n:], self.var)

    def __call__(self, value):
        """Evaluate by Horner's rule.  ``value`` may be any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def subs(self, var: str, value):
        """Substitute ``value`` for ``var`` wherever it appears in the nesting."""
        if var == self.var:
            return self(value)
        return Poly(
            [c.subs(var, value) if isinstance(c, Poly) else c for c in self.coeffs],
            self.var,
        )

    def int_list(self) -> list:
        """Coefficient list for JSON output (nested polys become nested lists)."""
        return [c.int_list() if isinstance(c, Poly) else _jsonable(c) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        return format_poly(self)


def _jsonable(c):
    if isinstance(c, Fraction):
        return str(c)
    return c


def format_poly(p: Poly, *, descending: bool = False) -> str:
    """Human form, e.g. ``14 Z + 62 Z^2``."""
    if not isinstance(p, Poly):
        return str(p)
    terms = []
    order = range(len(p.coeffs))
    if descending:
        order = reversed(order)
    for k in order:
        c = p.coeffs[k]
        if _is_zero(c):
            continue
        if isinstance(c, Poly) and len(c.coeffs) > 1:
            cs = f"({format_poly(c, descending=descending)})"
        else:
            cs = str(_normalize_scalar(c))
        if k == 0:
            terms.append(cs)
            continue
        mono = p.var if k == 1 else f"{p.var}^{k}"
        if cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{cs} {mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def falling(var: str, start: int, count: int) -> Poly:
    """``(var - start)(var - start - 1)...`` with ``count`` factors."""
    out = Poly([1], var)
    for k in range(count):
        out = out * Poly([-(start + k), 1], var)
    return out


def var(name: str) -> Poly:
    return Poly([0, 1], name)
