"""Truncated power series and the non-crossing partition transform.

Everything is exact: coefficients are ``int``, ``Fraction`` or :class:`Poly`
(in a parameter such as ``p`` or ``Z``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb

from .poly import Poly


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _scale(c, num: int, den: int = 1):
    if den == 1:
        return c * num
    return _norm(c * Fraction(num, den))


class Series:
    """``sum coeffs[n] x**n`` truncated after ``max_order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [_norm(c) for c in coeffs]

    @classmethod
    def zeros(cls, max_order: int) -> "Series":
        return cls([0] * (max_order + 1))

    @classmethod
    def from_terms(cls, terms: dict, max_order: int) -> "Series":
        out = cls.zeros(max_order)
        for n, c in terms.items():
            if n <= max_order:
                out.coeffs[n] = out.coeffs[n] + c
        return out

    @property
    def max_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        raise IndexError(f"x^{n} beyond truncation order {self.max_order}")

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        n = max(len(self), len(other))
        pad = lambda s, k: s.coeffs[k] if k < len(s) else 0  # noqa: E731
        return all(pad(self, k) == pad(other, k) for k in range(n))

    def truncate(self, max_order: int) -> "Series":
        return Series(self.coeffs[: max_order + 1])

    def __add__(self, other):
        if isinstance(other, Series):
            n = min(self.max_order, other.max_order)
            return Series([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])
        out = list(self.coeffs)
        out[0] = out[0] + other
        return Series(out)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([c * other for c in self.coeffs])
        n = min(self.max_order, other.max_order)
        out = [0] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series(out)

    def __rmul__(self, other):
        return Series([other * c for c in self.coeffs])

    def __pow__(self, k: int):
        out = Series.from_terms({0: 1}, self.max_order)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, n: int) -> "Series":
        """Multiply by ``x**n`` keeping the truncation order."""
        return Series(([0] * n + self.coeffs)[: len(self.coeffs)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        return f"Series({self.coeffs!r})"

    def to_dict(self) -> dict:
        out = []
        for n, c in enumerate(self.coeffs):
            if n == 0 or not c:
                continue
            poly = c.int_list() if isinstance(c, Poly) else [c if not isinstance(c, Fraction) else str(c)]
            out.append({"power": n, "poly": poly})
        return {"max_order": self.max_order, "coeffs": out}


def series_from_dict(data: dict, var: str = "p") -> Series:
    """Parse ``{"coeffs": [{"power": n, "poly": [c0, c1, ...]}]}``."""
    try:
        entries = data["coeffs"]
        terms = {}
        for e in entries:
            n = int(e["power"])
            if n < 1:
                raise ValueError(f"power must be >= 1, got {n}")
            poly = [Fraction(c) if isinstance(c, str) else c for c in e["poly"]]
            if not all(isinstance(c, (int, Fraction)) for c in poly):
                raise ValueError("poly entries must be integers or rational strings")
            terms[n] = terms.get(n, 0) + Poly(poly, var)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed series: {exc}") from exc
    max_order = int(data.get("max_order", max(terms, default=0)))
    return Series.from_terms(terms, max_order)


def load_series(path, var: str = "p") -> Series:
    with open(path) as fh:
        return series_from_dict(json.load(fh), var)


def compose_f_from_a(a: Series) -> Series:
    """Solve ``f = 1 + a(x f)`` order by order.

    ``powers[k][m]`` holds ``[x^m] f^k``; the entries needed for ``f_n``
    only involve ``f_0 .. f_{n-1}``, so a single pass suffices.
    """
    if a.coeffs and a.coeffs[0]:
        raise ValueError("a must have zero constant term")
    N = a.max_order
    f = [1] + [0] * N
    powers = [[1] + [0] * N] + [[0] * (N + 1) for _ in range(N)]
    for n in range(1, N + 1):
        total = 0
        for k in range(1, n + 1):
            m = n - k
            acc = 0
            prev = powers[k - 1]
            for i in range(m + 1):
                fi = f[i]
                if fi and prev[m - i]:
                    acc = acc + fi * prev[m - i]
            powers[k][m] = acc
            ak = a.coeffs[k]
            if ak and acc:
                total = total + ak * acc
        f[n] = total
    return Series(f)


def _power_coeffs(seq, n_max):
    """``table[k][n] = [x^n] (sum_j seq[j-1] x^j)^k`` for k, n <= n_max."""
    base = [0] + list(seq[:n_max]) + [0] * max(0, n_max - len(seq))
    table = [[1] + [0] * n_max]
    for _ in range(n_max):
        prev = table[-1]
        row = [0] * (n_max + 1)
        for i, pi in enumerate(prev):
            if not pi:
                continue
            for j in range(1, n_max + 1 - i):
                if base[j]:
                    row[i + j] = row[i + j] + pi * base[j]
        table.append(row)
    return table


def moments_from_cumulants(a_coeffs) -> list:
    """``[f_1..f_n]`` from ``[a_1..a_n]``: ``f_n = sum_k binom(n, k-1)/k [x^n] a^k``."""
    a_coeffs = list(a_coeffs)
    n_max = len(a_coeffs)
    table = _power_coeffs(a_coeffs, n_max)
    out = []
    for n in range(1, n_max + 1):
        total = 0
        for k in range(1, n + 1):
            c = table[k][n]
            if c:
                total = total + _scale(c, comb(n, k - 1), k)
        out.append(_norm(total))
    return out


def cumulants_from_moments(f_coeffs) -> list:
    """Inverse relation: ``a_n = sum_k (-1)^(k-1)/k binom(n+k-2, k-1) [x^n] F^k``."""
    f_coeffs = list(f_coeffs)
    n_max = len(f_coeffs)
    table = _power_coeffs(f_coeffs, n_max)
    out = []
    for n in range(1, n_max + 1):
        total = 0
        for k in range(1, n + 1):
            c = table[k][n]
            if c:
                total = total + _scale(c, (-1) ** (k - 1) * comb(n + k - 2, k - 1), k)
        out.append(_norm(total))
    return out


def series_to_list(s: Series) -> list:
    return list(s.coeffs[1:])


def list_to_series(seq) -> Series:
    return Series([0] + list(seq))


def rank1_moments(n_max: int) -> list[Poly]:
    """Fuss-Narayana moments ``mu_2 .. mu_{2 n_max}`` of the rank-one projector model."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        coeffs = [0] * (n + 1)
        for b in range(1, n + 1):
            coeffs[b] = Fraction(comb(n - 1, b - 1) * comb(2 * n, b - 1), b)
        out.append(Poly(coeffs, "p"))
    return out


def rank1_series(order: int) -> Series:
    """``f(x, p) = 1 + sum mu_{2n} x^{2n}`` truncated at ``order``."""
    coeffs = [1] + [0] * order
    for n, mu in enumerate(rank1_moments(max(1, order // 2)), start=1):
        if 2 * n <= order:
            coeffs[2 * n] = mu
    return Series(coeffs)


def cubic_residual(order: int) -> Series:
    """``(f - 1)(1 - x^2 f^2) - p x^2 f^2`` for the rank-one series; zero when consistent."""
    f = rank1_series(order)
    p = Poly([0, 1], "p")
    x2f2 = (f * f).shift(2)
    return (f - 1) * (1 - x2f2) - x2f2 * p


def semicircle_nc_moments(k_max: int) -> list[Poly]:
    """``beta_1 .. beta_{k_max}`` (zero at odd ``k``) as polynomials in ``y``."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    out = []
    for k in range(1, k_max + 1):
        if k % 2:
            out.append(Poly((), "y"))
            continue
        h = k // 2
        coeffs = [Fraction(2 * comb(k, j - 1) * comb(k, h - j), k) for j in range(1, h + 1)]
        out.append(Poly(coeffs, "y"))
    return out


def semicircle_series(order: int) -> Series:
    """``f = 1 + p x^2 g(x^2)`` with ``g(z) = sum beta_{2n} z^{n-1}`` evaluated at ``y = p``."""
    p = Poly([0, 1], "p")
    betas = semicircle_nc_moments(max(2, order))
    coeffs = [1] + [0] * order
    for k in range(2, order + 1, 2):
        coeffs[k] = p * Poly(betas[k - 1].coeffs, "p")
    return Series(coeffs)


def quartic_residual(order: int) -> Series:
    """``x^2 f^2 (f + p - 1)^2 - p f + p`` for the semicircle-cumulant series."""
    f = semicircle_series(order)
    p = Poly([0, 1], "p")
    g = f + (p - 1)
    return (f * f * g * g).shift(2) - f * p + p


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)
