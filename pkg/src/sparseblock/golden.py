"""Reference values transcribed from published tables, loaded from ``data/``."""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources

from .poly import Poly
from .words import canonicalize, orbit_rep, parse_word


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    text = resources.files("sparseblock").joinpath("data", name).read_text()
    return json.loads(text)


def _rep(word_text: str):
    return orbit_rep(canonicalize(parse_word(word_text)))


def tree_walk_table(order: int) -> dict:
    """``{orbit representative: (multiplicity, Z power)}`` for ``tr A^order``."""
    rows = load("tree_walk_orbits.json")["orders"][str(order)]
    out = {}
    for r in rows:
        key = _rep(r["word"])
        if key in out:
            raise ValueError(f"duplicate orbit {r['word']} at order {order}")
        out[key] = (r["multiplicity"], r["z_power"])
    return out


def tree_walk_orders() -> list[int]:
    return sorted(int(k) for k in load("tree_walk_orbits.json")["orders"])


def irreducible_orbits() -> dict:
    """``{order: {orbit representative: (multiplicity, p power)}}``."""
    out = {}
    for r in load("irreducible_orbits.json")["terms"]:
        out.setdefault(r["order"], {})[_rep(r["word"])] = (r["multiplicity"], r["p_power"])
    return out


def finite_d_table(order: int) -> Poly:
    """Finite-``d`` moment as a ``Z``-polynomial with ``d``-polynomial coefficients."""
    d_one = Poly([1], "d")
    coeffs = {}
    for zt in load("finite_d_moments.json")["orders"][str(order)]:
        total = Poly((), "d")
        for s in zt["summands"]:
            term = d_one * s["coeff"]
            for f in s["factors"]:
                term = term * Poly(f, "d")
            total = total + term
        coeffs[zt["z_power"]] = total
    return Poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)], "Z")


def finite_d_orders() -> list[int]:
    return sorted(int(k) for k in load("finite_d_moments.json")["orders"])


def monomial_trace(order: int) -> Poly:
    """``(1/d) <tr X^order> / sigma^order`` as a polynomial in ``d``."""
    return Poly(load("gaussian_traces.json")["monomial_powers"][str(order)], "d")


def planar_moment(order: int) -> Poly:
    return Poly([0] + load("planar_moments.json")["orders"][str(order)], "Z")


def planar_orders() -> list[int]:
    return sorted(int(k) for k in load("planar_moments.json")["orders"])


def irreducible_series_coeff(order: int) -> Poly:
    return Poly([0] + load("irreducible_series.json")["orders"][str(order)], "Z")


def irreducible_series_orders() -> list[int]:
    return sorted(int(k) for k in load("irreducible_series.json")["orders"])


def semicircle_beta(k: int) -> Poly:
    return Poly(load("semicircle_betas.json")["betas"][str(k)], "y")


_TERM = re.compile(r"([+-])?\s*(\d+)?\s*((?:[af]\d+(?:\^\d+)?\s*)+)")


def parse_cumulant_formula(text: str) -> dict:
    """``"a4 + 4 a1 a3 + 2 a2^2"`` -> ``{(4,): 1, (1, 3): 4, (2, 2): 2}``.

    Keys are the sorted index multisets of each monomial.
    """
    out = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * int(m.group(2) or 1)
        idx = []
        for sym in m.group(3).split():
            base, _, exp = sym.partition("^")
            idx += [int(base[1:])] * int(exp or 1)
        key = tuple(sorted(idx))
        out[key] = out.get(key, 0) + coeff
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return out


def moment_formula(n: int) -> dict:
    return parse_cumulant_formula(load("cumulant_formulas.json")["moments"][str(n)])


def cumulant_formula(n: int) -> dict:
    return parse_cumulant_formula(load("cumulant_formulas.json")["cumulants"][str(n)])


def regular_graph_a8() -> list[tuple]:
    """``[(orbit representative, multiplicity, weight polynomial in Z)]``."""
    out = []
    for t in load("regular_graph_a8.json")["terms"]:
        w = Poly([1], "Z")
        for r in t["roots"]:
            w = w * Poly([-r, 1], "Z")
        out.append((_rep(t["word"]), t["multiplicity"], w))
    return out


def sum_rule_k3_n3() -> tuple[dict, int]:
    data = load("sum_rule_k3_n3.json")
    terms = {}
    for t in data["terms"]:
        key = _rep(t["word"])
        terms[key] = terms.get(key, 0) + t["multiplicity"]
    return terms, data["scale"]
