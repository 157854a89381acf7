"""Closed walks on trees grouped into cyclic orbits with ``Z``-weights."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from . import _backend
from .poly import Poly, falling
from .words import Word, format_word, is_tree_walk, label_count


@dataclass(frozen=True)
class Term:
    representative: Word
    multiplicity: int
    h: int
    weight: Poly

    @property
    def word(self) -> Word:
        return self.representative


@dataclass(frozen=True)
class MomentExpansion:
    """Order-``2p`` moment as orbit representatives with multiplicities and weights."""

    order: int
    terms: tuple

    def weight_total(self, var: str = "Z") -> Poly:
        """Sum of ``multiplicity * weight``: the moment with every block set to 1."""
        total = Poly((), var)
        for t in self.terms:
            total = total + t.multiplicity * t.weight
        return total

    def by_h(self) -> dict:
        out = {}
        for t in self.terms:
            out.setdefault(t.h, []).append(t)
        return out

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "terms": [
                {"word": format_word(t.representative), "multiplicity": t.multiplicity, "h": t.h}
                for t in self.terms
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["order", "word", "multiplicity", "h"])
        for t in self.terms:
            writer.writerow([self.order, format_word(t.representative), t.multiplicity, t.h])
        return buf.getvalue()


def _sort_key(item):
    word, _ = item
    return (max(word), word)


def _expansion(p: int, irreducible_only: bool, var: str) -> MomentExpansion:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    orbits = sorted(_backend.tree_walk_orbits(p, irreducible_only), key=_sort_key)
    terms = tuple(
        Term(w, size, max(w), Poly.monomial(max(w), 1, var)) for w, size in orbits
    )
    return MomentExpansion(2 * p, terms)


def enumerate_tree_walks(p: int) -> MomentExpansion:
    """All closed tree walks of length ``2p``, weight ``Z**h`` per orbit."""
    return _expansion(p, False, "Z")


def irreducible_expansion(p: int) -> MomentExpansion:
    """The irreducible orbits of order ``2p``, weight ``p**h``."""
    return _expansion(p, True, "p")


def tree_children(w) -> list[int]:
    """Child counts per vertex of the tree traced by ``w`` (root first)."""
    if not is_tree_walk(w):
        raise ValueError(f"not a closed tree walk: {format_word(w)}")
    nchild = [0]
    children = [{}]
    path = []
    vertex = 0
    for s in w:
        if path and path[-1][0] == s:
            path.pop()
            vertex = path[-1][1] if path else 0
        elif s in children[vertex]:
            vertex = children[vertex][s]
            path.append((s, vertex))
        else:
            children.append({})
            nchild.append(0)
            new = len(children) - 1
            children[vertex][s] = new
            nchild[vertex] += 1
            vertex = new
            path.append((s, vertex))
    return nchild


def regular_graph_weight(w) -> Poly:
    """Embedding weight of the walk's tree in a random ``Z``-regular graph.

    The root with ``c`` children contributes ``Z(Z-1)...(Z-c+1)``; every other
    vertex with ``c`` children contributes ``(Z-1)...(Z-c)``.
    """
    nchild = tree_children(w)
    weight = falling("Z", 0, nchild[0])
    for c in nchild[1:]:
        weight = weight * falling("Z", 1, c)
    return weight


def er_weight(w) -> Poly:
    return Poly.monomial(label_count(w), 1, "Z")
