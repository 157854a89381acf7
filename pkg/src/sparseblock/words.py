"""Block-product words: relabeling, cyclic orbits, tree walks, factorization.

A word is a tuple of positive integer labels; label ``k`` is the k-th
distinct block in order of first appearance.  Words are plain tuples so
they hash, sort and serialize without ceremony.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

Word = tuple


def canonicalize(raw: Iterable[Hashable]) -> Word:
    """Relabel ``raw`` so labels appear as 1, 2, 3, ... in first-appearance order.

    Any hashable symbols are accepted, which lets callers build words from
    tagged tokens before relabeling.
    """
    relabel = {}
    out = []
    for s in raw:
        t = relabel.get(s)
        if t is None:
            t = relabel[s] = len(relabel) + 1
        out.append(t)
    return tuple(out)


def is_canonical(w: Sequence[int]) -> bool:
    return tuple(w) == canonicalize(w)


def rotate(w: Sequence[int], r: int) -> Word:
    if not w:
        return ()
    r %= len(w)
    return tuple(w[r:]) + tuple(w[:r])


def label_count(w: Sequence[int]) -> int:
    """Number of distinct labels ``h``."""
    return len(set(w))


def has_even_labels(w: Sequence[int]) -> bool:
    counts = {}
    for s in w:
        counts[s] = counts.get(s, 0) + 1
    return all(c % 2 == 0 for c in counts.values())


@dataclass(frozen=True)
class Orbit:
    representative: Word
    size: int


def orbit_words(w: Sequence[int]) -> list[Word]:
    """Distinct canonical rotations of ``w``, sorted."""
    if not w:
        return [()]
    return sorted({canonicalize(rotate(w, r)) for r in range(len(w))})


def cyclic_orbit(w: Sequence[int]) -> Orbit:
    """Least canonical rotation of ``w`` and the number of distinct ones."""
    words = orbit_words(w)
    return Orbit(words[0], len(words))


def orbit_rep(w: Sequence[int]) -> Word:
    return cyclic_orbit(w).representative


def is_tree_walk(w: Sequence[int]) -> bool:
    """True iff ``w`` is the edge-label sequence of a closed walk on a tree.

    The walk is simulated from the root: every symbol must climb back along
    the edge to the parent, descend an existing child edge, or open a new
    edge carrying the next unused label.
    """
    if len(w) % 2:
        return False
    children = [{}]
    path = []  # (label, vertex) from the root down
    vertex = 0
    next_label = 1
    for s in w:
        if path and path[-1][0] == s:
            path.pop()
            vertex = path[-1][1] if path else 0
        elif s in children[vertex]:
            path.append((s, children[vertex][s]))
            vertex = children[vertex][s]
        elif s == next_label:
            children.append({})
            children[vertex][s] = len(children) - 1
            vertex = len(children) - 1
            path.append((s, vertex))
            next_label += 1
        else:
            return False
    return not path


def _closed_intervals(w: Sequence[int]):
    """Yield proper intervals ``(i, j)`` (inclusive) whose labels occur nowhere else."""
    L = len(w)
    first = {}
    last = {}
    for i, s in enumerate(w):
        first.setdefault(s, i)
        last[s] = i
    for i in range(L):
        lo, hi = L, -1
        for j in range(i, L):
            s = w[j]
            lo = min(lo, first[s])
            hi = max(hi, last[s])
            if lo < i:
                break
            if hi == j and not (i == 0 and j == L - 1):
                yield i, j


def is_irreducible(w: Sequence[int]) -> bool:
    """No proper contiguous subword has labels disjoint from the remainder.

    The check is linear but the property is rotation invariant: the
    complement of a wrapping subword is itself a linear subword.
    """
    if not w:
        raise ValueError("irreducibility is defined for nonempty words")
    return next(_closed_intervals(w), None) is None


@dataclass(frozen=True)
class Factorization:
    """Irreducible decomposition of a word.

    ``core`` is what remains of the word (original labels) after every
    extraction; ``steps`` lists ``(gap, segment)`` in extraction order, where
    ``segment`` was removed at ``gap`` of the word as it stood then.
    """

    word: Word
    core: Word
    steps: tuple = field(default=())

    @property
    def irreducible_factors(self) -> list[Word]:
        out = [canonicalize(seg) for _, seg in self.steps]
        if self.core:
            out.append(canonicalize(self.core))
        return sorted(out)

    @property
    def pieces(self) -> list[Word]:
        """Extracted factors only (each carries a ``1/d`` in the trace rule)."""
        return [canonicalize(seg) for _, seg in self.steps]

    def reconstruct(self) -> Word:
        w = list(self.core)
        for gap, seg in reversed(self.steps):
            w[gap:gap] = seg
        return tuple(w)


def factorize(w: Sequence[int]) -> Factorization:
    """Peel off innermost closed subwords until every factor is irreducible.

    A shortest closed subword cannot itself contain a closed subword, so each
    extracted segment is irreducible when it is removed.
    """
    current = list(w)
    steps = []
    while current:
        best = None
        for i, j in _closed_intervals(current):
            if best is None or j - i < best[1] - best[0]:
                best = (i, j)
        if best is None:
            break
        i, j = best
        steps.append((i, tuple(current[i : j + 1])))
        del current[i : j + 1]
    return Factorization(tuple(w), tuple(current), tuple(steps))


def insert(host: Sequence[int], position: int, piece: Sequence[int]) -> Word:
    """Splice ``piece`` into gap ``position`` of ``host`` with fresh labels.

    Piece labels shift past the distinct host labels before the gap; host
    labels after the gap that did not occur before it shift by the number
    of distinct piece labels.
    """
    if not 0 <= position <= len(host):
        raise ValueError(f"gap {position} outside 0..{len(host)}")
    before = tuple(host[:position])
    seen = set(before)
    nb = len(seen)
    npiece = len(set(piece))
    shifted_piece = [s + nb for s in piece]
    after = [s if s in seen else s + npiece for s in host[position:]]
    return canonicalize(before + tuple(shifted_piece) + tuple(after))


def expand_F(irreducibles, max_order: int) -> dict:
    """Generate all words of ``F = 1 + A(I(F) X)`` up to ``max_order``.

    ``irreducibles`` maps each (linear) irreducible word to its coefficient;
    an ``{order: {word: coeff}}`` layout is accepted as well.  Every symbol of
    an irreducible word is preceded by an arbitrary word of ``F`` (possibly
    empty) carrying fresh labels.  Returns ``{word: coefficient}`` for all
    nonempty generated words; coefficients multiply along the construction.
    """
    if max_order < 0 or max_order % 2:
        raise ValueError(f"max_order must be a nonnegative even integer, got {max_order}")
    flat = {}
    for key, val in dict(irreducibles).items():
        if isinstance(key, int):
            flat.update(val)
        else:
            flat[tuple(key)] = val
    for word in flat:
        if not word or len(word) % 2:
            raise ValueError(f"irreducible word {word} has odd or zero length")

    # by_order[n] = {word: coeff}; index 0 holds the empty word
    by_order = {0: {(): 1}}
    for n in range(2, max_order + 1, 2):
        layer = {}
        for a, coeff in flat.items():
            m = len(a)
            if m > n:
                continue
            # partial[(k, filled)]: assemble slots left to right
            partial = {((), 0): coeff}
            for idx, sym in enumerate(a):
                nxt = {}
                for (tokens, used), c in partial.items():
                    budget = n - m - used
                    for k in range(0, budget + 1, 2):
                        if k not in by_order:
                            continue
                        for u, cu in by_order[k].items():
                            toks = tokens + tuple(("i", idx, s) for s in u) + (("h", sym),)
                            key = (toks, used + k)
                            nxt[key] = nxt.get(key, 0) + c * cu
                partial = nxt
            for (tokens, used), c in partial.items():
                if used == n - m:
                    w = canonicalize(tokens)
                    layer[w] = layer.get(w, 0) + c
        by_order[n] = layer
    out = {}
    for n in range(2, max_order + 1, 2):
        for w, c in by_order[n].items():
            out[w] = out.get(w, 0) + c
    return out


def trace_group(terms: dict) -> dict:
    """Collect ``{word: coeff}`` into ``{orbit representative: summed coeff}``."""
    out = {}
    for w, c in terms.items():
        rep = orbit_rep(w)
        out[rep] = out.get(rep, 0) + c
    return out


def format_word(w: Sequence[int]) -> str:
    """Textual form used in CLI and JSON output: ``"1 1 2 2"``."""
    return " ".join(str(s) for s in w)


def parse_word(text: str) -> Word:
    """Parse either ``"1 1 2 2"`` or block notation ``"X1^2 X2^2"``."""
    text = text.strip()
    if not text:
        return ()
    if "X" not in text:
        return tuple(int(t) for t in text.split())
    out = []
    for tok in text.replace("(", " ").replace(")", " ").split():
        base, _, exp = tok.partition("^")
        label = int(base.lstrip("X").lstrip("_"))
        out.extend([label] * (int(exp) if exp else 1))
    return tuple(out)


def monomial_form(w: Sequence[int]) -> str:
    """Run-length block notation, e.g. ``X1^2 X2^2``."""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"X{w[i]}" + (f"^{run}" if run > 1 else ""))
        i = j
    return " ".join(parts)
