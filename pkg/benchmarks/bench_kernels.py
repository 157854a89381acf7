"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import timeit

from sparseblock import _pykernels

try:
    from sparseblock import _kernels
except ImportError:
    _kernels = None


def cases():
    rng = random.Random(0)
    planar_words = [tuple(rng.randint(1, 3) for _ in range(24)) for _ in range(200)]
    wick_words = [tuple(rng.choice((1, 2)) for _ in range(10)) for _ in range(20)]
    return [
        ("tree_walk_orbits(p=7)", lambda k: k.tree_walk_orbits(7)),
        ("tree_walk_orbits(p=8, irreducible)", lambda k: k.tree_walk_orbits(8, True)),
        ("planar_count x200 (length 24)", lambda k: [k.planar_count(w) for w in planar_words]),
        ("wick_loop_counts x20 (length 10)", lambda k: [k.wick_loop_counts(w) for w in wick_words]),
    ]


def _as_list(x):
    return x if isinstance(x, list) else [x]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':40s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, fn in cases():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:40s} {py:11.4f}")
            continue
        assert [list(r) if isinstance(r, (list, tuple)) else r for r in _as_list(fn(_kernels))] == \
            [list(r) if isinstance(r, (list, tuple)) else r for r in _as_list(fn(_pykernels))]
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:40s} {py:11.4f} {cy:11.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
