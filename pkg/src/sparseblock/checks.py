"""Cross-module self checks against the transcribed reference tables."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import golden
from .planar import irreducible_series, moment_large_d
from .transform import (
    catalan,
    compose_f_from_a,
    cubic_residual,
    cumulants_from_moments,
    moments_from_cumulants,
    quartic_residual,
    semicircle_nc_moments,
    Series,
)
from .walks import enumerate_tree_walks, regular_graph_weight
from .wick import moment_finite_d, sum_rule_check


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def check_tree_walks(max_order: int = 12) -> CheckResult:
    bad = []
    for order in golden.tree_walk_orders():
        if order > max_order:
            continue
        ours = {t.representative: (t.multiplicity, t.h) for t in enumerate_tree_walks(order // 2).terms}
        if ours != golden.tree_walk_table(order):
            bad.append(order)
    return CheckResult("tree-walk orbits vs table (orders <= %d)" % max_order, not bad,
                       f"mismatch at orders {bad}" if bad else "")


def check_finite_d(max_order: int = 8) -> CheckResult:
    bad = [o for o in golden.finite_d_orders() if o <= max_order and moment_finite_d(o // 2).poly != golden.finite_d_table(o)]
    return CheckResult("finite-d moments vs table (orders <= %d)" % max_order, not bad,
                       f"mismatch at orders {bad}" if bad else "")


def check_planar(max_order: int = 16) -> CheckResult:
    bad = [o for o in golden.planar_orders() if o <= max_order and moment_large_d(o // 2).poly != golden.planar_moment(o)]
    return CheckResult("large-d moments vs table (orders <= %d)" % max_order, not bad,
                       f"mismatch at orders {bad}" if bad else "")


def check_irreducible_series(max_order: int = 12) -> CheckResult:
    a = irreducible_series(max_order // 2)
    bad = [o for o in golden.irreducible_series_orders() if o <= max_order and a[o] != golden.irreducible_series_coeff(o)]
    return CheckResult("irreducible series vs listing (orders <= %d)" % max_order, not bad,
                       f"mismatch at orders {bad}" if bad else "")


def check_round_trip(trials: int = 100, order: int = 12, seed: int = 2024) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(trials):
        a = [rng.randint(-5, 5) for _ in range(order)]
        if cumulants_from_moments(moments_from_cumulants(a)) != a:
            return CheckResult("moment/cumulant round trip", False, f"failed on {a}")
    f = compose_f_from_a(Series([0] + [1] * order))
    if [f[n] for n in range(1, order + 1)] != [catalan(n) for n in range(1, order + 1)]:
        return CheckResult("moment/cumulant round trip", False, "all-ones cumulants do not give Catalan numbers")
    return CheckResult("moment/cumulant round trip", True, f"{trials} random sequences to order {order}")


def check_residuals(order: int = 24) -> CheckResult:
    cubic = cubic_residual(order).is_zero()
    quartic = quartic_residual(order).is_zero()
    betas = semicircle_nc_moments(12)
    table = all(betas[k - 1] == golden.semicircle_beta(k) for k in range(2, 13, 2))
    ok = cubic and quartic and table
    return CheckResult("closed-form model series", ok,
                       f"cubic={'zero' if cubic else 'nonzero'} quartic={'zero' if quartic else 'nonzero'} "
                       f"beta table={'match' if table else 'mismatch'}")


def check_sum_rule() -> CheckResult:
    res = sum_rule_check(3, 3)
    return CheckResult("three-block sum rule at sixth order", res.ok, res.report())


def check_regular_graph() -> CheckResult:
    expected = {rep: (mult, w) for rep, mult, w in golden.regular_graph_a8()}
    ours = {t.representative: (t.multiplicity, regular_graph_weight(t.representative))
            for t in enumerate_tree_walks(4).terms}
    return CheckResult("regular-graph weights for tr A^8", ours == expected)


ALL_CHECKS = (
    check_tree_walks,
    check_finite_d,
    check_planar,
    check_irreducible_series,
    check_round_trip,
    check_residuals,
    check_sum_rule,
    check_regular_graph,
)


def run_all() -> list[CheckResult]:
    out = []
    for fn in ALL_CHECKS:
        try:
            out.append(fn())
        except Exception as exc:  # a crash is a failed check, not a tool error
            out.append(CheckResult(fn.__name__, False, f"{type(exc).__name__}: {exc}"))
    return out

