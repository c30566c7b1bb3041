"""The box-plus-budget linear program in exact rationals.

Everything here is a Fraction; the equality cases (extremal constructions)
sit exactly on the budget boundary, so floats would be wrong, not just
imprecise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Sequence

from .hypercore import MultipartiteHypergraph, Shape
from .solvers import count_cliques_by_support


@dataclass(frozen=True)
class LpInstance:
    """max sum x_i subject to sum x_i / w_i <= budget, 0 <= x_i <= w_i,
    with w_1 >= w_2 >= ... >= w_N > 0.
    """

    weights: tuple[Fraction, ...]
    budget: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "budget", Fraction(self.budget))
        if not self.weights:
            raise ValueError("need at least one weight")
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"weights must be positive: {self.weights}")
        if any(a < b for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError(f"weights must be non-increasing: {self.weights}")
        if self.budget <= 0:
            raise ValueError(f"budget must be positive: {self.budget}")

    def to_json_dict(self) -> dict:
        return {
            "weights": [fraction_to_json(w) for w in self.weights],
            "budget": fraction_to_json(self.budget),
        }


def lp_optimum(inst: LpInstance) -> Fraction:
    """Closed form: fill the integral part of the budget with the largest
    weights, then one fractional slot at the next weight.  A budget beyond N
    just buys every cap (documented totalization).
    """
    w = inst.weights
    n = len(w)
    if inst.budget >= n:
        return Fraction(sum(w))
    whole = int(inst.budget)  # floor; budget > 0
    frac = inst.budget - whole
    return Fraction(sum(w[:whole])) + w[whole] * frac


def p1_budget(r: int, s: int, k: int, n1: int) -> Fraction:
    """C(r,s) - 1 + (k-1)/n_1."""
    _check_budget_args(r, s, k, n1)
    return Fraction(math.comb(r, s) - 1) + Fraction(k - 1, n1)


def p2_budget(r: int, s: int, k: int, n1: int) -> Fraction:
    """C(r,s) - C(r-2,s-2) + (k-1)/n_1 * C(r-2,s-2)."""
    _check_budget_args(r, s, k, n1)
    c = math.comb(r - 2, s - 2)
    return Fraction(math.comb(r, s) - c) + Fraction(k - 1, n1) * c


def _check_budget_args(r: int, s: int, k: int, n1: int) -> None:
    if not 2 <= s <= r:
        raise ValueError(f"need 2 <= s <= r, got s={s}, r={r}")
    if not 1 <= k <= n1:
        raise ValueError(f"need 1 <= k <= n_1 = {n1}, got k={k}")


def _support_weights(shape: Shape) -> list[Fraction]:
    sizes = shape.sizes
    prods = [
        math.prod(sizes[a] for a in A)
        for A in itertools.combinations(range(shape.r), shape.s)
    ]
    return sorted((Fraction(p) for p in prods), reverse=True)


def build_p1(shape: Shape, k: int) -> LpInstance:
    """Weights are the per-support products of part sizes; budget from p1_budget."""
    shape.require_canonical()
    return LpInstance(
        weights=tuple(_support_weights(shape)),
        budget=p1_budget(shape.r, shape.s, k, shape.sizes[0]),
    )


def build_p2(shape: Shape, k: int) -> LpInstance:
    """Same weights with the p2 budget; needs an equal tail n_3 = ... = n_r so
    the fractional slot lands on the smallest weight.
    """
    shape.require_canonical()
    if shape.r >= 4 and len(set(shape.sizes[2:])) != 1:
        raise ValueError(
            f"p2 instance needs n_3 = ... = n_r, got sizes {shape.sizes}"
        )
    return LpInstance(
        weights=tuple(_support_weights(shape)),
        budget=p2_budget(shape.r, shape.s, k, shape.sizes[0]),
    )


class FeasibilityResult(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "lhs": fraction_to_json(self.lhs),
            "rhs": fraction_to_json(self.rhs),
            "ok": self.ok,
        }


def feasibility_check(
    H: MultipartiteHypergraph,
    k: int,
    mode: str = "p1",
    clique_size: Optional[int] = None,
) -> FeasibilityResult:
    """Exact-rational budget inequality for a subgraph split by part support.

    Mode p1 weighs edge counts e(V_A)/n_A against the p1 budget; mode p2
    weighs clique counts of the given order.  The inequality is guaranteed
    only when H really avoids k disjoint r-cliques (caller-certified); the raw
    numbers are reported either way.
    """
    shape = H.shape
    shape.require_canonical()
    sizes = shape.sizes
    if mode == "p1":
        s_eff = shape.s
        counts: dict[tuple[int, ...], int] = {}
        for e in H.edges:
            key = tuple(v.part for v in e)
            counts[key] = counts.get(key, 0) + 1
        rhs = p1_budget(shape.r, s_eff, k, sizes[0])
    elif mode == "p2":
        if clique_size is None:
            raise ValueError("mode p2 needs the clique size to count")
        s_eff = clique_size
        counts = count_cliques_by_support(H, clique_size)
        rhs = p2_budget(shape.r, s_eff, k, sizes[0])
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'p1' or 'p2'")

    lhs = Fraction(0)
    for key, c in counts.items():
        n_a = math.prod(sizes[p - 1] for p in key)
        lhs += Fraction(c, n_a)
    return FeasibilityResult(lhs, rhs, lhs <= rhs)


def fraction_to_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def fraction_from_json(d: Mapping) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))
