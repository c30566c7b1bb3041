"""Closed-form extremal values and hypothesis predicates.

Every evaluator works in exact integer arithmetic and demands ascending part
sizes; canonicalize first (see hypercore.canonicalize) if yours are not.
Values are computed even when a theorem hypothesis fails -- the caller gets a
separate hypothesis flag and decides what the number means.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

FORMULA_IDS = ("f", "g", "h", "thm11", "thm12", "lemma21", "emc", "rainbow_bound")

THEOREM_IDS = ("thm11", "thm12", "thm13", "thm14", "thm15", "thm16", "lemma21")


def _check_sizes(sizes: Sequence[int], what: str = "sizes") -> tuple[int, ...]:
    sizes = tuple(int(n) for n in sizes)
    if any(n < 1 for n in sizes):
        raise ValueError(f"{what} must be positive: {sizes}")
    if any(a > b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"{what} must be ascending: {sizes}")
    return sizes


def _check_k(k: int) -> int:
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return k


def subset_product_sum(values: Sequence[int], size: int) -> int:
    """Sum of products over all ``size``-subsets; the empty product is 1."""
    if size < 0 or size > len(values):
        return 0
    if size == 0:
        return 1
    return sum(math.prod(c) for c in itertools.combinations(values, size))


def f_value(s: int, k: int, tail_sizes: Sequence[int]) -> int:
    """Edge count of the construction pinning every edge to k-1 fixed vertices
    of the smallest part: (k-1) * sum of (s-1)-fold products of n_2..n_r.
    """
    tail = _check_sizes(tail_sizes, "tail sizes")
    k = _check_k(k)
    if not 2 <= s <= len(tail) + 1:
        raise ValueError(f"need 2 <= s <= r, got s={s}, r={len(tail) + 1}")
    return (k - 1) * subset_product_sum(tail, s - 1)


def g_value(s: int, k: int, sizes: Sequence[int]) -> int:
    """Host edge count minus the full first-s-parts block, plus (k-1) rows of it."""
    sizes = _check_sizes(sizes)
    k = _check_k(k)
    if not 2 <= s <= len(sizes):
        raise ValueError(f"need 2 <= s <= r, got s={s}, r={len(sizes)}")
    total = subset_product_sum(sizes, s)
    head = math.prod(sizes[:s])
    head_tail = math.prod(sizes[1:s])
    return total - head + (k - 1) * head_tail


def h_value(s: int, k: int, sizes: Sequence[int]) -> int:
    """Clique-count analogue of g_value: supports avoiding {1,2} stay complete,
    the rest contribute (k-1) * n_2 * (products over parts 3..r).
    """
    sizes = _check_sizes(sizes)
    k = _check_k(k)
    r = len(sizes)
    if not 2 <= s <= r:
        raise ValueError(f"need 2 <= s <= r, got s={s}, r={r}")
    keep = 0
    for A in itertools.combinations(range(r), s):
        if not (0 in A and 1 in A):
            keep += math.prod(sizes[a] for a in A)
    return keep + (k - 1) * sizes[1] * subset_product_sum(sizes[2:], s - 2)


def lemma21_value(k: int, sizes: Sequence[int]) -> int:
    """(k-1) * n_2 * ... * n_r: the s=r matching-partition optimum."""
    sizes = _check_sizes(sizes)
    k = _check_k(k)
    return (k - 1) * math.prod(sizes[1:])


def thm11_value(k: int, sizes: Sequence[int]) -> int:
    """(k-1)(n_2 + ... + n_r): the graph matching-avoidance optimum."""
    sizes = _check_sizes(sizes)
    k = _check_k(k)
    return (k - 1) * sum(sizes[1:])


def thm12_value(k: int, sizes: Sequence[int]) -> int:
    """sum n_i n_j - n_1 n_2 + (k-1) n_2: graph case of g_value."""
    sizes = _check_sizes(sizes)
    k = _check_k(k)
    if len(sizes) < 2:
        raise ValueError("need at least two parts")
    return subset_product_sum(sizes, 2) - sizes[0] * sizes[1] + (k - 1) * sizes[1]


def emc_value(n: int, s: int, k: int) -> int:
    """max{C(ks-1, s), C(n,s) - C(n-k+1, s)}; evaluator only, requires n >= sk."""
    n, s, k = int(n), int(s), _check_k(k)
    if s < 2:
        raise ValueError(f"uniformity must be >= 2, got {s}")
    if n < s * k:
        raise ValueError(f"need n >= s*k, got n={n}, s*k={s * k}")
    return max(math.comb(k * s - 1, s), math.comb(n, s) - math.comb(n - k + 1, s))


def rainbow_bound(r: int, k: int) -> int:
    """(r+1)^(r+1) * (k-1) * k^(2r): colour threshold forcing a rainbow k-matching."""
    r, k = int(r), int(k)
    if r < 1 or k < 1:
        raise ValueError(f"need r, k >= 1, got r={r}, k={k}")
    return (r + 1) ** (r + 1) * (k - 1) * k ** (2 * r)


def hypothesis_check(theorem_id: str, s: int, r: int, k: int, sizes: Sequence[int]) -> bool:
    """Does (s, r, k, sizes) satisfy the stated hypothesis of the theorem?"""
    sizes = _check_sizes(sizes)
    k = _check_k(k)
    if len(sizes) != r:
        raise ValueError(f"expected {r} sizes, got {len(sizes)}")
    if not 2 <= s <= r:
        raise ValueError(f"need 2 <= s <= r, got s={s}, r={r}")
    n1 = sizes[0]
    tid = theorem_id.replace("-", "").replace("_", "").lower()
    if tid in ("thm11", "thm12", "thm14", "lemma21"):
        return k <= n1
    if tid == "thm13":
        if s == r:
            return n1 >= k
        if s == r - 1:
            return n1 >= s**3 * k**2 + s * r
        return n1 >= s**3 * k + s * r
    if tid == "thm15":
        # beyond three parts the result needs an equal tail n_3 = ... = n_r
        return k <= n1 and (r <= 3 or len(set(sizes[2:])) == 1)
    if tid == "thm16":
        if r < 4:
            return False
        return k <= n1 and sizes[3] >= r**r * (k - 1) * k ** (2 * r - 2)
    raise ValueError(f"unknown theorem id: {theorem_id!r}")


@dataclass(frozen=True)
class FormulaResult:
    """A computed value plus the inputs it came from."""

    formula_id: str
    value: int
    inputs: Mapping[str, object] = field(default_factory=dict)
    hypothesis_ok: Optional[bool] = None

    def to_json_dict(self) -> dict:
        return {
            "formula_id": self.formula_id,
            "value": self.value,
            "inputs": dict(self.inputs),
            "hypothesis_ok": self.hypothesis_ok,
        }


def evaluate(
    which: str,
    *,
    s: Optional[int] = None,
    k: Optional[int] = None,
    sizes: Optional[Sequence[int]] = None,
    n: Optional[int] = None,
    r: Optional[int] = None,
) -> FormulaResult:
    """Uniform front end over the evaluators, used by the CLI.

    ``sizes`` is always the full host tuple n_1..n_r; the f evaluator is fed
    its tail internally.
    """
    wid = which.replace("-", "_").lower()
    if wid not in FORMULA_IDS:
        raise ValueError(f"unknown formula {which!r}; expected one of {FORMULA_IDS}")

    def need(cond: bool, what: str) -> None:
        if not cond:
            raise ValueError(f"formula {wid!r} requires {what}")

    if wid == "emc":
        need(n is not None and s is not None and k is not None, "--n, --s and --k")
        value = emc_value(n, s, k)
        return FormulaResult("emc", value, {"n": n, "s": s, "k": k}, None)

    if wid == "rainbow_bound":
        need(r is not None and k is not None, "--r and --k")
        value = rainbow_bound(r, k)
        return FormulaResult("rainbow_bound", value, {"r": r, "k": k}, None)

    need(k is not None and sizes is not None, "--k and --sizes")
    sizes = _check_sizes(sizes)
    host_r = len(sizes)
    inputs: dict[str, object] = {"k": k, "sizes": list(sizes), "r": host_r}

    if wid in ("thm11", "thm12", "lemma21"):
        value = {"thm11": thm11_value, "thm12": thm12_value, "lemma21": lemma21_value}[wid](k, sizes)
        eff_s = {"thm11": 2, "thm12": 2, "lemma21": host_r}[wid]
        ok = hypothesis_check(wid, eff_s, host_r, k, sizes)
        return FormulaResult(wid, value, inputs, ok)

    need(s is not None, "--s")
    inputs["s"] = s
    if wid == "f":
        value = f_value(s, k, sizes[1:])
        ok = hypothesis_check("thm13", s, host_r, k, sizes)
    elif wid == "g":
        value = g_value(s, k, sizes)
        ok = hypothesis_check("thm14", s, host_r, k, sizes)
    else:  # h
        value = h_value(s, k, sizes)
        ok = hypothesis_check("thm15", s, host_r, k, sizes) or hypothesis_check(
            "thm16", s, host_r, k, sizes
        )
    return FormulaResult(wid, value, inputs, ok)
