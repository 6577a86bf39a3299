"""Exhaustive search for nilpotent realizations over Z_p.

Diagonal similarity ``D M D^-1`` keeps the pattern, nonzeroness and
nilpotence, so one entry per edge of a spanning forest of the (undirected)
off-diagonal star graph can be fixed to 1.  The remaining entries run over
``(Z_p^*)^free`` in lexicographic order, row-major variable order, first
variable most significant; the first hit is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .charideal import PatternIdeal, pattern_ideal
from .coefficients import PrimeField
from .pattern import Position, ZnzPattern

DEFAULT_SEARCH_BUDGET = 10 ** 8
CHUNK = 1 << 16


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, size: int, budget: int):
        super().__init__(f"search space of {size} assignments exceeds budget {budget}")
        self.size = size
        self.budget = budget


def spanning_forest(A: ZnzPattern) -> List[Position]:
    """Off-diagonal stars fixed by normalization: scan arcs in row-major
    order, keep an arc when it joins two undirected components."""
    parent = list(range(A.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    fixed = []
    for i, j in A.positions:
        if i == j:
            continue
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            fixed.append((i, j))
    return fixed


@dataclass(frozen=True)
class SearchPlan:
    pattern: ZnzPattern
    p: int
    fixed: Tuple[Position, ...]
    free: Tuple[Position, ...]

    @property
    def size(self) -> int:
        return (self.p - 1) ** len(self.free)


def plan_search(A: ZnzPattern, p: int, normalize: bool = True) -> SearchPlan:
    fixed = tuple(spanning_forest(A)) if normalize else ()
    free = tuple(pos for pos in A.positions if pos not in fixed)
    return SearchPlan(A, p, fixed, free)


def _compile(PI: PatternIdeal, plan: SearchPlan):
    """Each coefficient as a list of (coefficient, [(free index, exponent)])."""
    col = {pos: k for k, pos in enumerate(plan.free)}
    variables = PI.ring.variables
    out = []
    for f in PI.coefficients:
        if f.is_zero():
            continue
        terms = []
        for e, c in f.terms.items():
            factors = [(col[variables[k]], x) for k, x in enumerate(e) if x and variables[k] in col]
            terms.append((int(c), factors))
        out.append(terms)
    # cheapest equations first so most candidates die early
    out.sort(key=lambda ts: sum(len(fs) + 1 for _, fs in ts))
    return out


def _eval(terms, vals: np.ndarray, p: int) -> np.ndarray:
    total = np.zeros(vals.shape[0], dtype=np.int64)
    for c, factors in terms:
        t = np.full(vals.shape[0], c, dtype=np.int64)
        for k, x in factors:
            for _ in range(x):
                t = t * vals[:, k] % p
        total = (total + t) % p
    return total


def brute_force_search(A: ZnzPattern, p: int, budget: int = DEFAULT_SEARCH_BUDGET,
                       normalize: bool = True, ideal: Optional[PatternIdeal] = None
                       ) -> Optional[Dict[Position, int]]:
    """First nilpotent realization in enumeration order, or ``None`` when
    the (normalized) space holds none."""
    F = PrimeField(p)
    plan = plan_search(A, p, normalize)
    if plan.size > budget:
        raise SearchBudgetExceeded(plan.size, budget)
    PI = ideal or pattern_ideal(A, F)
    eqs = _compile(PI, plan)
    nfree = len(plan.free)
    base = p - 1
    weights = np.array([base ** (nfree - 1 - k) for k in range(nfree)], dtype=np.int64)
    for start in range(0, plan.size, CHUNK):
        idx = np.arange(start, min(start + CHUNK, plan.size), dtype=np.int64)
        vals = (idx[:, None] // weights[None, :]) % base + 1 if nfree else np.zeros((len(idx), 0), dtype=np.int64)
        alive = np.arange(len(idx))
        for terms in eqs:
            sub = vals[alive]
            alive = alive[_eval(terms, sub, p) == 0]
            if not len(alive):
                break
        if len(alive):
            row = vals[alive[0]]
            a = {pos: 1 for pos in plan.fixed}
            a.update({pos: int(v) for pos, v in zip(plan.free, row)})
            return a
    return None


def search_space_size(A: ZnzPattern, p: int, normalize: bool = True) -> int:
    return plan_search(A, p, normalize).size
