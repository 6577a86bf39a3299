"""Deciding potential nilpotence: structural filters, root-of-unity tests,
saturation certificates and exhaustive search, assembled into a verdict."""

from __future__ import annotations

import time
from itertools import permutations
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Union

from .charideal import check_nilpotent, pattern_ideal
from .coefficients import CoefficientField, PrimeField, QQ
from .groebner import DEFAULT_BUDGET, ResourceLimit, colon_principal, contains_one, saturate
from .pattern import (
    ZnzPattern,
    all_simple_cycles,
    an_family,
    strongly_connected_components,
    transversal_count,
)
from .search import DEFAULT_SEARCH_BUDGET, SearchBudgetExceeded, brute_force_search, search_space_size

PN = "potentially_nilpotent"
NOT_PN = "not_potentially_nilpotent"
UNKNOWN = "unknown"

PROOF_KINDS = (
    "single_diagonal",
    "single_transversal",
    "no_small_cycles",
    "roots_of_unity_missing",
    "z2_parity",
    "z2_two_loops_two_2cycles",
    "saturation_unit",
    "exhausted_search",
)


class WrongField(ValueError):
    pass


@dataclass
class Certificate:
    kind: str
    data: Dict[str, Any] = dc_field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "data": self.data}


@dataclass
class Verdict:
    status: str
    certificate: Optional[Certificate]
    prime: Union[int, str]
    realization: Optional[List[List[int]]] = None
    stages: List[Dict[str, Any]] = dc_field(default_factory=list)

    @property
    def is_pn(self) -> bool:
        return self.status == PN


# -- filters ------------------------------------------------------------------------


def filter_structural(A: ZnzPattern) -> Optional[Certificate]:
    """Field-independent refutations: one loop (F_1 a monomial), one
    transversal (F_n a monomial), or m >= 2 loops with no k-cycles for
    2 <= k <= m (F_m a monomial)."""
    loops = A.loops
    if len(loops) == 1:
        i = loops[0]
        return Certificate("single_diagonal", {"coefficient": 1, "monomial": f"z[{i},{i}]"})
    m = len(loops)
    if transversal_count(A) == 1:
        rows = {i: A.successors(i) for i in range(1, A.n + 1)}
        sigma = next(s for s in permutations(range(1, A.n + 1)) if all(s[i - 1] in rows[i] for i in rows))
        # a lone diagonal transversal is the loop-product monomial; report it as the cycle gap below
        if not (m >= 2 and sigma == tuple(range(1, A.n + 1))):
            mono = "*".join(f"z[{i},{sigma[i - 1]}]" for i in range(1, A.n + 1))
            return Certificate("single_transversal", {"coefficient": A.n, "monomial": mono})
    if m >= 2:
        lengths = {len(c) for c in all_simple_cycles(A)}
        if not any(k in lengths for k in range(2, m + 1)):
            mono = "*".join(f"z[{i},{i}]" for i in loops)
            return Certificate("no_small_cycles", {"coefficient": m, "monomial": mono,
                                                   "loops": m, "k_range": [2, m]})
    return None


def filter_z2(A: ZnzPattern, p: int = 2) -> Optional[Certificate]:
    """Over Z_2 every star is 1: an odd loop count leaves F_1 = 1, and two
    loops with exactly two 2-cycles leave F_2 = 1."""
    if p != 2:
        raise WrongField(f"the Z_2 filter does not apply over Z_{p}")
    loops = len(A.loops)
    if loops % 2 == 1:
        return Certificate("z2_parity", {"loops": loops})
    two_cycles = sum(1 for c in all_simple_cycles(A) if len(c) == 2)
    if loops == 2 and two_cycles == 2:
        return Certificate("z2_two_loops_two_2cycles", {"loops": 2, "two_cycles": 2})
    return None


def unity_root_multiplicities(m: int, p: int) -> Dict[int, int]:
    """Multiplicity of each c in Z_p as a root of x^m - 1, by repeated
    synthetic division."""
    out = {}
    for c in range(1, p):
        poly = [1] + [0] * (m - 1) + [p - 1]  # x^m - 1, high -> low
        mult = 0
        while len(poly) > 1:
            q = [poly[0]]
            for a in poly[1:]:
                q.append((a + q[-1] * c) % p)
            if q[-1] != 0:
                break
            mult += 1
            poly = q[:-1]
        if mult:
            out[c] = mult
    return out


def roots_of_unity_split(m: int, p: int) -> bool:
    """Does x^m - 1 split into m linear factors over Z_p (with multiplicity)?"""
    if m < 1:
        raise ValueError("m must be positive")
    while m % p == 0:
        m //= p
    return (p - 1) % m == 0


def unity_roots(m: int, p: int) -> List[int]:
    """Roots of x^m - 1 in Z_p listed with multiplicity, ascending."""
    return [c for c, k in sorted(unity_root_multiplicities(m, p).items()) for _ in range(k)]


def filter_no_small_cycles(A: ZnzPattern, p: int) -> Optional[Certificate]:
    """m >= 2 loops and no k-cycles for 2 <= k <= m-1 force the diagonal to
    be a scaled full set of m-th roots of unity."""
    m = len(A.loops)
    if m < 2:
        return None
    lengths = {len(c) for c in all_simple_cycles(A)}
    if any(k in lengths for k in range(2, m)):
        return None
    if roots_of_unity_split(m, p):
        return None
    return Certificate("roots_of_unity_missing", {"m": m, "prime": p, "polynomial": f"x^{m} - 1",
                                                  "k_range": [2, m - 1]})


def saturation_certificate(A: ZnzPattern, F: CoefficientField, budget: int = DEFAULT_BUDGET,
                           ideal=None) -> Optional[Certificate]:
    """``saturation_unit`` iff 1 lies in ``I_A : (m_A)^∞``; the payload notes
    whether the single colon ``I_A : (m_A)`` already contains 1."""
    PI = ideal or pattern_ideal(A, F)
    I = PI.ideal
    if I.is_zero():
        return None
    m = PI.variable_product
    if not contains_one(saturate(I, m, budget=budget)):
        return None
    in_colon = contains_one(colon_principal(I, m, budget=budget))
    return Certificate("saturation_unit", {
        "field": F.name,
        "one_in_colon": in_colon,
        "one_in_saturation": True,
        "holds_over_extensions": True,
    })


def an_realization(n: int, p: int) -> Optional[List[List[int]]]:
    """Nilpotent realization of the n-cycle-with-loops family over Z_p:
    diagonal = the n-th roots of unity (with multiplicity, 1 last),
    superdiagonal 1, corner -1.  ``None`` when x^n - 1 does not split."""
    if n < 3:
        raise ValueError("the family starts at n = 3")
    roots = unity_roots(n, p)
    if len(roots) < n:
        return None
    roots.remove(1)
    diag = roots + [1]
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = diag[i]
        if i + 1 < n:
            M[i][i + 1] = 1
    M[n - 1][0] = p - 1
    if not check_nilpotent(an_family(n), M, PrimeField(p)):
        raise AssertionError(f"family realization failed for n={n}, p={p}")
    return M


# -- the pipeline ----------------------------------------------------------------------


class _Stages:
    def __init__(self):
        self.records: List[Dict[str, Any]] = []

    def run(self, name, fn, *args, **kwargs):
        t = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.records.append({"name": name, "micros": int((time.perf_counter() - t) * 1e6)})


def _decide_component(C: ZnzPattern, p: int, F: PrimeField, stages: _Stages, budget: int, gb_budget: int):
    """Returns (status, certificate, realization assignment or None, limiting stage)."""
    cert = stages.run("filter_structural", filter_structural, C)
    if cert:
        return NOT_PN, cert, None, None
    if p == 2:
        cert = stages.run("filter_z2", filter_z2, C, 2)
        if cert:
            return NOT_PN, cert, None, None
    cert = stages.run("filter_no_small_cycles", filter_no_small_cycles, C, p)
    if cert:
        return NOT_PN, cert, None, None
    PI = pattern_ideal(C, F)
    limited = None
    try:
        cert = stages.run("saturation", saturation_certificate, C, F, gb_budget, PI)
    except ResourceLimit:
        cert, limited = None, "saturation"
    if cert:
        return NOT_PN, cert, None, None
    try:
        a = stages.run("search", brute_force_search, C, p, budget, True, PI)
    except SearchBudgetExceeded as exc:
        return UNKNOWN, Certificate("budget_exceeded", {"stage": "search", "size": exc.size,
                                                        "budget": exc.budget}), None, "search"
    if a is None:
        return NOT_PN, Certificate("exhausted_search", {"prime": p,
                                                        "space": search_space_size(C, p)}), None, limited
    return PN, None, a, None


def decide_pn(A: ZnzPattern, p: int, budget: int = DEFAULT_SEARCH_BUDGET,
              gb_budget: int = DEFAULT_BUDGET) -> Verdict:
    """Verdict over Z_p.  Components are decided separately; the pattern is
    potentially nilpotent iff every irreducible component is."""
    F = PrimeField(p)
    stages = _Stages()
    comps = strongly_connected_components(A)
    assignment: Dict = {}
    unknown = None
    for comp in comps:
        verts = sorted(comp)
        C = A.submatrix(verts)
        status, cert, a, _ = _decide_component(C, p, F, stages, budget, gb_budget)
        if status == NOT_PN:
            if len(comps) > 1:
                cert.data = dict(cert.data, component=verts)
            return Verdict(NOT_PN, cert, p, None, stages.records)
        if status == UNKNOWN:
            if unknown is None:
                unknown = Certificate(cert.kind, dict(cert.data, component=verts))
            continue
        for (i, j), v in a.items():
            assignment[(verts[i - 1], verts[j - 1])] = v
    if unknown is not None:
        return Verdict(UNKNOWN, unknown, p, None, stages.records)
    # arcs between components never touch the characteristic polynomial
    for pos in A.stars:
        assignment.setdefault(pos, 1)
    matrix = [[0] * A.n for _ in range(A.n)]
    for (i, j), v in assignment.items():
        matrix[i - 1][j - 1] = F.mul(v, F.embed(A.sign((i, j))))
    if not check_nilpotent(A, assignment, F):
        raise AssertionError("assembled realization is not nilpotent")
    return Verdict(PN, Certificate("realization", {"matrix": matrix}), p, matrix, stages.records)


def analyze_rationals(A: ZnzPattern, gb_budget: int = DEFAULT_BUDGET) -> Verdict:
    """Over Q only the saturation test runs, so the answer is either a
    refutation or ``unknown``."""
    stages = _Stages()
    try:
        cert = stages.run("saturation", saturation_certificate, A, QQ, gb_budget)
    except ResourceLimit:
        return Verdict(UNKNOWN, Certificate("budget_exceeded", {"stage": "saturation"}),
                       "rationals", None, stages.records)
    if cert:
        return Verdict(NOT_PN, cert, "rationals", None, stages.records)
    return Verdict(UNKNOWN, None, "rationals", None, stages.records)
