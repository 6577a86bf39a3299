"""Buchberger's algorithm and the ideal operations built on it.

Everything here works on the raw term dicts of :class:`Polynomial` for speed;
the public functions take and return ``Polynomial``/``Ideal`` values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .polyring import (
    GREVLEX,
    LEX,
    MixedRings,
    MonomialOrder,
    Polynomial,
    PolyRing,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000


class ResourceLimit(RuntimeError):
    def __init__(self, message: str, steps: int = 0):
        super().__init__(message)
        self.steps = steps


class ZeroDivisorInput(ValueError):
    pass


@dataclass
class Ideal:
    ring: PolyRing
    generators: Tuple[Polynomial, ...]
    _gb_cache: Dict[MonomialOrder, "GroebnerBasis"] = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise MixedRings(f"generator {g} not in {self.ring}")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)

    @classmethod
    def of(cls, polys: Sequence[Polynomial], ring: Optional[PolyRing] = None) -> "Ideal":
        polys = list(polys)
        if ring is None:
            if not polys:
                raise ValueError("need a ring for an empty generator list")
            ring = polys[0].ring
        return cls(ring, tuple(polys))

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET) -> "GroebnerBasis":
        gb = self._gb_cache.get(order)
        if gb is None:
            gb = buchberger(self, order, budget=budget)
            self._gb_cache[order] = gb
        return gb

    def __contains__(self, f: Polynomial) -> bool:
        return member(f, self)

    def __str__(self) -> str:
        return "(" + ", ".join(g.render() for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    basis: Tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool
    ring: PolyRing
    steps: int = 0

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()


# -- low-level kernels on term dicts -------------------------------------------


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Divisor:
    """A basis element prepared for repeated division."""

    __slots__ = ("terms", "lead", "lead_inv")

    def __init__(self, terms, lead, F):
        self.terms = terms
        self.lead = lead
        self.lead_inv = F.inv(terms[lead])


def _reduce(terms: dict, divisors: Sequence[_Divisor], key, F, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by ``divisors`` (tried in list order,
    leading term first).  With ``full=False`` stop at the first irreducible
    leading term."""
    p = dict(terms)
    rem = {}
    add, mul, neg = F.add, F.mul, F.neg
    while p:
        lt = max(p, key=key)
        c = p[lt]
        for d in divisors:
            if _divides(d.lead, lt):
                q = mul(c, d.lead_inv)
                shift = tuple(x - y for x, y in zip(lt, d.lead))
                nq = neg(q)
                for e, a in d.terms.items():
                    ne = tuple(x + y for x, y in zip(e, shift))
                    s = add(p.get(ne, 0), mul(nq, a))
                    if s:
                        p[ne] = s
                    else:
                        p.pop(ne, None)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[lt] = c
            del p[lt]
    return rem


def _spoly(f: _Divisor, g: _Divisor, F) -> dict:
    m = _lcm(f.lead, g.lead)
    out = {}
    sf = tuple(x - y for x, y in zip(m, f.lead))
    sg = tuple(x - y for x, y in zip(m, g.lead))
    cf, cg = f.lead_inv, F.neg(g.lead_inv)
    for e, a in f.terms.items():
        ne = tuple(x + y for x, y in zip(e, sf))
        out[ne] = F.mul(a, cf)
    for e, a in g.terms.items():
        ne = tuple(x + y for x, y in zip(e, sg))
        s = F.add(out.get(ne, 0), F.mul(a, cg))
        if s:
            out[ne] = s
        else:
            out.pop(ne, None)
    return out


def _monic(terms: dict, key, F) -> Tuple[dict, tuple]:
    lead = max(terms, key=key)
    inv = F.inv(terms[lead])
    return {e: F.mul(c, inv) for e, c in terms.items()}, lead


# -- public operations ------------------------------------------------------------


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = LEX) -> Polynomial:
    """Remainder of multivariate division of ``f`` by the list ``G``."""
    F = f.field
    divisors = []
    for g in G:
        if g.ring != f.ring:
            raise MixedRings(f"{g} not in {f.ring}")
        if g.terms:
            divisors.append(_Divisor(g.terms, max(g.terms, key=order.key), F))
    return Polynomial(f.ring, _reduce(f.terms, divisors, order.key, F))


def divide_exact(h: Polynomial, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Quotient ``h / f``; raises ``ValueError`` if ``f`` does not divide ``h``."""
    if f.is_zero():
        raise ZeroDivisorInput("division by the zero polynomial")
    F = f.field
    key = order.key
    lead = max(f.terms, key=key)
    inv = F.inv(f.terms[lead])
    p = dict(h.terms)
    q = {}
    while p:
        lt = max(p, key=key)
        if not _divides(lead, lt):
            raise ValueError(f"{f} does not divide {h}")
        c = F.mul(p[lt], inv)
        shift = tuple(x - y for x, y in zip(lt, lead))
        q[shift] = c
        nc = F.neg(c)
        for e, a in f.terms.items():
            ne = tuple(x + y for x, y in zip(e, shift))
            s = F.add(p.get(ne, 0), F.mul(nc, a))
            if s:
                p[ne] = s
            else:
                p.pop(ne, None)
    return Polynomial(h.ring, q)


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET,
               criteria: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``.

    Pairs are processed smallest-lcm first (ties by index), so the run is
    deterministic.  With ``criteria`` the coprime-leading-monomial and chain
    criteria discard pairs; ``criteria=False`` is plain Buchberger.
    """
    ring = I.ring
    F = ring.field
    key = order.key
    basis: List[_Divisor] = []
    pairs = set()
    steps = 0

    def add_element(terms):
        terms, lead = _monic(terms, key, F)
        k = len(basis)
        basis.append(_Divisor(terms, lead, F))
        for i in range(k):
            pairs.add((i, k))

    for g in I.generators:
        add_element(g.terms)

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].lead, basis[ij[1]].lead)), ij))
        pairs.discard((i, j))
        bi, bj = basis[i], basis[j]
        if criteria:
            if _coprime(bi.lead, bj.lead):
                continue
            m = _lcm(bi.lead, bj.lead)
            if any(k != i and k != j and _divides(basis[k].lead, m)
                   and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
                   for k in range(len(basis))):
                continue
        steps += 1
        if steps > budget:
            raise ResourceLimit(f"Buchberger exceeded {budget} S-pair reductions", steps)
        r = _reduce(_spoly(bi, bj, F), basis, key, F)
        if r:
            add_element(r)
            if all(not x for x in basis[-1].lead):
                # a unit: the reduced basis is {1}
                pairs.clear()
                break

    return GroebnerBasis(tuple(_interreduce(basis, ring, order)), order, True, ring, steps)


def _interreduce(basis: List[_Divisor], ring: PolyRing, order: MonomialOrder) -> List[Polynomial]:
    F = ring.field
    key = order.key
    for d in basis:
        if all(not x for x in d.lead):
            return [ring.one()]
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep: List[_Divisor] = []
    for k, d in enumerate(basis):
        redundant = False
        for m, other in enumerate(basis):
            if m == k or not _divides(other.lead, d.lead):
                continue
            if other.lead != d.lead or m < k:
                redundant = True
                break
        if not redundant:
            keep.append(d)
    keep.sort(key=lambda d: key(d.lead), reverse=True)
    out = []
    for k, d in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        tail = {e: c for e, c in d.terms.items() if e != d.lead}
        tail = _reduce(tail, others, key, F)
        tail[d.lead] = d.terms[d.lead]
        terms, _ = _monic(tail, key, F)
        out.append(Polynomial(ring, terms))
    return out


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Check that every S-polynomial of pairs in ``G`` reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    if not G:
        return True
    F = G[0].field
    divs = [_Divisor(g.terms, max(g.terms, key=order.key), F) for g in G]
    for i in range(len(divs)):
        for j in range(i + 1, len(divs)):
            if _reduce(_spoly(divs[i], divs[j], F), divs, order.key, F):
                return False
    return True


def member(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    if f.is_zero():
        return True
    if I.is_zero():
        return False
    return normal_form(f, I.groebner(order).basis, order).is_zero()


def contains_one(I: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    if I.is_zero():
        return False
    return I.groebner(order).is_unit()


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Mutual generator membership."""
    if I.ring != J.ring:
        raise MixedRings("ideals in different rings")
    return all(member(g, J) for g in I.generators) and all(member(g, I) for g in J.generators)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I."""
    return all(member(g, I) for g in J.generators)


def elimination_ideal(I: Ideal, keep: Sequence, order: Optional[MonomialOrder] = None,
                      budget: int = DEFAULT_BUDGET) -> Ideal:
    """Intersect ``I`` with the subring on ``keep``, a suffix of the variable order.

    Uses a lex basis by default; any elimination order for the dropped prefix
    gives the same ideal.  The result lives in the subring on ``keep``.
    """
    ring = I.ring
    keep = tuple(keep)
    nk = len(keep)
    ndrop = ring.nvars - nk
    if keep != ring.variables[ndrop:]:
        raise ValueError("keep must be a suffix of the variable order")
    order = order or LEX
    sub = PolyRing.over(ring.field, keep)
    if ndrop == 0:
        return Ideal(sub, tuple(g.restrict(sub) for g in I.groebner(order, budget).basis))
    gens = []
    for g in I.groebner(order, budget).basis:
        if all(not any(e[:ndrop]) for e in g.terms):
            gens.append(g.restrict(sub))
    return Ideal(sub, tuple(gens))


def _fresh(ring: PolyRing, stem: str) -> str:
    name = stem
    k = 0
    while name in ring.varset:
        k += 1
        name = f"{stem}{k}"
    return name


def intersect_principal(I: Ideal, f: Polynomial, order: Optional[MonomialOrder] = None,
                        budget: int = DEFAULT_BUDGET) -> Ideal:
    """``I ∩ (f)`` by eliminating ``t`` from ``t·I + (1-t)·(f)``."""
    ring = I.ring
    if I.is_zero():
        return Ideal(ring, ())
    t = _fresh(ring, "t")
    big = ring.extend([t])
    tv = big.var(t)
    gens = [tv * g.coerce(big) for g in I.generators]
    gens.append((1 - tv) * f.coerce(big))
    order = order or MonomialOrder("elim", 1)
    sub = elimination_ideal(Ideal(big, tuple(gens)), ring.variables, order, budget)
    return Ideal(ring, tuple(g.coerce(ring) for g in sub.generators))


def colon_principal(I: Ideal, f: Polynomial, order: Optional[MonomialOrder] = None,
                    budget: int = DEFAULT_BUDGET) -> Ideal:
    """``I : (f)``: generators of ``I ∩ (f)`` divided exactly by ``f``."""
    if f.is_zero():
        raise ZeroDivisorInput("colon by the zero polynomial")
    inter = intersect_principal(I, f, order, budget)
    return Ideal(I.ring, tuple(divide_exact(h, f) for h in inter.generators))


def saturate(I: Ideal, f: Polynomial, order: Optional[MonomialOrder] = None,
             budget: int = DEFAULT_BUDGET) -> Ideal:
    """``I : (f)^∞`` via ``I + (y·f - 1)`` with ``y`` eliminated.

    ``order`` is the order on the extended ring; the default grades ``y``
    alone ahead of grevlex on the rest, which is an elimination order.  Pass
    ``LEX`` for a pure lex computation.
    """
    if f.is_zero():
        raise ZeroDivisorInput("saturation by the zero polynomial")
    ring = I.ring
    y = _fresh(ring, "y")
    big = ring.extend([y])
    yv = big.var(y)
    gens = [g.coerce(big) for g in I.generators] + [yv * f.coerce(big) - 1]
    order = order or MonomialOrder("elim", 1)
    sub = elimination_ideal(Ideal(big, tuple(gens)), ring.variables, order, budget)
    return Ideal(ring, tuple(g.coerce(ring) for g in sub.generators))


def saturate_iterated(I: Ideal, f: Polynomial, max_rounds: int = 50) -> Ideal:
    """Fixed point of ``J -> J : (f)`` starting at ``I``."""
    cur = I
    for _ in range(max_rounds):
        nxt = colon_principal(cur, f)
        if ideal_contains(cur, nxt):
            return cur
        cur = nxt
    raise ResourceLimit(f"iterated colon did not stabilize in {max_rounds} rounds")
