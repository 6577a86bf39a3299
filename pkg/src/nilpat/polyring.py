"""Sparse multivariate polynomials over Z_p or Q.

A polynomial is a dict mapping exponent tuples to nonzero scalars.  Variables
are matrix positions ``(i, j)`` (rendered ``z[i,j]``) or, for auxiliary
variables introduced by saturation and intersection, short strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Dict, Hashable, Iterable, Mapping, Optional, Sequence, Tuple

from .coefficients import CoefficientField, QQ, Scalar

Exponents = Tuple[int, ...]


class MixedRings(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class MissingAssignment(KeyError):
    pass


class ParseError(ValueError):
    pass


def row_major(positions: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(set(positions)))


@dataclass(frozen=True)
class VariableSet:
    variables: Tuple[Hashable, ...]
    _index: Dict[Hashable, int] = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vs = tuple(self.variables)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variables")
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "_index", {v: k for k, v in enumerate(vs)})

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v) -> int:
        return self._index[v]


def var_name(v) -> str:
    if isinstance(v, tuple):
        return f"z[{v[0]},{v[1]}]"
    return str(v)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex``, or ``elim`` (grevlex on the first ``block``
    variables, ties broken by grevlex on the rest).  Variables earlier in the
    ring are larger."""

    kind: str = "lex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Exponents):
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return (sum(e), tuple(-x for x in reversed(e)))
        head, tail = e[: self.block], e[self.block:]
        return (sum(head), tuple(-x for x in reversed(head)),
                sum(tail), tuple(-x for x in reversed(tail)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


@dataclass(frozen=True)
class Monomial:
    ring: VariableSet
    exponents: Exponents

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __str__(self) -> str:
        return _render_monomial(self.ring.variables, self.exponents) or "1"


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder = LEX) -> int:
    """-1, 0 or 1 as m1 is less than, equal to or greater than m2."""
    if m1.ring != m2.ring:
        raise MixedRings("monomials from different rings")
    k1, k2 = order.key(m1.exponents), order.key(m2.exponents)
    return (k1 > k2) - (k1 < k2)


@dataclass(frozen=True)
class PolyRing:
    field: CoefficientField
    varset: VariableSet

    @classmethod
    def over(cls, field: CoefficientField, variables: Iterable[Hashable]) -> "PolyRing":
        return cls(field, VariableSet(tuple(variables)))

    @property
    def nvars(self) -> int:
        return len(self.varset)

    @property
    def variables(self) -> Tuple[Hashable, ...]:
        return self.varset.variables

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.embed(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def var(self, v) -> "Polynomial":
        e = [0] * self.nvars
        e[self.varset.index(v)] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field.embed(coeff)
        return Polynomial(self, {tuple(exps): c} if c != 0 else {})

    def extend(self, new_vars: Sequence[Hashable], front: bool = True) -> "PolyRing":
        vs = tuple(new_vars) + self.variables if front else self.variables + tuple(new_vars)
        return PolyRing(self.field, VariableSet(vs))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(var_name(v) for v in self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` never holds zero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, Scalar]):
        self.ring = ring
        self.terms = terms if isinstance(terms, dict) else dict(terms)

    # construction helpers -------------------------------------------------

    def _same(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    @property
    def field(self) -> CoefficientField:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = self._same(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        F = self.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._same(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._same(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(self.field.embed(other))
        other = self._same(other)
        F = self.field
        out: Dict[Exponents, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        F = self.field
        c = F.embed(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(a, c) for e, a in self.terms.items()})

    def mul_term(self, exps: Exponents, c: Scalar) -> "Polynomial":
        F = self.field
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): F.mul(a_c, c)
                                      for e, a_c in self.terms.items()})

    # comparisons -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # structure ---------------------------------------------------------------

    def leading_term(self, order: MonomialOrder = LEX) -> Tuple[Monomial, Scalar]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return Monomial(self.ring.varset, e), self.terms[e]

    def leading_exponents(self, order: MonomialOrder = LEX) -> Exponents:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def monic(self, order: MonomialOrder = LEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.field.inv(c))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> Optional[int]:
        """Common total degree of all terms, or None.  The zero polynomial
        reports 0 (it is homogeneous of every degree)."""
        degs = {sum(e) for e in self.terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def support(self) -> Tuple[Hashable, ...]:
        used = set()
        for e in self.terms:
            used.update(k for k, x in enumerate(e) if x)
        return tuple(self.ring.variables[k] for k in sorted(used))

    def evaluate(self, assignment: Mapping[Hashable, Scalar]) -> Scalar:
        F = self.field
        vals = []
        for v in self.ring.variables:
            if v not in assignment:
                raise MissingAssignment(var_name(v))
            vals.append(F.embed(assignment[v]))
        total = F.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = F.mul(t, x ** k if F.characteristic == 0 else pow(x, k, F.characteristic))
            total = F.add(total, t)
        return total

    def coerce(self, ring: PolyRing) -> "Polynomial":
        """Re-express in ``ring``; every used variable must exist there."""
        if ring == self.ring:
            return self
        pos = [ring.varset.index(v) if v in ring.varset else None for v in self.ring.variables]
        n = ring.nvars
        F = ring.field
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, x in enumerate(e):
                if x:
                    if pos[k] is None:
                        raise MixedRings(f"{var_name(self.ring.variables[k])} is not a variable of {ring}")
                    ne[pos[k]] = x
            c = F.embed(c)
            if c:
                out[tuple(ne)] = c
        return Polynomial(ring, out)

    def restrict(self, ring: PolyRing) -> "Polynomial":
        """Drop to a ring with fewer variables; unused variables must be absent."""
        idx = [self.ring.varset.index(v) for v in ring.variables]
        keep = set(idx)
        out = {}
        for e, c in self.terms.items():
            if any(x for k, x in enumerate(e) if k not in keep):
                raise ValueError(f"{self} uses a variable outside {ring}")
            out[tuple(e[k] for k in idx)] = c
        return Polynomial(ring, out)

    # rendering ---------------------------------------------------------------

    def render(self, order: MonomialOrder = LEX) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = F.signed(self.terms[e])
            neg = c < 0
            c = -c if neg else c
            mono = _render_monomial(self.ring.variables, e)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r} over {self.field})"


def _render_monomial(variables, e) -> str:
    out = []
    for v, k in zip(variables, e):
        if k == 1:
            out.append(var_name(v))
        elif k > 1:
            out.append(f"{var_name(v)}^{k}")
    return "*".join(out)


_TOKEN = re.compile(r"\s*(?:(z\[\s*\d+\s*,\s*\d+\s*\])|(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\^)|([*+\-])|(\()|(\)))")


def _tokens(text: str):
    pos, n = 0, len(text.rstrip())
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {text[pos:pos + 10]!r}")
        pos = m.end()
        zvar, num, name, caret, op, lp, rp = m.groups()
        if zvar:
            i, j = re.findall(r"\d+", zvar)
            yield ("var", (int(i), int(j)))
        elif num:
            yield ("num", num)
        elif name:
            yield ("var", name)
        elif caret:
            yield ("^", None)
        elif op:
            yield (op, None)
        elif lp:
            yield ("(", None)
        else:
            yield (")", None)
    yield ("end", None)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse the rendering grammar: ``c*z[i,j]^e*... + ...`` (parentheses allowed)."""
    from fractions import Fraction

    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos][0]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take()[0] == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == "*":
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = take()
        if kind == "num":
            base = ring.const(Fraction(val) if "/" in val else int(val))
        elif kind == "var":
            if val not in ring.varset:
                raise ParseError(f"unknown variable {var_name(val)}")
            base = ring.var(val)
        elif kind == "(":
            base = expr()
            if take()[0] != ")":
                raise ParseError("missing ')'")
        elif kind == "-":
            return -factor()
        else:
            raise ParseError(f"unexpected token {kind!r}")
        if peek() == "^":
            take()
            k, v = take()
            if k != "num" or "/" in v:
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** int(v)
        return base

    result = expr()
    if peek() != "end":
        raise ParseError(f"trailing input in {text!r}")
    return result


def polynomial_ring(field: CoefficientField = QQ, variables: Iterable[Hashable] = ()) -> PolyRing:
    return PolyRing.over(field, variables)
