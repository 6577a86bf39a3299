"""The symbolic matrix of a pattern, its characteristic coefficients, the
pattern ideal, and nilpotence checks for concrete realizations.

Convention: ``det(xI - M) = x^n - F_1 x^(n-1) + F_2 x^(n-2) - ...``, i.e. the
coefficient of ``x^(n-i)`` is ``(-1)^i F_i``.  So ``F_1`` is the trace and
``F_n`` the determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, List, Mapping, Optional, Sequence

from .coefficients import CoefficientField, Scalar
from .groebner import Ideal
from .pattern import Position, ZnzPattern, all_simple_cycles
from .polyring import Polynomial, PolyRing


class NotARealization(ValueError):
    pass


@dataclass(frozen=True)
class SymbolicMatrix:
    pattern: ZnzPattern
    ring: PolyRing

    @classmethod
    def of(cls, A: ZnzPattern, field: CoefficientField) -> "SymbolicMatrix":
        return cls(A, PolyRing.over(field, A.positions))

    def entry(self, i: int, j: int) -> Polynomial:
        if (i, j) not in self.pattern.stars:
            return self.ring.zero()
        return self.ring.var((i, j)) * self.pattern.sign((i, j))

    def rows(self) -> List[List[Polynomial]]:
        n = self.pattern.n
        return [[self.entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for s in range(len(perm)):
        if seen[s]:
            continue
        length, k = 0, s
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def char_coefficients(M, field: Optional[CoefficientField] = None, method: str = "cycles") -> List[Polynomial]:
    """``[F_1, ..., F_n]`` for a :class:`SymbolicMatrix` (or a pattern plus field).

    ``cycles`` sums over families of pairwise disjoint simple cycles;
    ``determinant`` expands ``det(xI - M)`` over all permutations.
    """
    if isinstance(M, ZnzPattern):
        M = SymbolicMatrix.of(M, field)
    if method == "cycles":
        return _coeffs_by_cycles(M)
    if method == "determinant":
        return _coeffs_by_determinant(M)
    raise ValueError(f"unknown method {method!r}")


def _coeffs_by_cycles(M: SymbolicMatrix) -> List[Polynomial]:
    A, ring = M.pattern, M.ring
    F = ring.field
    nv = ring.nvars
    cycles = []
    for cyc in all_simple_cycles(A):
        e = [0] * nv
        sign = (-1) ** (len(cyc) - 1)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            e[ring.varset.index((a, b))] += 1
            sign *= A.sign((a, b))
        mask = 0
        for v in cyc:
            mask |= 1 << v
        cycles.append((mask, len(cyc), tuple(e), sign))

    acc: List[Dict[tuple, int]] = [dict() for _ in range(A.n + 1)]

    def extend(start, used, length, exps, sign):
        for k in range(start, len(cycles)):
            mask, l, e, s = cycles[k]
            if used & mask:
                continue
            ne = tuple(x + y for x, y in zip(exps, e))
            ns = sign * s
            d = acc[length + l]
            d[ne] = d.get(ne, 0) + ns
            extend(k + 1, used | mask, length + l, ne, ns)

    extend(0, 0, 0, (0,) * nv, 1)
    out = []
    for i in range(1, A.n + 1):
        terms = {e: F.embed(c) for e, c in acc[i].items()}
        out.append(Polynomial(ring, {e: c for e, c in terms.items() if c}))
    return out


def _coeffs_by_determinant(M: SymbolicMatrix) -> List[Polynomial]:
    A, ring = M.pattern, M.ring
    F = ring.field
    n, nv = A.n, ring.nvars
    idx = ring.varset.index
    acc: List[Dict[tuple, int]] = [dict() for _ in range(n + 1)]
    for perm in permutations(range(n)):
        base = [0] * nv
        coef = _perm_sign(perm)
        off = 0
        ok = True
        fixed_loops = []
        for r, c in enumerate(perm):
            pos = (r + 1, c + 1)
            if r != c:
                if pos not in A.stars:
                    ok = False
                    break
                base[idx(pos)] += 1
                coef *= -A.sign(pos)
                off += 1
            elif pos in A.stars:
                fixed_loops.append(pos)
        if not ok:
            continue
        for size in range(len(fixed_loops) + 1):
            for chosen in combinations(fixed_loops, size):
                e = list(base)
                c = coef
                for pos in chosen:
                    e[idx(pos)] += 1
                    c *= -A.sign(pos)
                i = off + size
                # coefficient of x^(n-i) is (-1)^i F_i
                d = acc[i]
                key = tuple(e)
                d[key] = d.get(key, 0) + (-1) ** i * c
    out = []
    for i in range(1, n + 1):
        terms = {e: F.embed(c) for e, c in acc[i].items()}
        out.append(Polynomial(ring, {e: c for e, c in terms.items() if c}))
    return out


@dataclass(frozen=True)
class PatternIdeal:
    pattern: ZnzPattern
    ring: PolyRing
    coefficients: tuple

    @property
    def field(self) -> CoefficientField:
        return self.ring.field

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, tuple(self.coefficients))

    @property
    def variable_product(self) -> Polynomial:
        """``m_A``, the product of all variables."""
        return self.ring.monomial((1,) * self.ring.nvars)

    def __iter__(self):
        return iter(self.coefficients)


def pattern_ideal(A: ZnzPattern, field: CoefficientField, method: str = "cycles") -> PatternIdeal:
    M = SymbolicMatrix.of(A, field)
    return PatternIdeal(A, M.ring, tuple(char_coefficients(M, method=method)))


# -- concrete matrices ----------------------------------------------------------------


def mat_mul(X, Y, F: CoefficientField):
    n = len(X)
    m = len(Y[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = F.zero
            for k in range(len(Y)):
                if X[i][k] and Y[k][j]:
                    s = F.add(s, F.mul(X[i][k], Y[k][j]))
            row.append(s)
        out.append(row)
    return out


def mat_pow(X, k: int, F: CoefficientField):
    n = len(X)
    result = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for _ in range(k):
        result = mat_mul(result, X, F)
    return result


def charpoly_numeric(X, F: CoefficientField) -> List[Scalar]:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(xI - X)`` by reduction to
    upper Hessenberg form and the standard recurrence."""
    n = len(X)
    H = [[F.embed(v) for v in row] for row in X]
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if H[r][col]), None)
        if piv is None:
            continue
        if piv != col + 1:
            t = col + 1
            H[piv], H[t] = H[t], H[piv]
            for row in H:
                row[piv], row[t] = row[t], row[piv]
        inv = F.inv(H[col + 1][col])
        for r in range(col + 2, n):
            if not H[r][col]:
                continue
            f = F.mul(H[r][col], inv)
            # row_r -= f * row_{col+1}, then col_{col+1} += f * col_r
            for c in range(n):
                H[r][c] = F.sub(H[r][c], F.mul(f, H[col + 1][c]))
            for row in H:
                row[col + 1] = F.add(row[col + 1], F.mul(f, row[r]))
    # p_k(x) = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod h_{j+1,j}) p_{i-1}
    polys = [[F.one]]
    for k in range(n):
        p = [F.zero] + polys[k]  # x * p_{k-1}, coefficients low -> high
        for d, c in enumerate(polys[k]):
            p[d] = F.sub(p[d], F.mul(H[k][k], c))
        prod = F.one
        for i in range(k - 1, -1, -1):
            prod = F.mul(prod, H[i + 1][i])
            t = F.mul(H[i][k], prod)
            if t:
                for d, c in enumerate(polys[i]):
                    p[d] = F.sub(p[d], F.mul(t, c))
        polys.append(p)
    return polys[n][::-1]


def realization_matrix(A: ZnzPattern, assignment: Mapping[Position, Scalar], F: CoefficientField):
    """``M_A(a)`` as a list of rows over ``F``."""
    n = A.n
    M = [[F.zero] * n for _ in range(n)]
    for (i, j), v in assignment.items():
        M[i - 1][j - 1] = F.mul(F.embed(v), F.embed(A.sign((i, j))))
    return M


def assignment_from_matrix(A: ZnzPattern, matrix, F: CoefficientField) -> Dict[Position, Scalar]:
    """Variable values for a realization given as a matrix; the matrix must
    have exactly the pattern's zero/nonzero structure over ``F``."""
    n = A.n
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise NotARealization(f"expected a {n}x{n} matrix")
    a = {}
    for i in range(n):
        for j in range(n):
            v = F.embed(matrix[i][j])
            pos = (i + 1, j + 1)
            if pos in A.stars:
                if not v:
                    raise NotARealization(f"entry {pos} is zero in {F}")
                a[pos] = F.mul(v, F.embed(A.sign(pos)))
            elif v:
                raise NotARealization(f"entry {pos} is nonzero but the pattern has 0 there")
    return a


def check_nilpotent(A: ZnzPattern, assignment, F: CoefficientField, ideal: Optional[PatternIdeal] = None) -> bool:
    """Is ``M_A(a)`` a nilpotent realization?  ``assignment`` maps stars to
    values, or is a full matrix.  The coefficient test is cross-checked
    against ``M_A(a)^n = 0``."""
    if not isinstance(assignment, Mapping):
        assignment = assignment_from_matrix(A, assignment, F)
    extra = set(assignment) - A.stars
    if extra:
        raise NotARealization(f"positions {sorted(extra)} are not stars of the pattern")
    missing = A.stars - set(assignment)
    if missing:
        raise NotARealization(f"positions {sorted(missing)} are unassigned")
    a = {pos: F.embed(v) for pos, v in assignment.items()}
    zero = [pos for pos, v in a.items() if not v]
    if zero:
        raise NotARealization(f"positions {sorted(zero)} are zero in {F}")
    PI = ideal or pattern_ideal(A, F)
    by_coeffs = all(not f.evaluate(a) for f in PI.coefficients)
    M = realization_matrix(A, a, F)
    by_power = all(not v for row in mat_pow(M, A.n, F) for v in row)
    if by_coeffs != by_power:
        raise AssertionError("characteristic coefficients disagree with the matrix power")
    return by_coeffs
