import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilpat.charideal import (
    NotARealization,
    SymbolicMatrix,
    char_coefficients,
    charpoly_numeric,
    check_nilpotent,
    mat_pow,
    pattern_ideal,
)
from nilpat.coefficients import QQ, PrimeField
from nilpat.pattern import ZnzPattern, all_patterns, parse_pattern

Z2, Z7 = PrimeField(2), PrimeField(7)
PRIMES = [2, 3, 5, 7, 11, 13]


def det_fraction(M):
    """Gaussian elimination over Q."""
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def charpoly_oracle(M):
    """[1, c_1, ..., c_n] of det(xI - M) by interpolation at x = 0..n."""
    n = len(M)
    xs = list(range(n + 1))
    ys = [det_fraction([[(x if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)  # low -> high
    for k, xk in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= xk - xm
        for t in range(n + 1):
            coeffs[t] += ys[k] * basis[t] / denom
    return list(reversed(coeffs))


def test_two_two_cycles_over_z2(two_two_cycles):
    F = char_coefficients(two_two_cycles, Z2)
    R = F[0].ring
    assert F[0] == R.parse("z[1,1] + z[3,3]")
    assert F[1] == R.parse("z[1,2]*z[2,1] + z[2,3]*z[3,2] + z[1,1]*z[3,3]")
    assert F[2] == R.parse("z[1,1]*z[2,3]*z[3,2] + z[1,2]*z[2,1]*z[3,3]")


def test_two_two_cycles_over_q_follows_convention(two_two_cycles):
    F = char_coefficients(two_two_cycles, QQ)
    R = F[0].ring
    assert F[0] == R.parse("z[1,1] + z[3,3]")
    assert F[1] == R.parse("z[1,1]*z[3,3] - z[1,2]*z[2,1] - z[2,3]*z[3,2]")
    assert F[2] == R.parse("-z[1,1]*z[2,3]*z[3,2] - z[1,2]*z[2,1]*z[3,3]")


def test_three_cycle_loops_over_q(three_cycle_loops):
    F = char_coefficients(three_cycle_loops, QQ)
    R = F[0].ring
    assert F == [R.parse("z[1,1] + z[2,2] + z[3,3]"),
                 R.parse("z[1,1]*z[2,2] + z[1,1]*z[3,3] + z[2,2]*z[3,3]"),
                 R.parse("z[1,2]*z[2,3]*z[3,1] + z[1,1]*z[2,2]*z[3,3]")]


def test_trivial_patterns():
    assert all(f.is_zero() for f in char_coefficients(ZnzPattern(3, frozenset()), QQ))
    PI = pattern_ideal(parse_pattern("*"), QQ)
    assert list(PI.ideal.generators) == [PI.ring.var((1, 1))]
    assert PI.variable_product == PI.ring.var((1, 1))


def test_signed_symbolic_matrix(g5):
    M = SymbolicMatrix.of(g5, QQ)
    R = M.ring
    assert M.entry(1, 1) == -R.var((1, 1))
    assert M.entry(2, 2) == R.var((2, 2))
    assert M.entry(5, 1) == -R.var((5, 1))
    assert M.entry(5, 5).is_zero()
    F = char_coefficients(g5, QQ)
    assert F[0] == R.parse("-z[1,1] + z[2,2]")
    assert char_coefficients(g5, QQ, "determinant") == F


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_methods_agree_exhaustively(n):
    F = QQ if n < 4 else PrimeField(3)
    for A in all_patterns(n):
        assert char_coefficients(A, F, "cycles") == char_coefficients(A, F, "determinant")


def test_methods_agree_for_order_4_over_q_sample():
    pats = list(all_patterns(4))
    for A in random.Random(4).sample(pats, 2000):
        assert char_coefficients(A, QQ, "cycles") == char_coefficients(A, QQ, "determinant")


@settings(max_examples=40, deadline=None)
@given(st.frozensets(st.tuples(st.integers(1, 5), st.integers(1, 5))), st.integers(0, 2 ** 32))
def test_methods_agree_order_5_signed(stars, seed):
    rnd = random.Random(seed)
    signs = tuple((pos, rnd.choice((1, -1))) for pos in sorted(stars)) if stars else None
    A = ZnzPattern(5, stars, signs)
    assert char_coefficients(A, QQ, "cycles") == char_coefficients(A, QQ, "determinant")


@pytest.mark.parametrize("n", [2, 3])
def test_homogeneity(n):
    for A in all_patterns(n):
        for i, f in enumerate(char_coefficients(A, QQ), 1):
            assert f.is_zero() or f.is_homogeneous() == i


def _numeric_assignment(A, rnd, p=None):
    lo, hi = (1, p - 1) if p else (-9, 9)
    out = {}
    for pos in A.stars:
        v = 0
        while v == 0:
            v = rnd.randint(lo, hi)
        out[pos] = v
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2 ** 16 - 1), st.integers(0, 2 ** 32), st.sampled_from([None] + PRIMES))
def test_evaluation_matches_numeric_charpoly(mask, seed, p):
    rnd = random.Random(seed)
    A = ZnzPattern(4, frozenset((k // 4 + 1, k % 4 + 1) for k in range(16) if mask >> k & 1))
    F = PrimeField(p) if p else QQ
    a = _numeric_assignment(A, rnd, p)
    coeffs = char_coefficients(A, F)
    M = [[a.get((i, j), 0) for j in range(1, 5)] for i in range(1, 5)]
    oracle = charpoly_oracle(M)
    numeric = charpoly_numeric([[F.embed(x) for x in row] for row in M], F)
    assert numeric == [F.embed(c) for c in oracle]
    for i, f in enumerate(coeffs, 1):
        assert F.embed((-1) ** i * oracle[i]) == f.evaluate(a)


def test_check_nilpotent_examples():
    A = parse_pattern("**0\n0**\n*0*")
    assert check_nilpotent(A, [[4, 1, 0], [0, 2, 1], [-1, 0, 1]], Z7)
    assert check_nilpotent(A, [[4, 1, 0], [0, 2, 1], [6, 0, 1]], Z7)
    full = parse_pattern("**\n**")
    for p in PRIMES:
        assert check_nilpotent(full, [[1, 1], [-1, -1]], PrimeField(p))
    assert check_nilpotent(full, [[1, 1], [-1, -1]], QQ)
    assert not check_nilpotent(full, [[1, 1], [1, 1]], PrimeField(3))


def test_check_nilpotent_rejects_non_realizations():
    A = parse_pattern("**\n**")
    with pytest.raises(NotARealization):
        check_nilpotent(A, [[1, 1], [3, 1]], PrimeField(3))
    with pytest.raises(NotARealization):
        check_nilpotent(parse_pattern("*0\n**"), [[1, 1], [1, 1]], QQ)
    with pytest.raises(NotARealization):
        check_nilpotent(A, {(1, 1): 1, (1, 2): 1, (2, 1): 1}, QQ)
    with pytest.raises(NotARealization):
        check_nilpotent(parse_pattern("*0\n0*"), {(1, 1): 1, (2, 2): 1, (1, 2): 1}, QQ)


def test_signed_realization_uses_sign():
    A = parse_pattern("+-\n+-")
    # values are magnitudes; the sign comes from the pattern
    assert check_nilpotent(A, {(1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 1}, QQ)
    assert check_nilpotent(A, [[1, -1], [1, -1]], QQ)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_power_witness_on_every_positive_2x2(p):
    F = PrimeField(p)
    full = parse_pattern("**\n**")
    from itertools import product
    for vals in product(range(1, p), repeat=4):
        M = [list(vals[:2]), list(vals[2:])]
        nil = check_nilpotent(full, M, F)
        zero = all(v == 0 for row in mat_pow(M, 2, F) for v in row)
        assert nil == zero
