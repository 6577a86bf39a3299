from itertools import product

import pytest

from nilpat import catalog
from nilpat.analysis import (
    NOT_PN,
    PN,
    PROOF_KINDS,
    WrongField,
    an_realization,
    analyze_rationals,
    decide_pn,
    filter_no_small_cycles,
    filter_structural,
    filter_z2,
    roots_of_unity_split,
    saturation_certificate,
    unity_root_multiplicities,
    unity_roots,
)
from nilpat.charideal import check_nilpotent, pattern_ideal
from nilpat.coefficients import QQ, PrimeField
from nilpat.pattern import all_patterns, an_family, enumerate_classes, parse_pattern, transpose
from nilpat.search import (
    SearchBudgetExceeded,
    brute_force_search,
    search_space_size,
    spanning_forest,
)

FULL3 = parse_pattern("***\n***\n***")
FULL2 = parse_pattern("**\n**")
A14 = catalog.case_pattern("1.4")
PRIMES = [2, 3, 5, 7, 11, 13]


def order_le3_patterns():
    for n in (1, 2, 3):
        yield from all_patterns(n)


# -- filters -------------------------------------------------------------------------


def test_structural_examples():
    for label in ("1.1", "1.2", "1.3"):
        cert = filter_structural(catalog.case_pattern(label))
        assert cert and cert.kind in ("single_transversal", "single_diagonal"), label
    assert filter_structural(FULL3) is None
    cert = filter_structural(parse_pattern("*0\n0*"))
    assert cert.kind == "no_small_cycles" and cert.data["k_range"] == [2, 2]
    assert filter_structural(parse_pattern("*0\n**")).kind == "no_small_cycles"
    assert filter_structural(parse_pattern("0*0\n00*\n*00")).kind == "single_transversal"
    assert filter_structural(parse_pattern("**\n*0")).kind == "single_diagonal"


def test_z2_examples():
    assert filter_z2(catalog.case_pattern("2.6")).kind == "z2_parity"
    assert filter_z2(catalog.case_pattern("4.5")).kind == "z2_two_loops_two_2cycles"
    assert filter_z2(FULL2) is None
    with pytest.raises(WrongField):
        filter_z2(FULL2, 3)


def test_roots_of_unity_examples():
    assert roots_of_unity_split(3, 7)
    assert not roots_of_unity_split(3, 5)
    assert unity_root_multiplicities(3, 5) == {1: 1}
    assert all(roots_of_unity_split(1, p) for p in PRIMES)
    assert roots_of_unity_split(3, 3)
    assert unity_roots(3, 3) == [1, 1, 1]
    assert sorted(unity_roots(3, 7)) == [1, 2, 4]
    with pytest.raises(ValueError):
        roots_of_unity_split(0, 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_roots_of_unity_against_synthetic_division(p):
    for m in range(1, 25):
        total = sum(unity_root_multiplicities(m, p).values())
        assert total <= m
        assert roots_of_unity_split(m, p) == (total == m), (m, p)


def test_no_small_cycles_examples():
    cert = filter_no_small_cycles(A14, 5)
    assert cert.kind == "roots_of_unity_missing" and cert.data["m"] == 3
    assert brute_force_search(A14, 5) is None
    assert filter_no_small_cycles(A14, 7) is None
    assert filter_no_small_cycles(FULL3, 5) is None


def test_saturation_certificate_examples(loop_plus_block, g5, three_cycle_loops, two_two_cycles):
    cert = saturation_certificate(loop_plus_block, PrimeField(2))
    assert cert.kind == "saturation_unit"
    assert cert.data["one_in_saturation"] and not cert.data["one_in_colon"]
    assert cert.data["holds_over_extensions"]
    assert saturation_certificate(g5, QQ).kind == "saturation_unit"
    assert saturation_certificate(three_cycle_loops, QQ) is None
    assert saturation_certificate(two_two_cycles, PrimeField(2)).kind == "saturation_unit"


# -- search -----------------------------------------------------------------------------


def test_search_examples():
    a = brute_force_search(A14, 7)
    assert a is not None and check_nilpotent(A14, a, PrimeField(7))
    a = brute_force_search(FULL2, 3)
    assert check_nilpotent(FULL2, a, PrimeField(3))
    M = [[a[(1, 1)], a[(1, 2)]], [a[(2, 1)], a[(2, 2)]]]
    # diagonally similar to [[1, 1], [2, 2]]: same diagonal and same 2-cycle product
    assert {M[0][0], M[1][1]} == {1, 2} and M[0][1] * M[1][0] % 3 == 2
    assert brute_force_search(catalog.case_pattern("2.5"), 2) is None


def test_spanning_forest_and_budget():
    forest = spanning_forest(FULL3)
    assert len(forest) == 2 and all(i != j for i, j in forest)
    assert search_space_size(FULL3, 5) == 4 ** 7
    assert search_space_size(FULL3, 5, normalize=False) == 4 ** 9
    with pytest.raises(SearchBudgetExceeded):
        brute_force_search(FULL3, 13, budget=1000)


@pytest.mark.parametrize("p", [2, 3])
def test_normalized_search_matches_full(p):
    F = PrimeField(p)
    for A in all_patterns(3):
        norm = brute_force_search(A, p)
        full = brute_force_search(A, p, normalize=False)
        assert (norm is None) == (full is None), A.render()
        for a in (norm, full):
            if a is not None:
                assert check_nilpotent(A, a, F)


def full_enumeration(A, p):
    """Plain Python oracle: every nonzero assignment."""
    PI = pattern_ideal(A, PrimeField(p))
    vs = PI.ring.variables
    for vals in product(range(1, p), repeat=len(vs)):
        a = dict(zip(vs, vals))
        if all(f.evaluate(a) == 0 for f in PI.coefficients):
            return a
    return None


def test_vectorized_search_matches_python_oracle():
    for A in list(all_patterns(3))[::11]:
        for p in (2, 3):
            assert (brute_force_search(A, p, normalize=False) is None) == (full_enumeration(A, p) is None)
        # first hit in enumeration order is the same assignment
        assert brute_force_search(A, 3, normalize=False) == full_enumeration(A, 3)


# -- properties ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_filter_soundness(p):
    for A in order_le3_patterns():
        found = brute_force_search(A, p)
        certs = [filter_structural(A), filter_no_small_cycles(A, p)]
        if p == 2:
            certs.append(filter_z2(A))
        if found is not None:
            assert all(c is None for c in certs), A.render()


@pytest.mark.parametrize("p", [2, 3])
def test_saturation_never_contradicts_search(p):
    F = PrimeField(p)
    for A in enumerate_classes(3, irreducible_only=False):
        if saturation_certificate(A, F) is not None:
            assert brute_force_search(A, p) is None, A.render()


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_elementary_symmetric_witness(m, p):
    """A nonzero solution of e_1 = ... = e_{m-1} = 0 exists iff x^m - 1 splits."""

    def esym(xs):
        e = [1] + [0] * m
        for x in xs:
            for k in range(m, 0, -1):
                e[k] = (e[k] + e[k - 1] * x) % p
        return e

    exists = any(all(v == 0 for v in esym(xs)[1:m]) for xs in product(range(1, p), repeat=m))
    assert exists == roots_of_unity_split(m, p)


def test_z3_diagonal_sum():
    sols = [xs for xs in product((1, 2), repeat=3) if sum(xs) % 3 == 0]
    assert sols == [(1, 1, 1), (2, 2, 2)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_transpose_consistency(p):
    for A in enumerate_classes(3, irreducible_only=False):
        assert decide_pn(A, p).status == decide_pn(transpose(A), p).status, A.render()


# -- the A_n family ------------------------------------------------------------------------


def test_an_realization_examples():
    M = an_realization(3, 7)
    assert sorted(M[i][i] for i in range(3)) == [1, 2, 4]
    assert an_realization(3, 3) == [[1, 1, 0], [0, 1, 1], [2, 0, 1]]
    assert an_realization(3, 5) is None
    with pytest.raises(ValueError):
        an_realization(2, 5)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_family_law(n):
    A = an_family(n)
    for p in PRIMES:
        split = roots_of_unity_split(n, p)
        assert (brute_force_search(A, p) is not None) == split, (n, p)
        M = an_realization(n, p)
        assert (M is not None) == split
        if M is not None:
            assert check_nilpotent(A, M, PrimeField(p))


# -- the pipeline -----------------------------------------------------------------------


def test_decide_examples(loop_plus_block):
    v = decide_pn(loop_plus_block, 2)
    assert v.status == NOT_PN and v.certificate.kind == "single_diagonal"
    assert v.certificate.data["component"] == [1]
    v = decide_pn(FULL3, 2)
    assert v.status == NOT_PN and v.certificate.kind == "z2_parity"
    v = decide_pn(FULL3, 5)
    assert v.status == PN and check_nilpotent(FULL3, v.realization, PrimeField(5))
    assert [s["name"] for s in v.stages] == ["filter_structural", "filter_no_small_cycles", "saturation", "search"]


def test_decide_reducible_assembles_components():
    # two copies of the full 2x2 block joined by a one-way arc
    A = parse_pattern("**00\n***0\n00**\n00**")
    for p in (2, 3, 5):
        v = decide_pn(A, p)
        assert v.status == PN
        assert check_nilpotent(A, v.realization, PrimeField(p))
        assert v.realization[1][2] == 1


def test_decide_unknown_on_budget():
    v = decide_pn(FULL3, 13, budget=10)
    assert v.status == "unknown" and v.certificate.kind == "budget_exceeded"


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_verdict_invariants(p):
    F = PrimeField(p)
    for A in enumerate_classes(3, irreducible_only=False):
        v = decide_pn(A, p)
        if v.status == PN:
            assert v.certificate.kind == "realization"
            assert check_nilpotent(A, v.realization, F)
        else:
            assert v.status == NOT_PN and v.certificate.kind in PROOF_KINDS


def test_rationals(g5, three_cycle_loops):
    v = analyze_rationals(g5)
    assert v.status == NOT_PN and v.certificate.kind == "saturation_unit" and v.prime == "rationals"
    assert analyze_rationals(three_cycle_loops).status == "unknown"
