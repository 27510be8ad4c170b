import itertools
from fractions import Fraction
from math import comb, factorial

import pytest

from stochastihedron.contingency import count_cm, enumerate_cm
from stochastihedron.errors import CapacityError, DomainError
from stochastihedron.metamatrix import (
    MetaMatrix,
    det_metamatrix,
    fubini,
    generalized_count,
    metamatrix,
    metamatrix_entry,
    stirling_first,
    stirling_second,
    structured_matrix,
    total_count,
    total_positivity,
    verify_factorizations,
    verify_generalized_counts,
)

M3 = ((1, 2, 1), (2, 8, 6), (1, 6, 6))


# ---------------------------------------------------------------------------
# counting primitives

def set_partitions_into(k, p):
    """Brute-force oracle: partitions of {0..k-1} into exactly p blocks."""
    if p == 0:
        return 1 if k == 0 else 0
    count = 0
    for assignment in itertools.product(range(p), repeat=k):
        if len(set(assignment)) != p:
            continue
        # normalize: block labels must appear in first-use order
        order = []
        for a in assignment:
            if a not in order:
                order.append(a)
        if order == sorted(order):
            count += 1
    return count


def test_stirling_first_examples():
    assert [stirling_first(3, k) for k in (1, 2, 3)] == [2, 3, 1]
    assert stirling_first(3, 0) == 0
    assert stirling_first(0, 0) == 1
    assert stirling_first(4, 2) == 11
    # row sums are factorials: evaluate the rising factorial at x = 1
    for n in range(1, 9):
        assert sum(stirling_first(n, k) for k in range(n + 1)) == factorial(n)


def test_stirling_second_against_brute_force():
    for k in range(0, 7):
        for p in range(0, k + 1):
            assert stirling_second(k, p) == set_partitions_into(k, p)
    assert stirling_second(3, 2) == 3
    assert stirling_second(5, 7) == 0


def test_fubini_examples():
    assert [fubini(k) for k in (1, 2, 3)] == [1, 3, 13]
    assert fubini(0) == 1
    assert [fubini(k) for k in (4, 5)] == [75, 541]


def test_generalized_count_examples():
    assert generalized_count(0, 1, 1) == 1
    assert generalized_count(2, 2, 2) == 10
    with pytest.raises(DomainError):
        generalized_count(2, 0, 1)


def test_generalized_count_vs_weighted_census():
    m2 = metamatrix(2, method="enumeration")
    lhs = sum(
        comb(2, i) * comb(2, j) * m2.entry(i, j)
        for i in (1, 2)
        for j in (1, 2)
    )
    assert lhs == generalized_count(2, 2, 2) == 10
    for n in range(1, 8):
        assert verify_generalized_counts(n)["pass"]


# ---------------------------------------------------------------------------
# the meta-matrix

def test_metamatrix_3():
    assert metamatrix(3).entries == M3
    assert metamatrix(3, method="enumeration").entries == M3


def test_metamatrix_1():
    assert metamatrix(1).entries == ((1,),)


def test_metamatrix_methods_agree():
    for n in range(1, 7):
        assert metamatrix(n).entries == metamatrix(n, "enumeration").entries
    assert metamatrix(4).total() == 281


def test_metamatrix_symmetry_and_corners():
    for n in range(1, 8):
        m = metamatrix(n)
        assert m.entries == tuple(zip(*m.entries))
        assert m.entry(1, 1) == 1
        assert m.entry(n, n) == factorial(n)
    with pytest.raises(DomainError):
        MetaMatrix(2, ((1, 2), (3, 2)))
    with pytest.raises(CapacityError):
        metamatrix(8, method="enumeration")
    with pytest.raises(DomainError):
        metamatrix(3, method="guesswork")


def test_single_entries_match_census():
    for n in range(1, 6):
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                assert metamatrix_entry(n, p, q) == len(enumerate_cm(n, p=p, q=q))


def test_total_count():
    assert total_count(1) == 1
    assert total_count(3) == 33
    assert total_count(4) == 281
    assert (2 * 1 + 3 * 9 + 1 * 169) // 6 == 33  # the Fubini-square route
    for n in range(1, 8):
        assert total_count(n) == count_cm(n)


# ---------------------------------------------------------------------------
# factorizations and determinants

def test_structured_matrix_shapes():
    p = structured_matrix("pascal", 3).grid()
    assert p == [[1, 0, 0], [2, 1, 0], [3, 3, 1]]
    v = structured_matrix("vandermonde", 3).grid()
    assert v == [[1, 1, 1], [2, 4, 8], [3, 9, 27]]
    s = structured_matrix("stirling_second", 3).grid()
    assert s == [[1, 1, 1], [0, 1, 3], [0, 0, 1]]
    s_star = structured_matrix("stirling_scaled", 3).grid()
    assert s_star[0] == [1, Fraction(1, 2), Fraction(1, 6)]
    with pytest.raises(DomainError):
        structured_matrix("cauchy", 3)
    with pytest.raises(DomainError):
        structured_matrix("diagonal", 3)


@pytest.mark.parametrize("n", list(range(1, 13)))
def test_factorizations_exact(n):
    report = verify_factorizations(n)
    assert report["pass"], report
    assert set(report["identities"]) == {
        "pascal_inverse",
        "pascal_sandwich",
        "stirling_triangular",
        "stirling_diagonal",
        "binomial_diagonalized",
        "meta_diagonalized",
        "vandermonde_gauss",
        "scaled_stirling_gauss",
    }


def test_determinant_sequence():
    values = {n: det_metamatrix(n) for n in range(1, 6)}
    assert [values[n].closed_form for n in (1, 2, 3, 4, 5)] == [1, 1, 4, 99, 20160]
    for n, rep in values.items():
        assert rep.direct == rep.closed_form
        assert rep.equal and rep.integral


def test_pascal_inverse_up_to_20():
    from stochastihedron.exactlinalg import identity, mat_mul

    for n in (5, 13, 20):
        p = structured_matrix("pascal", n).grid()
        p_star = structured_matrix("pascal_inverse", n).grid()
        assert mat_mul(p, p_star) == identity(n)


def test_determinant_direct_and_integrality_ranges():
    for n in range(1, 13):
        rep = det_metamatrix(n)
        assert rep.equal is True
    for n in range(13, 21):
        rep = det_metamatrix(n)
        assert rep.direct is None
        assert rep.integral
    with pytest.raises(CapacityError):
        det_metamatrix(21)


# ---------------------------------------------------------------------------
# total positivity

def test_total_positivity_metamatrix():
    ok, witness = total_positivity(metamatrix(3))
    assert ok and witness is None
    assert sum(comb(3, k) ** 2 for k in range(1, 4)) == 19  # minors scanned


def test_total_positivity_counterexamples():
    ok, witness = total_positivity([[1, 2], [2, 1]])
    assert not ok
    assert witness == {"rows": (1, 2), "cols": (1, 2), "value": -3}
    ok, witness = total_positivity([[1, 0], [0, 1]])
    assert not ok
    assert witness["value"] == 0 and witness["rows"] == (1,)


def test_total_positivity_guards():
    with pytest.raises(DomainError):
        total_positivity([[1, 2]])
    with pytest.raises(CapacityError):
        total_positivity([[1] * 8] * 8)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_metamatrix_is_totally_positive(n):
    ok, witness = total_positivity(metamatrix(n))
    assert ok, witness
