from fractions import Fraction

import pytest

from divlambda.divisors import Graph, PreconditionError, jacobian
from divlambda.molien import (
    CycloElement,
    MolienConsistencyError,
    all_classes_series,
    character_sum,
    character_table,
    cyclotomic_polynomial,
    cyclotomic_reduce,
    molien_lambda,
)
from divlambda.primsec import lambda_gf_primsec, series


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_sum_of_roots_of_unity():
    for m in range(1, 13):
        total = CycloElement([1] * m)
        assert cyclotomic_reduce(total) == (1 if m == 1 else 0)


def test_irrational_value_detected():
    with pytest.raises(ArithmeticError):
        cyclotomic_reduce(CycloElement.monomial(5, 1))
    # omega + omega^-1 for m = 6 is 1
    assert cyclotomic_reduce(CycloElement.monomial(6, 1) + CycloElement.monomial(6, 5)) == 1


def test_group_ring_arithmetic():
    x = CycloElement.monomial(4, 1)
    assert (x * x * x * x).coeffs == [1, 0, 0, 0]
    assert x.rotate(3).coeffs == [1, 0, 0, 0]
    assert (x * Fraction(1, 2)).coeffs[1] == Fraction(1, 2)


def test_cycle_character_exponents():
    table = character_table(Graph.cycle(5))
    assert table.exponent == 5
    # chi_1 acts on v_i by omega^i and trivially on q
    assert table.exponents[1] == (1, 2, 3, 4, 0)


def test_character_orthogonality():
    G = Graph.complete(4)
    for c in jacobian(G).classes():
        expected = 1 if not any(c) else 0
        assert character_sum(G, c) == expected


def test_diamond_all_classes():
    G = Graph.diamond()
    got = all_classes_series(G, 12)
    for c, s in got.items():
        assert s == series(lambda_gf_primsec(G, c), 12)


def test_k5_zero_class():
    K5 = Graph.complete(5)
    assert molien_lambda(K5, (0, 0, 0), 25) == [
        1, 1, 1, 1, 2, 6, 6, 6, 7, 11, 21, 21, 22, 26, 36, 56, 57, 61, 71, 91, 126, 130, 140, 160, 195, 251,
    ]


def test_tree_has_trivial_group():
    P = Graph.path(3)
    assert molien_lambda(P, (), 4) == [1, 3, 6, 10, 15]


def test_negative_depth():
    with pytest.raises(PreconditionError):
        molien_lambda(Graph.diamond(), (0,), -1)


def test_consistency_error_is_arithmetic():
    assert issubclass(MolienConsistencyError, ArithmeticError)
