from fractions import Fraction
from math import comb

import pytest

from srestrict import lonesum as lo
from srestrict import polybern as pb
from srestrict import series
from srestrict.blockset import ALL, ODD, TEST_FAMILY
from srestrict.series import EGF, egf_coeff


def bernoulli_minus(n_max):
    """B_0..B_n with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    B = [Fraction(1)]
    for m in range(1, n_max + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B


def test_poly_bernoulli_examples():
    assert pb.poly_bernoulli(2, -2, ALL) == 14
    for k in range(-3, 4):
        for S in TEST_FAMILY.values():
            assert pb.poly_bernoulli(0, k, S) == 1
    assert pb.poly_bernoulli(1, 1, ALL) == Fraction(1, 2)
    # hand evaluation: 1/4 - 2/3 + 3/8
    assert pb.poly_bernoulli(3, 2, ALL) == Fraction(-1, 24)
    assert pb.poly_bernoulli(2, 2, ALL) == Fraction(-1, 36)


def test_polylog_series_examples():
    assert pb.polylog_series(1, 4) == EGF([0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
    assert pb.polylog_series(0, 3) == EGF([0, 1, 1, 1])
    assert pb.polylog_series(-1, 3) == EGF([0, 1, 2, 3])


def test_pb_egf_examples():
    assert pb.pb_egf(3, 2, ALL) == pb.poly_bernoulli(3, 2, ALL)
    assert pb.pb_egf(0, 3, ODD) == 1
    assert pb.pb_egf(2, -2, ALL) == 14


def test_iterated_examples():
    for n in range(9):
        assert pb.pb_iterated_integral(n, 1, ALL) == pb.pb_egf(n, 1, ALL)
    assert pb.pb_iterated_integral(4, 3, ALL) == pb.pb_egf(4, 3, ALL)
    assert pb.pb_iterated_integral(5, 2, ODD) == pb.pb_egf(5, 2, ODD)
    with pytest.raises(ValueError):
        pb.pb_iterated_integral(2, 0, ALL)


def test_k1_base_case_is_log_quotient():
    u = pb.neg_block_series(ALL, 9)
    expected = series.div_exact(-series.log1p(-u), u)
    assert pb.pb_iterated_series(1, ALL, 8) == expected


def test_route_agreement(family_set):
    for k in range(-4, 5):
        gf = pb.pb_egf_series(k, family_set, 12)
        assert [egf_coeff(gf, n) for n in range(13)] == [
            pb.poly_bernoulli(n, k, family_set) for n in range(13)
        ]


def test_iterated_agreement(family_set):
    for k in range(1, 5):
        s = pb.pb_iterated_series(k, family_set, 12)
        t = pb.pb_egf_series(k, family_set, 12)
        assert s == t


def test_brewbaker():
    for n in range(8):
        for k in range(8):
            assert pb.poly_bernoulli(n, -k, ALL) == lo.classical_lo(n, k)


def test_classical_bernoulli():
    B = bernoulli_minus(14)
    for n in range(15):
        assert pb.poly_bernoulli(n, 1, ALL) == (-1) ** n * B[n]


def test_negative_index_symmetry():
    for n in range(8):
        for k in range(8):
            assert pb.poly_bernoulli(n, -k, ALL) == pb.poly_bernoulli(k, -n, ALL)


def test_integer_for_classical_negative_k():
    for n in range(8):
        for k in range(0, 5):
            assert pb.poly_bernoulli(n, -k, ALL).denominator == 1
