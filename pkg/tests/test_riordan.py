import random
from fractions import Fraction
from math import comb

import pytest

from srestrict import riordan as ri
from srestrict import stirling as st
from srestrict.blockset import ALL, EVEN, ODD, TEST_FAMILY, finite, up_to
from srestrict.series import EGF

S136 = finite((1, 3, 6))
WITH_ONE = {name: S for name, S in TEST_FAMILY.items() if S.contains(1)}

KNOWN_M136 = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 4, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 10, 0, 1, 0, 0, 0],
    [0, 1, 10, 0, 20, 0, 1, 0, 0],
    [0, 0, 7, 70, 0, 35, 0, 1, 0],
    [0, 0, 0, 28, 280, 0, 56, 0, 1],
]


def cosh(order):
    return EGF.from_egf([1 - n % 2 for n in range(order + 1)])


def sinh(order):
    return EGF.from_egf([n % 2 for n in range(order + 1)])


def x(order):
    return EGF.monomial(1, order)


def test_build_examples():
    assert ri.pascal(5).as_int_rows() == [[comb(n, k) for k in range(5)] for n in range(5)]
    assert ri.identity(4).entries == ri.identity_matrix(4)
    pbar = ri.build(cosh(4), x(4), 5).as_int_rows()
    for n in range(5):
        for k in range(5):
            # column 0 is cosh x itself: 1 at every even n
            assert pbar[n][k] == comb(n, k) * (1 + (-1) ** (n + k)) // 2


def test_build_preconditions():
    with pytest.raises(ri.RiordanError):
        ri.build(EGF.zero(3), x(3), 4)
    with pytest.raises(ri.RiordanError):
        ri.build(EGF.one(3), EGF([1, 1, 0, 0]), 4)
    with pytest.raises(ri.RiordanError):
        ri.build(EGF.one(3), EGF.monomial(2, 3), 4)


def test_stirling_matrix_examples():
    assert ri.stirling_matrix(S136, 9).as_int_rows() == KNOWN_M136
    assert ri.stirling_matrix(ALL, 4).as_int_rows() == [
        [1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 3, 1]
    ]
    with pytest.raises(ri.RiordanError):
        ri.stirling_matrix(EVEN, 5)


def test_diagonal_invariant():
    A = ri.build(EGF([2, 1, 1, 0, 0]), EGF([0, 3, 1, 0, 0]), 5)
    for n in range(5):
        assert A[n, n] == 2 * 3**n


def test_multiply_examples():
    P = ri.pascal(6)
    PP = ri.multiply(P, P)
    assert PP.as_int_rows() == [
        [comb(n, k) * 2 ** (n - k) for k in range(6)] for n in range(6)
    ]
    A = ri.stirling_matrix(S136, 6)
    assert ri.multiply(A, ri.identity(6)).entries == A.entries
    # <cosh x, x> * <1, sinh x> = <cosh x, sinh x>; [1] (+) that is M_Odd
    N = 8
    prod = ri.multiply(ri.build(cosh(N - 2), x(N - 2), N - 1), ri.build(EGF.one(N - 2), sinh(N - 2), N - 1))
    assert ri.direct_sum_one(prod.entries) == ri.stirling_matrix(ODD, N).entries


def _random_array(rng, N):
    g = EGF([rng.choice([1, 2, -1])] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(N - 1)])
    f = EGF([0, rng.choice([1, -2, 3])] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(N - 2)])
    return ri.build(g, f, N)


def test_group_law_random():
    rng = random.Random(7)
    for N in (3, 6, 10):
        for _ in range(4):
            A, B = _random_array(rng, N), _random_array(rng, N)
            assert ri.multiply(A, B).entries == ri.matmul(A.entries, B.entries)


def test_group_law_family():
    for S in WITH_ONE.values():
        for T in WITH_ONE.values():
            A, B = ri.stirling_matrix(S, 10), ri.stirling_matrix(T, 10)
            assert ri.multiply(A, B).entries == ri.matmul(A.entries, B.entries)


def test_inverse_examples():
    T = ri.inverse(ri.stirling_matrix(S136, 9))
    assert [int(v) for v in T[8]] == [0, 84, -2800, -28, 840, 0, -56, 0, 1]
    assert ri.inverse(ri.identity(5)) == ri.identity_matrix(5)
    Pinv = ri.inverse(ri.pascal(6))
    assert [[int(v) for v in r] for r in Pinv] == [
        [(-1) ** (n - k) * comb(n, k) for k in range(6)] for n in range(6)
    ]


def test_inverse_singular():
    with pytest.raises(ri.RiordanError):
        ri.inverse([[1, 0], [1, 0]])


@pytest.mark.parametrize("name", sorted(WITH_ONE))
def test_orthogonality(name):
    S = WITH_ONE[name]
    M = ri.stirling_matrix(S, 10)
    T = ri.inverse(M)
    assert ri.matmul(M.entries, T) == ri.identity_matrix(10)
    assert ri.matmul(T, M.entries) == ri.identity_matrix(10)


@pytest.mark.parametrize("name", sorted(WITH_ONE))
def test_inverse_relations(name):
    S = WITH_ONE[name]
    M = ri.stirling_matrix(S, 9)
    T = ri.inverse(M)
    rng = random.Random(name)
    for _ in range(5):
        f = [rng.randint(-50, 50) for _ in range(9)]
        g = [sum(M[n, k] * f[k] for k in range(9)) for n in range(9)]
        assert [sum(T[n][k] * g[k] for k in range(9)) for n in range(9)] == f


@pytest.mark.parametrize("name", sorted(WITH_ONE))
def test_row_sums_are_bell_numbers(name):
    S = WITH_ONE[name]
    M = ri.stirling_matrix(S, 10)
    assert [sum(r) for r in M.entries] == [st.bell_number(n, S) for n in range(10)]


def test_factorize_examples():
    for A in (
        ri.stirling_matrix(ODD, 8),
        ri.pascal(6),
        ri.stirling_matrix(up_to(2), 7),
        ri.build(EGF([2, 1, 1, 0, 0, 0]), EGF([0, 3, 1, 2, 0, 0]), 6),
    ):
        left, right = ri.factorize(A)
        assert ri.matmul(left.entries, right) == A.entries
    left, right = ri.factorize(ri.pascal(6))
    assert left.entries == ri.pascal(6).entries
    assert right == ri.identity_matrix(6)


def test_odd_factorization_matches_display():
    # M_Odd = <1, x> * ([1] (+) <cosh x, sinh x>) and <cosh, sinh> = <cosh, x> * <1, sinh>
    N = 9
    left, right = ri.factorize(ri.stirling_matrix(ODD, N))
    inner = ri.multiply(ri.build(cosh(N - 2), x(N - 2), N - 1), ri.build(EGF.one(N - 2), sinh(N - 2), N - 1))
    assert right == ri.direct_sum_one(inner.entries)
    assert left.entries == ri.identity_matrix(N)


def test_odd_product_prefix_examples():
    assert ri.odd_product_prefix(1) == ri.identity_matrix(1)
    head = [[int(v) for v in r] for r in ri.odd_product_prefix(5)]
    assert head == [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 1, 0, 1, 0],
        [0, 0, 4, 0, 1],
    ]
    assert ri.odd_product_prefix(6)[3][1] == 1


@pytest.mark.parametrize("N", range(1, 11))
def test_odd_product_prefix_matches_m_odd(N):
    assert ri.odd_product_prefix(N) == ri.stirling_matrix(ODD, N).entries


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def cofactor_det(M):
    """Plain Laplace expansion along the first row, memoized on the column set."""
    n = len(M)
    memo = {}

    def det(row, cols):
        if row == n:
            return [1]
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = [0]
        for pos, c in enumerate(cols):
            entry = M[row][c]
            if not any(entry):
                continue
            minor = det(row + 1, cols[:pos] + cols[pos + 1 :])
            term = _poly_mul(entry, minor)
            if pos % 2:
                term = [-t for t in term]
            total = _poly_add(total, term)
        memo[key] = total
        return total

    return det(0, tuple(range(n)))


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def test_bell_det_examples():
    assert str(ri.bell_det(6, S136)) == "x^6+20x^4+10x^2+x"
    assert ri.bell_det(0, ODD).coeffs == (1,)
    assert ri.bell_det(4, ALL).coeffs == (0, 1, 7, 6, 1)
    with pytest.raises(ri.RiordanError):
        ri.bell_det(3, EVEN)


def test_det_matrix_matches_display():
    rows = ri.det_matrix(6, S136)
    assert [r[0] for r in rows[2]] == [0, 1, 0, -1, 0, 10, -1]
    assert [r[0] for r in rows[3]] == [0, 0, 1, 0, -4, 0, 70]


@pytest.mark.parametrize("name", sorted(WITH_ONE))
def test_bell_det_matches_cofactor_expansion(name):
    S = WITH_ONE[name]
    for n in range(9):
        det = cofactor_det(ri.det_matrix(n, S))
        det = [(-1) ** n * c for c in det]
        assert _trim(det) == _trim(ri.bell_det(n, S).coeffs)
        assert ri.bell_det(n, S).coeffs == st.bell_polynomial(n, S).coeffs
