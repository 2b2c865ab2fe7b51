import itertools

import pytest

from srestrict import lonesum as lo
from srestrict import oracle
from srestrict.blockset import ALL, TEST_FAMILY, finite
from srestrict.lonesum import BinaryMatrix, OrderedPartitionPair
from srestrict.series import egf_coeff2

EXAMPLE_TEXT = """
01001000
11111010
11111111
11111111
01011010
01011010
11111010
01001000
"""


def one_based(blocks):
    return tuple(tuple(i - 1 for i in b) for b in blocks)


EXAMPLE_PAIR = OrderedPartitionPair(
    one_based([(1, 8), (5, 6), (2, 7), (3, 4)]),
    one_based([(2, 5), (4, 7), (1, 3), (6, 8)]),
)


def all_matrices(n, k):
    for bits in itertools.product((0, 1), repeat=n * k):
        yield BinaryMatrix(n, k, tuple(tuple(bits[r * k : (r + 1) * k]) for r in range(n)))


def test_text_format_round_trip():
    M = BinaryMatrix.from_text(EXAMPLE_TEXT)
    assert (M.n, M.k) == (8, 8)
    assert BinaryMatrix.from_text(M.to_text()) == M
    with pytest.raises(lo.LonesumError):
        BinaryMatrix.from_text("012")


def test_is_lonesum_examples():
    assert not lo.is_lonesum(BinaryMatrix.from_rows([[1, 0], [0, 1]]))
    assert lo.is_lonesum(BinaryMatrix.from_rows([[1] * 3] * 4))
    assert lo.is_lonesum(BinaryMatrix.from_text(EXAMPLE_TEXT))


def test_is_lonesum_matches_definition():
    for n, k in [(2, 2), (2, 3), (3, 3), (3, 2)]:
        for M in all_matrices(n, k):
            masks = tuple(sum(v << c for c, v in enumerate(r)) for r in M.rows)
            assert lo.is_lonesum(M) == oracle.is_lonesum_bruteforce(masks, k)


def test_reconstruct_example():
    assert lo.reconstruct(EXAMPLE_PAIR, 8, 8) == BinaryMatrix.from_text(EXAMPLE_TEXT)
    assert lo.reconstruct(OrderedPartitionPair((), (), (0, 1), (0, 1, 2)), 2, 3) == BinaryMatrix.zeros(2, 3)
    small = lo.reconstruct(OrderedPartitionPair(((0,), (1,)), ((0,), (1,))), 2, 2)
    assert small.rows == ((1, 0), (1, 1))
    assert lo.decode(small) == OrderedPartitionPair(((0,), (1,)), ((0,), (1,)))


def test_reconstruct_rejects_bad_pair():
    with pytest.raises(lo.LonesumError):
        lo.reconstruct(OrderedPartitionPair(((0,),), ()), 1, 1)
    with pytest.raises(lo.LonesumError):
        lo.reconstruct(OrderedPartitionPair(((0,),), ((0,),)), 2, 1)


def test_decode_examples():
    assert lo.decode(BinaryMatrix.from_text(EXAMPLE_TEXT)) == EXAMPLE_PAIR
    z = lo.decode(BinaryMatrix.zeros(2, 2))
    assert z.m == 0 and z.zero_rows == (0, 1) and z.zero_cols == (0, 1)
    ones = lo.decode(BinaryMatrix.from_rows([[1, 1, 1], [1, 1, 1]]))
    assert ones.row_blocks == ((0, 1),) and ones.col_blocks == ((0, 1, 2),)
    with pytest.raises(lo.LonesumError):
        lo.decode(BinaryMatrix.from_rows([[1, 0], [0, 1]]))


def test_round_trip_exhaustive():
    for n in range(5):
        for k in range(5):
            for M in all_matrices(n, k):
                if lo.is_lonesum(M):
                    assert lo.reconstruct(lo.decode(M), n, k) == M


def test_count_restricted_examples():
    assert lo.count_restricted(2, 2, ALL, ALL) == 5
    assert lo.count_restricted(2, 3, finite((2,)), finite((2,))) == 0
    assert lo.count_restricted(1, 1, ALL, ALL) == 1


def test_count_egf_examples():
    assert lo.count_egf(2, 2, ALL, ALL, "no_zeros") == 5
    assert lo.count_egf(2, 2, ALL, ALL, "with_zeros") == 14
    assert lo.count_egf(0, 0, finite((3,)), finite((2,)), "with_zeros") == 1
    assert lo.count_egf(3, 2, ALL, ALL, "no_zeros", orders=(6, 6)) == lo.count_restricted(3, 2, ALL, ALL)


def test_classical_examples():
    assert lo.classical_lo(2, 2) == 14
    assert lo.classical_lo(1, 1) == 2
    assert lo.classical_lo(2, 1) == 4


def test_closed_form_equals_egf():
    names = sorted(TEST_FAMILY)
    for a, b in itertools.product(names, repeat=2):
        S1, S2 = TEST_FAMILY[a], TEST_FAMILY[b]
        egf = lo.lonesum_egf(S1, S2, 6, 6, "no_zeros")
        for n in range(7):
            for k in range(7):
                assert egf_coeff2(egf, n, k) == lo.count_restricted(n, k, S1, S2)


def test_classical_symmetry_and_egf():
    for n in range(7):
        for k in range(7):
            assert lo.classical_lo(n, k) == lo.classical_lo(k, n)
            assert lo.classical_lo(n, k) == lo.count_egf(n, k, ALL, ALL, "with_zeros")


@pytest.mark.parametrize("n, k", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (4, 3)])
def test_with_zeros_matches_scan(n, k):
    scan = oracle.scan_matrices(n, k)
    for S1, S2 in itertools.product(TEST_FAMILY.values(), repeat=2):
        assert lo.count_egf(n, k, S1, S2, "with_zeros") == scan.lonesum_restricted(S1, S2, True)
        assert lo.count_restricted(n, k, S1, S2) == scan.lonesum_restricted(S1, S2, False)


def test_decompose_examples():
    U = BinaryMatrix.from_rows([[1, 1, 0], [1, 0, 1]])
    assert not lo.decompose(U).decomposable
    block = BinaryMatrix.from_rows([[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    rep = lo.decompose(block)
    assert rep.decomposable and rep.order == 2
    assert rep.components == (((0, 1), (0, 1)), ((2,), (2,)))


def test_lonesum_without_zero_lines_is_connected():
    for n in range(1, 4):
        for k in range(1, 4):
            for M in all_matrices(n, k):
                if lo.is_lonesum(M) and all(M.row_sums()) and all(M.col_sums()):
                    rep = lo.decompose(M)
                    assert rep.decomposable and rep.order == 1


def test_decompose_matches_u_criterion():
    for n in range(4):
        for k in range(4):
            for M in all_matrices(n, k):
                masks = tuple(sum(v << c for c, v in enumerate(r)) for r in M.rows)
                assert lo.decompose(M).decomposable == (not oracle.contains_u_pattern(masks, k))


def test_decomposable_count_examples():
    assert lo.decomposable_count(1, 1, ALL, ALL, r=1) == 1
    S3, S2 = finite((3,)), finite((2,))
    assert lo.decomposable_count(3, 2, S3, S2, r=0) == 1
    assert lo.decomposable_count(2, 2, S3, S2, r=0) == 0
    assert lo.decomposable_count(0, 0, S3, S2, r=0) == 1
    # every 2x2 matrix decomposes: zero matrix, 13 of order 1, two of order 2
    assert lo.decomposable_count(2, 2, ALL, ALL) == oracle.scan_matrices(2, 2).decomposable(ALL, ALL) == 16
    assert [lo.decomposable_count(2, 2, ALL, ALL, r) for r in range(3)] == [1, 13, 2]


def test_decomposable_sum_over_r():
    for S1, S2 in itertools.product(list(TEST_FAMILY.values())[:4], repeat=2):
        total = lo.decomposable_egf(S1, S2, 6, 6)
        parts = [lo.decomposable_egf(S1, S2, 6, 6, r) for r in range(7)]
        for n in range(7):
            for k in range(7):
                assert egf_coeff2(total, n, k) == sum(
                    egf_coeff2(p, n, k) for p in parts[: min(n, k) + 1]
                )
