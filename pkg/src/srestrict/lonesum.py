"""Lonesum matrices: ordered-partition encoding, restricted counts and
lonesum-decomposable counts.

Convention: S1 restricts rows (how many rows share a type, and the number of
all-zero rows), S2 restricts columns. Indices are 0-based.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from srestrict import series
from srestrict.blockset import ALL, BlockSizeSet
from srestrict.series import EGF2
from srestrict.stirling import stirling_triangle

__all__ = [
    "LonesumError",
    "BinaryMatrix",
    "OrderedPartitionPair",
    "DecompositionReport",
    "is_lonesum",
    "reconstruct",
    "decode",
    "count_restricted",
    "lonesum_egf",
    "count_egf",
    "classical_lo",
    "decompose",
    "decomposable_egf",
    "decomposable_count",
]


class LonesumError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryMatrix:
    n: int
    k: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n or any(len(r) != self.k for r in self.rows):
            raise LonesumError("row data does not match the dimensions")
        if any(v not in (0, 1) for r in self.rows for v in r):
            raise LonesumError("entries must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], k: int | None = None) -> BinaryMatrix:
        rs = tuple(tuple(int(v) for v in r) for r in rows)
        if k is None:
            k = len(rs[0]) if rs else 0
        return cls(len(rs), k, rs)

    @classmethod
    def from_text(cls, text: str) -> BinaryMatrix:
        """One row per line as a string of 0/1 characters; blank lines ignored."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise LonesumError(f"bad matrix row {ln!r}")
        return cls.from_rows([[int(ch) for ch in ln] for ln in lines])

    @classmethod
    def zeros(cls, n: int, k: int) -> BinaryMatrix:
        return cls(n, k, tuple((0,) * k for _ in range(n)))

    def to_text(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.rows)

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(r[c] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(c) for c in range(self.k)]

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def col_sums(self) -> list[int]:
        return [sum(col) for col in self.columns()]

    def transpose(self) -> BinaryMatrix:
        return BinaryMatrix(self.k, self.n, tuple(self.columns()))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> BinaryMatrix:
        return BinaryMatrix(
            len(rows), len(cols), tuple(tuple(self.rows[r][c] for c in cols) for r in rows)
        )


@dataclass(frozen=True)
class OrderedPartitionPair:
    row_blocks: tuple[tuple[int, ...], ...]
    col_blocks: tuple[tuple[int, ...], ...]
    zero_rows: tuple[int, ...] = ()
    zero_cols: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return len(self.row_blocks)

    def validate(self, n: int, k: int) -> None:
        if len(self.row_blocks) != len(self.col_blocks):
            raise LonesumError("row and column partitions need the same number of blocks")
        for blocks, zeros, size, what in (
            (self.row_blocks, self.zero_rows, n, "row"),
            (self.col_blocks, self.zero_cols, k, "column"),
        ):
            if any(not b for b in blocks):
                raise LonesumError(f"empty {what} block")
            flat = [i for b in blocks for i in b] + list(zeros)
            if sorted(flat) != list(range(size)):
                raise LonesumError(f"{what} blocks and zero set must partition 0..{size - 1}")


@dataclass(frozen=True)
class DecompositionReport:
    order: int
    components: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    decomposable: bool


def is_lonesum(M: BinaryMatrix) -> bool:
    """True iff M avoids both 2x2 permutation matrices.

    Equivalent to: the row supports form a chain under inclusion.
    """
    supports = sorted({frozenset(c for c, v in enumerate(r) if v) for r in M.rows}, key=len)
    return all(a <= b for a, b in zip(supports, supports[1:]))


def reconstruct(pp: OrderedPartitionPair, n: int, k: int) -> BinaryMatrix:
    """Entry (r, c) is 1 iff the column block of c comes no later than the row block of r."""
    pp.validate(n, k)
    rb = {r: i for i, block in enumerate(pp.row_blocks) for r in block}
    cb = {c: j for j, block in enumerate(pp.col_blocks) for c in block}
    rows = []
    for r in range(n):
        if r not in rb:
            rows.append((0,) * k)
        else:
            rows.append(tuple(int(c in cb and cb[c] <= rb[r]) for c in range(k)))
    return BinaryMatrix(n, k, tuple(rows))


def decode(M: BinaryMatrix) -> OrderedPartitionPair:
    """Inverse of :func:`reconstruct`.

    Equal nonzero rows form one block; row blocks ascend by row sum and
    column blocks descend by column sum.
    """
    if not is_lonesum(M):
        raise LonesumError("matrix is not lonesum")

    def group(vectors: list[tuple[int, ...]], descending: bool):
        types: dict[tuple[int, ...], list[int]] = defaultdict(list)
        zeros = []
        for i, v in enumerate(vectors):
            (types[v] if any(v) else zeros).append(i)
        sums = [sum(t) for t in types]
        assert len(set(sums)) == len(sums), "distinct types share a sum"
        ordered = sorted(types, key=sum, reverse=descending)
        return tuple(tuple(types[t]) for t in ordered), tuple(zeros)

    row_blocks, zero_rows = group(list(M.rows), descending=False)
    col_blocks, zero_cols = group(M.columns(), descending=True)
    if len(row_blocks) != len(col_blocks):
        raise LonesumError("row and column type counts differ")
    return OrderedPartitionPair(row_blocks, col_blocks, zero_rows, zero_cols)


def count_restricted(n: int, k: int, S1: BlockSizeSet, S2: BlockSizeSet) -> int:
    """sum_m m! {n, m}_S1 m! {k, m}_S2: no all-zero rows or columns."""
    rows = stirling_triangle(S1, n).row(n)
    cols = stirling_triangle(S2, k).row(k)
    return sum(
        factorial(m) ** 2 * rows[m] * cols[m] for m in range(min(n, k) + 1)
    )


def _block_egfs(S1: BlockSizeSet, S2: BlockSizeSet, nx: int, ny: int) -> tuple[EGF2, EGF2]:
    return EGF2.from_x(S1.egf(nx), ny), EGF2.from_y(S2.egf(ny), nx)


def lonesum_egf(S1: BlockSizeSet, S2: BlockSizeSet, nx: int, ny: int, variant: str) -> EGF2:
    """1/(1 - E1 E2), or (1 + E1)(1 + E2)/(1 - E1 E2) for ``with_zeros``."""
    e1, e2 = _block_egfs(S1, S2, nx, ny)
    base = series.quasi_inverse(e1 * e2)
    if variant == "no_zeros":
        return base
    if variant == "with_zeros":
        return (1 + e1) * (1 + e2) * base
    raise ValueError(f"unknown variant {variant!r}")


def count_egf(
    n: int,
    k: int,
    S1: BlockSizeSet,
    S2: BlockSizeSet,
    variant: str = "no_zeros",
    orders: tuple[int, int] | None = None,
) -> int:
    nx, ny = orders or (n, k)
    if nx < n or ny < k:
        raise ValueError("truncation orders must cover (n, k)")
    v = series.egf_coeff2(lonesum_egf(S1, S2, nx, ny, variant), n, k)
    assert v.denominator == 1
    return int(v)


def classical_lo(n: int, k: int) -> int:
    """|Lo(n, k)| = sum_m m! {n+1, m+1} m! {k+1, m+1}."""
    rows = stirling_triangle(ALL, n + 1).row(n + 1)
    cols = stirling_triangle(ALL, k + 1).row(k + 1)
    return sum(factorial(m) ** 2 * rows[m + 1] * cols[m + 1] for m in range(min(n, k) + 1))


def decompose(M: BinaryMatrix) -> DecompositionReport:
    """Split the nonzero rows/columns into connected components of the 1-entries."""
    parent = list(range(M.n + M.k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for r, row in enumerate(M.rows):
        for c, v in enumerate(row):
            if v:
                parent[find(r)] = find(M.n + c)
    comps: dict[int, tuple[list[int], list[int]]] = {}
    for r, row in enumerate(M.rows):
        if any(row):
            comps.setdefault(find(r), ([], []))[0].append(r)
    for c in range(M.k):
        if any(M.column(c)):
            comps.setdefault(find(M.n + c), ([], []))[1].append(c)
    components = tuple(
        (tuple(rs), tuple(cs)) for rs, cs in sorted(comps.values(), key=lambda rc: rc[0][0])
    )
    ok = all(is_lonesum(M.submatrix(rs, cs)) for rs, cs in components)
    return DecompositionReport(len(components), components, ok)


def decomposable_egf(
    S1: BlockSizeSet, S2: BlockSizeSet, nx: int, ny: int, r: int | None = None
) -> EGF2:
    """(1+E1)(1+E2)/r! (L - 1)^r, or (1+E1)(1+E2) exp(L - 1) when r is None."""
    e1, e2 = _block_egfs(S1, S2, nx, ny)
    inner = series.quasi_inverse(e1 * e2) - 1
    zeros = (1 + e1) * (1 + e2)
    if r is None:
        return zeros * series.exp(inner)
    if r < 0:
        raise ValueError("r must be >= 0")
    return zeros * series.pow_int(inner, r) * Fraction(1, factorial(r))


def decomposable_count(
    n: int,
    k: int,
    S1: BlockSizeSet,
    S2: BlockSizeSet,
    r: int | None = None,
    orders: tuple[int, int] | None = None,
) -> int:
    nx, ny = orders or (n, k)
    if nx < n or ny < k:
        raise ValueError("truncation orders must cover (n, k)")
    v = series.egf_coeff2(decomposable_egf(S1, S2, nx, ny, r), n, k)
    assert v.denominator == 1
    return int(v)
