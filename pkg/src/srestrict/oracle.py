"""Brute-force ground truth.

Nothing here imports the formula modules: every count is produced by
enumerating the objects themselves. Guardrails are hard errors.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator

from srestrict.blockset import BlockSizeSet

__all__ = [
    "GuardrailError",
    "set_partitions",
    "count_partitions",
    "count_ordered_partitions",
    "count_functions",
    "is_lonesum_bruteforce",
    "contains_u_pattern",
    "matrix_signature",
    "scan_matrices",
    "ScanResult",
    "max_cells",
]

MAX_PARTITION_N = 10
MAX_ORDERED_N = 8
MAX_FUNCTIONS = 10**7
DEFAULT_MAX_CELLS = 20
HARD_MAX_CELLS = 24


class GuardrailError(ValueError):
    """An oracle was asked for an instance beyond its exhaustive range."""


def max_cells() -> int:
    """Cell limit for matrix scans; RPT_MAX_CELLS may raise it up to 24."""
    raw = os.environ.get("RPT_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        raise GuardrailError(f"RPT_MAX_CELLS={raw!r} is not an integer") from None
    return max(0, min(value, HARD_MAX_CELLS))


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of {0..n-1} via restricted growth strings.

    Blocks are listed in order of their smallest element.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i])

    def blocks() -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(a) + 1)]
        for i, label in enumerate(a):
            out[label].append(i)
        return out

    while True:
        yield blocks()
        # next RGS in lexicographic order
        i = n - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0
            b[j] = max(b[j - 1], a[j - 1] + 1)


def count_partitions(n: int, S: BlockSizeSet, by_blocks: bool = False):
    """Partitions of [n] whose block sizes all lie in S.

    With ``by_blocks`` a list indexed by block count k is returned.
    """
    if n > MAX_PARTITION_N:
        raise GuardrailError(f"partition enumeration limited to n <= {MAX_PARTITION_N}")
    per_k = [0] * (n + 1)
    for p in set_partitions(n):
        if all(S.contains(len(block)) for block in p):
            per_k[len(p)] += 1
    return per_k if by_blocks else sum(per_k)


def count_ordered_partitions(n: int, S: BlockSizeSet) -> int:
    if n > MAX_ORDERED_N:
        raise GuardrailError(f"ordered partitions limited to n <= {MAX_ORDERED_N}")
    total = 0
    for p in set_partitions(n):
        if all(S.contains(len(block)) for block in p):
            total += factorial(len(p))
    return total


def count_functions(n: int, t: int, S: BlockSizeSet) -> int:
    """Maps [n] -> [t] whose nonempty fibers all have size in S."""
    if t**n > MAX_FUNCTIONS:
        raise GuardrailError(f"t**n = {t**n} exceeds {MAX_FUNCTIONS}")
    count = 0
    for g in itertools.product(range(t), repeat=n):
        sizes = Counter(g)
        if all(S.contains(c) for c in sizes.values()):
            count += 1
    return count


# -- 0/1 matrices -----------------------------------------------------------
# A matrix is a tuple of n row bitmasks over k columns; bit c is column c.


def _columns(rows: tuple[int, ...], k: int) -> list[int]:
    return [sum(((r >> c) & 1) << i for i, r in enumerate(rows)) for c in range(k)]


def is_lonesum_bruteforce(rows: tuple[int, ...], k: int) -> bool:
    """No 2x2 submatrix equals [[1,0],[0,1]] or [[0,1],[1,0]]."""
    for r1, r2 in itertools.combinations(rows, 2):
        for c1, c2 in itertools.combinations(range(k), 2):
            a, b = (r1 >> c1) & 1, (r1 >> c2) & 1
            c, d = (r2 >> c1) & 1, (r2 >> c2) & 1
            if a == d and b == c and a != b:
                return False
    return True


_U_COLS = Counter([(1, 1), (1, 0), (0, 1)])


def contains_u_pattern(rows: tuple[int, ...], k: int) -> bool:
    """True if some 2x3 or 3x2 submatrix is a row/column permutation of U or U^t.

    U = [[1,1,0],[1,0,1]]: as a 2x3 submatrix its columns are exactly the
    multiset {(1,1), (1,0), (0,1)}; the transpose case is the same test on rows.
    """
    for r1, r2 in itertools.combinations(rows, 2):
        for cols in itertools.combinations(range(k), 3):
            if Counter(((r1 >> c) & 1, (r2 >> c) & 1) for c in cols) == _U_COLS:
                return True
    cols_masks = _columns(rows, k)
    for c1, c2 in itertools.combinations(cols_masks, 2):
        for rs in itertools.combinations(range(len(rows)), 3):
            if Counter(((c1 >> r) & 1, (c2 >> r) & 1) for r in rs) == _U_COLS:
                return True
    return False


def _components(rows: tuple[int, ...], k: int) -> list[tuple[list[int], list[int]]]:
    """Connected components of the bipartite row/column graph (1-entries as edges)."""
    n = len(rows)
    seen_r = [False] * n
    seen_c = [False] * k
    comps = []
    for start in range(n):
        if seen_r[start] or rows[start] == 0:
            continue
        comp_r, comp_c = [], []
        stack = [("r", start)]
        seen_r[start] = True
        while stack:
            side, idx = stack.pop()
            if side == "r":
                comp_r.append(idx)
                for c in range(k):
                    if (rows[idx] >> c) & 1 and not seen_c[c]:
                        seen_c[c] = True
                        stack.append(("c", c))
            else:
                comp_c.append(idx)
                for r in range(n):
                    if (rows[r] >> idx) & 1 and not seen_r[r]:
                        seen_r[r] = True
                        stack.append(("r", r))
        comps.append((sorted(comp_r), sorted(comp_c)))
    return comps


def matrix_signature(rows: tuple[int, ...], k: int) -> tuple:
    """Summary of a matrix sufficient to evaluate every (S1, S2) predicate.

    Returns (lonesum, order, row_mults, zero_rows, col_mults, zero_cols) where
    ``order`` is the number of components when every component is lonesum and
    None otherwise, and ``*_mults`` are sorted multiplicities of the nonzero
    row/column types.
    """
    n = len(rows)
    lonesum = is_lonesum_bruteforce(rows, k)
    comps = _components(rows, k)
    order: int | None = len(comps)
    for comp_r, comp_c in comps:
        sub = tuple(sum(((rows[r] >> c) & 1) << j for j, c in enumerate(comp_c)) for r in comp_r)
        if not is_lonesum_bruteforce(sub, len(comp_c)):
            order = None
            break
    row_counts = Counter(r for r in rows if r)
    cols = _columns(rows, k)
    col_counts = Counter(c for c in cols if c)
    return (
        lonesum,
        order,
        tuple(sorted(row_counts.values())),
        n - sum(row_counts.values()),
        tuple(sorted(col_counts.values())),
        k - sum(col_counts.values()),
    )


def _scan_slice(args: tuple[int, int, int, int]) -> Counter:
    n, k, start, stride = args
    mask = (1 << k) - 1
    out: Counter = Counter()
    for idx in range(start, 1 << (n * k), stride):
        rows = tuple((idx >> (i * k)) & mask for i in range(n))
        out[matrix_signature(rows, k)] += 1
    return out


@dataclass
class ScanResult:
    """Signature histogram of every n x k 0/1 matrix."""

    n: int
    k: int
    signatures: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.signatures.values())

    def lonesum(self) -> int:
        return sum(c for sig, c in self.signatures.items() if sig[0])

    @staticmethod
    def _admissible(sig: tuple, S1: BlockSizeSet, S2: BlockSizeSet) -> bool:
        _, _, rm, zr, cm, zc = sig
        return (
            all(S1.contains(m) for m in rm)
            and all(S2.contains(m) for m in cm)
            and (zr == 0 or S1.contains(zr))
            and (zc == 0 or S2.contains(zc))
        )

    def lonesum_restricted(self, S1: BlockSizeSet, S2: BlockSizeSet, with_zeros: bool) -> int:
        total = 0
        for sig, c in self.signatures.items():
            if not sig[0]:
                continue
            if not with_zeros and (sig[3] or sig[5]):
                continue
            if self._admissible(sig, S1, S2):
                total += c
        return total

    def decomposable(self, S1: BlockSizeSet, S2: BlockSizeSet, r: int | None = None) -> int:
        total = 0
        for sig, c in self.signatures.items():
            if sig[1] is None or (r is not None and sig[1] != r):
                continue
            if self._admissible(sig, S1, S2):
                total += c
        return total


def scan_matrices(n: int, k: int, workers: int = 1) -> ScanResult:
    """Exhaustively classify all 2**(n*k) matrices.

    The index space is split by fixed stride across ``workers`` processes;
    the merged histogram does not depend on the worker count.
    """
    limit = max_cells()
    if n * k > limit:
        raise GuardrailError(f"n*k = {n * k} exceeds the scan limit {limit}")
    if n < 0 or k < 0:
        raise ValueError("dimensions must be nonnegative")
    workers = max(1, workers)
    jobs = [(n, k, w, workers) for w in range(workers)]
    result = ScanResult(n, k)
    if workers == 1:
        result.signatures.update(_scan_slice(jobs[0]))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_slice, jobs):
                result.signatures.update(part)
    return result
