"""Exponential Riordan arrays over exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from srestrict import series
from srestrict.blockset import BlockSizeSet
from srestrict.series import EGF
from srestrict.stirling import BellPolynomial

Matrix = tuple[tuple[Fraction, ...], ...]

__all__ = [
    "Matrix",
    "RiordanError",
    "RiordanArray",
    "build",
    "identity",
    "pascal",
    "stirling_matrix",
    "multiply",
    "inverse",
    "factorize",
    "odd_product_prefix",
    "bell_det",
    "det_matrix",
    "matmul",
    "direct_sum_one",
    "identity_matrix",
]


class RiordanError(ValueError):
    pass


def identity_matrix(N: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(N)) for i in range(N))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    n = len(A)
    if n != len(B):
        raise RiordanError(f"size mismatch: {n} vs {len(B)}")
    cols = list(zip(*B)) if n else []
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols)
        for row in A
    )


def direct_sum_one(A: Sequence[Sequence], size: int | None = None) -> Matrix:
    """[1] (+) A, optionally cut to ``size`` x ``size``."""
    n = len(A) + 1
    out = [[Fraction(0)] * n for _ in range(n)]
    out[0][0] = Fraction(1)
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            out[i + 1][j + 1] = Fraction(v)
    if size is not None:
        out = [r[:size] for r in out[:size]]
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class RiordanArray:
    """<g, f> with its N x N leading block d[n][k] = n!/k! [x^n] g f^k."""

    g: EGF
    f: EGF
    N: int
    entries: Matrix

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        return self.entries[n][k]

    def as_int_rows(self) -> list[list[int]]:
        rows = []
        for row in self.entries:
            if any(v.denominator != 1 for v in row):
                raise RiordanError("entries are not all integers")
            rows.append([int(v) for v in row])
        return rows


def build(g: EGF, f: EGF, N: int) -> RiordanArray:
    """Column k of <g, f> has EGF g(x) f(x)^k / k!."""
    if N < 1:
        raise RiordanError("N must be >= 1")
    order = N - 1
    if g.order < order or f.order < order:
        raise RiordanError(f"series orders must be >= {order}")
    g = g.truncate(order)
    f = f.truncate(order)
    if g[0] == 0:
        raise RiordanError("g(0) must be nonzero")
    if f[0] != 0:
        raise RiordanError("f(0) must be zero")
    if N > 1 and f[1] == 0:
        raise RiordanError("f'(0) must be nonzero")
    entries = [[Fraction(0)] * N for _ in range(N)]
    col = g
    for k in range(N):
        scale = Fraction(1, factorial(k))
        for n in range(k, N):
            entries[n][k] = col[n] * factorial(n) * scale
        if k + 1 < N:
            col = col * f
    return RiordanArray(g, f, N, tuple(tuple(r) for r in entries))


def identity(N: int) -> RiordanArray:
    return build(EGF.one(N - 1), EGF.monomial(1, N - 1), N)


def pascal(N: int) -> RiordanArray:
    """<e^x, x>: binomial coefficients."""
    return build(EGF.from_egf([1] * N), EGF.monomial(1, N - 1), N)


def stirling_matrix(S: BlockSizeSet, N: int) -> RiordanArray:
    """M_S = <1, E_S(x)>, entries {n, k}_S; requires 1 in S."""
    if not S.contains(1):
        raise RiordanError("1 must belong to S (otherwise f'(0) = 0)")
    return build(EGF.one(N - 1), S.egf(N - 1), N)


def multiply(A: RiordanArray, B: RiordanArray) -> RiordanArray:
    """<g, f> * <h, l> = <g h(f), l(f)>."""
    if A.N != B.N:
        raise RiordanError(f"size mismatch: {A.N} vs {B.N}")
    order = A.N - 1
    g, f = A.g.truncate(order), A.f.truncate(order)
    h, l = B.g.truncate(order), B.f.truncate(order)
    return build(g * series.compose(h, f), series.compose(l, f), A.N)


def inverse(A: RiordanArray | Sequence[Sequence]) -> Matrix:
    """Lower-triangular inverse by forward substitution."""
    D = A.entries if isinstance(A, RiordanArray) else A
    N = len(D)
    inv = [[Fraction(0)] * N for _ in range(N)]
    for n in range(N):
        if D[n][n] == 0:
            raise RiordanError(f"zero diagonal entry at {n}")
        inv[n][n] = 1 / Fraction(D[n][n])
        for k in range(n - 1, -1, -1):
            s = sum((D[n][i] * inv[i][k] for i in range(k, n) if D[n][i]), Fraction(0))
            inv[n][k] = -s / D[n][n]
    return tuple(tuple(r) for r in inv)


def factorize(A: RiordanArray) -> tuple[RiordanArray, Matrix]:
    """<g, f> = <g, x> * ([1] (+) <f', f>); returns both factors."""
    N = A.N
    left = build(A.g, EGF.monomial(1, N - 1), N)
    if N == 1:
        return left, identity_matrix(1)
    fp = series.derivative(A.f.truncate(N - 1))  # order N - 2
    inner = build(fp, A.f.truncate(N - 2), N - 1)
    return left, direct_sum_one(inner.entries)


def odd_product_prefix(N: int) -> Matrix:
    """prod_{l=1}^{N-1} (I_l (+) <cosh x, x>), each factor cut to N x N."""
    if N < 1:
        raise RiordanError("N must be >= 1")
    result = identity_matrix(N)
    for l in range(1, N):
        m = N - l
        cosh = EGF.from_egf([1 if i % 2 == 0 else 0 for i in range(m)])
        pbar = build(cosh, EGF.monomial(1, m - 1), m).entries
        factor = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
        for i in range(m):
            for j in range(m):
                factor[l + i][l + j] = pbar[i][j]
        result = matmul(result, factor)
    return result


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = a + [0] * (len(b) - len(a)) if len(a) < len(b) else list(a)
    for i, v in enumerate(b):
        out[i] -= v
    return out


def bell_det(n: int, S: BlockSizeSet) -> BellPolynomial:
    """B_{n,S}(x) from x^n = sum_k T[n][k] B_{k,S}(x), T the inverse Stirling matrix."""
    T = inverse(stirling_matrix(S, n + 1))
    polys: list[list[int]] = []
    for m in range(n + 1):
        p = [0] * m + [1]
        for k in range(m):
            t = T[m][k]
            if t:
                p = _poly_sub(p, [int(t) * c for c in polys[k]])
        polys.append(p)
    coeffs = polys[n] + [0] * (n + 1 - len(polys[n]))
    return BellPolynomial(n, S, tuple(coeffs))


def det_matrix(n: int, S: BlockSizeSet) -> list[list[list[int]]]:
    """The (n+1) x (n+1) polynomial matrix whose determinant, times (-1)^n, is B_{n,S}(x).

    Entries are integer coefficient lists. Row 0 is 1, x, ..., x^n; row i >= 1
    holds the inverse Stirling numbers T[j][i-1] in column j.
    """
    T = inverse(stirling_matrix(S, n + 1))
    rows = [[[0] * j + [1] for j in range(n + 1)]]
    for i in range(1, n + 1):
        rows.append([[int(T[j][i - 1])] for j in range(n + 1)])
    return rows
