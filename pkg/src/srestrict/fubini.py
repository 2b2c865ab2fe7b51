"""S-restricted Fubini (ordered Bell) numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from srestrict import series
from srestrict.blockset import BlockSizeSet
from srestrict.stirling import potential_value, stirling_triangle

__all__ = [
    "FubiniSequence",
    "fubini",
    "fubini_egf",
    "fubini_sequence",
    "fubini_dobinski",
    "poonen_sides",
    "poonen_check",
    "congruence_sides",
    "congruence_check",
]


@dataclass(frozen=True)
class FubiniSequence:
    S: BlockSizeSet
    N: int
    values: tuple[int, ...]


def fubini(n: int, S: BlockSizeSet) -> int:
    """sum_k k! {n, k}_S."""
    row = stirling_triangle(S, n).row(n)
    return sum(factorial(k) * c for k, c in enumerate(row))


def fubini_sequence(S: BlockSizeSet, N: int) -> FubiniSequence:
    """F_{0,S} .. F_{N,S} read off 1 / (1 - E_S(x))."""
    gf = series.quasi_inverse(S.egf(N))
    values = []
    for n in range(N + 1):
        v = series.egf_coeff(gf, n)
        assert v.denominator == 1
        values.append(int(v))
    return FubiniSequence(S, N, tuple(values))


def fubini_egf(n: int, S: BlockSizeSet) -> int:
    return fubini_sequence(S, n).values[n]


def fubini_dobinski(n: int, S: BlockSizeSet, tol) -> tuple[Fraction, Fraction]:
    """Partial sum of (1/2) sum_k 2^-k f_{S,k}^{(n)}(0) with a rigorous tail bound.

    Returns (P, tail) with P <= F_{n,S} <= P + tail and tail < tol.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    # f_{S,k}^{(n)}(0) <= k^n. With a_k = k^n / 2^(k+1), for k >= K+1 the ratio
    # a_{k+1}/a_k = (1 + 1/k)^n / 2 is decreasing, hence at most
    # rho = ((K+2)/(K+1))^n / 2; rho <= 3/4 once K >= 4n + 4.
    K = 4 * n + 4
    while True:
        rho = Fraction(K + 2, K + 1) ** n / 2
        first = Fraction((K + 1) ** n, 2 ** (K + 2))
        tail = first / (1 - rho)
        if tail < tol:
            break
        K += 1
    partial = sum(
        (Fraction(potential_value(n, k, S), 2 ** (k + 1)) for k in range(K + 1)), Fraction(0)
    )
    return partial, tail



def poonen_sides(n: int, q: int, S: BlockSizeSet) -> tuple[int, int]:
    """Both sides of the generalized Poonen identity.

    2^q F_n = sum_l C(n,l) F_l f_q^{(n-l)} + sum_{l=0}^{q-1} 2^(q-l-1) f_l^{(n)}.
    The l = 0 term of the last sum equals 2^(q-1) [n == 0]; it vanishes for n >= 1.
    """
    if q < 1 or n < 0:
        raise ValueError("need n >= 0 and q >= 1")
    F = [fubini(m, S) for m in range(n + 1)]
    lhs = 2**q * F[n]
    rhs = sum(comb(n, l) * F[l] * potential_value(n - l, q, S) for l in range(n + 1))
    rhs += sum(2 ** (q - l - 1) * potential_value(n, l, S) for l in range(q))
    return lhs, rhs


def poonen_check(n: int, q: int, S: BlockSizeSet) -> bool:
    lhs, rhs = poonen_sides(n, q, S)
    return lhs == rhs


def congruence_sides(n: int, q: int, S: BlockSizeSet) -> tuple[int, int]:
    """((2^q - 1) F_n mod q, sum_{l=0}^{q-1} 2^(q-l-1) f_l^{(n)} mod q)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    lhs = (2**q - 1) * fubini(n, S)
    rhs = sum(2 ** (q - l - 1) * potential_value(n, l, S) for l in range(q))
    return lhs % q, rhs % q


def congruence_check(n: int, q: int, S: BlockSizeSet) -> bool:
    a, b = congruence_sides(n, q, S)
    return a == b
