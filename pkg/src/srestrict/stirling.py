"""S-restricted Stirling numbers of the second kind, Bell polynomials,
potential-polynomial values and the Dobinski-type series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, factorial, prod

from srestrict import series
from srestrict.blockset import BlockSizeSet

__all__ = [
    "falling_factorial",
    "stirling_direct",
    "stirling_egf",
    "stirling_rec",
    "StirlingTriangle",
    "stirling_triangle",
    "BellPolynomial",
    "bell_number",
    "bell_polynomial",
    "potential_value",
    "potential_table",
    "dobinski",
    "exp_bounds",
    "dobinski_check",
]


def falling_factorial(t: int, k: int) -> int:
    """(t)_k = t (t-1) ... (t-k+1), with (t)_0 = 1."""
    return prod(range(t - k + 1, t + 1)) if k else 1


def stirling_direct(n: int, k: int, S: BlockSizeSet) -> int:
    """Multinomial sum over multiplicity vectors c with sum c_i s_i = n, sum c_i = k."""
    if not 0 <= k <= n:
        return 0
    sizes = S.enumerate(n)
    total = 0
    nfact = factorial(n)

    # depth-first over sizes, largest first; prune on remaining sum and parts
    def walk(i: int, rest: int, parts: int, denom: int) -> None:
        nonlocal total
        if rest == 0 and parts == 0:
            total += nfact // denom
            return
        if i < 0 or rest <= 0 or parts <= 0:
            return
        s = sizes[i]
        smallest = sizes[0]
        if rest < parts * smallest or rest > parts * s:
            return
        fs = factorial(s)
        for c in range(min(parts, rest // s), -1, -1):
            walk(i - 1, rest - c * s, parts - c, denom * factorial(c) * fs**c)

    walk(len(sizes) - 1, n, k, 1)
    return total


def stirling_egf(n: int, k: int, S: BlockSizeSet) -> int:
    """n! [x^n] E_S(x)^k / k!."""
    if not 0 <= k <= n:
        return 0
    e = S.egf(n)
    value = series.egf_coeff(series.pow_int(e, k), n) / factorial(k)
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class StirlingTriangle:
    S: BlockSizeSet
    N: int
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if k > n:
            return 0
        return self.rows[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n]


@lru_cache(maxsize=64)
def stirling_triangle(S: BlockSizeSet, N: int) -> StirlingTriangle:
    """Rows 0..N built with {n+1, k} = sum_s C(n, s-1) {n-s+1, k-1}."""
    sizes = S.enumerate(max(N, 1))
    rows: list[list[int]] = [[1]]
    for m in range(N):  # build row m + 1
        new = [0] * (m + 2)
        for k in range(1, m + 2):
            acc = 0
            for s in sizes:
                if s > m + 1:
                    break
                prev = rows[m + 1 - s]
                if k - 1 < len(prev):
                    acc += comb(m, s - 1) * prev[k - 1]
            new[k] = acc
        rows.append(new)
    return StirlingTriangle(S, N, tuple(tuple(r) for r in rows))


def stirling_rec(n: int, k: int, S: BlockSizeSet) -> int:
    if not 0 <= k <= n:
        return 0
    return stirling_triangle(S, n)[n, k]


@dataclass(frozen=True)
class BellPolynomial:
    """B_{n,S}(x) = sum_k {n, k}_S x^k, coefficients low degree first."""

    n: int
    S: BlockSizeSet
    coeffs: tuple[int, ...]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                coef = str(c)
            elif c == 1:
                coef = ""
            elif c == -1:
                coef = "-"
            else:
                coef = str(c)
            terms.append(coef + mono)
        return "+".join(terms).replace("+-", "-") or "0"


def bell_polynomial(n: int, S: BlockSizeSet) -> BellPolynomial:
    return BellPolynomial(n, S, stirling_triangle(S, n).row(n))


def bell_number(n: int, S: BlockSizeSet) -> int:
    return sum(stirling_triangle(S, n).row(n))


def potential_value(n: int, t: int, S: BlockSizeSet) -> int:
    """n-th derivative at 0 of (1 + E_S(x))**t: sum_k {n, k}_S (t)_k.

    Counts maps [n] -> [t] whose nonempty fibers have sizes in S
    (empty fibers are allowed).
    """
    if t < 0:
        raise ValueError("t must be a nonnegative integer")
    row = stirling_triangle(S, n).row(n)
    return sum(c * falling_factorial(t, k) for k, c in enumerate(row) if c and k <= t)


def potential_table(S: BlockSizeSet, N: int, T: int) -> list[list[int]]:
    """values[n][t] = potential_value(n, t, S) for n <= N, t <= T."""
    return [[potential_value(n, t, S) for t in range(T + 1)] for n in range(N + 1)]


def _geometric_tail(first: Fraction, ratio: Fraction) -> Fraction:
    return first / (1 - ratio)


def dobinski(n: int, S: BlockSizeSet, x, tol) -> tuple[Fraction, Fraction]:
    """Partial sum P_L of sum_l f_{S,l}^{(n)}(0) x^l / l! and a tail bound.

    The full series equals e^x B_{n,S}(x), and 0 <= e^x B_{n,S}(x) - P_L <=
    tail_bound < tol.
    """
    x = Fraction(x)
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x <= 0:
        raise ValueError("x must be positive")
    # Tail bound. f_{S,l}^{(n)}(0) counts maps [n] -> [l], so it is <= l^n.
    # With a_l = l^n x^l / l!, for l >= L+1:
    #   a_{l+1} / a_l = (1 + 1/l)^n * x / (l + 1),
    # and both factors decrease in l, so every later ratio is at most
    #   rho = ((L+2)/(L+1))^n * x / (L+2).
    # When rho < 1, sum_{l > L} a_l <= a_{L+1} / (1 - rho).
    # From L >= 2(n + ceil(x)) on, rho < 1 always holds.
    L = 2 * (n + ceil(x))

    def term(l: int) -> Fraction:
        return Fraction(l**n) * x**l / factorial(l)

    while True:
        rho = Fraction(L + 2, L + 1) ** n * x / (L + 2)
        bound = _geometric_tail(term(L + 1), rho)
        if rho < 1 and bound < tol:
            break
        L += 1
    partial = sum(
        (Fraction(potential_value(n, l, S)) * x**l / factorial(l) for l in range(L + 1)),
        Fraction(0),
    )
    return partial, bound


def exp_bounds(x, tol) -> tuple[Fraction, Fraction]:
    """Rational lo <= e^x <= hi with hi - lo < tol, for x >= 0."""
    x = Fraction(x)
    tol = Fraction(tol)
    if x < 0:
        raise ValueError("x must be >= 0")
    lo = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        lo += term
        j += 1
        term = term * x / j  # x^j / j!
        if j + 1 > x:
            # remainder sum_{i>=j} x^i/i! <= term / (1 - x/(j+1))
            rem = term / (1 - x / (j + 1))
            if rem < tol:
                return lo, lo + rem


def dobinski_check(n: int, S: BlockSizeSet, x, tol) -> bool:
    """Rigorous consistency of the Dobinski bracket with B_{n,S}(x).

    [P, P + tail] contains e^x B(x); with rational bounds lo <= e^x <= hi the
    target lies in [lo B, hi B]. Both intervals must intersect.
    """
    partial, tail = dobinski(n, S, x, tol)
    b = Fraction(bell_polynomial(n, S)(Fraction(x)))
    lo, hi = exp_bounds(x, Fraction(tol) / (1 + b))
    return partial <= hi * b and lo * b <= partial + tail
