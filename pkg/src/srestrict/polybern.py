"""S-restricted poly-Bernoulli numbers via the finite sum, the polylogarithm
generating function and nested integrals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from srestrict import series
from srestrict.blockset import BlockSizeSet
from srestrict.series import EGF
from srestrict.stirling import stirling_triangle

__all__ = [
    "PolyBernoulliValue",
    "poly_bernoulli",
    "polylog_series",
    "neg_block_series",
    "pb_egf_series",
    "pb_egf",
    "pb_iterated_series",
    "pb_iterated_integral",
]


@dataclass(frozen=True)
class PolyBernoulliValue:
    n: int
    k: int
    S: BlockSizeSet
    value: Fraction


def _inv_pow(base: int, k: int) -> Fraction:
    """base ** -k, exact for any integer k."""
    return Fraction(1, base**k) if k >= 0 else Fraction(base ** (-k))


def poly_bernoulli(n: int, k: int, S: BlockSizeSet) -> Fraction:
    """sum_i {n, i}_S (-1)^(n-i) i! / (i+1)^k."""
    row = stirling_triangle(S, n).row(n)
    return sum(
        (c * (-1) ** (n - i) * factorial(i) * _inv_pow(i + 1, k) for i, c in enumerate(row) if c),
        Fraction(0),
    )


def polylog_series(k: int, N: int) -> EGF:
    """Li_k(t) = sum_{m>=1} t^m / m^k truncated at order N."""
    return EGF([0] + [_inv_pow(m, k) for m in range(1, N + 1)])


def neg_block_series(S: BlockSizeSet, N: int) -> EGF:
    """u(t) = -E_S(-t) = sum_{s in S} (-1)^(s+1) t^s / s!."""
    return -S.egf(N).subs_neg()


def pb_egf_series(k: int, S: BlockSizeSet, N: int) -> EGF:
    """Li_k(u)/u with u = -E_S(-t), known and returned through order N."""
    v = S.min()
    if v is None:
        raise ValueError("S is empty")
    # u has valuation min(S); the quotient loses that many orders
    work = N + v
    u = neg_block_series(S, work)
    quotient = series.div_exact(series.compose(polylog_series(k, work), u), u)
    return quotient.truncate(N)


def pb_egf(n: int, k: int, S: BlockSizeSet) -> Fraction:
    return series.egf_coeff(pb_egf_series(k, S, n), n)


def pb_iterated_series(k: int, S: BlockSizeSet, N: int) -> EGF:
    """Li_k(u)/u from the nested-integral representation, through order N.

    Li_1(u) = -log(1 - u) = -log(1 + E_S(-t)); then
    Li_j(u) = int_0^t u'(s) (Li_{j-1}(u)/u)(s) ds for j = 2..k, and the result
    is Li_k(u) / u. Dividing Li_{j-1}(u) by u before multiplying by u' keeps
    every series proper even though u'/u alone has a pole.
    """
    if k < 1:
        raise ValueError("the integral form needs k >= 1")
    v = S.min()
    if v is None:
        raise ValueError("S is empty")
    # each division by u costs v orders; derivative of u costs one more
    work = N + k * (v + 1)
    u = neg_block_series(S, work)
    li = -series.log1p(-u)
    du = series.derivative(u)
    for _ in range(k - 1):
        q = series.div_exact(li, u)
        order = min(q.order, du.order)
        li = series.integrate(du.truncate(order) * q.truncate(order))
        u = u.truncate(order)
    return series.div_exact(li, u).truncate(N)


def pb_iterated_integral(n: int, k: int, S: BlockSizeSet) -> Fraction:
    return series.egf_coeff(pb_iterated_series(k, S, n), n)
