"""Truncated power series with exact rational coefficients.

Coefficients are stored in ordinary form: ``a.coeffs[n]`` is ``[x^n] a``.
The EGF view is recovered with :func:`egf_coeff`, which multiplies by ``n!``.
Every series carries an explicit truncation order and binary operations refuse
to mix orders; use :meth:`EGF.truncate` to bring operands into agreement.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

__all__ = [
    "SeriesError",
    "EGF",
    "EGF2",
    "ring_op",
    "pow_int",
    "exp",
    "log1p",
    "compose",
    "quasi_inverse",
    "integrate",
    "derivative",
    "div_exact",
    "egf_coeff",
    "egf_coeff2",
]


class SeriesError(ValueError):
    """Raised on order mismatch or a violated series precondition."""


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class EGF:
    """Univariate series truncated at ``order`` (degrees 0..order kept)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(_frac(c) for c in coeffs)
        if not cs:
            raise SeriesError("a series needs at least the constant term")
        self.coeffs: tuple[Fraction, ...] = cs

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> EGF:
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> EGF:
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff=1) -> EGF:
        cs = [Fraction(0)] * (order + 1)
        if degree <= order:
            cs[degree] = _frac(coeff)
        return cls(cs)

    @classmethod
    def from_egf(cls, values: Sequence) -> EGF:
        """Series whose EGF coefficients n![x^n] are ``values``."""
        return cls(_frac(v) / factorial(n) for n, v in enumerate(values))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if isinstance(other, EGF):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*x^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"EGF({' + '.join(terms) or '0'}; O(x^{self.order + 1}))"

    def valuation(self) -> int | None:
        """Lowest degree with a nonzero coefficient; None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> EGF:
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return EGF(self.coeffs[: order + 1])

    def egf_coeffs(self) -> list[Fraction]:
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    def subs_neg(self) -> EGF:
        """a(-x)."""
        return EGF(c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs))

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # arithmetic
    def _check(self, other: EGF) -> None:
        if self.order != other.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, EGF):
            self._check(other)
            return EGF(a + b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, (int, Fraction)):
            return EGF((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> EGF:
        return EGF(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (EGF, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EGF(c * other for c in self.coeffs)
        if not isinstance(other, EGF):
            return NotImplemented
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return EGF(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> EGF:
        return pow_int(self, k)


def ring_op(a: EGF, b: EGF, op: str) -> EGF:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring op {op!r}")


def pow_int(a, k: int):
    """a**k by repeated squaring; works for EGF and EGF2."""
    if k < 0:
        raise SeriesError("negative powers are not series operations")
    result = a.one_like() if isinstance(a, EGF2) else EGF.one(a.order)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def _require_zero_constant(a: EGF, what: str) -> None:
    if a.coeffs[0]:
        raise SeriesError(f"{what} requires a zero constant term")


def exp(a):
    """exp(a) for a with zero constant term."""
    if isinstance(a, EGF2):
        return _exp2(a)
    _require_zero_constant(a, "exp")
    n = a.order
    ac = a.coeffs
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    # n b_n = sum_k k a_k b_{n-k}, from b' = a' b
    for m in range(1, n + 1):
        s = sum((k * ac[k] * b[m - k] for k in range(1, m + 1) if ac[k]), Fraction(0))
        b[m] = s / m
    return EGF(b)


def log1p(a: EGF) -> EGF:
    """log(1 + a) for a with zero constant term."""
    _require_zero_constant(a, "log1p")
    n = a.order
    ac = a.coeffs
    c = [Fraction(0)] * (n + 1)
    # (1 + a) c' = a'
    for m in range(1, n + 1):
        s = m * ac[m]
        for k in range(1, m):
            if ac[m - k]:
                s -= k * c[k] * ac[m - k]
        c[m] = s / m
    return EGF(c)


def compose(outer: EGF, inner: EGF) -> EGF:
    """outer(inner(x)); inner must have zero constant term."""
    _require_zero_constant(inner, "compose")
    outer._check(inner)
    acc = EGF.zero(inner.order)
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc


def quasi_inverse(w):
    """1 / (1 - w) for w with zero constant term (univariate or bivariate)."""
    if isinstance(w, EGF2):
        return _quasi_inverse2(w)
    _require_zero_constant(w, "quasi_inverse")
    n = w.order
    wc = w.coeffs
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        b[m] = sum((wc[k] * b[m - k] for k in range(1, m + 1) if wc[k]), Fraction(0))
    return EGF(b)


def integrate(a: EGF) -> EGF:
    """Antiderivative vanishing at 0, kept at the input order."""
    cs = [Fraction(0)] + [c / (n + 1) for n, c in enumerate(a.coeffs[:-1])]
    return EGF(cs)


def derivative(a: EGF) -> EGF:
    """d/dx; the result order drops by one (order 0 gives the zero series)."""
    if a.order == 0:
        return EGF.zero(0)
    return EGF(n * c for n, c in enumerate(a.coeffs) if n)


def div_exact(num: EGF, den: EGF) -> EGF:
    """num / den when den's valuation does not exceed num's.

    Known through order ``order - valuation(den)`` and returned at that order.
    """
    num._check(den)
    v = den.valuation()
    if v is None:
        raise SeriesError("division by the zero series")
    vn = num.valuation()
    if vn is not None and vn < v:
        raise SeriesError(f"valuation of numerator ({vn}) below denominator ({v})")
    n = num.order - v
    d = den.coeffs[v:]
    p = num.coeffs[v:]
    q = [Fraction(0)] * (n + 1)
    lead = d[0]
    for m in range(n + 1):
        s = p[m]
        for j in range(1, m + 1):
            if d[j]:
                s -= d[j] * q[m - j]
        q[m] = s / lead
    return EGF(q)


def egf_coeff(a: EGF, n: int) -> Fraction:
    """n! [x^n] a."""
    if not 0 <= n <= a.order:
        raise SeriesError(f"degree {n} outside 0..{a.order}")
    return a.coeffs[n] * factorial(n)


class EGF2:
    """Bivariate series with coefficients for x^i y^j, 0<=i<=nx, 0<=j<=ny."""

    __slots__ = ("coeffs",)

    def __init__(self, grid: Iterable[Iterable]):
        rows = tuple(tuple(_frac(c) for c in row) for row in grid)
        if not rows or not rows[0]:
            raise SeriesError("empty coefficient grid")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise SeriesError("coefficient grid must be rectangular")
        self.coeffs: tuple[tuple[Fraction, ...], ...] = rows

    @property
    def orders(self) -> tuple[int, int]:
        return len(self.coeffs) - 1, len(self.coeffs[0]) - 1

    @classmethod
    def zero(cls, nx: int, ny: int) -> EGF2:
        return cls([[0] * (ny + 1) for _ in range(nx + 1)])

    @classmethod
    def monomial(cls, i: int, j: int, nx: int, ny: int, coeff=1) -> EGF2:
        grid = [[Fraction(0)] * (ny + 1) for _ in range(nx + 1)]
        if i <= nx and j <= ny:
            grid[i][j] = _frac(coeff)
        return cls(grid)

    @classmethod
    def from_x(cls, a: EGF, ny: int) -> EGF2:
        return cls([[c] + [0] * ny for c in a.coeffs])

    @classmethod
    def from_y(cls, b: EGF, nx: int) -> EGF2:
        return cls([list(b.coeffs)] + [[0] * (b.order + 1) for _ in range(nx)])

    def one_like(self) -> EGF2:
        return EGF2.monomial(0, 0, *self.orders)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.coeffs[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, EGF2):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        nx, ny = self.orders
        return f"EGF2(orders=({nx}, {ny}))"

    def _check(self, other: EGF2) -> None:
        if self.orders != other.orders:
            raise SeriesError(f"order mismatch: {self.orders} vs {other.orders}")

    def __add__(self, other):
        if isinstance(other, EGF2):
            self._check(other)
            return EGF2(
                [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, (int, Fraction)):
            return self + other * self.one_like()
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> EGF2:
        return EGF2([-c for c in row] for row in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (EGF2, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EGF2([c * other for c in row] for row in self.coeffs)
        if not isinstance(other, EGF2):
            return NotImplemented
        self._check(other)
        nx, ny = self.orders
        a, b = self.coeffs, other.coeffs
        out = [[Fraction(0)] * (ny + 1) for _ in range(nx + 1)]
        for i1 in range(nx + 1):
            for j1 in range(ny + 1):
                c1 = a[i1][j1]
                if not c1:
                    continue
                for i2 in range(nx + 1 - i1):
                    row_b = b[i2]
                    row_out = out[i1 + i2]
                    for j2 in range(ny + 1 - j1):
                        c2 = row_b[j2]
                        if c2:
                            row_out[j1 + j2] += c1 * c2
        return EGF2(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> EGF2:
        return pow_int(self, k)


def _quasi_inverse2(w: EGF2) -> EGF2:
    if w.coeffs[0][0]:
        raise SeriesError("quasi_inverse requires a zero constant term")
    nx, ny = w.orders
    wc = w.coeffs
    b = [[Fraction(0)] * (ny + 1) for _ in range(nx + 1)]
    # b = 1 + w b, solved in lexicographic order of (i, j)
    for i in range(nx + 1):
        for j in range(ny + 1):
            s = Fraction(1) if i == j == 0 else Fraction(0)
            for a in range(i + 1):
                row = wc[a]
                for c in range(j + 1):
                    if (a or c) and row[c]:
                        s += row[c] * b[i - a][j - c]
            b[i][j] = s
    return EGF2(b)


def _exp2(w: EGF2) -> EGF2:
    if w.coeffs[0][0]:
        raise SeriesError("exp requires a zero constant term")
    nx, ny = w.orders
    total = w.one_like()
    term = w.one_like()
    # w^j vanishes once j exceeds the total degree nx + ny
    for j in range(1, nx + ny + 1):
        term = term * w * Fraction(1, j)
        total = total + term
    return total


def egf_coeff2(a: EGF2, n: int, k: int) -> Fraction:
    """n! k! [x^n y^k] a."""
    nx, ny = a.orders
    if not (0 <= n <= nx and 0 <= k <= ny):
        raise SeriesError(f"index ({n}, {k}) outside orders ({nx}, {ny})")
    return a.coeffs[n][k] * factorial(n) * factorial(k)
