"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/L)).

An element is stored as the reduced residue of a rational polynomial in
theta = 2cos(pi/L) modulo the minimal polynomial of theta, so two elements
are equal exactly when their coefficient tuples are equal.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

Number = Union[int, Fraction]


class ContextMismatchError(ValueError):
    """Operands live in different fields."""


# Integer/rational polynomials are lists of coefficients, lowest degree first.


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Polynomial long division over Q; ``b`` must be non-zero."""
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    _trim(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a.pop()
        _trim(a)
    return _trim(q), a


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic(d))
            assert not rem
    return tuple(int(c) for c in num)


@functools.lru_cache(maxsize=None)
def chebyshev_c(k: int) -> tuple[int, ...]:
    """C_k with z^k + z^-k = C_k(z + 1/z); C_0 = 2, C_1 = y."""
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    prev, cur = [2], [0, 1]
    for _ in range(k - 1):
        prev, cur = cur, _poly_sub([0] + cur, prev)
    return tuple(cur)


@functools.lru_cache(maxsize=None)
def minpoly_two_cos(L: int) -> tuple[int, ...]:
    """Monic minimal polynomial of 2cos(pi/L) over Q, lowest degree first."""
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    if L == 1:
        return (2, 1)  # 2cos(pi) = -2
    phi = cyclotomic(2 * L)
    d = (len(phi) - 1) // 2
    # phi is palindromic of degree 2d; phi(z)/z^d = c_d + sum_k c_{d+k} C_k(y)
    out: list = [phi[d]]
    for k in range(1, d + 1):
        ck = chebyshev_c(k)
        out = out + [0] * (len(ck) - len(out))
        for i, c in enumerate(ck):
            out[i] += phi[d + k] * c
    _trim(out)
    assert out[-1] == 1
    return tuple(out)


@dataclass(frozen=True)
class FieldContext:
    """The field Q(theta) with theta = 2cos(pi/L)."""

    L: int
    minpoly: tuple[int, ...] = field(compare=False)
    degree: int = field(compare=False)
    _reduce: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)

    @property
    def theta_float(self) -> float:
        return 2 * math.cos(math.pi / self.L)

    def __call__(self, value: Number | Sequence[Number]) -> ExactReal:
        """Coerce a rational or a coefficient sequence into this field."""
        if isinstance(value, (int, Fraction)):
            return ExactReal.from_rational(self, value)
        return ExactReal.from_poly(self, value)

    def zero(self) -> ExactReal:
        return self(0)

    def one(self) -> ExactReal:
        return self(1)

    def theta(self) -> ExactReal:
        return ExactReal.from_poly(self, [0, 1])


@functools.lru_cache(maxsize=None)
def field_context(L: int) -> FieldContext:
    mp = minpoly_two_cos(L)
    d = len(mp) - 1
    # theta^k for d <= k <= 2d-2, reduced to degree < d
    reduce_rows = []
    cur = [-c for c in mp[:d]]  # theta^d
    for _ in range(max(d - 1, 0)):
        reduce_rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [cur[i] - top * mp[i] for i in range(d)]
    return FieldContext(L, mp, d, tuple(reduce_rows))


def context_for_labels(labels) -> FieldContext:
    """Smallest context containing 2cos(pi/m) for every label m."""
    L = 1
    for m in labels:
        L = math.lcm(L, m)
    return field_context(L)


class ExactReal:
    """Immutable element of Q(2cos(pi/L)) in canonical residue form."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldContext, coeffs: tuple[Fraction, ...]):
        # trusted constructor: coeffs already reduced, length == ctx.degree
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def from_rational(cls, ctx: FieldContext, q: Number) -> ExactReal:
        return cls(ctx, (Fraction(q),) + (Fraction(0),) * (ctx.degree - 1))

    @classmethod
    def from_poly(cls, ctx: FieldContext, poly: Sequence[Number]) -> ExactReal:
        """Reduce an arbitrary polynomial in theta modulo the minimal polynomial."""
        _, rem = _poly_divmod(list(poly), ctx.minpoly)
        rem = rem + [Fraction(0)] * (ctx.degree - len(rem))
        return cls(ctx, tuple(rem))

    def _coerce(self, other) -> ExactReal:
        if isinstance(other, ExactReal):
            if other.ctx.L != self.ctx.L:
                raise ContextMismatchError(
                    f"operands from Q(2cos(pi/{self.ctx.L})) and Q(2cos(pi/{other.ctx.L}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return ExactReal.from_rational(self.ctx, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> ExactReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactReal(self.ctx, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> ExactReal:
        return ExactReal(self.ctx, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> ExactReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactReal(self.ctx, tuple(x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other) -> ExactReal:
        return -(self - other)

    def __mul__(self, other) -> ExactReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.ctx.degree
        if d == 1:
            return ExactReal(self.ctx, (self.coeffs[0] * o.coeffs[0],))
        # integer numerators over a common denominator; the reduction rows are
        # integral because the minimal polynomial is monic over Z
        da = math.lcm(*(x.denominator for x in self.coeffs))
        db = math.lcm(*(y.denominator for y in o.coeffs))
        a = [x.numerator * (da // x.denominator) for x in self.coeffs]
        b = [y.numerator * (db // y.denominator) for y in o.coeffs]
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:d]
        for k, row in enumerate(self.ctx._reduce):
            c = prod[d + k]
            if c:
                for i in range(d):
                    out[i] += c * row[i]
        den = da * db
        return ExactReal(self.ctx, tuple(Fraction(x, den) for x in out))

    __rmul__ = __mul__

    def inverse(self) -> ExactReal:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(2cos(pi/%d))" % self.ctx.L)
        # invariant: r_i = s_i * a (mod minpoly)
        r0, r1 = [Fraction(c) for c in self.ctx.minpoly], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return ExactReal.from_poly(self.ctx, [x / c for x in s1])

    def __truediv__(self, other) -> ExactReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other) -> ExactReal:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> ExactReal:
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactReal.from_rational(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if not isinstance(other, ExactReal):
            return NotImplemented
        return self.ctx.L == other.ctx.L and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if self.ctx.degree == 1 or not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.ctx.L, self.coeffs))
        return self._hash

    def __float__(self) -> float:
        t = self.ctx.theta_float
        return float(sum(float(c) * t**i for i, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*t^{i}" if i > 1 else f"{c}*t")
        body = " + ".join(terms) or "0"
        return f"ExactReal({body}; L={self.ctx.L})"

    def __str__(self) -> str:
        return f"{float(self):.12g}"


def embed_two_cos(m: int, ctx: FieldContext) -> ExactReal:
    """2cos(pi/m) inside ctx, computed as C_{L/m}(theta)."""
    if m < 1 or ctx.L % m:
        raise ValueError(f"label {m} does not divide L={ctx.L}")
    return ExactReal.from_poly(ctx, chebyshev_c(ctx.L // m))
