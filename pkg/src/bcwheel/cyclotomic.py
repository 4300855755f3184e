"""Exact arithmetic in cyclotomic fields Q(zeta_L).

A Cyclotomic of order L is a vector of phi(L) rationals giving its
coordinates in the power basis 1, z, ..., z^(phi(L)-1) of Q[z]/(Phi_L(z)),
where Phi_L is the L-th cyclotomic polynomial.  All arithmetic is exact.

For orders 1 and 2 the field is Q itself; rings that only need those
orders use plain Fraction scalars (see RationalField) to avoid wrapper
overhead in the polynomial kernels.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Divide dense univariate polynomials (low-to-high coefficients)."""
    num = list(num)
    q = [_ZERO] * max(1, len(num) - len(den) + 1)
    dlead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / dlead
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and not num[-1]:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_order, low to high, computed by dividing
    x^order - 1 by Phi_d for every proper divisor d."""
    if order < 1:
        raise ValueError("order must be positive")
    poly = [-_ONE] + [_ZERO] * (order - 1) + [_ONE]
    for d in range(1, order):
        if order % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert all(not c for c in rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(order: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k expresses z^(deg+k) in the power basis, covering every
    exponent a product of two reduced elements or a bare zeta power needs."""
    phi = list(cyclotomic_polynomial(order))
    deg = len(phi) - 1
    rows = []
    # z^deg = -(phi[0] + phi[1] z + ...)
    cur = [-c for c in phi[:deg]]
    rows.append(tuple(cur))
    top_exp = max(2 * deg - 2, order - 1)
    for _ in range(top_exp - deg):
        nxt = [_ZERO] + cur[:-1]
        top = cur[-1]
        if top:
            first = rows[0]
            nxt = [a + top * b for a, b in zip(nxt, first)]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


class Cyclotomic:
    """Element of Q(zeta_L); immutable."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: tuple[Fraction, ...]):
        self.order = order
        self.coords = coords

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(order: int, value) -> Cyclotomic:
        deg = euler_phi(order)
        coords = [_ZERO] * deg
        coords[0] = Fraction(value)
        return Cyclotomic(order, tuple(coords))

    @staticmethod
    def zeta(order: int, power: int = 1) -> Cyclotomic:
        """zeta_L^power, reduced into the power basis."""
        deg = euler_phi(order)
        power %= order
        raw = [_ZERO] * (power + 1)
        raw[power] = _ONE
        return Cyclotomic(order, _reduce(order, deg, raw))

    # -- helpers ------------------------------------------------------

    def _check(self, other: Cyclotomic) -> None:
        if self.order != other.order:
            raise ValueError(
                f"cyclotomic order mismatch: {self.order} vs {other.order}; embed first"
            )

    def is_rational(self) -> bool:
        return all(not c for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coords[0]

    def embed(self, order: int) -> Cyclotomic:
        """Image under zeta_L -> zeta_order^(order/L); requires L | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"no embedding of order {self.order} into {order}")
        step = order // self.order
        deg = euler_phi(order)
        raw = [_ZERO] * ((len(self.coords) - 1) * step + 1)
        for k, c in enumerate(self.coords):
            if c:
                raw[k * step] += c
        return Cyclotomic(order, _reduce(order, deg, raw))

    # -- arithmetic ---------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coords))

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, tuple(-c for c in self.coords))

    def __add__(self, other) -> Cyclotomic:
        other = self._coerce(other)
        self._check(other)
        return Cyclotomic(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other) -> Cyclotomic:
        other = self._coerce(other)
        self._check(other)
        return Cyclotomic(self.order, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other) -> Cyclotomic:
        other = self._coerce(other)
        self._check(other)
        a, b = self.coords, other.coords
        deg = len(a)
        if deg == 1:
            return Cyclotomic(self.order, (a[0] * b[0],))
        raw = [_ZERO] * (2 * deg - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        raw[i + j] += ca * cb
        return Cyclotomic(self.order, _reduce(self.order, deg, raw))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> Cyclotomic:
        return self._coerce(other) - self

    def inverse(self) -> Cyclotomic:
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        deg = len(self.coords)
        if deg == 1:
            return Cyclotomic(self.order, (1 / self.coords[0],))
        # extended euclid: s * self + t * Phi = gcd (a nonzero rational)
        phi = list(cyclotomic_polynomial(self.order))
        r0, r1 = phi, _trim(list(self.coords))
        s0, s1 = [_ZERO], [_ONE]
        while len(r1) > 1 or r1[0]:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
            if len(r0) == 1:
                break
        assert len(r0) == 1 and r0[0]
        inv = [c / r0[0] for c in s0]
        raw = inv + [_ZERO] * max(0, deg - len(inv))
        return Cyclotomic(self.order, _reduce(self.order, deg, raw))

    def __truediv__(self, other) -> Cyclotomic:
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> Cyclotomic:
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.from_rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        raise TypeError(f"cannot coerce {type(other)!r} into Cyclotomic")

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {self.coords})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    b = b + [_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _reduce(order: int, deg: int, raw: list[Fraction]) -> tuple[Fraction, ...]:
    """Fold exponents >= deg into the power basis."""
    if len(raw) <= deg:
        return tuple(raw) + (_ZERO,) * (deg - len(raw))
    rows = _reduction_rows(order)
    out = list(raw[:deg]) + [_ZERO] * (deg - min(deg, len(raw)))
    for k in range(deg, len(raw)):
        c = raw[k]
        if not c:
            continue
        if k - deg < len(rows):
            row = rows[k - deg]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
        else:
            # exponent too high for the table: reduce via zeta powers
            extra = Cyclotomic.zeta(order, k) * c
            for j, r in enumerate(extra.coords):
                out[j] += r
    return tuple(out)


# ---------------------------------------------------------------------
# Scalar field objects used by the polynomial rings.  Both expose the
# same tiny protocol: zero/one constants, coerce(), root() for the
# canonical primitive L-th root, and order.

class RationalField:
    """Q, optionally presented as Q(zeta_1) or Q(zeta_2)."""

    def __init__(self, order: int = 1):
        if order not in (1, 2):
            raise ValueError("RationalField only covers orders 1 and 2")
        self.order = order
        self.zero = _ZERO
        self.one = _ONE

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, Cyclotomic):
            return value.embed(self.order).rational_value() if value.order in (1, 2) \
                else value.rational_value()
        raise TypeError(f"cannot coerce {type(value)!r} into Q")

    def root(self) -> Fraction:
        return _ONE if self.order == 1 else -_ONE

    def __repr__(self):
        return f"RationalField(order={self.order})"


class CyclotomicField:
    """Q(zeta_L) for L > 2."""

    def __init__(self, order: int):
        self.order = order
        self.degree = euler_phi(order)
        self.zero = Cyclotomic.from_rational(order, 0)
        self.one = Cyclotomic.from_rational(order, 1)

    def coerce(self, value) -> Cyclotomic:
        if isinstance(value, Cyclotomic):
            if value.order == self.order:
                return value
            return value.embed(self.order)
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, value)
        raise TypeError(f"cannot coerce {type(value)!r} into Q(zeta_{self.order})")

    def root(self) -> Cyclotomic:
        return Cyclotomic.zeta(self.order)

    def __repr__(self):
        return f"CyclotomicField({self.order})"


@lru_cache(maxsize=None)
def scalar_field(order: int):
    """Field of scalars containing zeta_order, degenerate orders as Q."""
    if order in (1, 2):
        return RationalField(order)
    return CyclotomicField(order)


def common_order(a: int, b: int) -> int:
    return a * b // gcd(a, b)
