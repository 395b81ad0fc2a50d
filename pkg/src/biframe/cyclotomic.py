"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as a polynomial in zeta_n reduced modulo the n-th
cyclotomic polynomial, so each value has exactly one representation per
order and equality within an order is coefficient equality.  Values of
different orders are compared after lifting both to the lcm order, which
is always an exact operation.  Purely rational values canonicalise to
order 1, so 1, -1, 7/3 and friends have a unique form regardless of how
they were produced.

Only integer powers of roots of unity and rational coefficients ever
appear; floats are confined to ``to_complex`` which exists for display
and test oracles.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence


def _poly_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num: list[Fraction], den: Sequence[Fraction | int]) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder; ``den`` must be monic."""
    rem = list(num)
    quot: list[Fraction] = [Fraction(0)] * max(0, len(rem) - len(den) + 1)
    ddeg = len(den) - 1
    for k in range(len(rem) - 1, ddeg - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        quot[k - ddeg] = c
        for i, dc in enumerate(den):
            rem[k - ddeg + i] -= c * dc
    return quot, _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    poly: list[Fraction] = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in poly)


def _phi_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(order: int, raw: Iterable[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a raw coefficient vector modulo Phi_order, padded to full degree."""
    trimmed = _poly_trim(list(raw))
    deg = _phi_degree(order)
    if len(trimmed) <= deg:
        return tuple(trimmed) + (Fraction(0),) * (deg - len(trimmed))
    _, rem = _poly_divmod(trimmed, cyclotomic_polynomial(order))
    rem += [Fraction(0)] * (deg - len(rem))
    return tuple(rem)


class CyclotomicNumber:
    """An element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("order", "coeffs")
    __hash__ = None  # equality crosses orders; use == only

    def __init__(self, order: int, coeffs: Sequence[Fraction | int]) -> None:
        if order < 1:
            raise ValueError("order must be a positive integer")
        reduced = _reduce(order, [Fraction(c) for c in coeffs])
        if order > 1 and all(c == 0 for c in reduced[1:]):
            # Rational values descend to order 1.
            order, reduced = 1, (reduced[0],)
        self.order = order
        self.coeffs = reduced

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, value: Fraction | int) -> CyclotomicNumber:
        return cls(1, [Fraction(value)])

    @classmethod
    def zero(cls) -> CyclotomicNumber:
        return cls.from_rational(0)

    @classmethod
    def one(cls) -> CyclotomicNumber:
        return cls.from_rational(1)

    @classmethod
    def from_exponent_counts(cls, order: int, counts: Sequence[int]) -> CyclotomicNumber:
        """Sum of counts[k] copies of zeta_order^k."""
        return cls(order, [Fraction(c) for c in counts])

    # -- representation -----------------------------------------------

    def __repr__(self) -> str:
        return f"CyclotomicNumber(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"

    def _lifted_coeffs(self, order: int) -> tuple[Fraction, ...]:
        """Reduced coefficients of this value inside Q(zeta_order).

        Unlike the constructor this never canonicalises the order back
        down, so vectors from different sources are directly comparable.
        """
        if order % self.order != 0:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        if order == self.order:
            return self.coeffs
        step = order // self.order
        raw = [Fraction(0)] * (len(self.coeffs) * step)
        for i, c in enumerate(self.coeffs):
            raw[i * step] = c
        return _reduce(order, raw)

    def _aligned(self, other: CyclotomicNumber) -> tuple[int, tuple[Fraction, ...], tuple[Fraction, ...]]:
        n = lcm(self.order, other.order)
        return n, self._lifted_coeffs(n), other._lifted_coeffs(n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        _, a, b = self._aligned(other)
        return a == b

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    @property
    def is_rational(self) -> bool:
        return self.order == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("value is not rational")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: CyclotomicNumber | int | Fraction) -> CyclotomicNumber:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        n, a, b = self._aligned(other)
        return CyclotomicNumber(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other: CyclotomicNumber | int | Fraction) -> CyclotomicNumber:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other)
        return self + (-other)

    def __mul__(self, other: CyclotomicNumber | int | Fraction) -> CyclotomicNumber:
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [c * other for c in self.coeffs])
        if other.order == 1:
            return self * other.coeffs[0]
        if self.order == 1:
            return other * self.coeffs[0]
        n, a, b = self._aligned(other)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y != 0:
                    out[i + j] += x * y
        return CyclotomicNumber(n, out)

    __rmul__ = __mul__

    def conj(self) -> CyclotomicNumber:
        """Complex conjugation, i.e. zeta -> zeta^(-1)."""
        n = self.order
        raw = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            raw[(-i) % n] += c
        return CyclotomicNumber(n, raw)

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational:
            return CyclotomicNumber.from_rational(1 / self.coeffs[0])
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        # Euclid on (self, Phi_n) tracking the Bezout coefficient of self.
        r0, r1 = _poly_trim(list(self.coeffs)), _poly_trim(phi)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while r1:
            monic = [c / r1[-1] for c in r1]
            q, rem = _poly_divmod(r0, [c for c in monic])
            q = [c / r1[-1] for c in q]
            # r0 - q*r1, s0 - q*s1
            def _sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
                out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
                for i, qc in enumerate(q):
                    if qc == 0:
                        continue
                    for j, bc in enumerate(b):
                        out[i + j] -= qc * bc
                return _poly_trim(out)

            r0, r1 = r1, _sub_mul(r0, q, r1)
            s0, s1 = s1, _sub_mul(s0, q, s1)
        if len(r0) != 1:
            raise ZeroDivisionError("value is a zero divisor, which cannot happen in a field")
        inv = [c / r0[0] for c in s0]
        return CyclotomicNumber(self.order, inv)

    def __truediv__(self, other: CyclotomicNumber | int | Fraction) -> CyclotomicNumber:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other)
        return self * other.inverse()

    def __pow__(self, exponent: int) -> CyclotomicNumber:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = CyclotomicNumber.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- conversions ----------------------------------------------------

    def to_complex(self) -> complex:
        """Floating approximation; never used in exact computations."""
        import cmath

        return sum(
            complex(c) * cmath.exp(2j * cmath.pi * k / self.order)
            for k, c in enumerate(self.coeffs)
        )

    def padded_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients padded to length ``order`` (indices 0..n-1)."""
        pad = self.order - len(self.coeffs)
        return self.coeffs + (Fraction(0),) * pad


@lru_cache(maxsize=4096)
def _make_root_cached(k: int, denominator: int) -> CyclotomicNumber:
    raw = [Fraction(0)] * (k + 1)
    raw[k] = Fraction(1)
    return CyclotomicNumber(denominator, raw)


def make_root(numerator: int, denominator: int) -> CyclotomicNumber:
    """The root of unity e^(2*pi*i*numerator/denominator), exactly."""
    if denominator < 1:
        raise ValueError("denominator must be a positive integer")
    return _make_root_cached(numerator % denominator, denominator)


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def sqrt_as_cyclotomic(n: int) -> CyclotomicNumber:
    """The positive square root of a positive integer as a cyclotomic number.

    sqrt(2) = zeta_8 + zeta_8^(-1); for an odd prime p the quadratic Gauss
    sum gives sqrt(p) directly when p = 1 mod 4 and i*sqrt(p) when
    p = 3 mod 4.  Composite arguments factor through these.
    """
    if n < 1:
        raise ValueError("argument must be a positive integer")
    result = CyclotomicNumber.one()
    m = n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            result = result * p
            m //= p * p
        if m % p == 0:
            result = result * _sqrt_prime(p)
            m //= p
        p += 1
    if m > 1:
        result = result * _sqrt_prime(m)
    return result


def _sqrt_prime(p: int) -> CyclotomicNumber:
    if p == 2:
        return make_root(1, 8) + make_root(7, 8)
    gauss = CyclotomicNumber.zero()
    for a in range(1, p):
        gauss = gauss + make_root(a, p) * _legendre(a, p)
    if p % 4 == 1:
        return gauss
    # gauss = i*sqrt(p); multiply by -i.
    return gauss * make_root(3, 4)
