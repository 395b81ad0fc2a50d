"""Scalars of the form v * D^k with v cyclotomic and D the total quantum dimension.

D is kept symbolic through its integer exponent ``dpow``; the only relation
it satisfies is D^2 = |A| for the ambient theory's group A, so operations
that must reconcile different exponents (addition, semantic equality) take
the group order as context.  Odd exponent differences are resolved through
an exact cyclotomic square root of |A|, so equality is total once a context
is supplied.

Zero is canonical: the zero scalar always has dpow 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .cyclotomic import CyclotomicNumber, make_root, sqrt_as_cyclotomic
from .errors import ContextRequiredError


class ExactScalar:
    __slots__ = ("value", "dpow")
    __hash__ = None

    def __init__(self, value: CyclotomicNumber, dpow: int = 0) -> None:
        if value.is_zero:
            dpow = 0
        self.value = value
        self.dpow = dpow

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> ExactScalar:
        return cls(CyclotomicNumber.zero(), 0)

    @classmethod
    def one(cls) -> ExactScalar:
        return cls(CyclotomicNumber.one(), 0)

    @classmethod
    def from_rational(cls, value: Fraction | int, dpow: int = 0) -> ExactScalar:
        return cls(CyclotomicNumber.from_rational(value), dpow)

    @classmethod
    def root(cls, numerator: int, denominator: int, dpow: int = 0) -> ExactScalar:
        return cls(make_root(numerator, denominator), dpow)

    # -- structure ------------------------------------------------------

    def __repr__(self) -> str:
        return f"ExactScalar({self.value!r}, dpow={self.dpow})"

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def __eq__(self, other: object) -> bool:
        """Structural equality of canonical forms.

        Scalars with different dpow compare unequal here even when they
        denote the same number; use :meth:`equals` with the group order
        for semantic comparison.
        """
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.dpow == other.dpow and self.value == other.value

    def equals(self, other: ExactScalar, group_order: int | None = None) -> bool:
        """Semantic equality, aligning D-powers via D^2 = group_order."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.dpow == other.dpow:
            return self.value == other.value
        if group_order is None:
            raise ContextRequiredError(
                "comparing scalars with different D-powers requires the group order"
            )
        diff = self.dpow - other.dpow
        t, r = divmod(diff, 2)
        lhs = self.value * Fraction(group_order) ** t
        if r:
            lhs = lhs * sqrt_as_cyclotomic(group_order)
        return lhs == other.value

    # -- arithmetic -------------------------------------------------------

    def add(self, other: ExactScalar, group_order: int | None = None) -> ExactScalar:
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.dpow == other.dpow:
            return ExactScalar(self.value + other.value, self.dpow)
        if group_order is None:
            raise ContextRequiredError(
                "adding scalars with different D-powers requires the group order"
            )
        lo, hi = (self, other) if self.dpow < other.dpow else (other, self)
        diff = hi.dpow - lo.dpow
        t, r = divmod(diff, 2)
        v = hi.value * Fraction(group_order) ** t
        if r:
            v = v * sqrt_as_cyclotomic(group_order)
        return ExactScalar(lo.value + v, lo.dpow)

    def __add__(self, other: ExactScalar) -> ExactScalar:
        return self.add(other)

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.value, self.dpow)

    def __sub__(self, other: ExactScalar) -> ExactScalar:
        return self.add(-other)

    def __mul__(self, other: ExactScalar | int | Fraction) -> ExactScalar:
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.value * other, self.dpow)
        return ExactScalar(self.value * other.value, self.dpow + other.dpow)

    __rmul__ = __mul__

    def __truediv__(self, other: ExactScalar) -> ExactScalar:
        return ExactScalar(self.value / other.value, self.dpow - other.dpow)

    def __pow__(self, exponent: int) -> ExactScalar:
        return ExactScalar(self.value**exponent, self.dpow * exponent)

    def conj(self) -> ExactScalar:
        """Complex conjugation; D is real so dpow is untouched."""
        return ExactScalar(self.value.conj(), self.dpow)

    def times_dpow(self, shift: int) -> ExactScalar:
        if self.is_zero:
            return self
        return ExactScalar(self.value, self.dpow + shift)

    # -- conversions ------------------------------------------------------

    def to_complex(self, group_order: int) -> complex:
        """Floating approximation with D = sqrt(group_order); display only."""
        return self.value.to_complex() * float(group_order) ** (self.dpow / 2)

    def to_json(self) -> dict[str, Any]:
        return {
            "order": self.value.order,
            "coeffs": [str(c) for c in self.value.padded_coeffs()],
            "dpow": self.dpow,
        }


def arith(a: ExactScalar, b: ExactScalar | None, op: str, group_order: int | None = None) -> ExactScalar:
    """Dispatch add/mul/conj by name; conj ignores the second operand."""
    if op == "add":
        assert b is not None
        return a.add(b, group_order)
    if op == "mul":
        assert b is not None
        return a * b
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown operation {op!r}")
