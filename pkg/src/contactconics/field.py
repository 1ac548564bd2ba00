"""Exact arithmetic in the degree-4 number field K = Q(r2, i).

Elements are stored on the fixed Q-basis {1, r2, i, i*r2} with exact
rational coordinates, where r2**2 = 2, i**2 = -1 and (i*r2)**2 = -2.
Every value is canonical on construction, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rat = Fraction

RatLike = Union[int, Fraction]
ElemLike = Union[int, Fraction, "FieldElem"]


def _rat(value: RatLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational value: {value!r}")


@dataclass(frozen=True, slots=True)
class FieldElem:
    """Element c0 + c1*r2 + c2*i + c3*i*r2 of K = Q(r2, i)."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)

    @classmethod
    def from_rational(cls, value: RatLike) -> "FieldElem":
        return cls(_rat(value), Fraction(0), Fraction(0), Fraction(0))

    @classmethod
    def coerce(cls, value: ElemLike) -> "FieldElem":
        if isinstance(value, FieldElem):
            return value
        return cls.from_rational(value)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2, self.c3)

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2 or self.c3)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def is_real(self) -> bool:
        return not (self.c2 or self.c3)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: ElemLike) -> "FieldElem":
        o = FieldElem.coerce(other)
        return FieldElem(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __sub__(self, other: ElemLike) -> "FieldElem":
        o = FieldElem.coerce(other)
        return FieldElem(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)

    def __rsub__(self, other: ElemLike) -> "FieldElem":
        return FieldElem.coerce(other) - self

    def __neg__(self) -> "FieldElem":
        return FieldElem(-self.c0, -self.c1, -self.c2, -self.c3)

    def __mul__(self, other: ElemLike) -> "FieldElem":
        o = FieldElem.coerce(other)
        a0, a1, a2, a3 = self.coords
        b0, b1, b2, b3 = o.coords
        return FieldElem(
            a0 * b0 + 2 * a1 * b1 - a2 * b2 - 2 * a3 * b3,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 + 2 * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "FieldElem":
        """Galois conjugate sending r2 to -r2."""
        return FieldElem(self.c0, -self.c1, self.c2, -self.c3)

    def conj_i(self) -> "FieldElem":
        """Galois conjugate sending i to -i."""
        return FieldElem(self.c0, self.c1, -self.c2, -self.c3)

    def conjugates(self) -> tuple["FieldElem", "FieldElem", "FieldElem", "FieldElem"]:
        """The four Galois conjugates, identity first."""
        return (self, self.conj_sqrt2(), self.conj_i(), self.conj_sqrt2().conj_i())

    def norm_to_q(self) -> Fraction:
        """Product of the four Galois conjugates, always rational."""
        _, s, t, st = self.conjugates()
        product = self * s * t * st
        return product.as_rational()

    def inv(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        _, s, t, st = self.conjugates()
        cofactor = s * t * st
        norm = (self * cofactor).as_rational()
        return FieldElem(
            cofactor.c0 / norm, cofactor.c1 / norm, cofactor.c2 / norm, cofactor.c3 / norm
        )

    def __truediv__(self, other: ElemLike) -> "FieldElem":
        return self * FieldElem.coerce(other).inv()

    def __rtruediv__(self, other: ElemLike) -> "FieldElem":
        return FieldElem.coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> "FieldElem":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_lex_positive(self) -> bool:
        """Canonical sign: first nonzero coordinate is positive. False for zero."""
        for c in self.coords:
            if c:
                return c > 0
        return False

    def sort_key(self) -> tuple:
        return tuple(
            (c.numerator, c.denominator) for c in self.coords
        )

    def sqrt(self) -> "FieldElem | None":
        """A square root in K, or None if the element is not a square in K."""
        if self.is_zero():
            return ZERO
        if self.is_rational():
            root = _rational_sqrt_in_k(self.c0)
            if root is not None:
                return root
            return None
        return _field_sqrt_general(self)

    def __str__(self) -> str:
        terms = []
        for coeff, unit in zip(self.coords, ("", "r2", "i", "i*r2")):
            if not coeff:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if not unit:
                body = str(mag)
            elif mag == 1:
                body = unit
            else:
                body = f"{mag}*{unit}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"FieldElem({self})"


ZERO = FieldElem()
ONE = FieldElem.from_rational(1)
TWO = FieldElem.from_rational(2)
SQRT2 = FieldElem(Fraction(0), Fraction(1), Fraction(0), Fraction(0))
I = FieldElem(Fraction(0), Fraction(0), Fraction(1), Fraction(0))
ISQRT2 = FieldElem(Fraction(0), Fraction(0), Fraction(0), Fraction(1))


def _squarefree_kernel(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    kernel = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            count = 0
            while n % d == 0:
                n //= d
                count += 1
            if count % 2:
                kernel *= d
        d += 1 if d == 2 else 2
    return sign * kernel * n


_KERNEL_ROOTS = {1: ONE, 2: SQRT2, -1: I, -2: ISQRT2}


def _rational_sqrt_in_k(value: Fraction) -> FieldElem | None:
    """Square root of a rational inside K; K contains sqrt(u) for u in {1,2,-1,-2} only."""
    if value == 0:
        return ZERO
    kernel = _squarefree_kernel(value.numerator * value.denominator)
    unit_root = _KERNEL_ROOTS.get(kernel)
    if unit_root is None:
        return None
    reduced = value / kernel
    num, den = reduced.numerator, reduced.denominator
    root_num, root_den = isqrt(num), isqrt(den)
    if root_num * root_num != num or root_den * root_den != den:
        raise AssertionError("kernel reduction must leave a perfect square")
    return unit_root * Fraction(root_num, root_den)


def _field_sqrt_general(value: FieldElem) -> FieldElem | None:
    """Square-root test for non-rational elements, via factoring w**2 - value over K."""
    import sympy

    w = sympy.Symbol("w")
    poly = sympy.Poly(w**2 - to_sympy(value), w, extension=[sympy.sqrt(2), sympy.I])
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            root = sympy.expand(-factor.nth(0) / factor.nth(1))
            candidate = from_sympy(root)
            if candidate * candidate == value:
                return candidate
    return None


def to_sympy(value: FieldElem):
    import sympy

    r2 = sympy.sqrt(2)
    return (
        sympy.Rational(value.c0)
        + sympy.Rational(value.c1) * r2
        + sympy.Rational(value.c2) * sympy.I
        + sympy.Rational(value.c3) * sympy.I * r2
    )


def from_sympy(expr) -> FieldElem:
    import sympy

    expanded = sympy.expand(expr)
    r2 = sympy.sqrt(2)
    coords = [Fraction(0)] * 4
    basis = {1: 0, r2: 1, sympy.I: 2, sympy.I * r2: 3}
    for monom, coeff in expanded.as_coefficients_dict().items():
        if monom not in basis:
            raise ValueError(f"expression {expr} is not in Q(r2, i)")
        rational = sympy.Rational(coeff)
        coords[basis[monom]] = Fraction(int(rational.p), int(rational.q))
    return FieldElem(*coords)
