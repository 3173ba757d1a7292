"""Exact arithmetic in Z and quadratic rings of integers, and their fraction fields.

A ring is described by a squarefree ``d`` (``K = Q(sqrt d)``) or by the
integer marker :data:`Z`. Elements are stored as ``(x + y*w) / den`` with
``w = sqrt(d)`` for ``d = 2, 3 mod 4`` and ``w = (1 + sqrt(d))/2`` for
``d = 1 mod 4``, so the ring of integers is always ``Z + Z*w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd

from sympy import factorint


class RingMismatchError(ValueError):
    """Operands live over different rings."""


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class Ring:
    """Descriptor of the ring of integers ``o``.

    ``d is None`` selects ``o = Z``. Otherwise ``w**2 = w_trace*w + w_norm``.
    """

    d: int | None = None

    def __post_init__(self):
        if self.d is None:
            return
        if not isinstance(self.d, int) or self.d in (0, 1) or not _squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer other than 0 and 1, got {self.d!r}")

    @property
    def is_integers(self) -> bool:
        return self.d is None

    @cached_property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    @cached_property
    def omega_kind(self) -> str:
        if self.d is None:
            return "none"
        return "half" if self.d % 4 == 1 else "sqrt"

    @cached_property
    def w_trace(self) -> int:
        return 1 if self.omega_kind == "half" else 0

    @cached_property
    def w_norm(self) -> int:
        # w**2 = w_trace*w + w_norm
        if self.d is None:
            return 0
        return (self.d - 1) // 4 if self.omega_kind == "half" else self.d

    @property
    def discriminant(self) -> int:
        if self.d is None:
            return 1
        return self.d if self.omega_kind == "half" else 4 * self.d

    @property
    def is_imaginary(self) -> bool:
        return self.d is not None and self.d < 0

    def torsion_units(self) -> list[Element]:
        """Roots of unity of ``o`` (the whole unit group when imaginary)."""
        units = [self(1), self(-1)]
        if self.d == -1:
            units += [self(0, 1), self(0, -1)]
        elif self.d == -3:
            # w = (1+sqrt(-3))/2 is a primitive sixth root of unity
            w = self(0, 1)
            units += [w, -w, w * w, -(w * w)]
        return units

    def __call__(self, x=0, y=0, den=1) -> Element:
        return Element(self, x, y, den)

    def one(self) -> Element:
        return Element(self, 1)

    def zero(self) -> Element:
        return Element(self, 0)

    @property
    def w(self) -> Element:
        if self.d is None:
            raise ValueError("Z has no w coordinate")
        return Element(self, 0, 1)

    def __str__(self):
        return "Z" if self.d is None else f"Q(sqrt,{self.d})"


Z = Ring()


class Element:
    """Element ``(x + y*w) / den`` of ``K`` kept in lowest terms with ``den > 0``.

    Elements with ``den == 1`` are the ring elements; no separate class is used.
    """

    __slots__ = ("ring", "x", "y", "den")

    def __init__(self, ring: Ring, x=0, y=0, den=1):
        if isinstance(x, Fraction) or isinstance(y, Fraction):
            x, y = Fraction(x), Fraction(y)
            lcm = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
            x, y, den = int(x * lcm), int(y * lcm), den * lcm
        x, y, den = int(x), int(y), int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if ring.d is None and y != 0:
            raise ValueError("elements of Z have no w coordinate")
        if den < 0:
            x, y, den = -x, -y, -den
        g = gcd(gcd(x, y), den)
        if g > 1:
            x, y, den = x // g, y // g, den // g
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def _integral(cls, ring: Ring, x: int, y: int) -> Element:
        # trusted constructor for already-normalized ring elements
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "x", x)
        object.__setattr__(obj, "y", y)
        object.__setattr__(obj, "den", 1)
        return obj

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Element(self.ring, other.numerator, 0, other.denominator)
        return NotImplemented

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def coords(self) -> tuple[Fraction, ...]:
        """Coordinates over the Z-basis (1, w), or (1,) for Z."""
        if self.ring.degree == 1:
            return (Fraction(self.x, self.den),)
        return (Fraction(self.x, self.den), Fraction(self.y, self.den))

    def __add__(self, other):
        if other.__class__ is not Element or other.ring is not self.ring:
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        if self.den == 1 and other.den == 1:
            return Element._integral(self.ring, self.x + other.x, self.y + other.y)
        den = self.den * other.den
        return Element(self.ring, self.x * other.den + other.x * self.den,
                       self.y * other.den + other.y * self.den, den)

    __radd__ = __add__

    def __neg__(self):
        if self.den == 1:
            return Element._integral(self.ring, -self.x, -self.y)
        return Element(self.ring, -self.x, -self.y, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other.__class__ is not Element or other.ring is not self.ring:
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        r = self.ring
        a, b, c, d = self.x, self.y, other.x, other.y
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd(t w + n)
        bd = b * d
        x = a * c + bd * r.w_norm
        y = a * d + b * c + bd * r.w_trace
        if self.den == 1 and other.den == 1:
            return Element._integral(r, x, y)
        return Element(r, x, y, self.den * other.den)

    __rmul__ = __mul__

    def conjugate(self) -> Element:
        if self.ring.degree == 1:
            return self
        # conj(w) = t - w
        return Element(self.ring, self.x + self.ring.w_trace * self.y, -self.y, self.den)

    def norm(self) -> Fraction:
        """Field norm. Over Z this is the element itself (signed)."""
        r = self.ring
        if r.degree == 1:
            return Fraction(self.x, self.den)
        x, y = self.x, self.y
        return Fraction(x * x + r.w_trace * x * y - r.w_norm * y * y, self.den * self.den)

    def trace(self) -> Fraction:
        r = self.ring
        if r.degree == 1:
            return Fraction(2 * self.x, self.den)
        return Fraction(2 * self.x + r.w_trace * self.y, self.den)

    def inverse(self) -> Element:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if self.ring.degree == 1:
            return Element(self.ring, self.den, 0, self.x)
        n = self.norm()
        c = self.conjugate()
        # 1/u = conj(u) / N(u)
        return Element(self.ring, c.x * n.denominator, c.y * n.denominator, c.den * n.numerator)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return self.y == 0 and Fraction(self.x, self.den) == other
        if not isinstance(other, Element):
            return NotImplemented
        return (self.ring == other.ring and self.x == other.x
                and self.y == other.y and self.den == other.den)

    def __hash__(self):
        return hash((self.ring, self.x, self.y, self.den))

    def __repr__(self):
        return f"Element({self.ring}, {self})"

    def __str__(self):
        if self.y == 0:
            body = str(self.x)
        else:
            sign = "+" if self.y > 0 else "-"
            body = f"{self.x}{sign}{abs(self.y)}*w"
        if self.den == 1:
            return body
        return f"({body})/{self.den}" if self.y else f"{body}/{self.den}"

    def sort_key(self):
        return (self.den, abs(self.x) + abs(self.y), abs(self.y), self.x, self.y)


def elem_norm_trace(u: Element) -> tuple[int, int]:
    """Norm and trace of a ring element as Python ints."""
    if not u.is_integral:
        raise ValueError("norm/trace requested for a non-integral element")
    return int(u.norm()), int(u.trace())


def is_unit(u: Element) -> bool:
    return u.is_integral and abs(u.norm()) == 1


def try_divide(u: Element, v: Element) -> Element | None:
    """Return ``w`` in ``o`` with ``u = v*w``, or ``None`` when ``v`` does not divide ``u``."""
    if v.is_zero:
        raise ZeroDivisionError("division by zero")
    w = u / v
    return w if w.is_integral else None
