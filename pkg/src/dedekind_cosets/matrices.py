"""2x2 matrices over K: determinantal invariants, coset tests, unimodular completion."""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import FractionalIdeal, ideal_from_generators
from .lattice import hnf, integer_coefficients
from .ring import Element, Ring, RingMismatchError, is_unit


class Mat2:
    """Immutable 2x2 matrix ``(a, b; c, d)`` with entries in ``K``."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: Ring, a, b, c, d):
        ents = tuple(e if isinstance(e, Element) else ring(e) for e in (a, b, c, d))
        for e in ents:
            if e.ring != ring:
                raise RingMismatchError(f"{ring} vs {e.ring}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def identity(cls, ring: Ring) -> Mat2:
        return cls(ring, 1, 0, 0, 1)

    @classmethod
    def diag(cls, ring: Ring, a, d) -> Mat2:
        return cls(ring, a, 0, 0, d)

    @property
    def a(self):
        return self.entries[0]

    @property
    def b(self):
        return self.entries[1]

    @property
    def c(self):
        return self.entries[2]

    @property
    def d(self):
        return self.entries[3]

    def det(self) -> Element:
        a, b, c, d = self.entries
        return a * d - b * c

    @property
    def rank(self) -> int:
        if all(e.is_zero for e in self.entries):
            return 0
        return 1 if self.det().is_zero else 2

    @property
    def is_integral(self) -> bool:
        return all(e.is_integral for e in self.entries)

    @property
    def in_I(self) -> bool:
        return self.is_integral and not self.det().is_zero

    @property
    def in_U(self) -> bool:
        return self.is_integral and is_unit(self.det())

    def __mul__(self, other):
        if isinstance(other, Mat2):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            a, b, c, d = self.entries
            e, f, g, h = other.entries
            return Mat2(self.ring, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        if isinstance(other, (Element, int)):
            return Mat2(self.ring, *(x * other for x in self.entries))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Element, int)):
            return self * other
        return NotImplemented

    def apply(self, x: Element, y: Element) -> tuple[Element, Element]:
        a, b, c, d = self.entries
        return a * x + b * y, c * x + d * y

    def inverse(self) -> Mat2:
        dt = self.det()
        if dt.is_zero:
            raise ZeroDivisionError("singular matrix")
        a, b, c, d = self.entries
        inv = dt.inverse()
        return Mat2(self.ring, d * inv, -b * inv, -c * inv, a * inv)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __str__(self):
        a, b, c, d = self.entries
        return f"[[{a}, {b}], [{c}, {d}]]"

    def __repr__(self):
        return f"Mat2({self.ring}, {self})"

    def to_json(self) -> list:
        a, b, c, d = self.entries
        return [[str(a), str(b)], [str(c), str(d)]]

    def sort_key(self):
        return tuple(e.sort_key() for e in (self.c, self.a, self.b, self.d))


@dataclass(frozen=True)
class CosetInvariants:
    rank: int
    delta1: FractionalIdeal
    g: FractionalIdeal | None
    delta2: FractionalIdeal | None = None
    e1: FractionalIdeal | None = None
    e2: FractionalIdeal | None = None
    f1: FractionalIdeal | None = None
    f2: FractionalIdeal | None = None


def first_column_ideal(A: Mat2) -> FractionalIdeal:
    return ideal_from_generators(A.ring, [A.a, A.c])


def mat_invariants(A: Mat2) -> CosetInvariants:
    """Determinantal divisors, elementary divisors, fundamental factors and ``g(A)``."""
    if not A.is_integral:
        raise ValueError(f"{A} is not integral")
    rank = A.rank
    if rank == 0:
        raise ValueError("zero matrix has no invariants")
    delta1 = ideal_from_generators(A.ring, A.entries)
    if rank == 1:
        g = None if (A.a.is_zero and A.c.is_zero) else first_column_ideal(A)
        return CosetInvariants(rank=1, delta1=delta1, g=g)
    g = first_column_ideal(A)
    delta2 = FractionalIdeal.principal(A.det())
    inv1 = delta1.inverse()
    e2 = delta2 * inv1
    f2 = e2 * inv1
    assert delta1.divides(g) and g.divides(delta2)
    return CosetInvariants(rank=2, delta1=delta1, g=g, delta2=delta2,
                           e1=delta1, e2=e2, f1=delta1, f2=f2)


def is_integral_unimodular(A: Mat2) -> tuple[bool, bool, bool]:
    """Membership flags ``(integral, in I, in U)``."""
    return A.is_integral, A.in_I, A.in_U


def same_right_coset(A: Mat2, B: Mat2) -> bool:
    """``U A == U B``, i.e. ``B A^-1`` is unimodular."""
    if A.det().is_zero or B.det().is_zero:
        raise ValueError("same_right_coset needs nonsingular matrices")
    return (B * A.inverse()).in_U


def right_coset_key(A: Mat2) -> tuple:
    """Hashable invariant of ``U A``: the HNF of the row module ``o^2 A``.

    ``U A == U B`` iff the rows of ``A`` and ``B`` span the same o-module,
    so this key agrees with :func:`same_right_coset`.
    """
    ring = A.ring
    if not A.in_I:
        raise ValueError(f"{A} is not in I")
    rows = [(A.a, A.b), (A.c, A.d)]
    scalars = [ring.one()] if ring.degree == 1 else [ring.one(), ring.w]
    vecs = []
    for r in rows:
        for s in scalars:
            vecs.append([int(v) for e in r for v in (e * s).coords()])
    return tuple(tuple(col) for col in hnf(vecs, 2 * ring.degree))


def same_double_coset(A: Mat2, B: Mat2) -> bool:
    """``U A U == U B U`` decided by determinantal invariants."""
    ia, ib = mat_invariants(A), mat_invariants(B)
    if ia.rank != ib.rank:
        raise ValueError("matrices of different rank")
    if ia.rank == 2:
        return ia.delta1 == ib.delta1 and ia.delta2 == ib.delta2
    if ia.g is None or ib.g is None:
        raise ValueError("rank-1 comparison needs nonzero first columns")
    return ia.delta1 == ib.delta1 and ia.g == ib.g


def _bezout_inverse_pair(x: Element, y: Element) -> tuple[Element, Element]:
    # s, t in g^-1 with s x + t y = 1, where g = x o + y o
    ring = x.ring
    g_inv = ideal_from_generators(ring, [x, y]).inverse()
    basis = g_inv.basis_elements()
    cands = [x * h for h in basis] + [y * h for h in basis]
    den = g_inv.den
    cols = [[int(c * den) for c in v.coords()] for v in cands]
    one = [den] + [0] * (ring.degree - 1)
    z = integer_coefficients(cols, one, ring.degree)
    if z is None:
        raise AssertionError("x g^-1 + y g^-1 does not contain 1")
    k = len(basis)
    s = sum((zi * h for zi, h in zip(z[:k], basis)), ring.zero())
    t = sum((zi * h for zi, h in zip(z[k:], basis)), ring.zero())
    return s, t


def complete_unimodular(a: Element, b: Element, c: Element, d: Element) -> Mat2:
    """``R`` in ``SL_2(o)`` with ``R (a, b)^T == (c, d)^T``; needs ``a o + b o == c o + d o``."""
    ring = a.ring
    src_zero = a.is_zero and b.is_zero
    dst_zero = c.is_zero and d.is_zero
    if src_zero or dst_zero:
        if src_zero and dst_zero:
            return Mat2.identity(ring)
        raise ValueError("cannot map a zero column to a nonzero one")
    if ideal_from_generators(ring, [a, b]) != ideal_from_generators(ring, [c, d]):
        raise ValueError(f"({a}, {b}) and ({c}, {d}) generate different ideals")
    s, t = _bezout_inverse_pair(a, b)
    s2, t2 = _bezout_inverse_pair(c, d)
    c_ab = Mat2(ring, a, -t, b, s)
    c_cd = Mat2(ring, c, -t2, d, s2)
    R = c_cd * c_ab.inverse()
    if not (R.is_integral and R.det() == 1 and R.apply(a, b) == (c, d)):
        raise AssertionError("unimodular completion failed its postcondition")
    return R
