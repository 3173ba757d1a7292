"""Fractional ideals of ``o`` as Z-lattices in Hermite normal form.

An ideal is stored as ``(1/den) * L`` where ``L`` is the Z-lattice spanned by
the columns of an upper-triangular integer HNF over the basis ``(1, w)``
(over Z the basis is 1x1). ``gcd(entries, den) == 1`` makes the
representation canonical, so ``==`` and ``hash`` are structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm, prod

from sympy import factorint
from sympy.ntheory import sqrt_mod
from sympy.solvers.diophantine.diophantine import diop_DN

from .lattice import det, hnf, in_lattice, integer_coefficients, smith_left, solve_upper
from .ring import Element, Ring, RingMismatchError


def _vectors_to_ideal(ring: Ring, vecs) -> FractionalIdeal:
    vecs = [tuple(Fraction(v) for v in vec) for vec in vecs]
    den = reduce(lcm, (v.denominator for vec in vecs for v in vec), 1)
    cols = [[int(v * den) for v in vec] for vec in vecs]
    basis = hnf(cols, ring.degree)
    g = reduce(gcd, (x for col in basis for x in col), den)
    basis = tuple(tuple(x // g for x in col) for col in basis)
    return FractionalIdeal(ring, basis, den // g)


def _integral_ideal(ring: Ring, gens) -> FractionalIdeal:
    if ring.degree == 1:
        return FractionalIdeal(ring, ((abs(reduce(gcd, (g.x for g in gens))),),), 1)
    t, n = ring.w_trace, ring.w_norm
    # g and g*w for every generator, with (x + y w) w = n y + (x + t y) w
    cols = [[g.x, g.y] for g in gens] + [[n * g.y, g.x + t * g.y] for g in gens]
    basis = hnf(cols, 2)
    return FractionalIdeal(ring, (tuple(basis[0]), tuple(basis[1])), 1)


@dataclass(frozen=True)
class FractionalIdeal:
    ring: Ring
    basis: tuple[tuple[int, ...], ...]
    den: int = 1

    # -- construction --------------------------------------------------------

    @classmethod
    def unit(cls, ring: Ring) -> FractionalIdeal:
        return cls(ring, ((1,),) if ring.degree == 1 else ((1, 0), (0, 1)), 1)

    @classmethod
    def principal(cls, elem: Element) -> FractionalIdeal:
        return ideal_from_generators(elem.ring, [elem])

    @classmethod
    def from_json(cls, ring: Ring, data: dict) -> FractionalIdeal:
        rows = data["basis"]
        if ring.degree == 1:
            cols = [[rows[0][0]]]
        else:
            cols = [[rows[0][0], rows[1][0]], [rows[0][1], rows[1][1]]]
        return _vectors_to_ideal(ring, [[Fraction(x, data["den"]) for x in c] for c in cols])

    # -- views ---------------------------------------------------------------

    def basis_elements(self) -> list[Element]:
        if self.ring.degree == 1:
            return [Element(self.ring, self.basis[0][0], 0, self.den)]
        return [Element(self.ring, c[0], c[1], self.den) for c in self.basis]

    def _zvectors(self):
        return [[Fraction(x, self.den) for x in col] for col in self.basis]

    def to_json(self) -> dict:
        if self.ring.degree == 1:
            rows = [[self.basis[0][0], 0], [0, 1]]
        else:
            (a, _), (b, c) = self.basis
            rows = [[a, b], [0, c]]
        return {"basis": rows, "den": self.den}

    def __str__(self):
        gens = ", ".join(str(g) for g in self.basis_elements())
        return f"ideal({gens})"

    def __repr__(self):
        return f"FractionalIdeal({self.ring}, {self})"

    def sort_key(self):
        return (self.norm(), self.den, self.basis)

    # -- predicates ----------------------------------------------------------

    def _check(self, other: FractionalIdeal):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    @property
    def is_unit_ideal(self) -> bool:
        return self == FractionalIdeal.unit(self.ring)

    def __contains__(self, elem) -> bool:
        if isinstance(elem, (int, Fraction)):
            elem = Element(self.ring, elem)
        if elem.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {elem.ring}")
        return in_lattice(self.basis, [c * self.den for c in elem.coords()])

    def issubset(self, other: FractionalIdeal) -> bool:
        self._check(other)
        return all(g in other for g in self.basis_elements())

    def divides(self, other: FractionalIdeal) -> bool:
        """``self | other``, i.e. ``other`` is contained in ``self``."""
        return other.issubset(self)

    def is_module(self) -> bool:
        """Closure under multiplication by ``w`` (always true for canonical ideals)."""
        if self.ring.degree == 1:
            return True
        w = self.ring.w
        return all(g * w in self for g in self.basis_elements())

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: FractionalIdeal) -> FractionalIdeal:
        self._check(other)
        return _vectors_to_ideal(self.ring, self._zvectors() + other._zvectors())

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element(self.ring, other)
        if isinstance(other, Element):
            other = FractionalIdeal.principal(other)
        self._check(other)
        prods = [(g * h).coords() for g in self.basis_elements() for h in other.basis_elements()]
        return _vectors_to_ideal(self.ring, prods)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Absolute norm ``|det(basis)| / den**degree``; equals ``|o/a|`` when integral."""
        n = self.ring.degree
        return abs(det([list(c) for c in self.basis])) / Fraction(self.den) ** n

    def conjugate(self) -> FractionalIdeal:
        if self.ring.degree == 1:
            return self
        return ideal_from_generators(self.ring, [g.conjugate() for g in self.basis_elements()])

    def inverse(self) -> FractionalIdeal:
        if self.ring.degree == 1:
            a = self.basis[0][0]
            return _vectors_to_ideal(self.ring, [[Fraction(self.den, a)]])
        # a * conj(a) = N(a) o
        nrm = self.norm()
        return self.conjugate() * Element(self.ring, nrm.denominator, 0, nrm.numerator)

    def __truediv__(self, other: FractionalIdeal) -> FractionalIdeal:
        return self * other.inverse()

    def __pow__(self, k: int) -> FractionalIdeal:
        if k < 0:
            return self.inverse() ** (-k)
        result = FractionalIdeal.unit(self.ring)
        for _ in range(k):
            result = result * self
        return result

    def intersection(self, other: FractionalIdeal) -> FractionalIdeal:
        # a ∩ b = a b (a + b)^-1 in a Dedekind domain
        return (self * other) / (self + other)

    def reduce(self, elem: Element) -> Element:
        """Canonical representative of ``elem`` modulo an integral ideal."""
        if not (self.is_integral and elem.is_integral):
            raise ValueError("reduce needs an integral ideal and element")
        t = [int(c) for c in elem.coords()]
        for r in reversed(range(self.ring.degree)):
            col = self.basis[r]
            q = t[r] // col[r]
            t = [ti - q * ci for ti, ci in zip(t, col)]
        return Element(self.ring, *t)


def ideal_from_generators(ring: Ring, gens) -> FractionalIdeal:
    """Smallest fractional ideal containing the given elements of ``K``."""
    gens = [g if isinstance(g, Element) else ring(g) for g in gens]
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{ring} vs {g.ring}")
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValueError("the zero ideal is not a fractional ideal")
    if all(g.den == 1 for g in gens):
        return _integral_ideal(ring, gens)
    vecs = [g.coords() for g in gens]
    if ring.degree == 2:
        w = ring.w
        vecs += [(g * w).coords() for g in gens]
    return _vectors_to_ideal(ring, vecs)


# -- prime ideals and factorization -------------------------------------------


@dataclass(frozen=True)
class PrimeFactor:
    prime: FractionalIdeal
    exponent: int
    residue_norm: int
    above: int


def _w_poly_roots(ring: Ring, p: int) -> list[int]:
    # roots of X^2 - tX - n mod p, the minimal polynomial of w
    t, n = ring.w_trace, ring.w_norm
    if p < 50:
        return [x for x in range(p) if (x * x - t * x - n) % p == 0]
    disc = (t * t + 4 * n) % p
    roots = sqrt_mod(disc, p, all_roots=True) or []
    inv2 = pow(2, -1, p)
    return sorted({(t + s) * inv2 % p for s in roots})


@lru_cache(maxsize=None)
def primes_above(ring: Ring, p: int) -> tuple[tuple[FractionalIdeal, int], ...]:
    """Prime ideals over the rational prime ``p`` with their absolute norms."""
    if ring.degree == 1:
        return ((ideal_from_generators(ring, [p]), p),)
    roots = _w_poly_roots(ring, p)
    if not roots:
        return ((ideal_from_generators(ring, [p]), p * p),)
    w = ring.w
    return tuple((ideal_from_generators(ring, [ring(p), w - r]), p) for r in roots)


def _factor_integral(a: FractionalIdeal) -> dict[FractionalIdeal, PrimeFactor]:
    out = {}
    nrm = int(a.norm())
    for p in sorted(factorint(nrm)):
        for prime, pn in primes_above(a.ring, p):
            e, rest = 0, a
            while rest.issubset(prime):
                rest = rest / prime
                e += 1
            if e:
                out[prime] = PrimeFactor(prime, e, pn, p)
    return out


def factor_ideal(a: FractionalIdeal) -> list[PrimeFactor]:
    """Prime factorization with signed exponents, sorted by (norm, HNF)."""
    scaled = a * Element(a.ring, a.den)
    top = _factor_integral(scaled)
    bottom = _factor_integral(FractionalIdeal.principal(Element(a.ring, a.den)))
    result = []
    for prime in set(top) | set(bottom):
        e = (top[prime].exponent if prime in top else 0) - (bottom[prime].exponent if prime in bottom else 0)
        if e:
            ref = top.get(prime) or bottom[prime]
            result.append(PrimeFactor(prime, e, ref.residue_norm, ref.above))
    result.sort(key=lambda f: (f.residue_norm, f.prime.sort_key()))
    return result


def valuation(a: FractionalIdeal, prime: FractionalIdeal) -> int:
    for f in factor_ideal(a):
        if f.prime == prime:
            return f.exponent
    return 0


def divisors(a: FractionalIdeal) -> list[FractionalIdeal]:
    """All integral divisors of an integral ideal, sorted by norm."""
    if not a.is_integral:
        raise ValueError("divisors of a non-integral ideal")
    factors = factor_ideal(a)
    out = []
    for exps in itertools.product(*(range(f.exponent + 1) for f in factors)):
        d = FractionalIdeal.unit(a.ring)
        for f, e in zip(factors, exps):
            d = d * f.prime ** e
        out.append(d)
    return sorted(out, key=FractionalIdeal.sort_key)


def principal_generator(a: FractionalIdeal) -> Element | None:
    """A generator of ``a`` if it is principal, else ``None``."""
    ring = a.ring
    if ring.degree == 1:
        return a.basis_elements()[0]
    scaled = a * Element(ring, a.den)
    n = int(scaled.norm())
    d = ring.d
    targets = [n] if d < 0 else [n, -n]
    for target in targets:
        if ring.omega_kind == "sqrt":
            sols = [(x, y) for x, y in diop_DN(d, target)]
        else:
            # 4 N(x + y w) = (2x + y)^2 - d y^2
            sols = [((X - Y) // 2, Y) for X, Y in _signed(diop_DN(d, 4 * target)) if (X - Y) % 2 == 0]
        for x, y in _signed(sols):
            g = ring(x, y)
            if g in scaled and abs(g.norm()) == n:
                return g / a.den
    return None


def _signed(pairs):
    seen = []
    for x, y in pairs:
        for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            v = (sx * x, sy * y)
            if v not in seen:
                seen.append(v)
    return seen


# -- quotients, CRT, strong generators ----------------------------------------


class Quotient:
    """The finite quotient ``a / b`` for fractional ideals ``b ⊆ a``.

    Coordinates come from the Smith form of the inclusion, which fixes a
    deterministic enumeration order of the transversal.
    """

    def __init__(self, a: FractionalIdeal, b: FractionalIdeal):
        if not b.issubset(a):
            raise ValueError(f"{b} is not contained in {a}")
        self.a, self.b = a, b
        ring = a.ring
        n = ring.degree
        self._den = lcm(a.den, b.den)
        acols = [[x * (self._den // a.den) for x in col] for col in a.basis]
        bcols = [[x * (self._den // b.den) for x in col] for col in b.basis]
        # inclusion matrix: coordinates of b's basis in a's basis
        m_cols = [[int(c) for c in solve_upper(acols, col)] for col in bcols]
        rows = [[m_cols[j][i] for j in range(n)] for i in range(n)]
        left, self.invariants = smith_left(rows)
        self._gens = [[sum(acols[k][i] * left[k][j] for k in range(n)) for i in range(n)] for j in range(n)]
        self._ring = ring

    def __len__(self):
        return prod(self.invariants)

    def _element(self, digits) -> Element:
        n = self._ring.degree
        v = [sum(d * g[i] for d, g in zip(digits, self._gens)) for i in range(n)]
        return Element(self._ring, v[0], v[1] if n == 2 else 0, self._den)

    def elements(self) -> list[Element]:
        return [self._element(digits) for digits in itertools.product(*(range(d) for d in self.invariants))]

    def digits(self, elem: Element) -> tuple[int, ...]:
        if elem not in self.a:
            raise ValueError(f"{elem} is not in {self.a}")
        target = [c * self._den for c in elem.coords()]
        n = self._ring.degree
        # solve gens * w = target (gens is unimodular over a's basis)
        mat = [[Fraction(self._gens[j][i]) for j in range(n)] for i in range(n)]
        w = _solve_dense(mat, target)
        return tuple(int(wi) % d for wi, d in zip(w, self.invariants))

    def representative(self, elem: Element) -> Element:
        """The transversal element congruent to ``elem`` modulo ``b``."""
        return self._element(self.digits(elem))

    def tag(self) -> str:
        return f"{self.a}/{self.b}"


def _solve_dense(mat, rhs):
    n = len(mat)
    aug = [list(row) + [Fraction(r)] for row, r in zip(mat, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c] / aug[c][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def residue_transversal(a: FractionalIdeal, b: FractionalIdeal) -> list[Element]:
    """Deterministic transversal of ``a / b``; requires ``b ⊆ a``."""
    return Quotient(a, b).elements()


def _coprime_split(m1: FractionalIdeal, m2: FractionalIdeal) -> Element:
    # e1 in m1 with 1 - e1 in m2
    cols = [list(c) for c in m1.basis] + [list(c) for c in m2.basis]
    one = [1] + [0] * (m1.ring.degree - 1)
    z = integer_coefficients(cols, one, m1.ring.degree)
    if z is None:
        raise ValueError(f"moduli {m1} and {m2} are not coprime")
    gens = m1.basis_elements()
    return sum((zi * g for zi, g in zip(z, gens)), m1.ring.zero())


def crt_solve(congruences) -> Element:
    """Element ``x`` with ``x - r_i in m_i`` for pairwise coprime integral ``m_i``."""
    congruences = list(congruences)
    if not congruences:
        raise ValueError("no congruences")
    ring = congruences[0][1].ring
    unit = FractionalIdeal.unit(ring)
    for (_, m) in congruences:
        if not m.is_integral:
            raise ValueError(f"modulus {m} is not integral")
    for (_, m1), (_, m2) in itertools.combinations(congruences, 2):
        if m1 + m2 != unit:
            raise ValueError(f"moduli {m1} and {m2} are not coprime")
    x, modulus = congruences[0]
    if not x.is_integral:
        raise ValueError("residues must be ring elements")
    for r, m in congruences[1:]:
        e1 = _coprime_split(modulus, m)
        x = x * (1 - e1) + r * e1
        modulus = modulus * m
    return modulus.reduce(x)


def strong_generator(a: FractionalIdeal, m: FractionalIdeal) -> Element:
    """Element ``g`` of ``a`` with ``g*o + m == a``, for integral ``a`` dividing ``m``."""
    if not a.is_integral:
        raise ValueError(f"{a} is not integral")
    if not a.divides(m):
        raise ValueError(f"{a} does not divide {m}")
    ring = a.ring
    if a.is_unit_ideal:
        return ring.one()

    def ok(g):
        return not g.is_zero and FractionalIdeal.principal(g) + m == a

    b = a.basis_elements()
    for g in b + [sum(b, ring.zero())]:
        if ok(g):
            return g
    congruences = []
    for f in factor_ideal(m):
        e = valuation(a, f.prime)
        upper = f.prime ** (e + 1)
        local = next(g for g in (f.prime ** e).basis_elements() if g not in upper)
        congruences.append((local, upper))
    g = crt_solve(congruences)
    if not ok(g):
        raise AssertionError(f"strong generator construction failed for {a}, {m}")
    return g
