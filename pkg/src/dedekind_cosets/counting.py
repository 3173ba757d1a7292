"""Right cosets inside double cosets of GL_2(o): counts, normal forms, transversals.

``mu(A)`` is the number of right cosets ``U B`` contained in ``U A U``;
``mu_ideal(A, a)`` counts those whose first column generates ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .ideals import (
    FractionalIdeal,
    Quotient,
    crt_solve,
    divisors,
    factor_ideal,
    ideal_from_generators,
    principal_generator,
    strong_generator,
)
from .matrices import Mat2, complete_unimodular, first_column_ideal, mat_invariants, right_coset_key, same_right_coset
from .ring import Element, Ring

HERMITE_CAP = 10**6


def _require_I(A: Mat2):
    if not A.in_I:
        raise ValueError(f"{A} is not an integral matrix with nonzero determinant")


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to the non-integer {value}")
    return int(value)


def _prime_norms(a: FractionalIdeal) -> list[int]:
    return [f.residue_norm for f in factor_ideal(a)]


def mu_ideal(A: Mat2, a: FractionalIdeal) -> int:
    """Number of right cosets in ``U A U`` whose first-column ideal is ``a``."""
    _require_I(A)
    if not a.is_integral:
        raise ValueError(f"{a} is not integral")
    inv = mat_invariants(A)
    d1, d2 = inv.delta1, inv.delta2
    upper = d2 / d1
    if not (d1.divides(a) and a.divides(upper)):
        return 0
    support = a / d1 + upper / a
    value = d2.norm() / (a.norm() * d1.norm())
    for pn in _prime_norms(support):
        value *= 1 - Fraction(1, pn)
    return _as_int(value, "mu_ideal")


def _mu_from_f2(f2: FractionalIdeal) -> int:
    value = f2.norm()
    for pn in _prime_norms(f2):
        value *= 1 + Fraction(1, pn)
    return _as_int(value, "mu")


def mu_total(A: Mat2) -> int:
    """Number of right cosets in ``U A U``."""
    _require_I(A)
    return _mu_from_f2(mat_invariants(A).f2)


def admissible_ideals(A: Mat2) -> list[FractionalIdeal]:
    """Ideals ``a`` with ``delta1 | a | delta2 delta1^-1``, i.e. ``delta1 * c`` for ``c | f2``."""
    inv = mat_invariants(A)
    return [inv.delta1 * c for c in divisors(inv.f2)]


# -- normal form ----------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormWitness:
    a_elem: Element
    b_elem: Element
    c_elem: Element
    transversal_id: str
    matrix: Mat2


def _first_column_setup(ideal: FractionalIdeal, det: Element):
    """Stronger generator ``a`` plus the quotient ``q / q b`` the normal form ranges over."""
    d2 = FractionalIdeal.principal(det)
    a = strong_generator(ideal, d2)
    q = FractionalIdeal.principal(a) / ideal
    b = d2 / ideal
    return a, q, b, Quotient(q, q * b)


def _shape(a: Element, det: Element, c: Element) -> Mat2:
    return Mat2(a.ring, a, c - 1, det, det / a * c)


def normal_form(A: Mat2) -> NormalFormWitness:
    """Representative ``(a, c-1; b, b a^-1 c)`` of ``U A`` with ``b = det A`` and ``c`` in a fixed transversal.

    Built constructively: move the first column to ``(a, b)``, rescale the
    determinant, then clear the second column with two SL_2 factors.
    """
    _require_I(A)
    ring = A.ring
    b = A.det()
    ideal = first_column_ideal(A)
    a, q, bb, quot = _first_column_setup(ideal, b)

    p1 = complete_unimodular(A.a, A.c, a, b)
    m = p1 * A
    eps = b / m.det()
    p2 = Mat2.diag(ring, eps, 1)
    m = p2 * m
    # p = eps^-1 mod (o ∩ b a^-1 o) = bb,  p = 1 mod (o ∩ a b^-1 o) = q
    p = crt_solve([(eps.inverse(), bb), (ring.one(), q)])
    ab = a / b
    ba = b / a
    p3 = Mat2(ring, p, ab * (1 - eps * p), ba * (p - 1), eps + 1 - eps * p)
    m = p3 * m
    r, s = m.b, m.d
    c = quot.representative(1 + r)
    p4 = Mat2(ring, ab * s - c + 1, ab * (c - r - 1), s - ba * c, c - r)
    result = p4 * m
    expected = _shape(a, b, c)
    if result != expected:
        raise AssertionError(f"normal form chain produced {result}, expected {expected}")
    for factor in (p1, p2, p3, p4):
        if not factor.in_U:
            raise AssertionError(f"normal form factor {factor} is not unimodular")
    return NormalFormWitness(a, b, c, quot.tag(), expected)


def normal_form_bruteforce(A: Mat2) -> NormalFormWitness:
    """Same witness as :func:`normal_form`, found by testing every transversal element."""
    _require_I(A)
    b = A.det()
    a, q, bb, quot = _first_column_setup(first_column_ideal(A), b)
    hits = [c for c in quot.elements() if same_right_coset(_shape(a, b, c), A)]
    if len(hits) != 1:
        raise AssertionError(f"expected one normal form, found {len(hits)}")
    return NormalFormWitness(a, b, hits[0], quot.tag(), _shape(a, b, hits[0]))


# -- deterministic transversal ----------------------------------------------------


def decompose_deterministic(A: Mat2) -> list[Mat2]:
    """A right transversal of ``U \\ U A U``, one normal form per right coset."""
    _require_I(A)
    inv = mat_invariants(A)
    det = A.det()
    d1 = inv.delta1
    out = []
    for ideal in admissible_ideals(A):
        a, q, bb, quot = _first_column_setup(ideal, det)
        fixed = ideal.basis_elements()
        tail = (bb / q).basis_elements()
        for c in quot.elements():
            # a + (c - 1) o + c q^-1 b
            if ideal_from_generators(A.ring, fixed + [c - 1] + [c * t for t in tail]) == d1:
                out.append(_shape(a, det, c))
    expected = _mu_from_f2(inv.f2)
    if len(out) != expected:
        raise AssertionError(f"constructed {len(out)} cosets, the count formula gives {expected}")
    return sorted(out, key=Mat2.sort_key)


def as_coset_set(mats) -> set:
    return {right_coset_key(m) for m in mats}


# -- Z oracle, index, Newman --------------------------------------------------------


def hermite_transversal_z(ring: Ring, n: int) -> list[Mat2]:
    """All Hermite forms ``(a, b; 0, d)`` with ``a d == n``, ``0 <= b < d``."""
    if not ring.is_integers:
        raise ValueError("the Hermite enumeration is only available over Z")
    if not 1 <= n <= HERMITE_CAP:
        raise ValueError(f"n must lie in [1, {HERMITE_CAP}]")
    out = []
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            out.extend(Mat2(ring, a, b, 0, d) for b in range(d))
    return out


def congruence_index(m: Element) -> int:
    """Index of ``U^0[m] = {(a, b; c, d) in U : b in m o}`` in ``U``."""
    if m.is_zero:
        raise ValueError("m must be nonzero")
    mo = FractionalIdeal.principal(m)
    value = mo.norm()
    for pn in _prime_norms(mo):
        value *= 1 + Fraction(1, pn)
    index = _as_int(value, "congruence index")
    check = mu_total(Mat2.diag(m.ring, 1, m))
    if check != index:
        raise AssertionError(f"index {index} disagrees with mu = {check}")
    return index


class UnsupportedInputError(ValueError):
    pass


def newman_count(d_elem: Element) -> int:
    """Number of right cosets of ``GL_2(o)`` in ``{A : det A in d o*}``.

    Requires every prime ideal dividing ``d o`` to be principal.
    """
    if d_elem.is_zero:
        raise ValueError("determinant must be nonzero")
    factors = factor_ideal(FractionalIdeal.principal(d_elem))
    for f in factors:
        if principal_generator(f.prime) is None:
            raise UnsupportedInputError(f"prime ideal {f.prime} is not principal")
    return prod((f.residue_norm ** (f.exponent + 1) - 1) // (f.residue_norm - 1) for f in factors)
