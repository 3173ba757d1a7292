"""Random instance generators, independent oracles and the randomized property suites.

The suites take the instance count as a parameter: unit tests run them small,
the acceptance module runs them at full size.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from dedekind_cosets import (
    FractionalIdeal,
    HeckeElement,
    Mat2,
    Ring,
    SamplerConfig,
    Z,
    admissible_ideals,
    as_coset_set,
    decompose_deterministic,
    decompose_probabilistic,
    divisors,
    factor_ideal,
    hecke_multiply,
    ideal_from_generators,
    mat_invariants,
    mu_principal_functional,
    mu_total,
    residue_transversal,
    same_double_coset,
    sample_unimodular,
    try_divide,
)
from dedekind_cosets.counting import _first_column_setup

ZI = Ring(-1)
ZS5 = Ring(-5)
ZS2 = Ring(2)
Q5 = Ring(5)
RINGS = [Z, ZI, ZS5, ZS2, Q5]


def rand_elem(ring, rng, h=9, nonzero=False):
    while True:
        e = ring(rng.randint(-h, h), 0 if ring.is_integers else rng.randint(-h, h))
        if not (nonzero and e.is_zero):
            return e


def rand_ideal(ring, rng, h=9, max_norm=None):
    while True:
        gens = [rand_elem(ring, rng, h) for _ in range(2)]
        if all(g.is_zero for g in gens):
            continue
        a = ideal_from_generators(ring, gens)
        if max_norm is None or a.norm() <= max_norm:
            return a


def rand_matrix(ring, rng, max_norm=100, h=3):
    """Random nonsingular integral matrix with ``1 <= |N(det)| <= max_norm``."""
    hy = 0 if ring.is_integers else 2
    while True:
        A = Mat2(ring, *(ring(rng.randint(-h, h), rng.randint(-hy, hy) if hy else 0) for _ in range(4)))
        if A.in_I and abs(A.det().norm()) <= max_norm:
            return A


def rand_unimodular(ring, rng_or_seed, position=0, word_length=6):
    seed = rng_or_seed.randrange(10**9) if isinstance(rng_or_seed, random.Random) else rng_or_seed
    return sample_unimodular(ring, SamplerConfig(seed=seed, word_length=word_length, coeff_height=4), position)


# -- independent oracles -------------------------------------------------------------


def z_row_hermite(A):
    """Row Hermite form of an integer 2x2 matrix under left GL_2(Z) action.

    Plain Euclid on the first column, written independently of the package.
    """
    (a, b), (c, d) = [[int(e.coords()[0]) for e in row] for row in ((A.a, A.b), (A.c, A.d))]
    r1, r2 = [a, b], [c, d]
    while r2[0]:
        q = r1[0] // r2[0]
        r1 = [r1[0] - q * r2[0], r1[1] - q * r2[1]]
        r1, r2 = r2, r1
    if r1[0] < 0:
        r1 = [-x for x in r1]
    if r2[1] < 0:
        r2 = [-x for x in r2]
    if r1[0] == 0:
        return tuple(r2), tuple(r1)
    if r2[1]:
        r1[1] %= r2[1]
    return tuple(r1), tuple(r2)


def z_divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def z_classical_index(m):
    """``m * prod_{p | m} (1 + 1/p)`` by trial division."""
    value, n, p = Fraction(m), m, 2
    while n > 1:
        if n % p == 0:
            value *= 1 + Fraction(1, p)
            while n % p == 0:
                n //= p
        p += 1
    return value


def brute_quotient_size(a, b, box=None):
    """``|a / b|`` by enumerating a coordinate box of ``a`` and collecting classes modulo ``b``."""
    n = int(b.norm() / a.norm())
    ga = a.basis_elements()
    box = box or n
    reps = []
    for coeffs in itertools.product(range(box), repeat=len(ga)):
        x = sum((k * g for k, g in zip(coeffs, ga)), a.ring.zero())
        if not any((x - r) in b for r in reps):
            reps.append(x)
    return len(reps)


# -- property suites -----------------------------------------------------------------


def prop_norm_multiplicative(count=1000, seed=0):
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        ring = RINGS[i % len(RINGS)]
        u, v = rand_elem(ring, rng, 50), rand_elem(ring, rng, 50)
        if (u * v).norm() != u.norm() * v.norm():
            bad.append((u, v))
        if not v.is_zero and try_divide(u * v, v) != u:
            bad.append(("divide", u, v))
    return bad


def prop_ideal_laws(count=200, seed=0):
    """Inverse law, multiplicative norm and factor reconstruction on random ideals."""
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        ring = RINGS[1 + i % (len(RINGS) - 1)] if i % 5 else Z
        a = rand_ideal(ring, rng, 12, max_norm=10**4)
        b = rand_ideal(ring, rng, 12, max_norm=10**4)
        if (a * b).norm() != a.norm() * b.norm():
            bad.append(("norm", a, b))
        if not (a * a.inverse()).is_unit_ideal:
            bad.append(("inverse", a))
        frac = a / b
        rebuilt = FractionalIdeal.unit(ring)
        for f in factor_ideal(frac):
            rebuilt = rebuilt * f.prime ** f.exponent
        if rebuilt != frac:
            bad.append(("factor", frac))
    return bad


def prop_transversal_size(count=60, seed=0):
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        ring = RINGS[i % len(RINGS)]
        a = rand_ideal(ring, rng, 4, max_norm=20)
        b = a * rand_ideal(ring, rng, 4, max_norm=12)
        t = residue_transversal(a, b)
        expected = b.norm() / a.norm()
        distinct = all((x - y) not in b for x, y in itertools.combinations(t, 2))
        if len(t) != expected or not all(x in a for x in t) or not distinct:
            bad.append((a, b))
    return bad


def gcd_criterion_instances():
    """The seven table matrices over Z[sqrt(-5)] plus a few small ones over Z and Z[i]."""
    R, w = ZS5, ZS5.w
    mats = [Mat2(R, 1, 0, 0, 2), Mat2(R, 1, 0, 0, 1 + w), Mat2(R, 1, 0, 0, 3), Mat2(R, 2, 1, 0, 2),
            Mat2(R, w, 1, 0, w), Mat2(R, w, 1, 1, 2), Mat2(R, w, 0, 0, 2),
            Mat2(Z, 1, 0, 0, 4), Mat2(Z, 1, 0, 0, 12), Mat2(Z, 2, 0, 0, 8), Mat2(ZI, 1, 0, 0, 6)]
    return mats


def prop_gcd_criterion(mats=None):
    """Divisibility criterion for ``a + (c-1)o + c q^-1 b`` and the count of ``c = 1 mod cc``.

    Checked over the full transversal ``T``, for every admissible ``a`` and
    every divisor ``cc`` of ``delta2``.
    """
    bad = []
    for A in mats or gcd_criterion_instances():
        d2 = mat_invariants(A).delta2
        for ideal in admissible_ideals(A):
            _, q, bb, quot = _first_column_setup(ideal, A.det())
            T = quot.elements()
            for cc in divisors(d2):
                for c in T:
                    gcd_ideal = ideal
                    if not (c - 1).is_zero:
                        gcd_ideal = gcd_ideal + FractionalIdeal.principal(c - 1)
                    if not c.is_zero:
                        gcd_ideal = gcd_ideal + (bb / q) * c
                    lhs = cc.divides(gcd_ideal)
                    rhs = cc.divides(ideal) and (ideal * cc).divides(d2) and (c - 1) in cc
                    if lhs != rhs:
                        bad.append(("gcd", A, ideal, cc, c))
                if cc.divides(ideal) and ideal.divides(d2 / cc):
                    hits = sum(1 for c in T if (c - 1) in cc)
                    if hits != bb.norm() / cc.norm():
                        bad.append(("count", A, ideal, cc, hits))
    return bad


def prop_bi_invariance(count=200, seed=0):
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        ring = [Z, ZS5, ZI, ZS2][i % 4]
        A = rand_matrix(ring, rng, 200)
        P, Q = rand_unimodular(ring, rng), rand_unimodular(ring, rng)
        B = P * A * Q
        ia, ib = mat_invariants(A), mat_invariants(B)
        if (ia.delta1, ia.delta2) != (ib.delta1, ib.delta2) or not same_double_coset(B, A):
            bad.append((A, P, Q))
    return bad


def prop_hecke_pairs(count=50, seed=0, max_norm=100):
    """Conservation and the multiplicativity of mu_o on random pairs."""
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        ring = ZS5 if i % 2 else Z
        A, B = rand_matrix(ring, rng, max_norm), rand_matrix(ring, rng, max_norm)
        h = hecke_multiply(A, B)
        total = sum(c * mu_total(h.witness[k]) for k, c in h.terms.items())
        if total != mu_total(A) * mu_total(B):
            bad.append(("conservation", A, B))
        lhs = mu_principal_functional(h)
        rhs = (mu_principal_functional(HeckeElement.characteristic(A))
               * mu_principal_functional(HeckeElement.characteristic(B)))
        if lhs != rhs:
            bad.append(("mu_o", A, B))
    return bad


def decomposition_agreement_instances():
    R, w = ZS5, ZS5.w
    return [Mat2(R, 1, 0, 0, 2), Mat2(R, 1, 0, 0, 1 + w), Mat2(R, 1, 0, 0, 3), Mat2(R, 2, 1, 0, 2),
            Mat2(R, w, 1, 0, w), Mat2(R, w, 1, 1, 2), Mat2(R, w, 0, 0, 2),
            Mat2(Z, 1, 0, 0, 4), Mat2(Z, 2, 1, 0, 6), Mat2(ZI, 1, 0, 0, 5), Mat2(ZS2, 1, 0, 0, 3)]


def prop_decomposition_agreement(seeds=(0, 1, 2), mats=None):
    bad = []
    for A in mats or decomposition_agreement_instances():
        det_set = as_coset_set(decompose_deterministic(A))
        for s in seeds:
            if as_coset_set(decompose_probabilistic(A, SamplerConfig(seed=s))) != det_set:
                bad.append((A, s))
    return bad


def prop_canonical_form(count=500, seed=0):
    """Generator permutation and torsion-unit scaling never change the generated ideal."""
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        ring = RINGS[i % len(RINGS)]
        gens = [rand_elem(ring, rng, 20) for _ in range(rng.randint(1, 4))]
        if all(g.is_zero for g in gens):
            gens.append(ring.one())
        scaled = [g * rng.choice(ring.torsion_units()) for g in gens]
        rng.shuffle(scaled)
        if ideal_from_generators(ring, gens) != ideal_from_generators(ring, scaled):
            bad.append(gens)
    return bad


def splitting_type(ring, p):
    """'split', 'inert' or 'ramified' from the discriminant by Euler's criterion (p odd or p | D)."""
    D = ring.discriminant
    if D % p == 0:
        return "ramified"
    if p == 2:
        return "split" if D % 8 == 1 else "inert"
    return "split" if pow(D % p, (p - 1) // 2, p) == 1 else "inert"


# lines printed at the end of the run, one per acceptance criterion
ACCEPTANCE_LINES: list[str] = []
