"""Self-check suite behind ``dedekind-cosets verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .counting import congruence_index, decompose_deterministic, as_coset_set, mu_ideal, mu_total
from .hecke import (
    HeckeElement,
    SamplerConfig,
    coset_key,
    decompose_probabilistic,
    hecke_multiply,
    mu_principal_functional,
)
from .ideals import FractionalIdeal, factor_ideal, ideal_from_generators
from .matrices import Mat2
from .ring import Ring, Z

ZSQRTM5 = Ring(-5)


@dataclass
class Check:
    name: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


def _table_rows():
    R = ZSQRTM5
    w = R.w
    return [
        (Mat2(R, 1, 0, 0, 2), 6),
        (Mat2(R, 1, 0, 0, 1 + w), 12),
        (Mat2(R, 1, 0, 0, 3), 16),
        (Mat2(R, 2, 1, 0, 2), 24),
        (Mat2(R, w, 1, 0, w), 30),
        (Mat2(R, w, 1, 1, 2), 32),
        (Mat2(R, w, 0, 0, 2), 36),
    ]


def reference_table_checks() -> list[Check]:
    checks = [Check(f"mu {A} over {A.ring}", mu, mu_total(A)) for A, mu in _table_rows()]

    A = Mat2(Z, 1, 0, 0, 4)
    checks.append(Check("mu (1,0;0,4) over Z", 6, mu_total(A)))
    checks.append(Check("mu_a (1,0;0,4), a = Z, 2Z, 4Z", [4, 1, 1],
                        [mu_ideal(A, ideal_from_generators(Z, [k])) for k in (1, 2, 4)]))
    hermite = [Mat2(Z, 4, 0, 0, 1), Mat2(Z, 2, 1, 0, 2)] + [Mat2(Z, 1, b, 0, 4) for b in range(4)]
    checks.append(Check("right cosets of U(1,0;0,4)U match the Hermite list", True,
                        as_coset_set(decompose_deterministic(A)) == as_coset_set(hermite)))

    R, w = ZSQRTM5, ZSQRTM5.w
    B = Mat2(R, 1, 0, 0, 2)
    listed = [Mat2(R, 1, 0, 0, 2), Mat2(R, 1, 1, 0, 2), Mat2(R, 1, w, 0, 2),
              Mat2(R, 1, 1 + w, 0, 2), Mat2(R, 2, 0, 0, 1), Mat2(R, 2, 0, 1 + w, 1)]
    checks.append(Check("right cosets of U(1,0;0,2)U match the listed transversal", True,
                        as_coset_set(decompose_deterministic(B)) == as_coset_set(listed)))
    expected = {coset_key(Mat2(R, 1, 0, 0, 4)): 1, coset_key(Mat2(R, 2, 0, 0, 2)): 6,
                coset_key(Mat2(R, 2, 1 + w, 0, 2)): 1}
    checks.append(Check("Hecke square of (1,0;0,2)", expected, hecke_multiply(B, B).terms))
    return checks


def _random_matrix(ring: Ring, rng: random.Random, max_norm: int) -> Mat2:
    while True:
        ents = [ring(rng.randint(-3, 3), 0 if ring.is_integers else rng.randint(-2, 2)) for _ in range(4)]
        A = Mat2(ring, *ents)
        if A.in_I and 1 <= abs(A.det().norm()) <= max_norm:
            return A


def property_checks(seed: int = 0, pairs: int = 6) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for ring in (Z, ZSQRTM5):
        cons = mult = agree = 0
        for _ in range(pairs):
            A, B = _random_matrix(ring, rng, 30), _random_matrix(ring, rng, 30)
            h = hecke_multiply(A, B)
            cons += sum(c * mu_total(h.witness[k]) for k, c in h.terms.items()) == mu_total(A) * mu_total(B)
            mult += mu_principal_functional(h) == (mu_principal_functional(HeckeElement.characteristic(A))
                                                   * mu_principal_functional(HeckeElement.characteristic(B)))
            agree += (as_coset_set(decompose_probabilistic(A, SamplerConfig(seed=seed)))
                      == as_coset_set(decompose_deterministic(A)))
        checks.append(Check(f"conservation over {ring}", pairs, cons))
        checks.append(Check(f"mu_o multiplicativity over {ring}", pairs, mult))
        checks.append(Check(f"random vs deterministic transversal over {ring}", pairs, agree))

        ok = 0
        for _ in range(pairs):
            gens = [ring(rng.randint(-9, 9), 0 if ring.is_integers else rng.randint(-9, 9)) for _ in range(2)]
            if all(g.is_zero for g in gens):
                gens[0] = ring.one()
            a = ideal_from_generators(ring, gens)
            rebuilt = FractionalIdeal.unit(ring)
            for f in factor_ideal(a):
                rebuilt = rebuilt * f.prime ** f.exponent
            ok += (a * a.inverse()).is_unit_ideal and rebuilt == a
        checks.append(Check(f"ideal inverse and factorization over {ring}", pairs, ok))

        m = ring(rng.randint(1, 9), 0 if ring.is_integers else rng.randint(-3, 3))
        checks.append(Check(f"congruence index of {m} over {ring}", mu_total(Mat2.diag(ring, 1, m)),
                            congruence_index(m)))
    return checks


def run(scope: str = "all") -> list[Check]:
    if scope not in ("paper-tables", "properties", "all"):
        raise ValueError(f"unknown scope {scope!r}")
    checks = []
    if scope in ("paper-tables", "all"):
        checks += reference_table_checks()
    if scope in ("properties", "all"):
        checks += property_checks()
    return checks
