import random
from math import gcd

import pytest

from dedekind_cosets import (
    Mat2,
    SamplerConfig,
    UnsupportedInputError,
    Z,
    admissible_ideals,
    as_coset_set,
    congruence_index,
    decompose_deterministic,
    decompose_probabilistic,
    hermite_transversal_z,
    ideal_from_generators,
    mu_ideal,
    mu_total,
    newman_count,
    normal_form,
    normal_form_bruteforce,
    same_double_coset,
    same_right_coset,
)

from support import (
    ZI,
    ZS2,
    ZS5,
    prop_gcd_criterion,
    rand_matrix,
    splitting_type,
    z_divisors,
    z_row_hermite,
)

w = ZS5.w


def gen(ring, *gs):
    return ideal_from_generators(ring, list(gs))


TABLE = [
    (Mat2(ZS5, 1, 0, 0, 2), 6),
    (Mat2(ZS5, 1, 0, 0, 1 + w), 12),
    (Mat2(ZS5, 1, 0, 0, 3), 16),
    (Mat2(ZS5, 2, 1, 0, 2), 24),
    (Mat2(ZS5, w, 1, 0, w), 30),
    (Mat2(ZS5, w, 1, 1, 2), 32),
    (Mat2(ZS5, w, 0, 0, 2), 36),
]


def test_mu_ideal_examples():
    A = Mat2(Z, 1, 0, 0, 4)
    assert [mu_ideal(A, gen(Z, k)) for k in (1, 2, 3, 4)] == [4, 1, 0, 1]


def test_mu_total_table():
    for A, mu in TABLE:
        assert mu_total(A) == mu
    assert mu_total(Mat2(Z, 1, 0, 0, 4)) == 6
    assert mu_total(Mat2.identity(ZS5)) == 1


def test_mu_rejects_singular():
    with pytest.raises(ValueError):
        mu_total(Mat2(Z, 1, 2, 2, 4))


def test_sum_law():
    for A, _ in TABLE + [(Mat2(Z, 1, 0, 0, 12), None), (Mat2(ZI, 1, 1, 0, 10), None)]:
        assert mu_total(A) == sum(mu_ideal(A, a) for a in admissible_ideals(A))


def test_sum_law_on_the_constructed_transversal():
    # the closed form for each first-column ideal against counting the transversal
    for A, _ in TABLE:
        reps = decompose_deterministic(A)
        for a in admissible_ideals(A):
            have = sum(1 for r in reps if gen(A.ring, r.a, r.c) == a)
            assert have == mu_ideal(A, a)


def test_transversal_soundness():
    for A, mu in TABLE:
        reps = decompose_deterministic(A)
        assert len(reps) == mu
        assert all(same_double_coset(r, A) for r in reps)
        assert len(as_coset_set(reps)) == mu
    reps = decompose_deterministic(TABLE[0][0])
    assert not any(same_right_coset(x, y) for i, x in enumerate(reps) for y in reps[i + 1:])


def test_z_example_transversal():
    A = Mat2(Z, 1, 0, 0, 4)
    expected = [Mat2(Z, 4, 0, 0, 1), Mat2(Z, 2, 1, 0, 2)] + [Mat2(Z, 1, b, 0, 4) for b in range(4)]
    assert as_coset_set(decompose_deterministic(A)) == as_coset_set(expected)


def test_z_sqrt_minus5_example_transversal():
    listed = [Mat2(ZS5, 1, 0, 0, 2), Mat2(ZS5, 1, 1, 0, 2), Mat2(ZS5, 1, w, 0, 2),
              Mat2(ZS5, 1, 1 + w, 0, 2), Mat2(ZS5, 2, 0, 0, 1), Mat2(ZS5, 2, 0, 1 + w, 1)]
    assert as_coset_set(decompose_deterministic(Mat2(ZS5, 1, 0, 0, 2))) == as_coset_set(listed)


def test_normal_form_example():
    nf = normal_form(Mat2(Z, 1, 1, 0, 4))
    assert nf.c_elem == Z(2) and nf.matrix == Mat2(Z, 1, 1, 4, 8)
    assert (nf.matrix * Mat2(Z, 1, 1, 0, 4).inverse()).in_U


def test_normal_form_candidates_over_z():
    A = Mat2(Z, 1, 0, 0, 4)
    hits = [c for c in range(4) if same_right_coset(Mat2(Z, 1, c - 1, 4, 4 * c), A)]
    assert hits == [normal_form(A).c_elem.coords()[0]]


def test_normal_form_unimodular_input():
    nf = normal_form(Mat2(ZS5, 1, w, 0, 1))
    assert same_right_coset(nf.matrix, Mat2.identity(ZS5))


def test_normal_form_matches_bruteforce():
    rng = random.Random(21)
    for ring in (Z, ZS5, ZI, ZS2):
        for _ in range(25):
            A = rand_matrix(ring, rng, 60)
            nf, bf = normal_form(A), normal_form_bruteforce(A)
            assert nf.c_elem == bf.c_elem and nf.matrix == bf.matrix
            assert same_right_coset(nf.matrix, A)


def test_gcd_criterion_small():
    assert prop_gcd_criterion([Mat2(Z, 1, 0, 0, 12), Mat2(ZS5, 1, 0, 0, 3), TABLE[5][0]]) == []


def test_hermite_lists():
    assert hermite_transversal_z(Z, 1) == [Mat2.identity(Z)]
    assert hermite_transversal_z(Z, 2) == [Mat2(Z, 1, 0, 0, 2), Mat2(Z, 1, 1, 0, 2), Mat2(Z, 2, 0, 0, 1)]
    with pytest.raises(ValueError):
        hermite_transversal_z(ZS5, 2)
    with pytest.raises(ValueError):
        hermite_transversal_z(Z, 0)


def test_hermite_oracle_is_a_transversal():
    # every integer matrix of determinant +-n is left-equivalent to exactly one listed form
    rng = random.Random(1)
    forms = {n: {z_row_hermite(H) for H in hermite_transversal_z(Z, n)} for n in range(1, 13)}
    for _ in range(300):
        A = rand_matrix(Z, rng, 12, h=6)
        n = abs(int(A.det().coords()[0]))
        assert z_row_hermite(A) in forms[n]


def test_oracle_equivalence_small():
    for n in range(1, 25):
        for k in z_divisors(n):
            if n % (k * k):
                continue
            A = Mat2(Z, k, 0, 0, n // k)
            filtered = [H for H in hermite_transversal_z(Z, n) if same_double_coset(H, A)]
            assert as_coset_set(decompose_deterministic(A)) == as_coset_set(filtered)


def test_congruence_index():
    assert congruence_index(Z(2)) == 3
    assert congruence_index(ZS5(2)) == 6
    assert congruence_index(ZS5(-1)) == 1
    assert congruence_index(Z(12)) == 24
    with pytest.raises(ValueError):
        congruence_index(Z(0))


def test_congruence_index_by_counting_z():
    # [GL_2(Z) : U0[m]] = number of points of P^1(Z/m): count pairs (x, y) generating Z/m up to units
    for m in range(1, 40):
        pairs = {(x, y) for x in range(m) for y in range(m) if gcd(gcd(x, y), m) == 1}
        units = [u for u in range(m) if gcd(u, m) == 1]
        classes = {min(((u * x) % m, (u * y) % m) for u in units) for x, y in pairs}
        assert congruence_index(Z(m)) == max(len(classes), 1)


def test_newman_examples():
    assert newman_count(Z(4)) == 7 == len(hermite_transversal_z(Z, 4))
    assert newman_count(Z(1)) == 1
    assert newman_count(Z(6)) == 12 == len(hermite_transversal_z(Z, 6))
    assert newman_count(Z(-6)) == 12


def test_newman_unsupported():
    with pytest.raises(UnsupportedInputError):
        newman_count(ZS5(2))
    with pytest.raises(ValueError):
        newman_count(Z(0))


def test_newman_consistency_z():
    for d in range(-30, 31):
        if d == 0:
            continue
        n = abs(d)
        total = sum(mu_total(Mat2(Z, k, 0, 0, d // k)) for k in z_divisors(n) if n % (k * k) == 0)
        assert total == newman_count(Z(d)) == len(hermite_transversal_z(Z, n))


def test_newman_in_a_principal_ring():
    # Z[i] is a PID, so the prime-element formula applies; compare with the class sum
    for d in (ZI(2), ZI(3), ZI(5), ZI(1, 1) * 3, ZI(4)):
        classes = [k for k in (ZI(1), ZI(1, 1), ZI(2), ZI(3)) if (d / (k * k)).is_integral]
        total = sum(mu_total(Mat2(ZI, k, 0, 0, d / k)) for k in classes)
        assert newman_count(d) == total


def test_inert_prime_diagonal_counts():
    # For inert p the residue ring o/p is the field with p^2 elements, so
    # #P^1(o/p) = (p^4 - 1)/(p^2 - 1) = p^2 + 1 right cosets, not p(p + 1).
    for ring, p in ((ZI, 3), (ZI, 7), (ZS5, 11)):
        assert splitting_type(ring, p) == "inert"
        residues = [ring(x, y) for x in range(p) for y in range(p)]
        units = sum(1 for u in residues if u.norm() % p)
        assert units == p * p - 1
        lines = (len(residues) ** 2 - 1) // units
        A = Mat2(ring, 1, 0, 0, p)
        assert mu_total(A) == lines == p * p + 1
        assert len(decompose_probabilistic(A, SamplerConfig(seed=1))) == lines


def test_split_and_ramified_prime_diagonal_counts():
    for ring in (ZI, ZS5):
        for p in (2, 3, 5, 7, 13):
            kind = splitting_type(ring, p)
            if kind == "split":
                assert mu_total(Mat2(ring, 1, 0, 0, p)) == (p + 1) ** 2
            elif kind == "ramified":
                assert mu_total(Mat2(ring, 1, 0, 0, p)) == p * (p + 1)
