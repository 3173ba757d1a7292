"""Counting and constructing right cosets in double cosets of GL_2 over Dedekind domains.

Supported rings are Z and rings of integers of quadratic fields; everything is
computed in exact arithmetic.
"""

from .counting import (
    NormalFormWitness,
    UnsupportedInputError,
    admissible_ideals,
    as_coset_set,
    congruence_index,
    decompose_deterministic,
    hermite_transversal_z,
    mu_ideal,
    mu_total,
    newman_count,
    normal_form,
    normal_form_bruteforce,
)
from .hecke import (
    BudgetExhaustedError,
    DoubleCosetKey,
    HeckeElement,
    SamplerConfig,
    coset_key,
    decompose_probabilistic,
    hecke_multiply,
    hecke_product,
    loop_cycles,
    mu_principal_functional,
    reduction_check,
    sample_unimodular,
)
from .ideals import (
    FractionalIdeal,
    PrimeFactor,
    Quotient,
    crt_solve,
    divisors,
    factor_ideal,
    ideal_from_generators,
    primes_above,
    principal_generator,
    residue_transversal,
    strong_generator,
)
from .matrices import (
    CosetInvariants,
    Mat2,
    complete_unimodular,
    is_integral_unimodular,
    mat_invariants,
    right_coset_key,
    same_double_coset,
    same_right_coset,
)
from .ring import Element, Ring, RingMismatchError, Z, elem_norm_trace, is_unit, try_divide
from .syntax import ParseError, parse_element, parse_ideal, parse_matrix, parse_ring

__version__ = "0.1.0"
