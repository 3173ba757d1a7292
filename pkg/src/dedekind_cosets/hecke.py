"""The abstract Hecke algebra of ``(GL_2(o), I)``.

Elements are finite integer combinations of double-coset characteristic
functions ``1_{UAU}``, keyed by ``(delta1, f2)``. Products go through explicit
right transversals, produced either by the deterministic normal-form
construction or by random sampling of unimodular matrices.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .counting import decompose_deterministic, mu_ideal, mu_total
from .ideals import FractionalIdeal, ideal_from_generators
from .matrices import Mat2, complete_unimodular, mat_invariants, right_coset_key, same_right_coset
from .ring import Element, Ring, try_divide, is_unit


@dataclass(frozen=True)
class DoubleCosetKey:
    delta1: FractionalIdeal
    f2: FractionalIdeal

    def sort_key(self):
        return (self.f2.norm(), self.delta1.norm(), self.f2.sort_key(), self.delta1.sort_key())

    def to_json(self) -> dict:
        return {"delta1": self.delta1.to_json(), "f2": self.f2.to_json()}


def coset_key(A: Mat2) -> DoubleCosetKey:
    if not A.in_I:
        raise ValueError(f"{A} is not in I")
    inv = mat_invariants(A)
    return DoubleCosetKey(inv.delta1, inv.f2)


@dataclass
class HeckeElement:
    """Finite sum ``sum c_K 1_{U W_K U}`` with witness matrices ``W_K``."""

    terms: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    @classmethod
    def characteristic(cls, A: Mat2) -> HeckeElement:
        key = coset_key(A)
        return cls({key: 1}, {key: A})

    def _add_term(self, key, coeff, mat):
        value = self.terms.get(key, 0) + coeff
        if value:
            self.terms[key] = value
            self.witness.setdefault(key, mat)
        else:
            self.terms.pop(key, None)
            self.witness.pop(key, None)

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = HeckeElement(dict(self.terms), dict(self.witness))
        for key, coeff in other.terms.items():
            out._add_term(key, coeff, other.witness[key])
        return out

    def scaled(self, k: int) -> HeckeElement:
        if k == 0:
            return HeckeElement()
        return HeckeElement({key: k * c for key, c in self.terms.items()}, dict(self.witness))

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def value_at(self, C: Mat2) -> int:
        return self.terms.get(coset_key(C), 0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{self.witness[k]}]" for k, c in self.sorted_terms())


# -- sampling unimodular matrices -------------------------------------------------


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    word_length: int = 12
    coeff_height: int = 9
    mix_completions: bool = True


class BudgetExhaustedError(RuntimeError):
    """The random decomposition did not find every right coset within its budget."""


def _random_element(ring: Ring, rng: random.Random, height: int) -> Element:
    x = rng.randint(-height, height)
    y = 0 if ring.degree == 1 else rng.randint(-height, height)
    return ring(x, y)


def _random_completion(ring: Ring, rng: random.Random, height: int) -> Mat2:
    unit = FractionalIdeal.unit(ring)
    for _ in range(64):
        c, d = _random_element(ring, rng, height), _random_element(ring, rng, height)
        if c.is_zero and d.is_zero:
            continue
        if ideal_from_generators(ring, [c, d]) == unit:
            # inverse of the completion has first column (c, d)
            return complete_unimodular(c, d, ring.one(), ring.zero()).inverse()
    return Mat2.identity(ring)


def sample_unimodular(ring: Ring, cfg: SamplerConfig, stream_position: int) -> Mat2:
    """Deterministic pseudo-random element of ``GL_2(o)`` for ``(seed, position)``.

    Each position has its own substream, so draws can be made in any order.
    """
    rng = random.Random(f"{cfg.seed}:{stream_position}")
    units = ring.torsion_units()
    kinds = ["upper", "lower", "diag"] + (["completion"] if cfg.mix_completions else [])
    out = Mat2.identity(ring)
    for _ in range(rng.randint(0, cfg.word_length)):
        kind = rng.choice(kinds)
        if kind == "upper":
            letter = Mat2(ring, 1, _random_element(ring, rng, cfg.coeff_height), 0, 1)
        elif kind == "lower":
            letter = Mat2(ring, 1, 0, _random_element(ring, rng, cfg.coeff_height), 1)
        elif kind == "diag":
            letter = Mat2.diag(ring, rng.choice(units), rng.choice(units))
        else:
            letter = _random_completion(ring, rng, cfg.coeff_height)
        out = out * letter
    return out


def _probabilistic_run(A: Mat2, cfg: SamplerConfig, budget: int | None):
    k = mu_total(A)
    if budget is None:
        budget = 10**4 * k
    reps = [A]
    seen = {right_coset_key(A)}
    n = 0
    while len(reps) < k:
        if n >= budget:
            raise BudgetExhaustedError(f"found {len(reps)} of {k} right cosets after {n} samples")
        candidate = A * sample_unimodular(A.ring, cfg, n)
        n += 1
        key = right_coset_key(candidate)
        if key not in seen:
            seen.add(key)
            reps.append(candidate)
    return sorted(reps, key=Mat2.sort_key), n


def decompose_probabilistic(A: Mat2, cfg: SamplerConfig | None = None, budget: int | None = None) -> list[Mat2]:
    """Right transversal of ``U \\ U A U`` from random right translates ``A Q``.

    Stops as soon as ``mu(A)`` distinct right cosets are found; the default
    budget is ``10**4 * mu(A)`` samples.
    """
    return _probabilistic_run(A, cfg or SamplerConfig(), budget)[0]


def loop_cycles(A: Mat2, cfg: SamplerConfig | None = None, budget: int | None = None) -> int:
    """Number of samples the random decomposition needed (telemetry only)."""
    return _probabilistic_run(A, cfg or SamplerConfig(), budget)[1]


# -- products ---------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _deterministic_cached(A: Mat2) -> tuple[Mat2, ...]:
    return tuple(decompose_deterministic(A))


def _transversal(A: Mat2, decomposer, budget):
    if decomposer is None or decomposer == "deterministic":
        return _deterministic_cached(A)
    if isinstance(decomposer, SamplerConfig):
        return decompose_probabilistic(A, decomposer, budget)
    raise ValueError(f"unknown decomposer {decomposer!r}")


def hecke_multiply(A: Mat2, B: Mat2, decomposer=None, budget: int | None = None) -> HeckeElement:
    """``1_{UAU} * 1_{UBU}`` expressed in double-coset characteristic functions.

    ``decomposer`` is ``None``/``"deterministic"`` or a :class:`SamplerConfig`.
    """
    for M in (A, B):
        if not M.in_I:
            raise ValueError(f"{M} is not in I")
    left = _transversal(A, decomposer, budget)
    right = _transversal(B, decomposer, budget)
    ring = A.ring
    delta2 = FractionalIdeal.principal(A.det() * B.det())
    # all products share delta2, so delta1 alone separates double cosets
    reps: dict[FractionalIdeal, tuple[Mat2, Mat2]] = {}
    counts: dict[FractionalIdeal, int] = defaultdict(int)
    for Ai in left:
        for Bj in right:
            C = Ai * Bj
            d1 = ideal_from_generators(ring, C.entries)
            if d1 not in reps:
                reps[d1] = (C, C.inverse())
                counts[d1] = 1
            else:
                rep, rep_inv = reps[d1]
                if (C * rep_inv).in_U:
                    counts[d1] += 1
    out = HeckeElement()
    for d1, (rep, _) in reps.items():
        key = DoubleCosetKey(d1, delta2 / (d1 * d1))
        out.terms[key] = counts[d1]
        out.witness[key] = rep
    return out


def hecke_product(f: HeckeElement, g: HeckeElement, decomposer=None, budget: int | None = None) -> HeckeElement:
    """Bilinear extension of :func:`hecke_multiply`."""
    out = HeckeElement()
    for kf, cf in f.terms.items():
        for kg, cg in g.terms.items():
            out = out + hecke_multiply(f.witness[kf], g.witness[kg], decomposer, budget).scaled(cf * cg)
    return out


def mu_principal_functional(f: HeckeElement) -> int:
    """``sum c_K * mu_o(W_K)``: right cosets with first-column ideal ``o``, weighted."""
    if not f.terms:
        return 0
    ring = next(iter(f.witness.values())).ring
    unit = FractionalIdeal.unit(ring)
    return sum(c * mu_ideal(f.witness[k], unit) for k, c in f.terms.items())


def reduction_check(a: Element, b: Element, c: Element) -> int:
    """Value of ``1_{U diag(1,a) U} * 1_{U diag(1,b) U}`` at ``diag(1, c)``.

    The value is counted directly from the transversals and compared against
    the closed-form answer (1 iff ``c`` is ``a*b`` times a unit, else 0).
    """
    if a.is_zero or b.is_zero or c.is_zero:
        raise ValueError("a, b, c must be nonzero")
    ring = a.ring
    A, B, C = Mat2.diag(ring, 1, a), Mat2.diag(ring, 1, b), Mat2.diag(ring, 1, c)
    direct = sum(1 for Ai in _deterministic_cached(A) for Bj in _deterministic_cached(B)
                 if same_right_coset(Ai * Bj, C))
    via_product = hecke_multiply(A, B).value_at(C)
    q = try_divide(c, a * b)
    predicted = int(q is not None and is_unit(q))
    if not direct == via_product == predicted:
        raise AssertionError(f"reduction check disagrees: direct={direct}, product={via_product}, predicted={predicted}")
    return direct
