"""Seeded random multivectors and polynomial fields for property checks."""

import random
from collections.abc import Callable
from fractions import Fraction

from cliffmorph.algebra.models import Multivector, Signature, grade
from cliffmorph.fields.models import PolyMultivectorField


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    """Small rational with numerator in [-bound, bound] and denominator in 1..3."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def random_multivector(
    sig: Signature, rng: random.Random, density: float = 0.5
) -> Multivector:
    """Random element with each coefficient nonzero with probability ``density``."""
    coeffs = [
        random_rational(rng) if rng.random() < density else Fraction(0)
        for _ in range(sig.size)
    ]
    return Multivector(sig, tuple(coeffs))


def random_homogeneous(sig: Signature, r: int, rng: random.Random) -> Multivector:
    """Random element of pure grade ``r``."""
    terms = {
        mask: random_rational(rng) for mask in range(sig.size) if grade(mask) == r
    }
    return Multivector.from_terms(sig, terms)


def random_vector(sig: Signature, rng: random.Random) -> Multivector:
    """Random grade-1 element."""
    return random_homogeneous(sig, 1, rng)


def random_even(sig: Signature, rng: random.Random) -> Multivector:
    """Random element of the even subalgebra."""
    terms = {
        mask: random_rational(rng) for mask in range(sig.size) if grade(mask) % 2 == 0
    }
    return Multivector.from_terms(sig, terms)


def random_field(
    sig: Signature,
    rng: random.Random,
    max_degree: int = 3,
    n_terms: int = 4,
    coefficient: Callable[[Signature, random.Random], Multivector] | None = None,
) -> PolyMultivectorField:
    """Polynomial field of up to ``n_terms`` monomials, total degree <= max_degree."""
    terms: dict[tuple[int, ...], Multivector] = {}
    for _ in range(n_terms):
        exponent = [0] * sig.n
        for _ in range(rng.randint(0, max_degree)):
            exponent[rng.randrange(sig.n)] += 1
        coeff = (coefficient or random_multivector)(sig, rng)
        key = tuple(exponent)
        terms[key] = terms[key] + coeff if key in terms else coeff
    return PolyMultivectorField(sig, terms)
