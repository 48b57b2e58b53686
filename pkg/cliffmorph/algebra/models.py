"""Clifford algebra data models: signatures, blades and multivectors."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

from cliffmorph.config import get_settings

# A blade is the product of the generators whose bits are set, in increasing
# index order. Mask 0 is the scalar unit.
BladeIndex = int
Scalar = Fraction | int


class CliffordError(Exception):
    """Base exception for all kernel errors."""


class DimensionOutOfRangeError(CliffordError):
    """Exception raised when a dimension is outside 1..n_max."""


class SignatureMismatchError(CliffordError):
    """Exception raised when operands live in different algebras."""


class GradeOutOfRangeError(CliffordError):
    """Exception raised when a grade is outside 0..n."""


def grade(mask: BladeIndex) -> int:
    """Grade (number of generators) of a blade."""
    return mask.bit_count()


def generator_indices(mask: BladeIndex) -> Iterator[int]:
    """Iterate over the generator indices of a blade, in ascending order."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def blade_label(mask: BladeIndex) -> str:
    """Human label such as ``e013``; the scalar unit is ``1``."""
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in generator_indices(mask))


@dataclass(frozen=True)
class Signature:
    """Ordered generator squares of Cl(p,q); entry mu is the square of e_mu."""

    squares: tuple[int, ...]

    def __post_init__(self) -> None:
        squares = tuple(self.squares)
        object.__setattr__(self, "squares", squares)
        n_max = get_settings().n_max
        if not 1 <= len(squares) <= n_max:
            raise DimensionOutOfRangeError(
                f"Dimension {len(squares)} outside supported range 1..{n_max}"
            )
        for mu, square in enumerate(squares):
            if square not in (1, -1):
                raise CliffordError(
                    f"Generator e{mu} has square {square}; must be +1 or -1"
                )

    @property
    def n(self) -> int:
        """Dimension of the generating vector space."""
        return len(self.squares)

    @property
    def p(self) -> int:
        """Number of generators squaring to +1."""
        return sum(1 for s in self.squares if s == 1)

    @property
    def q(self) -> int:
        """Number of generators squaring to -1."""
        return sum(1 for s in self.squares if s == -1)

    @property
    def size(self) -> int:
        """Number of blades, 2**n."""
        return 1 << self.n

    @property
    def volume(self) -> BladeIndex:
        """Mask of the volume element e_{0...n-1}."""
        return self.size - 1

    def flipped(self, keep: Iterable[int] = ()) -> Signature:
        """Signature with every square negated except those listed in ``keep``."""
        kept = set(keep)
        return Signature(
            tuple(s if mu in kept else -s for mu, s in enumerate(self.squares))
        )

    def __str__(self) -> str:
        pattern = "".join("+" if s == 1 else "-" for s in self.squares)
        return f"Cl({self.p},{self.q})[{pattern}]"


def make_signature(p: int, q: int) -> Signature:
    """Signature of Cl(p,q): p squares +1 followed by q squares -1."""
    n_max = get_settings().n_max
    if p < 0 or q < 0 or not 1 <= p + q <= n_max:
        raise DimensionOutOfRangeError(
            f"Cl({p},{q}) has dimension {p + q}; supported range is 1..{n_max}"
        )
    return Signature((1,) * p + (-1,) * q)


@dataclass(frozen=True)
class Multivector:
    """Element of Cl(p,q) as a dense vector of 2**n exact rational coefficients.

    ``coeffs[mask]`` is the coefficient of blade ``mask``. Products other than
    the geometric one keep the carrier signature ``sig``.
    """

    sig: Signature
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.sig.size:
            raise CliffordError(
                f"Expected {self.sig.size} coefficients for {self.sig}, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, sig: Signature) -> Multivector:
        """The zero element of ``sig``."""
        return cls(sig, (Fraction(0),) * sig.size)

    @classmethod
    def scalar(cls, sig: Signature, value: Scalar) -> Multivector:
        """``value`` times the scalar unit."""
        return cls.blade(sig, 0, value)

    @classmethod
    def blade(
        cls, sig: Signature, mask: BladeIndex, coeff: Scalar = 1
    ) -> Multivector:
        """``coeff`` times the basis blade ``mask``."""
        if not 0 <= mask < sig.size:
            raise CliffordError(f"Blade mask {mask} invalid for {sig}")
        coeffs = [Fraction(0)] * sig.size
        coeffs[mask] = Fraction(coeff)
        return cls(sig, tuple(coeffs))

    @classmethod
    def from_terms(
        cls, sig: Signature, terms: Mapping[BladeIndex, Scalar]
    ) -> Multivector:
        """Multivector from a sparse mask -> coefficient mapping."""
        coeffs = [Fraction(0)] * sig.size
        for mask, value in terms.items():
            if not 0 <= mask < sig.size:
                raise CliffordError(f"Blade mask {mask} invalid for {sig}")
            coeffs[mask] += Fraction(value)
        return cls(sig, tuple(coeffs))

    @classmethod
    def vector(cls, sig: Signature, components: Iterable[Scalar]) -> Multivector:
        """Grade-1 element with one component per generator."""
        values = list(components)
        if len(values) != sig.n:
            raise CliffordError(
                f"Expected {sig.n} vector components for {sig}, got {len(values)}"
            )
        return cls.from_terms(sig, {1 << mu: v for mu, v in enumerate(values)})

    def terms(self) -> Iterator[tuple[BladeIndex, Fraction]]:
        """Nonzero (mask, coefficient) pairs in mask order."""
        for mask, coeff in enumerate(self.coeffs):
            if coeff:
                yield mask, coeff

    def grades(self) -> set[int]:
        """Grades with a nonzero coefficient."""
        return {grade(mask) for mask, _ in self.terms()}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_even(self) -> bool:
        """Whether every nonzero blade has even grade."""
        return all(grade(mask) % 2 == 0 for mask, _ in self.terms())

    def scalar_part(self) -> Fraction:
        """Coefficient of the scalar unit."""
        return self.coeffs[0]

    def reinterpret(self, sig: Signature) -> Multivector:
        """Same coefficients, carried by another signature of equal dimension."""
        if sig.n != self.sig.n:
            raise SignatureMismatchError(f"Cannot carry {self.sig} into {sig}")
        return Multivector(sig, self.coeffs)

    def scale(self, factor: Scalar) -> Multivector:
        """Multiply every coefficient by ``factor``."""
        factor = Fraction(factor)
        return Multivector(self.sig, tuple(c * factor for c in self.coeffs))

    def _check_same(self, other: Multivector) -> None:
        if self.sig != other.sig:
            raise SignatureMismatchError(
                f"Operands live in different algebras: {self.sig} and {other.sig}"
            )

    def __add__(self, other: Multivector) -> Multivector:
        self._check_same(other)
        pairs = zip(self.coeffs, other.coeffs, strict=True)
        return Multivector(self.sig, tuple(a + b for a, b in pairs))

    def __sub__(self, other: Multivector) -> Multivector:
        self._check_same(other)
        pairs = zip(self.coeffs, other.coeffs, strict=True)
        return Multivector(self.sig, tuple(a - b for a, b in pairs))

    def __neg__(self) -> Multivector:
        return self.scale(-1)

    def __mul__(self, other: Multivector | Scalar) -> Multivector:
        if isinstance(other, Multivector):
            from cliffmorph.algebra.products import geometric_product

            return geometric_product(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> Multivector:
        return self.scale(other)

    def __str__(self) -> str:
        parts = [f"{coeff}*{blade_label(mask)}" for mask, coeff in self.terms()]
        return " + ".join(parts) if parts else "0"
