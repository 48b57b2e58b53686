"""Field-calculus data models: polynomial fields, Dirac contexts, component systems."""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from cliffmorph.algebra.models import (
    BladeIndex,
    CliffordError,
    Multivector,
    Scalar,
    Signature,
    SignatureMismatchError,
    blade_label,
    make_signature,
)
from cliffmorph.algebra.products import grade_project
from cliffmorph.morph.tables import ProductTable, base_table, vee_table

# Exponent multi-index (d_0, ..., d_{n-1}) of the monomial x_0^d_0 ... x_{n-1}^d_{n-1}
Exponent = tuple[int, ...]


class FieldError(CliffordError):
    """Exception raised for malformed fields or field operations."""


class WrongTableError(FieldError):
    """Exception raised when a Dirac context does not match the requested form."""


class NotATwoFormError(FieldError):
    """Exception raised when a grade-2 argument has other grades."""


@dataclass(frozen=True)
class PolyMultivectorField:
    """Multivector field with polynomial coefficients in the coordinates x_mu.

    Represents sum_d x^d M_d. Zero coefficients are never stored, and terms are
    kept sorted by exponent so equal fields compare equal.
    """

    sig: Signature
    terms: Mapping[Exponent, Multivector] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized: dict[Exponent, Multivector] = {}
        for exponent, coeff in sorted(self.terms.items()):
            if len(exponent) != self.sig.n or any(d < 0 for d in exponent):
                raise FieldError(f"Invalid exponent {exponent} for {self.sig}")
            if coeff.sig != self.sig:
                raise SignatureMismatchError(
                    f"Coefficient lives in {coeff.sig}, field in {self.sig}"
                )
            if not coeff.is_zero():
                normalized[exponent] = coeff
        object.__setattr__(self, "terms", normalized)

    @classmethod
    def zero(cls, sig: Signature) -> PolyMultivectorField:
        """The zero field over ``sig``."""
        return cls(sig)

    @classmethod
    def constant(cls, value: Multivector) -> PolyMultivectorField:
        """Field with ``value`` as its constant term."""
        return cls(value.sig, {(0,) * value.sig.n: value})

    @classmethod
    def monomial(
        cls, exponent: Sequence[int], value: Multivector
    ) -> PolyMultivectorField:
        """Single term x^exponent times ``value``."""
        return cls(value.sig, {tuple(exponent): value})

    @classmethod
    def coordinate(cls, sig: Signature, mu: int) -> PolyMultivectorField:
        """The scalar field x_mu."""
        if not 0 <= mu < sig.n:
            raise FieldError(f"Coordinate index {mu} invalid for {sig}")
        exponent = tuple(1 if nu == mu else 0 for nu in range(sig.n))
        return cls(sig, {exponent: Multivector.scalar(sig, 1)})

    def items(self) -> Iterator[tuple[Exponent, Multivector]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        """Whether no terms are stored."""
        return not self.terms

    def degree(self) -> int:
        """Highest total degree, 0 for the zero field."""
        return max((sum(exponent) for exponent in self.terms), default=0)

    def grades(self) -> set[int]:
        """Grades present in any coefficient."""
        found: set[int] = set()
        for coeff in self.terms.values():
            found |= coeff.grades()
        return found

    def is_even(self) -> bool:
        """Whether every coefficient is even."""
        return all(coeff.is_even() for coeff in self.terms.values())

    def map(self, fn: Callable[[Multivector], Multivector]) -> PolyMultivectorField:
        """Apply a linear map to every coefficient."""
        mapped = {exponent: fn(coeff) for exponent, coeff in self.terms.items()}
        sigs = {coeff.sig for coeff in mapped.values()}
        return PolyMultivectorField(sigs.pop() if sigs else self.sig, mapped)

    def combine(
        self,
        other: PolyMultivectorField,
        product: Callable[[Multivector, Multivector], Multivector],
    ) -> PolyMultivectorField:
        """Pointwise bilinear product of two fields."""
        if self.sig != other.sig:
            raise SignatureMismatchError(
                f"Fields live in different algebras: {self.sig} and {other.sig}"
            )
        result: dict[Exponent, Multivector] = {}
        for d1, m1 in self.terms.items():
            for d2, m2 in other.terms.items():
                exponent = tuple(a + b for a, b in zip(d1, d2, strict=True))
                value = product(m1, m2)
                result[exponent] = (
                    result[exponent] + value if exponent in result else value
                )
        return PolyMultivectorField(self.sig, result)

    def grade_project(self, r: int) -> PolyMultivectorField:
        """Grade-r part of every coefficient."""
        return self.map(lambda coeff: grade_project(coeff, r))

    def evaluate(self, point: Sequence[Scalar]) -> Multivector:
        """Value of the field at a rational point."""
        if len(point) != self.sig.n:
            raise FieldError(f"Point {tuple(point)} has wrong dimension for {self.sig}")
        coords = [Fraction(x) for x in point]
        total = Multivector.zero(self.sig)
        for exponent, coeff in self.terms.items():
            weight = Fraction(1)
            for x, d in zip(coords, exponent, strict=True):
                weight *= x**d
            total = total + coeff.scale(weight)
        return total

    def reinterpret(self, sig: Signature) -> PolyMultivectorField:
        """Same terms carried by another signature of equal dimension."""
        carried = {d: coeff.reinterpret(sig) for d, coeff in self.terms.items()}
        return PolyMultivectorField(sig, carried)

    def scale(self, factor: Scalar) -> PolyMultivectorField:
        """Multiply every coefficient by ``factor``."""
        return self.map(lambda coeff: coeff.scale(factor))

    def __add__(self, other: PolyMultivectorField) -> PolyMultivectorField:
        if self.sig != other.sig:
            raise SignatureMismatchError(
                f"Fields live in different algebras: {self.sig} and {other.sig}"
            )
        result = dict(self.terms)
        for exponent, coeff in other.terms.items():
            result[exponent] = (
                result[exponent] + coeff if exponent in result else coeff
            )
        return PolyMultivectorField(self.sig, result)

    def __neg__(self) -> PolyMultivectorField:
        return self.scale(-1)

    def __sub__(self, other: PolyMultivectorField) -> PolyMultivectorField:
        return self + (-other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, coeff in self.terms.items():
            monomial = "*".join(
                f"x{mu}" if d == 1 else f"x{mu}^{d}"
                for mu, d in enumerate(exponent)
                if d
            )
            parts.append(f"({coeff})" + (f"*{monomial}" if monomial else ""))
        return " + ".join(parts)


def as_field(value: Multivector | PolyMultivectorField) -> PolyMultivectorField:
    """Promote a multivector to a constant field; fields pass through."""
    if isinstance(value, Multivector):
        return PolyMultivectorField.constant(value)
    return value


class DiracForm(str, Enum):
    """Named Dirac residuals the component systems are built from."""

    MINKOWSKI = "minkowski"
    VEE = "vee"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class DiracContext:
    """Product table, index-raising signs and couplings for a Dirac operator.

    ``carrier`` is the algebra the fields live in; the table may realise a
    different signature on top of it. ``raising[mu]`` is the sign s_mu in
    e^mu = s_mu e_mu.
    """

    table: ProductTable
    carrier: Signature
    raising: tuple[int, ...]
    mass: Fraction = Fraction(0)
    charge: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "raising", tuple(self.raising))
        object.__setattr__(self, "mass", Fraction(self.mass))
        object.__setattr__(self, "charge", Fraction(self.charge))
        if self.table.n != self.carrier.n or len(self.raising) != self.carrier.n:
            raise FieldError(
                f"Table, carrier {self.carrier} and raising {self.raising} "
                "disagree on dimension"
            )
        if any(s not in (1, -1) for s in self.raising):
            raise FieldError(f"Raising signs must be +1 or -1, got {self.raising}")

    @property
    def n(self) -> int:
        """Dimension of the carrier."""
        return self.carrier.n

    def upper(self, mu: int) -> Multivector:
        """e^mu = s_mu e_mu in the carrier."""
        return Multivector.blade(self.carrier, 1 << mu, self.raising[mu])

    def with_couplings(
        self, mass: Scalar | None = None, charge: Scalar | None = None
    ) -> DiracContext:
        """Copy of the context with new mass and charge."""
        return DiracContext(
            self.table,
            self.carrier,
            self.raising,
            self.mass if mass is None else Fraction(mass),
            self.charge if charge is None else Fraction(charge),
        )


MINKOWSKI_RAISING = (1, -1, -1, -1)
EUCLIDEAN_RAISING = (1, 1, 1, 1)


def minkowski_context(mass: Scalar = 0, charge: Scalar = 0) -> DiracContext:
    """Clifford product of Cl(1,3) with gamma^mu = (g0, -g1, -g2, -g3)."""
    sig = make_signature(1, 3)
    return DiracContext(
        base_table(sig), sig, MINKOWSKI_RAISING, Fraction(mass), Fraction(charge)
    )


def vee_context(mass: Scalar = 0, charge: Scalar = 0) -> DiracContext:
    """Vee product about e0 over Cl(4,0) with e^mu = e_mu."""
    sig = make_signature(4, 0)
    return DiracContext(
        vee_table(base_table(sig), 0),
        sig,
        EUCLIDEAN_RAISING,
        Fraction(mass),
        Fraction(charge),
    )


def euclidean_context(mass: Scalar = 0, charge: Scalar = 0) -> DiracContext:
    """Plain Clifford product of Cl(4,0), no vee."""
    sig = make_signature(4, 0)
    return DiracContext(
        base_table(sig), sig, EUCLIDEAN_RAISING, Fraction(mass), Fraction(charge)
    )


def hodge_vee_context() -> DiracContext:
    """Euclidean operators inside Minkowski spacetime: vee about g0 over Cl(1,3)."""
    sig = make_signature(1, 3)
    return DiracContext(vee_table(base_table(sig), 0), sig, MINKOWSKI_RAISING)


@dataclass(frozen=True, order=True)
class Term:
    """coefficient * factor(psi_blade); factor is d<mu>, m, or eA<mu>."""

    blade: BladeIndex
    factor: str
    coefficient: Fraction

    def __str__(self) -> str:
        name = f"psi[{blade_label(self.blade)}]"
        if self.factor == "m":
            body = f"m*{name}"
        elif self.factor.startswith("eA"):
            body = f"e*A{self.factor[2:]}*{name}"
        else:
            body = f"{self.factor}{name}"
        return f"{self.coefficient}*{body}"


@dataclass(frozen=True)
class Equation:
    """One scalar equation: the coefficient of output blade ``blade``."""

    blade: BladeIndex
    terms: tuple[Term, ...]

    def term_map(self) -> dict[tuple[BladeIndex, str], Fraction]:
        """Coefficients keyed by (unknown blade, factor)."""
        return {(t.blade, t.factor): t.coefficient for t in self.terms}

    def __str__(self) -> str:
        body = " + ".join(str(t) for t in self.terms)
        return f"[{blade_label(self.blade)}] {body} = 0"


@dataclass(frozen=True)
class ComponentSystem:
    """Scalar equations of a Dirac residual, canonically ordered."""

    form: DiracForm
    basis: tuple[BladeIndex, ...]
    equations: tuple[Equation, ...]
    with_potential: bool = False

    def equation(self, blade: BladeIndex) -> Equation | None:
        """Equation for output blade ``blade``, if present."""
        for eq in self.equations:
            if eq.blade == blade:
                return eq
        return None

    def __len__(self) -> int:
        return len(self.equations)

    def to_dict(self) -> dict[str, object]:
        """Labels and string coefficients, ready for JSON."""
        return {
            "form": self.form.value,
            "basis": [blade_label(b) for b in self.basis],
            "equations": {
                blade_label(eq.blade): [
                    [blade_label(t.blade), t.factor, str(t.coefficient)]
                    for t in eq.terms
                ]
                for eq in self.equations
            },
        }


@dataclass(frozen=True)
class EMField:
    """Field strength F = E + g5 B with E in span{g0i} and g5 B in span{gjk}."""

    F: Multivector
    E: Multivector
    B: Multivector


def _apply_signs(
    value: PolyMultivectorField, signs: Mapping[BladeIndex, int]
) -> PolyMultivectorField:
    """Multiply each blade coefficient by its sign, default +1."""
    def flip(coeff: Multivector) -> Multivector:
        signed = (c * signs.get(mask, 1) for mask, c in enumerate(coeff.coeffs))
        return Multivector(coeff.sig, tuple(signed))

    return value.map(flip)


@dataclass(frozen=True)
class Recoding:
    """Diagonal sign change relating two component systems.

    Substituting psi[I] -> unknown_signs[I] * psi[I] and A_mu ->
    potential_signs[mu] * A_mu in the first system, then multiplying equation
    X by equation_signs[X], gives the second system.
    """

    unknown_signs: Mapping[BladeIndex, int]
    equation_signs: Mapping[BladeIndex, int]
    potential_signs: Mapping[int, int] = field(default_factory=dict)

    def flipped_unknowns(self) -> list[BladeIndex]:
        """Unknown blades whose sign changes."""
        return sorted(b for b, s in self.unknown_signs.items() if s == -1)

    def flipped_equations(self) -> list[BladeIndex]:
        """Equations multiplied by -1."""
        return sorted(b for b, s in self.equation_signs.items() if s == -1)

    def recode_unknowns(self, psi: PolyMultivectorField) -> PolyMultivectorField:
        """Apply the unknown signs to ``psi``."""
        return _apply_signs(psi, self.unknown_signs)

    def recode_equations(self, residual: PolyMultivectorField) -> PolyMultivectorField:
        """Apply the equation signs to a residual."""
        return _apply_signs(residual, self.equation_signs)

    def recode_potential(self, potential: PolyMultivectorField) -> PolyMultivectorField:
        """Apply the potential signs to the vector field ``potential``."""
        signs = {1 << mu: s for mu, s in self.potential_signs.items()}
        return _apply_signs(potential, signs)

    def to_dict(self) -> dict[str, object]:
        """Signs keyed by blade label and potential name."""
        return {
            "unknowns": {blade_label(b): s for b, s in self.unknown_signs.items()},
            "equations": {blade_label(b): s for b, s in self.equation_signs.items()},
            "potential": {f"A{mu}": s for mu, s in self.potential_signs.items()},
        }
