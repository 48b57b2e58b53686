"""Tests for Dirac-Hestenes residuals, component systems and recodings."""

import logging
import random

import pytest

from cliffmorph.algebra.models import Multivector, Signature, make_signature
from cliffmorph.fields.dirac import (
    check_form,
    component_system,
    dh_residual,
    even_basis,
    find_recoding,
    recoding_holds,
    table_residual,
)
from cliffmorph.fields.models import (
    DiracForm,
    FieldError,
    PolyMultivectorField,
    Recoding,
    WrongTableError,
    as_field,
    euclidean_context,
    minkowski_context,
    vee_context,
)
from cliffmorph.utils import random_even, random_field, random_vector

SPACETIME = make_signature(1, 3)
EUCLIDEAN = make_signature(4, 0)


@pytest.fixture(scope="module")
def recoding() -> Recoding:
    basis = even_basis()
    first = component_system(minkowski_context(), "minkowski", basis, True)
    second = component_system(vee_context(), "vee", basis, True)
    found = find_recoding(first, second)
    assert found is not None
    return found


class TestCheckForm:
    def test_accepts_matching_contexts(self) -> None:
        """Test that each form accepts its own context."""
        assert check_form(minkowski_context(), "minkowski") is DiracForm.MINKOWSKI
        assert check_form(vee_context(), DiracForm.VEE) is DiracForm.VEE
        assert check_form(euclidean_context(), "euclidean") is DiracForm.EUCLIDEAN

    def test_rejects_wrong_table(self) -> None:
        """Test that a form rejects a context with another table."""
        with pytest.raises(WrongTableError, match="vee form"):
            check_form(euclidean_context(), "vee")
        with pytest.raises(WrongTableError, match="minkowski form"):
            check_form(vee_context(), "minkowski")

    def test_unknown_form(self) -> None:
        """Test that an unknown form name is rejected."""
        with pytest.raises(ValueError):
            check_form(vee_context(), "lorentz")


class TestResiduals:
    def test_constant_spinor_is_a_free_solution(self) -> None:
        """Test that a constant spinor solves the free equation."""
        ctx = minkowski_context()
        psi = as_field(Multivector.scalar(SPACETIME, 1))

        assert dh_residual(ctx, psi, "minkowski").is_zero()

    def test_derivative_term(self) -> None:
        """Test the residual of a linear spinor."""
        ctx = minkowski_context()
        psi = PolyMultivectorField.coordinate(SPACETIME, 1)

        assert dh_residual(ctx, psi, "minkowski") == as_field(
            Multivector.blade(SPACETIME, 0b0010, -1)
        )

    def test_vee_form_matches_table_product(self) -> None:
        """Test the vee residual against the plain table product."""
        rng = random.Random(5)
        for _ in range(5):
            ctx = vee_context(mass=rng.randint(-3, 3), charge=rng.randint(-3, 3))
            psi = random_field(EUCLIDEAN, rng, coefficient=random_even)
            potential = random_field(EUCLIDEAN, rng, coefficient=random_vector)

            assert dh_residual(ctx, psi, "vee", potential) == table_residual(
                ctx, psi, potential
            )

    def test_odd_spinor_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that an odd spinor logs a warning."""
        psi = as_field(Multivector.blade(SPACETIME, 0b0001))

        with caplog.at_level(logging.WARNING, logger="cliffmorph.fields.dirac"):
            dh_residual(minkowski_context(), psi, "minkowski")

        assert "odd grades" in caplog.text

    def test_potential_must_be_a_vector(self) -> None:
        """Test that the potential must be a vector field."""
        psi = as_field(Multivector.scalar(SPACETIME, 1))
        potential = as_field(Multivector.scalar(SPACETIME, 1))

        with pytest.raises(FieldError, match="vector field"):
            dh_residual(minkowski_context(charge=1), psi, "minkowski", potential)

    def test_potential_carrier(self) -> None:
        """Test that the potential must share the spinor's carrier."""
        psi = as_field(Multivector.scalar(SPACETIME, 1))
        potential = as_field(Multivector.blade(EUCLIDEAN, 0b0001))

        with pytest.raises(FieldError, match="Potential lives in"):
            table_residual(minkowski_context(), psi, potential)


class TestComponentSystem:
    def test_even_basis(self) -> None:
        """Test the even blades used as unknowns."""
        assert even_basis() == (0, 3, 5, 6, 9, 10, 12, 15)
        assert len(even_basis(4)) == 8

    def test_one_equation_per_odd_blade(self) -> None:
        """Test that the free system has one equation per odd blade."""
        system = component_system(minkowski_context(), "minkowski", even_basis())

        assert len(system) == 8
        assert all(eq.blade.bit_count() % 2 == 1 for eq in system.equations)
        assert not system.with_potential

    def test_terms_of_the_scalar_unknown(self) -> None:
        """Test the terms produced by the scalar unknown alone."""
        system = component_system(minkowski_context(), "minkowski", [0])
        equation = system.equation(0b0010)

        assert equation is not None
        assert [(t.blade, t.factor, t.coefficient) for t in equation.terms] == [
            (0, "d1", -1)
        ]

    def test_potential_terms(self) -> None:
        """Test that couplings add mass and potential terms."""
        system = component_system(minkowski_context(), "minkowski", [0], True)
        factors = {t.factor for eq in system.equations for t in eq.terms}

        assert {"eA0", "eA1", "eA2", "eA3", "m"} <= factors

    def test_rejects_odd_basis(self) -> None:
        """Test that odd blades are rejected as unknowns."""
        with pytest.raises(FieldError, match="e0 is not an even blade"):
            component_system(minkowski_context(), "minkowski", [0b0001])


class TestRecoding:
    def test_flips_blades_containing_e0(self, recoding: Recoding) -> None:
        """Test that the recoding flips the unknowns containing e0."""
        assert recoding.flipped_unknowns() == [0b0011, 0b0101, 0b1001, 0b1111]
        assert recoding.unknown_signs[0] == 1

    def test_potential_signs(self, recoding: Recoding) -> None:
        """Test that the recoding keeps A0 and flips A1 to A3."""
        assert recoding.potential_signs == {0: 1, 1: -1, 2: -1, 3: -1}

    def test_free_systems_recode_the_same_way(self) -> None:
        """Test the recoding of the systems without a potential."""
        basis = even_basis()
        first = component_system(minkowski_context(), "minkowski", basis)
        second = component_system(vee_context(), "vee", basis)
        found = find_recoding(first, second)

        assert found is not None
        assert found.flipped_unknowns() == [0b0011, 0b0101, 0b1001, 0b1111]
        assert found.potential_signs == {}

    def test_euclidean_control_has_no_recoding(self) -> None:
        """Test that the euclidean product admits no recoding."""
        basis = even_basis()
        first = component_system(minkowski_context(), "minkowski", basis)
        control = component_system(euclidean_context(), "euclidean", basis)

        assert find_recoding(first, control) is None

    def test_different_bases(self) -> None:
        """Test that systems over different bases cannot be compared."""
        first = component_system(minkowski_context(), "minkowski", [0])
        second = component_system(vee_context(), "vee", [0, 3])

        with pytest.raises(FieldError, match="different bases"):
            find_recoding(first, second)

    def test_holds_on_random_fields(self, recoding: Recoding) -> None:
        """Test the recoding on random spinors and potentials."""
        rng = random.Random(17)
        for _ in range(3):
            psi = random_field(SPACETIME, rng, coefficient=random_even)
            potential = random_field(SPACETIME, rng, coefficient=random_vector)
            mass, charge = rng.randint(-3, 3), rng.randint(-3, 3)

            assert recoding_holds(recoding, psi, potential, mass, charge)

    def test_identity_recoding_fails(self, spacetime: Signature) -> None:
        """Test that leaving every sign alone does not relate the systems."""
        identity = Recoding(
            unknown_signs={b: 1 for b in even_basis()},
            equation_signs={b: 1 for b in range(16) if b.bit_count() % 2},
            potential_signs={},
        )
        psi = PolyMultivectorField.coordinate(spacetime, 1)

        assert not recoding_holds(identity, psi)
