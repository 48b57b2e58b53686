"""Tests for the electromagnetic split, self-duality and Maxwell residuals."""

import pytest
import sympy

from cliffmorph.algebra.models import Multivector, Signature
from cliffmorph.fields.maxwell import (
    em_split,
    maxwell_residual,
    selfdual_by_split,
    selfdual_check,
    selfdual_space,
    star_matrix,
    two_form_blades,
)
from cliffmorph.fields.models import (
    NotATwoFormError,
    PolyMultivectorField,
    as_field,
    minkowski_context,
)
from cliffmorph.morph.tables import base_table, vee_table


def blade(sig: Signature, mask: int, coeff: int = 1) -> Multivector:
    return Multivector.blade(sig, mask, coeff)


class TestEMSplit:
    def test_magnetic_bivector(self, spacetime: Signature) -> None:
        """Test splitting a spatial bivector into its magnetic part."""
        split = em_split(blade(spacetime, 0b0110))

        assert split.E.is_zero()
        assert split.B == blade(spacetime, 0b1001)

    def test_electric_bivector(self, spacetime: Signature) -> None:
        """Test splitting a bivector containing g0 into its electric part."""
        split = em_split(blade(spacetime, 0b0011))

        assert split.E == blade(spacetime, 0b0011)
        assert split.B.is_zero()

    def test_rejects_other_grades(self, spacetime: Signature) -> None:
        """Test that the split needs a 2-form."""
        with pytest.raises(NotATwoFormError, match="grades"):
            em_split(blade(spacetime, 0b0001))


class TestSelfDuality:
    def test_selfdual_two_form(self, spacetime: Signature) -> None:
        """Test a self-dual 2-form under the vee star."""
        vee = vee_table(base_table(spacetime), 0)
        field = blade(spacetime, 0b0011) + blade(spacetime, 0b1100)

        assert selfdual_check(vee, field, 1)
        assert not selfdual_check(vee, field, -1)
        assert selfdual_by_split(field, 1)

    def test_anti_selfdual_two_form(self, spacetime: Signature) -> None:
        """Test an anti-self-dual 2-form under the vee star."""
        vee = vee_table(base_table(spacetime), 0)
        field = blade(spacetime, 0b0011) - blade(spacetime, 0b1100)

        assert selfdual_check(vee, field, -1)
        assert selfdual_by_split(field, -1)

    def test_bad_sign(self, spacetime: Signature) -> None:
        """Test that the duality sign must be +1 or -1."""
        with pytest.raises(ValueError, match="Duality sign"):
            selfdual_check(base_table(spacetime), blade(spacetime, 0b0011), 2)

    def test_rejects_other_grades(self, spacetime: Signature) -> None:
        """Test that the duality check needs a 2-form."""
        with pytest.raises(NotATwoFormError):
            selfdual_check(base_table(spacetime), blade(spacetime, 0), 1)

    def test_star_matrix_squares(self, spacetime: Signature) -> None:
        """Test that the star matrices square to plus or minus one."""
        base = base_table(spacetime)
        vee = vee_table(base, 0)

        assert len(two_form_blades(spacetime)) == 6
        assert star_matrix(vee, spacetime) ** 2 == sympy.eye(6)
        assert star_matrix(base, spacetime) ** 2 == -sympy.eye(6)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_euclidean_star_spaces(self, spacetime: Signature, sign: int) -> None:
        """Test that both eigenspaces of the vee star have dimension 3."""
        vee = vee_table(base_table(spacetime), 0)
        space = selfdual_space(vee, spacetime, sign)

        assert len(space) == 3
        assert all(selfdual_check(vee, value, sign) for value in space)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_minkowski_star_has_no_real_spaces(
        self, spacetime: Signature, sign: int
    ) -> None:
        """Test that the Minkowski star has no real eigenspaces."""
        assert selfdual_space(base_table(spacetime), spacetime, sign) == []


class TestMaxwellResidual:
    def test_closed_but_not_coclosed(self, spacetime: Signature) -> None:
        """Test the residual of a closed field that is not coclosed."""
        field = PolyMultivectorField.monomial((0, 1, 0, 0), blade(spacetime, 0b0011))

        closed, coclosed = maxwell_residual(minkowski_context(), field)

        assert closed.is_zero()
        assert coclosed == as_field(blade(spacetime, 0b0001, -1))

    def test_not_closed(self, spacetime: Signature) -> None:
        """Test the residual of a field that is not closed."""
        field = PolyMultivectorField.monomial((0, 0, 1, 0), blade(spacetime, 0b0011))

        closed, _ = maxwell_residual(minkowski_context(), field)

        assert closed == as_field(blade(spacetime, 0b0111, -1))

    def test_constant_field_solves(self, spacetime: Signature) -> None:
        """Test that a constant 2-form solves both equations."""
        field = as_field(blade(spacetime, 0b0110, 3))

        closed, coclosed = maxwell_residual(minkowski_context(), field)

        assert closed.is_zero()
        assert coclosed.is_zero()

    def test_rejects_other_grades(self, spacetime: Signature) -> None:
        """Test that the residual needs a 2-form field."""
        with pytest.raises(NotATwoFormError):
            maxwell_residual(
                minkowski_context(), PolyMultivectorField.coordinate(spacetime, 0)
            )
