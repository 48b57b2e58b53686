"""Tests for derivatives, Dirac operators and the Hodge stars."""

import random
from functools import partial

import pytest

from cliffmorph.algebra.models import Multivector, Signature, grade, make_signature
from cliffmorph.algebra.products import geometric_product
from cliffmorph.fields.calculus import (
    Side,
    codifferential,
    dirac,
    exterior_d,
    hodge_star,
    hodge_star_via_parity,
    parity,
    partial_derivative,
    wave_check,
    wave_operator,
)
from cliffmorph.fields.models import (
    DiracContext,
    FieldError,
    PolyMultivectorField,
    as_field,
    euclidean_context,
    hodge_vee_context,
    minkowski_context,
    vee_context,
)
from cliffmorph.morph.tables import base_table, table_product, vee_table
from cliffmorph.utils import random_field

CONTEXTS = {
    "minkowski": minkowski_context,
    "vee": vee_context,
    "euclidean": euclidean_context,
    "hodge": hodge_vee_context,
}


def monomial(
    sig: Signature, exponent: tuple[int, ...], mask: int
) -> PolyMultivectorField:
    return PolyMultivectorField.monomial(exponent, Multivector.blade(sig, mask))


def times_on_right(factor: Multivector, value: Multivector) -> Multivector:
    return value * factor


class TestPartialDerivative:
    def test_power_rule(self, euclidean: Signature) -> None:
        """Test differentiating a monomial."""
        field = monomial(euclidean, (3, 1, 0, 0), 0b0010)

        assert partial_derivative(field, 0) == PolyMultivectorField.monomial(
            (2, 1, 0, 0), Multivector.blade(euclidean, 0b0010, 3)
        )
        assert partial_derivative(field, 2).is_zero()

    def test_bad_index(self, euclidean: Signature) -> None:
        """Test that derivative indices outside the dimension are rejected."""
        with pytest.raises(FieldError, match="Derivative index 4"):
            partial_derivative(PolyMultivectorField.coordinate(euclidean, 0), 4)


class TestDirac:
    def test_gradient_of_coordinate(self) -> None:
        """Test the Dirac operator on a coordinate function."""
        ctx = minkowski_context()
        x2 = PolyMultivectorField.coordinate(ctx.carrier, 2)

        assert dirac(ctx, x2) == as_field(ctx.upper(2))
        assert dirac(ctx, x2, Side.RIGHT) == as_field(ctx.upper(2))

    def test_left_and_right_differ_on_bivectors(self) -> None:
        """Test that left and right actions differ on a bivector field."""
        ctx = minkowski_context()
        field = monomial(ctx.carrier, (0, 1, 0, 0), 0b0011)

        assert dirac(ctx, field, "left") != dirac(ctx, field, "right")

    def test_rejects_wrong_carrier(self, euclidean: Signature) -> None:
        """Test that fields must live in the context carrier."""
        with pytest.raises(FieldError, match="carrier"):
            dirac(minkowski_context(), PolyMultivectorField.coordinate(euclidean, 0))

    def test_wave_operator_signs(self) -> None:
        """Test that the wave operator follows the table's squares."""
        ctx = minkowski_context()
        sig = ctx.carrier

        assert wave_operator(ctx, monomial(sig, (2, 0, 0, 0), 0)) == as_field(
            Multivector.scalar(sig, 2)
        )
        assert wave_operator(ctx, monomial(sig, (0, 0, 2, 0), 0)) == as_field(
            Multivector.scalar(sig, -2)
        )

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_vee_dirac_acts_left_in_time_and_right_in_space(self, k: int) -> None:
        """Test the vee Dirac operator on grade-k fields against its split form."""
        ctx = hodge_vee_context()
        sign = -1 if k % 2 else 1
        for mask in range(16):
            if grade(mask) != k:
                continue
            for mu in range(4):
                exponent = tuple(2 if nu == mu else 1 for nu in range(4))
                phi = monomial(ctx.carrier, exponent, mask)

                expected = partial_derivative(phi, 0).map(
                    partial(geometric_product, ctx.upper(0))
                )
                for i in range(1, 4):
                    spatial = partial_derivative(phi, i).map(
                        partial(times_on_right, ctx.upper(i))
                    )
                    expected = expected + spatial.scale(sign)

                assert dirac(ctx, phi) == expected

    @pytest.mark.parametrize("name", ["minkowski", "vee", "euclidean", "hodge"])
    def test_square_is_wave_operator(self, name: str) -> None:
        """Test that the Dirac operator squares to the wave operator."""
        ctx: DiracContext = CONTEXTS[name]()
        rng = random.Random(name)
        for _ in range(5):
            phi = random_field(ctx.carrier, rng, n_terms=3)
            assert wave_check(ctx, phi).is_zero()

    @pytest.mark.parametrize("name", ["minkowski", "hodge"])
    def test_dirac_is_d_plus_delta(self, name: str) -> None:
        """Test the split into d and delta and that both square to zero."""
        ctx: DiracContext = CONTEXTS[name]()
        rng = random.Random(name)
        for _ in range(5):
            phi = random_field(ctx.carrier, rng, n_terms=3)
            assert dirac(ctx, phi) == exterior_d(ctx, phi) + codifferential(ctx, phi)
            assert exterior_d(ctx, exterior_d(ctx, phi)).is_zero()
            assert codifferential(ctx, codifferential(ctx, phi)).is_zero()


class TestHodgeStar:
    def test_star_of_one_is_the_volume(self, spacetime: Signature) -> None:
        """Test that the star of 1 is the volume blade."""
        star = hodge_star(base_table(spacetime), Multivector.scalar(spacetime, 1))

        assert star == Multivector.blade(spacetime, 0b1111)

    def test_volume_squares(self, spacetime: Signature) -> None:
        """Test the volume square in the base and vee products."""
        g5 = Multivector.blade(spacetime, 0b1111)
        vee = vee_table(base_table(spacetime), 0)

        assert g5 * g5 == Multivector.scalar(spacetime, -1)
        assert table_product(vee, g5, g5) == Multivector.scalar(spacetime, 1)

    def test_euclidean_star_by_parity(self, spacetime: Signature) -> None:
        """Test the euclidean star as minus the parity of the Minkowski star."""
        base = base_table(spacetime)
        vee = vee_table(base, 0)
        for mask in range(16):
            phi = Multivector.blade(spacetime, mask)
            euclidean_star = hodge_star(vee, phi)
            assert euclidean_star == -parity(hodge_star(base, phi))
            assert euclidean_star == hodge_star_via_parity(phi)

    def test_squares_on_two_forms(self, spacetime: Signature) -> None:
        """Test that the stars square to -1 and +1 on 2-forms."""
        base = base_table(spacetime)
        vee = vee_table(base, 0)
        for mask in range(16):
            if grade(mask) != 2:
                continue
            phi = Multivector.blade(spacetime, mask)
            assert hodge_star(base, hodge_star(base, phi)) == -phi
            assert hodge_star(vee, hodge_star(vee, phi)) == phi

    def test_star_of_field(self, spacetime: Signature) -> None:
        """Test applying the star coefficient-wise to a field."""
        base = base_table(spacetime)
        field = monomial(spacetime, (1, 0, 0, 0), 0)

        assert hodge_star(base, field) == monomial(spacetime, (1, 0, 0, 0), 0b1111)

    def test_parity_needs_four_dimensions(self) -> None:
        """Test that parity is only defined in four dimensions."""
        with pytest.raises(FieldError, match="n = 4"):
            parity(Multivector.scalar(make_signature(1, 2), 1))

    def test_parity(self, spacetime: Signature) -> None:
        """Test that parity flips spatial vectors and keeps g0."""
        g1 = Multivector.blade(spacetime, 0b0010)
        g0 = Multivector.blade(spacetime, 0b0001)

        assert parity(g1) == -g1
        assert parity(g0) == g0
        assert parity(as_field(g1)) == as_field(-g1)


class TestExteriorCalculus:
    def test_closed_but_not_coclosed(self) -> None:
        """Test a field with dF = 0 and a nonzero codifferential."""
        ctx = minkowski_context()
        field = monomial(ctx.carrier, (0, 1, 0, 0), 0b0011)

        assert exterior_d(ctx, field).is_zero()
        assert codifferential(ctx, field) == as_field(
            Multivector.blade(ctx.carrier, 0b0001, -1)
        )

    def test_not_closed(self) -> None:
        """Test the exterior derivative of a non-closed field."""
        ctx = minkowski_context()
        field = monomial(ctx.carrier, (0, 0, 1, 0), 0b0011)

        assert exterior_d(ctx, field) == as_field(
            Multivector.blade(ctx.carrier, 0b0111, -1)
        )

    def test_codifferentials_differ(self) -> None:
        """Test that the two codifferentials differ in sign on a vector."""
        mink, hodge = minkowski_context(), hodge_vee_context()
        field = monomial(mink.carrier, (0, 1, 0, 0), 0b0010)
        one = Multivector.scalar(mink.carrier, 1)

        assert codifferential(mink, field) == as_field(one)
        assert codifferential(hodge, field) == as_field(-one)

    def test_star_identities(self) -> None:
        """Test both codifferentials against their star formulas."""
        mink, hodge = minkowski_context(), hodge_vee_context()
        base, vee = mink.table, hodge.table
        rng = random.Random(11)
        for _ in range(10):
            phi = random_field(mink.carrier, rng, n_terms=3)

            assert exterior_d(hodge, phi) == exterior_d(mink, phi)
            assert codifferential(mink, phi) == -hodge_star(
                base, exterior_d(mink, hodge_star(base, phi))
            )
            assert codifferential(hodge, phi) == hodge_star(
                vee, exterior_d(hodge, hodge_star(vee, phi))
            )
