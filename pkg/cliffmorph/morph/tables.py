"""Product tables: base Clifford, vee and tilt products and their compositions."""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache, partial, reduce

import numpy as np
import numpy.typing as npt

from cliffmorph.algebra.models import (
    BladeIndex,
    Multivector,
    Signature,
    grade,
)
from cliffmorph.algebra.products import (
    BladeProduct,
    bilinear,
    blade_product,
    contraction_grades,
    parity_split,
)
from cliffmorph.config import get_settings

from .models import (
    AssociativityError,
    ClosureViolationError,
    DimensionMismatchError,
    IsomorphismReport,
    MorphStep,
    TableFormatError,
    describe_steps,
)

logger = logging.getLogger(__name__)

SignArray = npt.NDArray[np.int8]
BladeArray = npt.NDArray[np.int32]


class ProductTable:
    """Signed-blade product on the 2**n blades of an n-dimensional algebra.

    Entry (I, J) is the pair (sign, K) with e_I o e_J = sign * e_K. Tables up to
    ``dense_limit`` dimensions are precomputed into numpy arrays; larger ones
    evaluate entries on demand behind an LRU cache. A table never changes after
    construction.
    """

    def __init__(self, n: int, provenance: str, entry: BladeProduct) -> None:
        settings = get_settings()
        self.n = n
        self.size = 1 << n
        self.provenance = provenance
        self._signs: SignArray | None = None
        self._blades: BladeArray | None = None

        if n <= settings.dense_limit:
            signs = np.empty((self.size, self.size), dtype=np.int8)
            blades = np.empty((self.size, self.size), dtype=np.int32)
            for i in range(self.size):
                for j in range(self.size):
                    signs[i, j], blades[i, j] = entry(i, j)
            signs.flags.writeable = False
            blades.flags.writeable = False
            self._signs, self._blades = signs, blades
            sign_rows: list[list[int]] = signs.tolist()
            blade_rows: list[list[int]] = blades.tolist()

            def lookup(i: BladeIndex, j: BladeIndex) -> tuple[int, BladeIndex]:
                return sign_rows[i][j], blade_rows[i][j]

            self._lookup: BladeProduct = lookup
        else:
            self._lookup = lru_cache(maxsize=settings.lazy_cache_size)(entry)

        self._check_unital()
        self.squares = self._generator_squares()
        logger.debug(f"Built {'dense' if self.is_dense else 'lazy'} table: {self}")

        if settings.check_associativity:
            check_associativity(
                self, settings.associativity_samples, settings.default_seed
            )

    @classmethod
    def from_arrays(
        cls,
        signs: npt.ArrayLike,
        blades: npt.ArrayLike,
        provenance: str = "imported",
    ) -> ProductTable:
        """Build a table from explicit sign and result-blade arrays."""
        sign_array = np.asarray(signs)
        blade_array = np.asarray(blades)
        if sign_array.ndim != 2 or sign_array.shape != blade_array.shape:
            raise TableFormatError(
                f"Sign and blade arrays must be equal square matrices, got "
                f"{sign_array.shape} and {blade_array.shape}"
            )
        size = sign_array.shape[0]
        if sign_array.shape[1] != size or size < 2 or size & (size - 1):
            raise TableFormatError(f"Table shape {sign_array.shape} is not 2**n square")
        if not np.isin(sign_array, (-1, 1)).all():
            raise TableFormatError("Table signs must all be +1 or -1")
        if ((blade_array < 0) | (blade_array >= size)).any():
            raise TableFormatError(f"Result blades must lie in 0..{size - 1}")

        sign_rows = sign_array.astype(int).tolist()
        blade_rows = blade_array.astype(int).tolist()

        def entry(i: BladeIndex, j: BladeIndex) -> tuple[int, BladeIndex]:
            return sign_rows[i][j], blade_rows[i][j]

        try:
            return cls(size.bit_length() - 1, provenance, entry)
        except ClosureViolationError as e:
            raise TableFormatError(f"Imported table is malformed: {e}") from e

    @property
    def is_dense(self) -> bool:
        """Whether the entries are held in precomputed arrays."""
        return self._signs is not None

    @property
    def signature(self) -> Signature:
        """The signature whose Clifford product this table claims to realise."""
        return Signature(self.squares)

    def entry(self, i: BladeIndex, j: BladeIndex) -> tuple[int, BladeIndex]:
        """(sign, blade) of e_i o e_j."""
        return self._lookup(i, j)

    def arrays(self) -> tuple[SignArray, BladeArray]:
        """Dense (signs, blades) arrays, materialised on demand for lazy tables."""
        if self._signs is not None and self._blades is not None:
            return self._signs, self._blades
        signs = np.empty((self.size, self.size), dtype=np.int8)
        blades = np.empty((self.size, self.size), dtype=np.int32)
        for i in range(self.size):
            for j in range(self.size):
                signs[i, j], blades[i, j] = self._lookup(i, j)
        return signs, blades

    def _check_unital(self) -> None:
        """Raise unless the scalar blade is a two-sided unit."""
        for mask in range(self.size):
            unit = (1, mask)
            if self._lookup(0, mask) != unit or self._lookup(mask, 0) != unit:
                raise ClosureViolationError(
                    f"Scalar unit is not an identity on blade {mask} in {self}"
                )

    def _generator_squares(self) -> tuple[int, ...]:
        """Read each generator square off the table."""
        squares = []
        for mu in range(self.n):
            sign, blade = self._lookup(1 << mu, 1 << mu)
            if blade != 0:
                raise ClosureViolationError(
                    f"Generator e{mu} does not square to a scalar in {self.provenance}"
                )
            squares.append(sign)
        return tuple(squares)

    def __repr__(self) -> str:
        return f"ProductTable(n={self.n}, provenance={self.provenance!r})"

    def __str__(self) -> str:
        return self.provenance


def check_associativity(table: ProductTable, samples: int, seed: int = 0) -> None:
    """Sample blade triples and raise if (IJ)K differs from I(JK)."""
    rng = random.Random(seed)
    for _ in range(samples):
        i, j, k = (rng.randrange(table.size) for _ in range(3))
        s_ij, ij = table.entry(i, j)
        s_left, left = table.entry(ij, k)
        s_jk, jk = table.entry(j, k)
        s_right, right = table.entry(i, jk)
        if (s_ij * s_left, left) != (s_jk * s_right, right):
            raise AssociativityError(
                f"Blades ({i}, {j}, {k}) do not associate in {table.provenance}"
            )


def base_table(sig: Signature) -> ProductTable:
    """Structure constants of the Clifford product of ``sig``."""
    return ProductTable(sig.n, describe_steps(sig, ()), partial(blade_product, sig))


def _check_generator(table: ProductTable, mu: int) -> None:
    """Raise unless ``mu`` names a generator of ``table``."""
    if not 0 <= mu < table.n:
        raise DimensionMismatchError(
            f"Preserved index {mu} invalid for dimension {table.n}"
        )


def _vee_entry(
    base: ProductTable, mu: int, i: BladeIndex, j: BladeIndex
) -> tuple[int, BladeIndex]:
    """Vee entry (I, J) about ``mu``, computed from ``base``."""
    # e_I v e_J = (-1)^{kl} [e_J e_I - 2 (e_J . e_mu)(e^mu . e_I)]
    sign, blade = base.entry(j, i)
    coeff = sign
    generator = 1 << mu
    if i & generator and j & generator:
        s_right, right_dot = base.entry(j, generator)
        s_left, left_dot = base.entry(generator, i)
        s_inner, inner = base.entry(right_dot, left_dot)
        if inner != blade:
            raise ClosureViolationError(
                f"Vee of blades {i}, {j} about e{mu} mixes blades {blade} and {inner}"
            )
        coeff -= 2 * base.squares[mu] * s_right * s_left * s_inner
    if coeff not in (1, -1):
        raise ClosureViolationError(
            f"Vee of blades {i}, {j} about e{mu} has coefficient {coeff}"
        )
    if grade(i) * grade(j) % 2:
        coeff = -coeff
    return coeff, blade


def _tilt_entry(
    base: ProductTable, i: BladeIndex, j: BladeIndex
) -> tuple[int, BladeIndex]:
    """Tilt entry (I, J): (-1)^{kl} times the base entry (J, I)."""
    sign, blade = base.entry(j, i)
    if grade(i) * grade(j) % 2:
        sign = -sign
    return sign, blade


def vee_blades(
    base: ProductTable, mu: int, left: BladeIndex, right: BladeIndex
) -> Multivector:
    """Vee product of two blades about preserved generator ``mu``, as a multivector.

    Evaluates (-1)^{kl} [B A - 2 (B . e_mu)(e^mu . A)] term by term with the
    product and contraction of ``base``; ``vee_table`` uses a blade-level
    shortcut of the same formula.
    """
    _check_generator(base, mu)
    sig = base.signature
    a = Multivector.blade(sig, left)
    b = Multivector.blade(sig, right)
    e_mu = Multivector.blade(sig, 1 << mu)
    e_up = e_mu.scale(base.squares[mu])
    inner = table_product(
        base, table_contract(base, b, e_mu), table_contract(base, e_up, a)
    )
    result = table_product(base, b, a) - 2 * inner
    return result.scale(-1 if grade(left) * grade(right) % 2 else 1)


def vee_table(base: ProductTable, mu: int) -> ProductTable:
    """Vee product of ``base`` preserving the square of generator ``mu``."""
    _check_generator(base, mu)
    provenance = describe_steps(base.provenance, [MorphStep.vee(mu)])
    return ProductTable(base.n, provenance, partial(_vee_entry, base, mu))


def tilt_table(base: ProductTable) -> ProductTable:
    """Tilt product A_l t B_k = (-1)^{kl} B_k A_l: the opposite algebra of ``base``."""
    provenance = describe_steps(base.provenance, [MorphStep.tilt()])
    return ProductTable(base.n, provenance, partial(_tilt_entry, base))


def _check_operands(table: ProductTable, a: Multivector, b: Multivector) -> None:
    """Raise unless both operands match the table dimension."""
    if a.sig.n != table.n or b.sig.n != table.n:
        raise DimensionMismatchError(
            f"Table of dimension {table.n} applied to operands of dimension "
            f"{a.sig.n} and {b.sig.n}"
        )


def table_product(table: ProductTable, a: Multivector, b: Multivector) -> Multivector:
    """Bilinear extension of ``table`` to multivectors; the carrier is kept."""
    _check_operands(table, a, b)
    return bilinear(a, b, table.entry)


def table_contract(table: ProductTable, a: Multivector, b: Multivector) -> Multivector:
    """Contraction <X_k Y_l>_{|k-l|} induced by ``table``; zero against scalars."""
    _check_operands(table, a, b)
    return bilinear(a, b, table.entry, contraction_grades)


def generator_squares(table: ProductTable) -> tuple[int, ...]:
    """Squares of the generators under ``table``."""
    return table.squares


def verify_isomorphism(first: ProductTable, second: ProductTable) -> IsomorphismReport:
    """Compare two tables entrywise under the identity map on blades."""
    if first.n != second.n:
        raise DimensionMismatchError(
            f"Cannot compare tables of dimension {first.n} and {second.n}"
        )
    if first.is_dense and second.is_dense:
        signs_a, blades_a = first.arrays()
        signs_b, blades_b = second.arrays()
        mismatches = np.argwhere((signs_a != signs_b) | (blades_a != blades_b))
        if len(mismatches) == 0:
            return IsomorphismReport(equal=True)
        i, j = (int(x) for x in mismatches[0])
        return IsomorphismReport(equal=False, first_mismatch=(i, j))

    for i in range(first.size):
        for j in range(first.size):
            if first.entry(i, j) != second.entry(i, j):
                return IsomorphismReport(equal=False, first_mismatch=(i, j))
    return IsomorphismReport(equal=True)


def vee_chain(table: ProductTable, factors: Sequence[Multivector]) -> Multivector:
    """Left fold of the table product over ``factors``."""
    if not factors:
        raise ValueError("vee_chain needs at least one factor")
    return reduce(partial(table_product, table), factors)


def tilt_by_parity(a: Multivector, b: Multivector) -> Multivector:
    """Tilt product from the even/odd split: b+a+ + b+a- + b-a+ - b-a-."""
    a_even, a_odd = parity_split(a)
    b_even, b_odd = parity_split(b)
    return b_even * a_even + b_even * a_odd + b_odd * a_even - b_odd * a_odd


def anticommutator_metric(
    table: ProductTable, u: Multivector, w: Multivector
) -> Fraction:
    """Scalar part of (u o w + w o u) / 2 for the product of ``table``."""
    symmetric = table_product(table, u, w) + table_product(table, w, u)
    return symmetric.scalar_part() / 2
