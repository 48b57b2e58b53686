"""The verification suite behind ``cliffmorph verify``.

Arithmetic is exact and sampling is seeded per check, so a fixed seed always
produces the same report.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import sympy

from cliffmorph.algebra.models import (
    CliffordError,
    Multivector,
    Signature,
    blade_label,
    make_signature,
)
from cliffmorph.algebra.products import wedge
from cliffmorph.fields.calculus import (
    codifferential,
    dirac,
    exterior_d,
    hodge_star,
    hodge_star_via_parity,
    parity,
    wave_check,
)
from cliffmorph.fields.dirac import (
    component_system,
    dh_residual,
    even_basis,
    find_recoding,
    recoding_holds,
    table_residual,
)
from cliffmorph.fields.maxwell import (
    maxwell_residual,
    selfdual_by_split,
    selfdual_check,
    selfdual_space,
    star_matrix,
)
from cliffmorph.fields.models import (
    DiracForm,
    PolyMultivectorField,
    euclidean_context,
    hodge_vee_context,
    minkowski_context,
    vee_context,
)
from cliffmorph.morph.codec import load_table
from cliffmorph.morph.planner import apply_plan, plan_signature_change
from cliffmorph.morph.tables import (
    ProductTable,
    anticommutator_metric,
    base_table,
    table_product,
    tilt_by_parity,
    tilt_table,
    vee_chain,
    vee_table,
    verify_isomorphism,
)
from cliffmorph.utils import (
    random_even,
    random_field,
    random_multivector,
    random_vector,
)

from .models import CheckResult, SessionConfig, VerifyReport

logger = logging.getLogger(__name__)

SPACETIME = make_signature(1, 3)
EUCLIDEAN = make_signature(4, 0)


@dataclass(frozen=True)
class CheckContext:
    """Session and optional table file shared by the checks."""

    cfg: SessionConfig
    table_file: Path | None = None

    def rng(self, name: str) -> random.Random:
        """Generator seeded by the session seed and the check name."""
        return random.Random(f"{self.cfg.seed}:{name}")


class CheckFailure(Exception):
    """Raised inside a check to report a counterexample."""

    def __init__(self, detail: str, counterexample: str | None = None) -> None:
        super().__init__(detail)
        self.detail = detail
        self.counterexample = counterexample


CheckFn = Callable[[CheckContext], str]
CHECKS: list[tuple[str, CheckFn]] = []


def check(name: str) -> Callable[[CheckFn], CheckFn]:
    """Decorator adding a check to the suite under ``name``."""

    def register(fn: CheckFn) -> CheckFn:
        CHECKS.append((name, fn))
        return fn

    return register


def signatures(n: int) -> list[Signature]:
    """All n-dimensional signatures, positives first, from Cl(n,0) down."""
    return [make_signature(p, n - p) for p in range(n, -1, -1)]


def _require_same(first: ProductTable, second: ProductTable) -> None:
    """Fail with the first mismatching entry unless the tables agree."""
    report = verify_isomorphism(first, second)
    if not report.equal:
        assert report.first_mismatch is not None
        i, j = report.first_mismatch
        raise CheckFailure(
            f"{first} differs from {second}",
            f"({blade_label(i)}, {blade_label(j)}): {first.entry(i, j)} "
            f"vs {second.entry(i, j)}",
        )


def _require_zero(value: PolyMultivectorField | Multivector, what: str) -> None:
    """Fail unless ``value`` vanishes."""
    if not value.is_zero():
        raise CheckFailure(f"{what} is not zero", str(value))


@check("session-vee")
def check_session_vee(ctx: CheckContext) -> str:
    """Vee about the session index realises the flipped signature."""
    sig, mu = ctx.cfg.signature, ctx.cfg.preserve
    target = sig.flipped(keep=(mu,))
    _require_same(vee_table(base_table(sig), mu), base_table(target))
    return f"vee({mu}) over {sig} realises {target}"


@check("vee-simulation")
def check_vee_simulation(ctx: CheckContext) -> str:
    """Vee tables equal their target base tables at n = 4 and 5."""
    for sig in signatures(4):
        for mu in range(4):
            flipped = sig.flipped(keep=(mu,))
            _require_same(vee_table(base_table(sig), mu), base_table(flipped))
    pairs = [(sig, mu) for sig in signatures(5) for mu in range(5)]
    sampled = ctx.rng("vee-simulation").sample(pairs, 8)
    for sig, mu in sampled:
        flipped = sig.flipped(keep=(mu,))
        _require_same(vee_table(base_table(sig), mu), base_table(flipped))
    return "20 vee tables at n=4 and 8 sampled at n=5 match their target products"


@check("tilt-opposite")
def check_tilt_opposite(ctx: CheckContext) -> str:
    """Tilt tables equal the base table of the opposite signature."""
    count = 0
    for n in range(2, 6):
        for sig in signatures(n):
            _require_same(tilt_table(base_table(sig)), base_table(sig.flipped()))
            count += 1
    return f"{count} tilt tables equal the opposite signature, n=2..5"


@check("involutivity")
def check_involutivity(ctx: CheckContext) -> str:
    """Vee and tilt are their own inverses."""
    for sig in signatures(4):
        base = base_table(sig)
        for mu in range(4):
            _require_same(vee_table(vee_table(base, mu), mu), base)
        _require_same(tilt_table(tilt_table(base)), base)
    return "vee twice and tilt twice return every n=4 base table"


def _session_tables(cfg: SessionConfig) -> list[ProductTable]:
    """Base, vee and tilt tables of the session signature."""
    base = base_table(cfg.signature)
    return [base, vee_table(base, cfg.preserve), tilt_table(base)]


@check("associativity")
def check_associativity(ctx: CheckContext) -> str:
    """Random triples associate under every session table."""
    rng = ctx.rng("associativity")
    sig = ctx.cfg.signature
    density = min(0.5, 16 / sig.size)
    tables = _session_tables(ctx.cfg)
    for table in tables:
        for _ in range(100):
            a, b, c = (random_multivector(sig, rng, density) for _ in range(3))
            left = table_product(table, table_product(table, a, b), c)
            right = table_product(table, a, table_product(table, b, c))
            if left != right:
                raise CheckFailure(f"{table} is not associative", f"{a}; {b}; {c}")
    return f"100 random triples associate under {len(tables)} tables"


@check("tilt-by-parity")
def check_tilt_by_parity(ctx: CheckContext) -> str:
    """Even/odd tilt formula agrees with the tilt table."""
    rng = ctx.rng("tilt-by-parity")
    sig = ctx.cfg.signature
    tilt = tilt_table(base_table(sig))
    for _ in range(100):
        a, b = random_multivector(sig, rng), random_multivector(sig, rng)
        if tilt_by_parity(a, b) != table_product(tilt, a, b):
            raise CheckFailure("Even/odd tilt differs from the tilt table", f"{a}; {b}")
    return "100 random pairs: even/odd tilt formula matches the tilt table"


@check("structure-preservation")
def check_structure_preservation(ctx: CheckContext) -> str:
    """Vee keeps the wedge and flips the vector metric."""
    rng = ctx.rng("structure-preservation")
    sig = ctx.cfg.signature
    vee = vee_table(base_table(sig), ctx.cfg.preserve)
    for _ in range(100):
        u, w = random_vector(sig, rng), random_vector(sig, rng)
        commutator = (table_product(vee, u, w) - table_product(vee, w, u)).scale(
            Fraction(1, 2)
        )
        if commutator != wedge(u, w):
            raise CheckFailure("Vee commutator differs from the wedge", f"{u}; {w}")
        expected = sum(
            (s * u.coeffs[1 << mu] * w.coeffs[1 << mu])
            for mu, s in enumerate(vee.squares)
        )
        if anticommutator_metric(vee, u, w) != expected:
            raise CheckFailure("Vee anticommutator is not the flipped metric", f"{u}")
    return "100 vector pairs: commutator is the wedge, anticommutator the new metric"


@check("wave-identity")
def check_wave_identity(ctx: CheckContext) -> str:
    """Dirac squared is the wave operator and splits as d + delta."""
    rng = ctx.rng("wave-identity")
    contexts = [vee_context(), euclidean_context(), minkowski_context()]
    for _ in range(20):
        for dirac_ctx in contexts:
            phi = random_field(dirac_ctx.carrier, rng, n_terms=3)
            residual = wave_check(dirac_ctx, phi)
            _require_zero(residual, f"Wave residual in {dirac_ctx.table}")
    for dirac_ctx in (minkowski_context(), hodge_vee_context()):
        for _ in range(10):
            phi = random_field(dirac_ctx.carrier, rng, n_terms=3)
            split = exterior_d(dirac_ctx, phi) + codifferential(dirac_ctx, phi)
            if dirac(dirac_ctx, phi) != split:
                raise CheckFailure(f"nabla != d + delta in {dirac_ctx.table}", str(phi))
    return "nabla o nabla is the wave operator and nabla = d + delta on random fields"


@check("dirac-equivalence")
def check_dirac_equivalence(ctx: CheckContext) -> str:
    """Minkowski and vee Dirac systems differ by a sign recoding."""
    basis = even_basis(4)
    expected = [b for b in basis if b & 1]
    mink_ctx, vee_ctx = minkowski_context(), vee_context()

    for with_potential in (False, True):
        mink = component_system(mink_ctx, DiracForm.MINKOWSKI, basis, with_potential)
        vee = component_system(vee_ctx, DiracForm.VEE, basis, with_potential)
        recoding = find_recoding(mink, vee)
        if recoding is None:
            raise CheckFailure("Dirac systems admit no sign recoding")
        if recoding.flipped_unknowns() != expected:
            flipped = [blade_label(b) for b in recoding.flipped_unknowns()]
            raise CheckFailure("Recoding flips unexpected blades", str(flipped))
        if with_potential and recoding.potential_signs != {0: 1, 1: -1, 2: -1, 3: -1}:
            raise CheckFailure("Potential recoding is not g0 A g0", str(recoding))

    control = component_system(euclidean_context(), DiracForm.EUCLIDEAN, basis)
    plain = component_system(mink_ctx, DiracForm.MINKOWSKI, basis)
    if find_recoding(plain, control) is not None:
        raise CheckFailure("Plain euclidean Dirac system admits a recoding")

    rng = ctx.rng("dirac-equivalence")
    for _ in range(5):
        mass, charge = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        psi = random_field(SPACETIME, rng, coefficient=random_even)
        potential = random_field(SPACETIME, rng, coefficient=random_vector)
        if not recoding_holds(recoding, psi, potential, mass, charge):
            raise CheckFailure("Recoded residuals disagree", str(psi))
    return "minkowski and vee systems agree under g0 psi g0; euclidean control fails"


@check("vee-form-identities")
def check_vee_form_identities(ctx: CheckContext) -> str:
    """Expanded vee residual matches the table residual."""
    rng = ctx.rng("vee-form-identities")
    vee_ctx = vee_context()
    for _ in range(20):
        couplings = vee_ctx.with_couplings(rng.randint(-3, 3), rng.randint(-3, 3))
        psi = random_field(EUCLIDEAN, rng, coefficient=random_even)
        potential = random_field(EUCLIDEAN, rng, coefficient=random_vector)
        expanded = dh_residual(couplings, psi, DiracForm.VEE, potential)
        direct = table_residual(couplings, psi, potential)
        if expanded != direct:
            raise CheckFailure("Expanded vee residual differs", str(psi))

    table = vee_ctx.table
    e = [Multivector.blade(EUCLIDEAN, 1 << mu) for mu in range(4)]
    if vee_chain(table, e[:3]) != Multivector.blade(EUCLIDEAN, 0b0111):
        raise CheckFailure("e0 v e1 v e2 is not e012")
    if vee_chain(table, e) != Multivector.blade(EUCLIDEAN, 0b1111):
        raise CheckFailure("e0 v e1 v e2 v e3 is not e0123")
    return "derivative, mass and interaction terms match on 20 random even fields"


@check("hodge")
def check_hodge(ctx: CheckContext) -> str:
    """Star and codifferential identities in Minkowski spacetime."""
    base = base_table(SPACETIME)
    hodge_ctx, mink_ctx = hodge_vee_context(), minkowski_context()
    vee = hodge_ctx.table

    for mask in range(SPACETIME.size):
        phi = Multivector.blade(SPACETIME, mask)
        euclid_star = hodge_star(vee, phi)
        if euclid_star != -parity(hodge_star(base, phi)):
            raise CheckFailure("Euclidean star is not -P(star)", blade_label(mask))
        if euclid_star != hodge_star_via_parity(phi):
            raise CheckFailure("Star differs from g5 g0 conj g0", blade_label(mask))

    g5 = Multivector.blade(SPACETIME, SPACETIME.volume)
    one = Multivector.scalar(SPACETIME, 1)
    if table_product(vee, g5, g5) != one or g5 * g5 != -one:
        raise CheckFailure("g5 squares are not +1 under vee and -1 under the base")

    rng = ctx.rng("hodge")
    for _ in range(20):
        phi = random_field(SPACETIME, rng, n_terms=3)
        d = exterior_d(mink_ctx, phi)
        if exterior_d(hodge_ctx, phi) != d:
            raise CheckFailure("Vee exterior derivative differs from d", str(phi))
        vee_codiff = codifferential(hodge_ctx, phi)
        if vee_codiff != hodge_star(vee, exterior_d(hodge_ctx, hodge_star(vee, phi))):
            raise CheckFailure("Vee codifferential differs from star d star", str(phi))
        mink_dual = hodge_star(base, exterior_d(mink_ctx, hodge_star(base, phi)))
        if codifferential(mink_ctx, phi) != -mink_dual:
            raise CheckFailure("Codifferential differs from -star d star", str(phi))

    witness = PolyMultivectorField.monomial(
        (0, 1, 0, 0), Multivector.blade(SPACETIME, 0b0010)
    )
    if codifferential(hodge_ctx, witness) == codifferential(mink_ctx, witness):
        raise CheckFailure("Codifferentials agree on the witness", str(witness))
    return "16 blades, g5 squares, d and delta identities on 20 random fields"


@check("self-duality")
def check_self_duality(ctx: CheckContext) -> str:
    """Real self-dual 2-forms exist for the vee star only."""
    base = base_table(SPACETIME)
    hodge_ctx = hodge_vee_context()
    vee = hodge_ctx.table
    for sign in (1, -1):
        basis = selfdual_space(vee, SPACETIME, sign)
        if len(basis) != 3:
            raise CheckFailure(f"Sign {sign:+d} space has dimension {len(basis)}")
        for field_strength in basis:
            if not selfdual_check(vee, field_strength, sign):
                raise CheckFailure("Basis field is not dual", str(field_strength))
            if not selfdual_by_split(field_strength, sign):
                raise CheckFailure("Basis field has E != sign B", str(field_strength))
            constant = PolyMultivectorField.constant(field_strength)
            for residual in maxwell_residual(hodge_ctx, constant):
                _require_zero(residual, "Maxwell residual of a constant field")
        if selfdual_space(base, SPACETIME, sign):
            raise CheckFailure(f"Minkowski star has a real sign {sign:+d} fixed point")

    identity = sympy.eye(6)
    if star_matrix(vee, SPACETIME) ** 2 != identity:
        raise CheckFailure("Euclidean star does not square to +1 on 2-forms")
    if star_matrix(base, SPACETIME) ** 2 != -identity:
        raise CheckFailure("Minkowski star does not square to -1 on 2-forms")
    return "3 self-dual and 3 anti-self-dual 2-forms; Minkowski star has none"


@check("planner")
def check_planner(ctx: CheckContext) -> str:
    """Random plans reach their target tables."""
    rng = ctx.rng("planner")
    for index in range(50):
        n = (4, 5, 6)[index % 3]
        src = Signature(tuple(rng.choice((1, -1)) for _ in range(n)))
        dst = Signature(tuple(rng.choice((1, -1)) for _ in range(n)))
        plan = plan_signature_change(src, dst)
        table = apply_plan(base_table(src), plan)
        if table.squares != dst.squares:
            raise CheckFailure(f"Plan {plan} reaches {table.squares}")
        _require_same(table, base_table(dst))
    return "50 random plans at n=4,5,6 reach their targets"


@check("table-file")
def check_table_file(ctx: CheckContext) -> str:
    """A table file matches the base product of its signature."""
    if ctx.table_file is None:
        return "no table file given"
    table = load_table(ctx.table_file)
    _require_same(table, base_table(table.signature))
    return f"{ctx.table_file} matches the product of {table.signature}"


def run_check(name: str, fn: CheckFn, ctx: CheckContext) -> CheckResult:
    """Run one check, turning failures and kernel errors into results."""
    try:
        detail = fn(ctx)
        result = CheckResult(name=name, passed=True, detail=detail)
    except CheckFailure as e:
        result = CheckResult(
            name=name, passed=False, detail=e.detail, counterexample=e.counterexample
        )
    except CliffordError as e:
        result = CheckResult(name=name, passed=False, detail=str(e))
    logger.info(f"{name}: {'pass' if result.passed else 'FAIL'} - {result.detail}")
    return result


def run_checks(
    cfg: SessionConfig,
    table_file: Path | None = None,
    only: list[str] | None = None,
) -> VerifyReport:
    """Run the suite (or the named subset) and collect a report."""
    ctx = CheckContext(cfg, table_file)
    results = [
        run_check(name, fn, ctx) for name, fn in CHECKS if only is None or name in only
    ]
    return VerifyReport(
        signature=str(cfg.signature),
        preserve=cfg.preserve,
        seed=cfg.seed,
        passed=all(r.passed for r in results),
        checks=results,
    )


def check_names() -> list[str]:
    """Registered check names in run order."""
    return [name for name, _ in CHECKS]

