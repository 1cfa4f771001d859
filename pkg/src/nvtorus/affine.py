"""Deciding whether a morphism comes from an affine n-valued torus map.

The central test is a divisibility condition: a slot i and a vector z
outside the stabilizer of i obstruct affineness exactly when the slot-i
translation of psi(L z), with L the cycle length of z through i, is
divisible by L.  For irreducible morphisms the condition over a finite
representative set is also sufficient, and a rational realization
(one matrix, n translation points) can be constructed explicitly.

The module also detects the two coarser obstructions (equal translations
along a cycle, torsion in the image), re-bases lifts by conjugating with
deck translations, and can cross-validate the representative-set scan
against a brute-force box scan.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    BadDecomposition,
    ConditionViolated,
    DimensionMismatch,
    NonCommutingImages,
    NonIntegralTranslation,
    NotIrreducible,
)
from .lattices import (
    IntVec,
    RatMat,
    RatVec,
    basis_vec,
    integer_kernel,
    intvec,
    is_integral,
    mat_stack,
    mat_vec,
    ratmat,
    ratvec,
    to_intvec,
    vec_add,
    vec_scale,
    vec_sub,
    vec_sum,
    zero_vec,
)
from .morphisms import (
    TorusMorphism,
    basis_orders,
    evaluate,
    index_orbits,
    linear_part,
    stabilizer,
    translation_component,
    validate,
)
from .wreath import Permutation, WreathElement, compose, conjugate, cycle_of, power


@dataclass(frozen=True)
class AffineRealization:
    """A rational matrix and n rational translation points.

    The first point is normalized to zero.  A valid realization has pairwise
    distinct points modulo Z^k, and together with permutation data it
    reproduces the morphism it was built from (see `induced_morphism`).
    """

    k: int
    n: int
    matrix: RatMat
    points: tuple[RatVec, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", ratmat(self.matrix))
        object.__setattr__(self, "points", tuple(ratvec(p) for p in self.points))
        if len(self.matrix) != self.k or any(len(r) != self.k for r in self.matrix):
            raise DimensionMismatch("realization matrix must be k x k")
        if len(self.points) != self.n or any(len(p) != self.k for p in self.points):
            raise DimensionMismatch("realization needs n points of length k")


@dataclass(frozen=True)
class Witness:
    """Data certifying a failed divisibility test, machine-recheckable."""

    index: int
    z: IntVec
    cycle_length: int
    value: IntVec


class Outcome(enum.Enum):
    AFFINE = "affine"
    NOT_AFFINE = "not_affine"
    NECESSARY_FAILS = "necessary_fails"
    NECESSARY_PASSES = "necessary_passes"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Witness | None = None
    realization: AffineRealization | None = None

    @property
    def failed(self) -> bool:
        return self.outcome in (Outcome.NOT_AFFINE, Outcome.NECESSARY_FAILS)


# ---------------------------------------------------------------------------
# representative sets and the necessary condition


def representative_set(
    psi: TorusMorphism, indices: Sequence[int] | None = None
) -> list[IntVec]:
    """The finite scan set {sum m_j e_j : 0 <= m_j < n_j} minus the origin.

    n_j is the order of the j-th basis permutation, restricted to ``indices``
    when given.  The permutation part of psi(z) on those indices, and the
    divisibility test, only depend on z through this box.
    """
    orders = basis_orders(psi, indices)
    out = []
    for coeffs in itertools.product(*(range(o) for o in orders)):
        if any(coeffs):
            out.append(tuple(coeffs))
    return out


@lru_cache(maxsize=4096)
def check_necessary(psi: TorusMorphism) -> Verdict:
    """Scan for a divisibility obstruction to affineness.

    Runs orbit by orbit; within an orbit the scan is lexicographic over the
    representative vectors and then over the slots, and the first hit is
    returned as the witness.  Passing is necessary for affineness of any
    morphism and sufficient for irreducible ones.
    """
    validate(psi)
    for orbit in index_orbits(psi).orbits:
        for z in representative_set(psi, orbit):
            moved = evaluate(psi, z)
            for i in orbit:
                if moved.perm.apply(i) == i:
                    continue
                if is_integral(mat_vec(linear_part(psi, i), z)):
                    length = cycle_of(moved.perm, i)[1]
                    value = translation_component(psi, i, vec_scale(length, z))
                    if any(v % length for v in value):
                        raise AssertionError("witness failed its own recheck")
                    return Verdict(
                        Outcome.NECESSARY_FAILS,
                        witness=Witness(i, z, length, value),
                    )
    return Verdict(Outcome.NECESSARY_PASSES)


def scan_full_box(psi: TorusMorphism, multiplier: int = 2) -> Verdict:
    """Brute-force variant of `check_necessary` over the box |z_j| <= multiplier * n_j.

    Independent of the representative-set reduction and of the linear-part
    matrices: divisibility is tested directly on the translations of powers.
    Used to cross-validate the production scan.
    """
    validate(psi)
    orders = basis_orders(psi)
    tables = []
    for j, order in enumerate(orders):
        half = multiplier * order
        table = {0: WreathElement.identity(psi.k, psi.n)}
        for m in range(1, half + 1):
            table[m] = compose(table[m - 1], psi.images[j])
        inverse = power(psi.images[j], -1)
        for m in range(1, half + 1):
            table[-m] = compose(table[-(m - 1)], inverse)
        tables.append(table)
    ranges = [range(-multiplier * o, multiplier * o + 1) for o in orders]
    for z in itertools.product(*ranges):
        if not any(z):
            continue
        value = tables[0][z[0]]
        for j in range(1, psi.k):
            value = compose(value, tables[j][z[j]])
        if value.perm.is_identity:
            continue
        powers = {1: value}
        for i in range(1, psi.n + 1):
            if value.perm.apply(i) == i:
                continue
            length = cycle_of(value.perm, i)[1]
            if length not in powers:
                powers[length] = power(value, length)
            slot_value = powers[length].trans[i - 1]
            if all(v % length == 0 for v in slot_value):
                return Verdict(
                    Outcome.NECESSARY_FAILS,
                    witness=Witness(i, tuple(z), length, slot_value),
                )
    return Verdict(Outcome.NECESSARY_PASSES)


# ---------------------------------------------------------------------------
# construction and verification of realizations


def affine_data(psi: TorusMorphism) -> tuple[RatMat, tuple[RatVec, ...]]:
    """Matrix and translation points canonically attached to an irreducible morphism.

    The matrix is the linear part on the common stabilizer; the point of slot
    (sigma_z)^-1(1) is A z minus the slot-1 translation of psi(z), which is
    well defined, reaches every slot, and forces the first point to zero.
    This never needs the divisibility condition; without it the points are
    simply not pairwise distinct modulo Z^k.
    """
    validate(psi)
    report = index_orbits(psi)
    if not report.irreducible:
        raise NotIrreducible("affine data is only defined per irreducible morphism")
    common = stabilizer(psi, 1)
    for i in range(2, psi.n + 1):
        if stabilizer(psi, i) != common:
            raise AssertionError("stabilizers must coincide on a single orbit")
    matrix = linear_part(psi, 1)
    points: list[RatVec | None] = [None] * psi.n
    for z in [zero_vec(psi.k)] + representative_set(psi):
        moved = evaluate(psi, z)
        target = moved.perm.inverse().apply(1)
        candidate = tuple(
            Fraction(a) - b for a, b in zip(mat_vec(matrix, z), moved.trans[0])
        )
        if points[target - 1] is None:
            points[target - 1] = candidate
        elif points[target - 1] != candidate:
            raise AssertionError("translation points are not well defined")
    if any(p is None for p in points):
        raise AssertionError("representative sweep missed a slot")
    return matrix, tuple(points)  # type: ignore[arg-type]


def construct_realization(psi: TorusMorphism) -> AffineRealization:
    """Build the affine realization of an irreducible morphism.

    Raises ConditionViolated (with the witness) when the divisibility
    condition fails, NotIrreducible for several orbits.  The result passes
    `verify_realization`.
    """
    verdict = check_necessary_irreducible(psi)
    if verdict.failed:
        raise ConditionViolated(verdict.witness)
    matrix, points = affine_data(psi)
    realization = AffineRealization(psi.k, psi.n, matrix, points)
    reason = diagnose_realization(realization, psi)
    if reason is not None:
        raise AssertionError(f"constructed realization failed verification: {reason}")
    return realization


def check_necessary_irreducible(psi: TorusMorphism) -> Verdict:
    if not index_orbits(psi).irreducible:
        raise NotIrreducible("decision requires a single index orbit")
    return check_necessary(psi)


def decide_affine_irreducible(psi: TorusMorphism) -> Verdict:
    """Full affineness decision for an irreducible morphism."""
    verdict = check_necessary_irreducible(psi)
    if verdict.failed:
        return Verdict(Outcome.NOT_AFFINE, witness=verdict.witness)
    return Verdict(Outcome.AFFINE, realization=construct_realization(psi))


def induced_morphism(
    realization: AffineRealization, perms: Sequence[Permutation]
) -> TorusMorphism:
    """The morphism induced by a realization together with permutation data.

    The translation of basis direction j in slot i is
    ``A e_j + a_i - a_{sigma_j^-1(i)}``; raises NonIntegralTranslation when
    that is not an integer vector, i.e. the data are inconsistent.
    """
    k, n = realization.k, realization.n
    if len(perms) != k or any(p.n != n for p in perms):
        raise DimensionMismatch("need k permutations of degree n")
    for a in range(k):
        for b in range(a + 1, k):
            if perms[a] * perms[b] != perms[b] * perms[a]:
                raise NonCommutingImages(a + 1, b + 1)
    images = []
    for j, perm in enumerate(perms):
        inv = perm.inverse()
        column = mat_vec(realization.matrix, basis_vec(k, j))
        trans = []
        for i in range(1, n + 1):
            value = vec_sub(
                vec_sum([column, realization.points[i - 1]], k),
                realization.points[inv.apply(i) - 1],
            )
            if not is_integral(value):
                raise NonIntegralTranslation(
                    f"slot {i}, basis direction {j + 1}: translation {value} "
                    "is not integral"
                )
            trans.append(to_intvec(value))
        images.append(WreathElement(k, n, tuple(trans), perm))
    psi = TorusMorphism(k, n, tuple(images))
    validate(psi)
    return psi


def diagnose_realization(
    realization: AffineRealization, psi: TorusMorphism
) -> str | None:
    """None when the realization induces psi and is genuinely n-valued,
    otherwise a short reason string."""
    if realization.k != psi.k or realization.n != psi.n:
        return "dimension mismatch"
    if any(realization.points[0]):
        return "first translation point is not zero"
    for i in range(psi.n):
        for j in range(i + 1, psi.n):
            if is_integral(vec_sub(realization.points[i], realization.points[j])):
                return f"points {i + 1} and {j + 1} coincide modulo Z^k"
    try:
        induced = induced_morphism(realization, psi.perms)
    except NonIntegralTranslation as exc:
        return f"inconsistent with permutation data: {exc}"
    if induced != psi:
        for j in range(psi.k):
            if induced.images[j] != psi.images[j]:
                return f"induced morphism differs at basis direction {j + 1}"
        return "induced morphism differs"
    return None


def verify_realization(realization: AffineRealization, psi: TorusMorphism) -> bool:
    return diagnose_realization(realization, psi) is None


# ---------------------------------------------------------------------------
# coarser obstructions


def cycle_condition_violations(
    psi: TorusMorphism,
) -> list[tuple[IntVec, tuple[int, ...]]]:
    """Nontrivial cycles on which all translation components of psi(z) agree.

    Scans the per-orbit representative vectors.  Any hit implies the
    necessary condition fails, which is asserted before returning.
    """
    validate(psi)
    out = []
    for orbit in index_orbits(psi).orbits:
        members = set(orbit)
        for z in representative_set(psi, orbit):
            moved = evaluate(psi, z)
            for cycle in moved.perm.cycles():
                if not set(cycle) <= members:
                    continue
                values = {moved.trans[i - 1] for i in cycle}
                if len(values) == 1:
                    out.append((z, cycle))
    if out and not check_necessary(psi).failed:
        raise AssertionError("equal-cycle obstruction without a divisibility witness")
    return out


def torsion_witness(psi: TorusMorphism) -> IntVec | None:
    """Generator of a finite-order nontrivial image element, or None.

    psi(z) has finite order exactly when every slot's linear part kills z;
    on that kernel lattice, psi(z) is nontrivial iff its permutation part
    is.  So it suffices to inspect the permutation parts of the kernel
    generators.
    """
    validate(psi)
    stacked = mat_stack(linear_part(psi, i) for i in range(1, psi.n + 1))
    kernel = integer_kernel(stacked)
    for generator in kernel.rows:
        if not evaluate(psi, generator).perm.is_identity:
            return generator
    return None


def has_torsion_image(psi: TorusMorphism) -> bool:
    return torsion_witness(psi) is not None


# ---------------------------------------------------------------------------
# changing the reference lift


def conjugate_morphism(psi: TorusMorphism, deck: WreathElement) -> TorusMorphism:
    """Conjugate every basis image by a deck element; models changing the lift."""
    validate(psi)
    if deck.k != psi.k or deck.n != psi.n:
        raise DimensionMismatch("deck element has wrong dimensions")
    images = tuple(conjugate(deck, im) for im in psi.images)
    result = TorusMorphism(psi.k, psi.n, images)
    validate(result)
    return result


def rebase_lift(
    psi: TorusMorphism,
    i: int,
    z: Sequence[int],
    decomposition: Sequence[Sequence[int]],
) -> TorusMorphism:
    """Redistribute the translations of psi(z) along the cycle through i.

    ``decomposition`` prescribes the new translation values along the cycle
    i, sigma_z^-1(i), sigma_z^-2(i), ...; it must have one entry per cycle
    element and sum to the slot-i translation of psi(length * z).  The result
    is psi conjugated by a pure-translation deck element, so permutation
    data, stabilizers and translations on stabilizers are unchanged.
    """
    validate(psi)
    z = intvec(z)
    parts = [intvec(p) for p in decomposition]
    moved = evaluate(psi, z)
    cycle, length = cycle_of(moved.perm, i)
    if len(parts) != length:
        raise BadDecomposition(
            f"expected {length} vectors along the cycle, got {len(parts)}"
        )
    total = translation_component(psi, i, vec_scale(length, z))
    if vec_sum(parts, psi.k) != total:
        raise BadDecomposition(
            f"decomposition sums to {vec_sum(parts, psi.k)}, expected {total}"
        )
    shifts = [zero_vec(psi.k)] * psi.n
    running = zero_vec(psi.k)
    for m in range(1, length):
        running = vec_add(
            running, vec_sub(moved.trans[cycle[m - 1] - 1], parts[m - 1])
        )
        shifts[cycle[m] - 1] = running
    deck = WreathElement(
        psi.k, psi.n, tuple(shifts), Permutation.identity(psi.n)
    )
    return conjugate_morphism(psi, deck)
