"""Morphisms Z^k -> (Z^k)^n x S_n and their structural analysis.

A morphism is stored by its values on the standard basis of Z^k.  The basis
images must pairwise commute; that is exactly the condition for the data to
extend to a homomorphism from the free abelian group.  On top of evaluation
this module computes the orbit partition of the n slots under the generated
permutation group, slot stabilizers (finite-index sublattices of Z^k), cycle
lengths, translation components and the rational matrix giving the linear
behaviour of a translation component on its stabilizer, plus the splitting
of a morphism into irreducible pieces, one per orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from collections import deque
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NonCommutingImages,
)
from .lattices import (
    IntVec,
    LatticeBasis,
    RatMat,
    basis_vec,
    hnf,
    intvec,
    mat_transpose,
    mat_vec,
    ratmat,
    solve_exact,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)
from .wreath import Permutation, WreathElement, compose, cycle_of, power


@dataclass(frozen=True)
class TorusMorphism:
    """A morphism given by the images of the k standard basis vectors."""

    k: int
    n: int
    images: tuple[WreathElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.k:
            raise DimensionMismatch(f"expected {self.k} basis images")
        for im in self.images:
            if im.k != self.k or im.n != self.n:
                raise DimensionMismatch("basis image has wrong dimensions")

    @property
    def perms(self) -> tuple[Permutation, ...]:
        """Permutation parts of the basis images."""
        return tuple(im.perm for im in self.images)


def pure_permutation_morphism(k: int, perms: Sequence[Permutation]) -> TorusMorphism:
    """The morphism with the given permutation data and all translations zero."""
    n = perms[0].n
    images = tuple(
        WreathElement(k, n, tuple(zero_vec(k) for _ in range(n)), p) for p in perms
    )
    psi = TorusMorphism(k, n, images)
    validate(psi)
    return psi


@lru_cache(maxsize=65536)
def validate(psi: TorusMorphism) -> None:
    """Check that all basis images commute; raises NonCommutingImages if not."""
    for a in range(psi.k):
        for b in range(a + 1, psi.k):
            ab = compose(psi.images[a], psi.images[b])
            ba = compose(psi.images[b], psi.images[a])
            if ab != ba:
                raise NonCommutingImages(a + 1, b + 1)


def evaluate(psi: TorusMorphism, z: Sequence[int]) -> WreathElement:
    """Value of the morphism at z, the product of basis image powers."""
    return _evaluate(psi, intvec(z))


@lru_cache(maxsize=65536)
def _evaluate(psi: TorusMorphism, z: IntVec) -> WreathElement:
    validate(psi)
    if len(z) != psi.k:
        raise DimensionMismatch(f"argument {z} does not have length {psi.k}")
    result = WreathElement.identity(psi.k, psi.n)
    for j, exponent in enumerate(z):
        if exponent:
            result = compose(result, power(psi.images[j], exponent))
    return result


@dataclass(frozen=True)
class OrbitReport:
    """Partition of the slots 1..n into orbits of the basis permutations."""

    orbits: tuple[tuple[int, ...], ...]
    stabilizers: tuple[LatticeBasis, ...]
    irreducible: bool


@lru_cache(maxsize=4096)
def index_orbits(psi: TorusMorphism) -> OrbitReport:
    """Orbits of 1..n under the group generated by the basis permutations."""
    validate(psi)
    seen: set[int] = set()
    orbits = []
    for start in range(1, psi.n + 1):
        if start in seen:
            continue
        orbit = _orbit_of(psi, start)
        seen.update(orbit)
        orbits.append(orbit)
    stabs = tuple(stabilizer(psi, orbit[0]) for orbit in orbits)
    return OrbitReport(tuple(orbits), stabs, irreducible=len(orbits) == 1)


def _orbit_of(psi: TorusMorphism, i: int) -> tuple[int, ...]:
    frontier = deque([i])
    seen = {i}
    while frontier:
        x = frontier.popleft()
        for p in psi.perms:
            for y in (p.apply(x), p.inverse().apply(x)):
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return tuple(sorted(seen))


@lru_cache(maxsize=4096)
def stabilizer(psi: TorusMorphism, i: int) -> LatticeBasis:
    """HNF basis of the sublattice of z with the permutation part of psi(z) fixing i.

    Computed by a breadth-first walk over the orbit of i: each orbit point
    gets a representative vector mapping i there, and every edge of the walk
    contributes a Schreier-style relation to the stabilizer lattice.
    """
    validate(psi)
    if not 1 <= i <= psi.n:
        raise IndexOutOfRange(f"slot {i} outside 1..{psi.n}")
    reps: dict[int, IntVec] = {i: zero_vec(psi.k)}
    frontier = deque([i])
    relations: list[IntVec] = []
    while frontier:
        x = frontier.popleft()
        for j, p in enumerate(psi.perms):
            for step, image in ((1, p.apply(x)), (-1, p.inverse().apply(x))):
                vec = vec_add(reps[x], vec_scale(step, basis_vec(psi.k, j)))
                if image not in reps:
                    reps[image] = vec
                    frontier.append(image)
                else:
                    relations.append(vec_sub(vec, reps[image]))
    lattice = hnf(relations, psi.k)
    if not lattice.is_full_rank:
        raise AssertionError("stabilizer of a finite orbit must have finite index")
    return lattice


def cycle_length(psi: TorusMorphism, i: int, z: Sequence[int]) -> int:
    """Length of the cycle through i of the permutation part of psi(z)."""
    return cycle_of(evaluate(psi, z).perm, i)[1]


def translation_component(psi: TorusMorphism, i: int, z: Sequence[int]) -> IntVec:
    """Translation vector of psi(z) in slot i."""
    if not 1 <= i <= psi.n:
        raise IndexOutOfRange(f"slot {i} outside 1..{psi.n}")
    return evaluate(psi, z).trans[i - 1]


@lru_cache(maxsize=4096)
def linear_part(psi: TorusMorphism, i: int) -> RatMat:
    """The rational matrix A with A z equal to the slot-i translation of psi(z)
    for every z in the stabilizer of i.

    The translation component restricted to the stabilizer is additive, so A
    exists; it is solved from the stabilizer basis and verified on it.
    """
    validate(psi)
    lattice = stabilizer(psi, i)
    values = tuple(translation_component(psi, i, row) for row in lattice.rows)
    solution = solve_exact(ratmat(lattice.rows), ratmat(values))
    matrix = mat_transpose(solution)
    for row, value in zip(lattice.rows, values):
        if mat_vec(matrix, row) != tuple(value):
            raise AssertionError("linear part fails on a stabilizer basis vector")
    return matrix


def basis_orders(psi: TorusMorphism, indices: Iterable[int] | None = None) -> tuple[int, ...]:
    """Order of each basis permutation, restricted to ``indices`` when given."""
    validate(psi)
    if indices is None:
        return tuple(p.order() for p in psi.perms)
    wanted = tuple(indices)
    return tuple(p.order_on(wanted) for p in psi.perms)


def decompose(psi: TorusMorphism) -> tuple[tuple[TorusMorphism, tuple[int, ...]], ...]:
    """Split into one irreducible morphism per orbit.

    Each entry is ``(component, index_map)`` where ``index_map[local - 1]``
    is the original slot of local slot ``local``; locals are assigned in
    ascending order of the original indices.
    """
    validate(psi)
    report = index_orbits(psi)
    out = []
    for orbit in report.orbits:
        index_map = orbit
        position = {orig: local for local, orig in enumerate(index_map, start=1)}
        images = []
        for im in psi.images:
            trans = tuple(im.trans[orig - 1] for orig in index_map)
            image = tuple(position[im.perm.apply(orig)] for orig in index_map)
            images.append(
                WreathElement(psi.k, len(orbit), trans, Permutation(image))
            )
        component = TorusMorphism(psi.k, len(orbit), tuple(images))
        validate(component)
        out.append((component, index_map))
    return tuple(out)


def recompose(
    parts: Sequence[tuple[TorusMorphism, Sequence[int]]], k: int, n: int
) -> TorusMorphism:
    """Inverse of `decompose`: push components back through their index maps."""
    trans = [[zero_vec(k)] * n for _ in range(k)]
    image = [list(range(1, n + 1)) for _ in range(k)]
    for component, index_map in parts:
        for j in range(k):
            im = component.images[j]
            for local, orig in enumerate(index_map, start=1):
                trans[j][orig - 1] = im.trans[local - 1]
                image[j][orig - 1] = index_map[im.perm.apply(local) - 1]
    images = tuple(
        WreathElement(k, n, tuple(trans[j]), Permutation(tuple(image[j])))
        for j in range(k)
    )
    psi = TorusMorphism(k, n, images)
    validate(psi)
    return psi
