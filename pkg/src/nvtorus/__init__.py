"""Affineness decisions, Nielsen numbers and numeric constructions for
n-valued self-maps of the k-torus."""

from .affine import (
    AffineRealization,
    Outcome,
    Verdict,
    Witness,
    affine_data,
    check_necessary,
    conjugate_morphism,
    construct_realization,
    cycle_condition_violations,
    decide_affine_irreducible,
    diagnose_realization,
    has_torsion_image,
    induced_morphism,
    rebase_lift,
    representative_set,
    scan_full_box,
    torsion_witness,
    verify_realization,
)
from .constructions import (
    SampledMultiMap,
    VerificationReport,
    cyclic_four_morphism,
    epsilon_perturbation,
    example_cyclic_four,
    example_klein_four,
    example_rotation,
    example_translated,
    klein_four_morphism,
    rotation_morphism,
    translated_morphism,
    verify,
    wrap_realization,
)
from .lattices import (
    INFINITE,
    LatticeBasis,
    hnf,
    integer_kernel,
    lattice_contains,
    lattice_index,
    solve_exact,
)
from .morphisms import (
    OrbitReport,
    TorusMorphism,
    basis_orders,
    cycle_length,
    decompose,
    evaluate,
    index_orbits,
    linear_part,
    pure_permutation_morphism,
    recompose,
    stabilizer,
    translation_component,
    validate,
)
from .nielsen import (
    NielsenReport,
    count_fixed_points,
    nielsen_affine,
    nielsen_of_morphism,
)
from .specio import dumps_morphism, load_morphism, loads_morphism, save_morphism
from .wreath import Permutation, WreathElement, compose, conjugate, cycle_of, invert, power

__version__ = "0.1.0"
