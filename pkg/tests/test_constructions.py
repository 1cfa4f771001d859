import io
import random
from fractions import Fraction

import numpy as np
import pytest

from nvtorus.constructions import (
    SampledMultiMap,
    epsilon_perturbation,
    example_cyclic_four,
    example_klein_four,
    example_rotation,
    example_translated,
    dump_samples_csv,
    rotation_morphism,
    translated_morphism,
    torus_sup_distance,
    verify,
    wrap_realization,
)
from nvtorus.errors import BadParameters, BaseMismatch
from nvtorus.morphisms import basis_orders, evaluate
from nvtorus.sampling import random_realization
from nvtorus.wreath import Permutation


def test_rotation_values_at_origin():
    sampled = example_rotation(2, 2)
    assert np.allclose(sampled.factor(1, (0, 0)), [0.25, 0.0])
    assert np.allclose(sampled.factor(2, (0, 0)), [-0.25, 0.0], atol=1e-12)
    sep = torus_sup_distance(sampled.factor(1, (0, 0)), sampled.factor(2, (0, 0)))
    assert abs(sep - 0.5) < 1e-12


def test_rotation_equivariance_is_exact():
    sampled = example_rotation(4, 2)
    rng = random.Random(3)
    for _ in range(20):
        t = np.array([rng.uniform(-2, 2), rng.uniform(-2, 2)])
        for i in range(1, 5):
            successor = i % 4 + 1
            assert np.allclose(
                sampled.factor(i, t + np.array([1.0, 0.0])),
                sampled.factor(successor, t),
                atol=1e-12,
            )
            assert np.allclose(
                sampled.factor(i, t + np.array([0.0, 1.0])),
                sampled.factor(i, t),
                atol=1e-12,
            )


def test_rotation_zero_padding_for_higher_k():
    sampled = example_rotation(3, 4)
    value = sampled.factor(2, (0.3, 0.7, 0.1, 0.9))
    assert value.shape == (4,)
    assert value[2] == 0.0 and value[3] == 0.0


def test_rotation_rejects_bad_parameters():
    with pytest.raises(BadParameters):
        example_rotation(1, 2)
    with pytest.raises(BadParameters):
        example_rotation(3, 1)


def test_translated_equivariance():
    sampled = example_translated(3)
    rng = random.Random(4)
    for _ in range(10):
        t = np.array([rng.uniform(0, 1), rng.uniform(0, 1)])
        for i in range(1, 4):
            successor = i % 3 + 1
            assert np.allclose(
                sampled.factor(i, t + np.array([1.0, 0.0])),
                sampled.factor(successor, t) + np.array([1.0, 0.0]),
                atol=1e-12,
            )


def test_translated_n_valued_on_dense_grid():
    report = verify(example_translated(2), grid=100, tol_eq=1e-9, sep_min=0.05)
    assert report.passed
    assert report.samples_checked == 10_000
    assert report.min_pairwise_separation > 0


def test_translated_declared_morphism_matches():
    sampled = example_translated(3)
    value = evaluate(sampled.declared, (1, 0))
    assert value.trans == ((1, 0), (1, 0), (1, 0))
    assert value.perm == Permutation((3, 1, 2))


def test_klein_values_at_origin():
    sampled = example_klein_four()
    values = [tuple(sampled.factor(i, (0, 0))) for i in range(1, 5)]
    expected = [(0.375, 0.0), (-0.125, 0.0), (0.125, 0.0), (-0.375, 0.0)]
    for got, want in zip(values, expected):
        assert np.allclose(got, want, atol=1e-12)
    assert len({tuple(np.round(v, 9)) for v in values}) == 4


def test_klein_equivariance_realizes_declared_perms():
    report = verify(example_klein_four(), grid=20, tol_eq=1e-9, sep_min=0.05)
    assert report.passed
    # second basis direction acts by (1 3)(2 4)
    sampled = example_klein_four()
    t = np.array([0.21, 0.57])
    assert np.allclose(
        sampled.factor(1, t + np.array([0.0, 1.0])), sampled.factor(3, t), atol=1e-12
    )
    assert np.allclose(
        sampled.factor(2, t + np.array([0.0, 1.0])), sampled.factor(4, t), atol=1e-12
    )


def test_cyclic_four_realizes_the_four_cycle():
    sampled = example_cyclic_four()
    assert sampled.declared.perms[0] == Permutation.parse("(1 2 3 4)", 4)
    report = verify(sampled, grid=20, tol_eq=1e-9, sep_min=0.05)
    assert report.passed


def test_verify_rotation_thresholds():
    report = verify(example_rotation(3, 2), grid=50, tol_eq=1e-9, sep_min=0.05)
    assert report.passed
    assert report.max_equivariance_residual < 1e-12
    # continuum minimum of the sup-norm separation is
    # 2 * (1/4) * sin(pi/3) * cos(pi/4) = 0.3061...; 0.2 is a safe floor
    assert report.min_pairwise_separation >= 0.2
    assert report.samples_checked == 2500
    assert report.first_failure is None


def test_verify_separation_stable_under_refinement():
    coarse = verify(example_rotation(3, 2), grid=50, tol_eq=1e-9, sep_min=0.05)
    fine = verify(example_rotation(3, 2), grid=200, tol_eq=1e-9, sep_min=0.05)
    assert abs(coarse.min_pairwise_separation - fine.min_pairwise_separation) < 0.05 * (
        fine.min_pairwise_separation
    )


def test_verify_wrapped_affine_realization():
    rng = random.Random(8)
    realization, perms, _ = random_realization(rng, 2, 2)
    sampled = wrap_realization(realization, perms)
    report = verify(sampled, grid=15, tol_eq=1e-9, sep_min=1e-6)
    assert report.passed
    assert report.max_equivariance_residual < 1e-9


def test_verify_flags_corrupted_map():
    sampled = example_rotation(2, 2)
    broken_factors = (
        sampled.factors[0],
        lambda t: sampled.factors[0](t) + np.array([0.5, 0.0]),
    )
    broken = SampledMultiMap(
        k=2, n=2, factors=broken_factors, declared=sampled.declared
    )
    report = verify(broken, grid=10, tol_eq=1e-9, sep_min=0.05)
    assert not report.passed
    assert report.first_failure is not None


def test_verify_rejects_tiny_grid():
    with pytest.raises(BadParameters):
        verify(example_rotation(2, 2), grid=1)


# -- perturbation ----------------------------------------------------------------


def test_perturbation_degenerate_application():
    base = example_rotation(3, 2)
    psi = base.declared
    perturbed = epsilon_perturbation(psi, base)
    eps = perturbed.metadata["epsilon"]
    # affine data of an all-zero morphism vanishes: output is the scaled base
    t = np.array([0.3, 0.8])
    for i in range(1, 4):
        assert np.allclose(perturbed.factor(i, t), eps * base.factor(i, t))
    report = verify(perturbed, grid=25, tol_eq=1e-9, sep_min=1e-4)
    assert report.passed


def test_perturbation_realizes_translated_morphism():
    base = example_rotation(3, 2)
    psi = translated_morphism(3)
    perturbed = epsilon_perturbation(psi, base)
    assert perturbed.declared == psi
    report = verify(perturbed, grid=30, tol_eq=1e-9, sep_min=1e-4)
    assert report.passed
    # the points have coordinates in (1/n_j) Z
    orders = basis_orders(psi)
    for point in perturbed.metadata["points"]:
        for j, coordinate in enumerate(point):
            assert (Fraction(coordinate) * orders[j]).denominator == 1


def test_perturbation_box_argument():
    base = example_rotation(4, 2)
    psi = translated_morphism(4)
    perturbed = epsilon_perturbation(psi, base)
    eps = perturbed.metadata["epsilon"]
    bound = perturbed.metadata["bound"]
    orders = perturbed.metadata["orders"]
    rng = random.Random(17)
    sampled_sup = 0.0
    for _ in range(200):
        t = np.array([rng.uniform(0, orders[0]), rng.uniform(0, orders[1])])
        for i in range(1, 5):
            value = base.factor(i, t)
            sampled_sup = max(sampled_sup, float(np.max(np.abs(value))))
            for other in range(1, 5):
                diff = eps * (base.factor(other, t) - value)
                for j, order in enumerate(orders):
                    assert abs(diff[j]) < 1.0 / order
    assert sampled_sup <= bound


def test_perturbation_rejects_mismatched_base():
    base = example_rotation(3, 2)
    with pytest.raises(BaseMismatch):
        epsilon_perturbation(translated_morphism(4), base)
    with pytest.raises(BaseMismatch):
        epsilon_perturbation(rotation_morphism(4, 2), base)
    # a base with nonzero translations is rejected
    bad_base = example_translated(3)
    with pytest.raises(BaseMismatch):
        epsilon_perturbation(translated_morphism(3), bad_base)


# -- csv dump ---------------------------------------------------------------------


def test_dump_samples_csv():
    sampled = example_rotation(2, 2)
    buffer = io.StringIO()
    dump_samples_csv(sampled, 5, buffer)
    lines = buffer.getvalue().strip().splitlines()
    assert lines[0] == "t1,t2,factor,v1,v2"
    assert len(lines) == 1 + 5 * 5 * 2
