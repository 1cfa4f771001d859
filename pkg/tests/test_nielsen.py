import random
from fractions import Fraction

import pytest

from nvtorus.affine import AffineRealization, construct_realization
from nvtorus.constructions import rotation_morphism
from nvtorus.errors import ComponentNotAffine, DegenerateLefschetz
from nvtorus.lattices import INFINITE, mat_det, mat_identity, mat_sub, ratmat
from nvtorus.morphisms import TorusMorphism, decompose
from nvtorus.nielsen import count_fixed_points, nielsen_affine, nielsen_of_morphism
from nvtorus.sampling import random_realization, random_reducible_affine
from nvtorus.wreath import Permutation, WreathElement

def positive_realization():
    image1 = WreathElement(2, 2, ((1, 0), (0, 0)), Permutation((2, 1)))
    psi = TorusMorphism(2, 2, (image1, WreathElement.identity(2, 2)))
    return construct_realization(psi), psi


def test_nielsen_identity_matrix():
    report = nielsen_affine([mat_identity(2)])
    assert report.nielsen == 0
    assert report.reidemeister == INFINITE
    assert report.factor_dets == (Fraction(0),)


def test_nielsen_doubling_matrix():
    report = nielsen_affine([ratmat([[2, 0], [0, 2]])])
    assert report.nielsen == 1
    assert report.reidemeister == 1


def test_nielsen_positive_case():
    realization, _ = positive_realization()
    report = nielsen_affine([realization.matrix] * 2)
    assert report.factor_dets == (Fraction(1, 2), Fraction(1, 2))
    assert report.nielsen == 1
    assert report.reidemeister == 1
    assert report.nielsen_integral


def test_nielsen_of_morphism_singletons():
    a = [[2, 0], [0, 2]]  # det(I - A) = 1
    b = [[0, 1], [1, 0]]  # det(I - A) = 0
    psi = TorusMorphism(2, 2, tuple(
        WreathElement(
            2,
            2,
            (
                tuple(row[j] for row in a),
                tuple(row[j] for row in b),
            ),
            Permutation.identity(2),
        )
        for j in range(2)
    ))
    report = nielsen_of_morphism(psi)
    assert report.factor_dets == (Fraction(1), Fraction(0))
    assert report.nielsen == 1
    assert report.reidemeister == INFINITE
    assert len(report.components) == 2


def test_nielsen_of_morphism_rejects_non_affine_component():
    with pytest.raises(ComponentNotAffine) as info:
        nielsen_of_morphism(rotation_morphism(3, 2))
    assert info.value.component_index == 0
    assert info.value.witness is not None


def test_nielsen_additivity_direct_sum():
    # positive affine swap component plus a constant single-valued component
    image1 = WreathElement(2, 3, ((1, 0), (0, 0), (0, 0)), Permutation((2, 1, 3)))
    psi = TorusMorphism(2, 3, (image1, WreathElement.identity(2, 3)))
    report = nielsen_of_morphism(psi)
    assert report.nielsen == 2  # 1 from the pair, 1 from the constant map
    parts = decompose(psi)
    assert sum(nielsen_of_morphism(c).nielsen for c, _ in parts) == report.nielsen


def test_count_constant_map():
    realization = AffineRealization(2, 1, [[0, 0], [0, 0]], [(0, 0)])
    assert count_fixed_points(realization) == 1


def test_count_positive_case():
    realization, _ = positive_realization()
    assert count_fixed_points(realization) == 1


def test_count_doubling():
    realization = AffineRealization(2, 1, [[2, 0], [0, 2]], [(0, 0)])
    assert count_fixed_points(realization) == 1


def test_count_degenerate_raises():
    realization = AffineRealization(2, 1, [[1, 0], [0, 2]], [(0, 0)])
    with pytest.raises(DegenerateLefschetz):
        count_fixed_points(realization)


def test_count_matches_formula_single_valued():
    rng = random.Random(11)
    done = 0
    while done < 40:
        k = rng.randint(1, 3)
        matrix = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        lefschetz = mat_sub(mat_identity(k), ratmat(matrix))
        det = mat_det(lefschetz)
        if det == 0:
            continue
        point = tuple(
            Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(k)
        )
        realization = AffineRealization(k, 1, matrix, [point])
        assert count_fixed_points(realization) == abs(det)
        assert nielsen_affine([ratmat(matrix)]).nielsen == abs(det)
        done += 1


def test_count_matches_formula_multi_valued():
    rng = random.Random(23)
    done = 0
    while done < 12:
        n = rng.choice([2, 3])
        realization, _, _ = random_realization(rng, 2, n, nonzero_lefschetz=True)
        report = nielsen_affine([realization.matrix] * n)
        assert count_fixed_points(realization) == report.nielsen
        done += 1


def test_additivity_random_reducible():
    rng = random.Random(5)
    for _ in range(10):
        sizes = rng.choice([[1, 2], [2, 2], [1, 3], [1, 1, 2]])
        psi = random_reducible_affine(rng, 2, sizes)
        report = nielsen_of_morphism(psi)
        total = sum(
            (nielsen_of_morphism(c).nielsen for c, _ in decompose(psi)), Fraction(0)
        )
        assert report.nielsen == total
        if report.reidemeister != INFINITE:
            assert report.reidemeister == report.nielsen
