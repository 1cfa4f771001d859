#!/usr/bin/env python3
"""Run the whole pipeline on the built-in example morphisms.

For each example this decides affineness (with witness or realization),
reports torsion, and numerically verifies the matching trigonometric
construction.  A perturbed construction realizing the translated morphism
and a Nielsen computation on an affine positive case round out the tour.

Usage:
    python scripts/run_examples.py [--grid N] [--dump-specs DIR]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from nvtorus.affine import Outcome, decide_affine_irreducible, torsion_witness
from nvtorus.constructions import (
    epsilon_perturbation,
    example_cyclic_four,
    example_klein_four,
    example_rotation,
    example_translated,
    translated_morphism,
    verify,
)
from nvtorus.lattices import lattice_index
from nvtorus.morphisms import TorusMorphism, stabilizer
from nvtorus.nielsen import count_fixed_points, nielsen_of_morphism
from nvtorus.specio import fraction_to_str, save_morphism
from nvtorus.wreath import Permutation, WreathElement


def positive_affine_morphism() -> TorusMorphism:
    image1 = WreathElement(2, 2, ((1, 0), (0, 0)), Permutation((2, 1)))
    return TorusMorphism(2, 2, (image1, WreathElement.identity(2, 2)))


def describe(name: str, psi: TorusMorphism) -> None:
    verdict = decide_affine_irreducible(psi)
    witness = torsion_witness(psi)
    stab = stabilizer(psi, 1)
    line = f"{name:24s} n={psi.n} k={psi.k}  stab index {lattice_index(stab)}"
    if verdict.outcome is Outcome.AFFINE:
        matrix = verdict.realization.matrix
        pretty = [[fraction_to_str(a) for a in row] for row in matrix]
        line += f"  AFFINE  A={pretty}"
    else:
        w = verdict.witness
        line += (
            f"  NOT AFFINE  witness i={w.index} z={w.z} "
            f"phi({w.cycle_length}z)={w.value}"
        )
    line += f"  torsion={'z=' + str(witness) if witness else 'none'}"
    print(line)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=50)
    parser.add_argument("--dump-specs", metavar="DIR", help="write spec JSON files")
    args = parser.parse_args()

    constructions = []
    for n in (2, 3, 4, 5):
        constructions.append(example_rotation(n, 2))
    for n in (2, 3, 4):
        constructions.append(example_translated(n))
    constructions.append(example_klein_four())
    constructions.append(example_cyclic_four())

    print("== morphism decisions ==")
    for sampled in constructions:
        label = f"{sampled.metadata['name']}(n={sampled.n})"
        describe(label, sampled.declared)
    describe("positive-affine", positive_affine_morphism())

    print("\n== numeric verification ==")
    for sampled in constructions:
        report = verify(sampled, grid=args.grid, tol_eq=1e-9, sep_min=0.05)
        print(
            f"{sampled.metadata['name']:12s} n={sampled.n}  "
            f"residual={report.max_equivariance_residual:.2e}  "
            f"separation={report.min_pairwise_separation:.4f}  "
            f"{'PASS' if report.passed else 'FAIL'}"
        )

    print("\n== perturbation: realizing the translated morphism ==")
    base = example_rotation(3, 2)
    perturbed = epsilon_perturbation(translated_morphism(3), base)
    report = verify(perturbed, grid=args.grid, tol_eq=1e-9, sep_min=1e-4)
    print(
        f"perturbed-rotation n=3  eps={perturbed.metadata['epsilon']:.4f}  "
        f"residual={report.max_equivariance_residual:.2e}  "
        f"separation={report.min_pairwise_separation:.4f}  "
        f"{'PASS' if report.passed else 'FAIL'}"
    )

    print("\n== Nielsen data of the positive affine case ==")
    psi = positive_affine_morphism()
    nielsen_report = nielsen_of_morphism(psi)
    realization = decide_affine_irreducible(psi).realization
    print(
        f"N = {fraction_to_str(nielsen_report.nielsen)}, "
        f"R = {fraction_to_str(nielsen_report.reidemeister)}, "
        f"geometric count = {count_fixed_points(realization)}"
    )

    if args.dump_specs:
        directory = Path(args.dump_specs)
        directory.mkdir(parents=True, exist_ok=True)
        for sampled in constructions:
            name = f"{sampled.metadata['name']}-n{sampled.n}.json"
            save_morphism(sampled.declared, directory / name)
        save_morphism(psi, directory / "positive-affine.json")
        print(f"\nwrote spec files to {directory}")
        print("try: nvtorus decide", directory / "rotation-n3.json")

    return 0


if __name__ == "__main__":
    raise SystemExit(main())
