"""Certify the small-scale limit structure numerically.

Each driver rescales a sampled neighbourhood, tracks residuals along a
dyadic grid, fits the convergence order, and checks the limit object's
own laws (distance axioms, homogeneity, translation isometries).
"""

import numpy as np

from ngd import (
    BoundedSampler,
    check_A3,
    check_A3mod_A4,
    check_A4weak,
    check_translation_groupoid,
    cone_check,
    euclidean_model,
    fiber_dilatation_structure,
    gh_estimate,
    heisenberg_model,
)


def main():
    for model in (euclidean_model(2), heisenberg_model()):
        sampler = BoundedSampler(model, n=250, seed=9)
        print(f"==== {model.name} ====")
        for rep in (
            check_A3(model, sampler),
            check_A4weak(model, sampler),
            check_A3mod_A4(model, sampler),
            cone_check(model, sampler),
        ):
            print(rep.summary())

        est = gh_estimate(model, sampler)
        order = "at noise floor" if est.order is None else f"~ {est.order:.2f}"
        print(f"ball distortion: order {order}, "
              f"last residual {est.residuals[-1]:.2e}")

        fiber, rep = fiber_dilatation_structure(
            model, x=np.zeros(model.dim))
        print(rep.summary())

        print(check_translation_groupoid(model, n=400).summary())
        print()


if __name__ == "__main__":
    main()
