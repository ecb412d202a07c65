"""The two analytic models side by side.

Runs the dilation axioms on the Euclidean plane and the Heisenberg
group, and prints the gauge homogeneity that makes both work: the
Heisenberg dilation scales the vertical coordinate quadratically, and
the Cygan-style gauge is built to absorb exactly that.
"""

from fractions import Fraction

import numpy as np

from ngd import (
    Scale,
    check_A0,
    check_A1,
    check_A2,
    check_dilation_morphism,
    euclidean_model,
    heisenberg_model,
    restricted_euclidean_model,
)


def main():
    rng = np.random.default_rng(0)
    for model in (euclidean_model(2), heisenberg_model()):
        print(f"== {model.name} ==")
        arrows = model.sample_fiber_arrows(rng, 400)
        for rep in (
            check_A1(model, arrows),
            check_A2(model, arrows),
            check_dilation_morphism(model),
        ):
            print(rep.summary())

        a = model.group.sample(rng, 3, radius=2.0)
        for lam in (0.5, 2.0):
            lhs = model.group.gauge(model.group.dil(lam, a))
            rhs = lam * model.group.gauge(a)
            print(f"  gauge(dil_{lam} a) - {lam} gauge(a): "
                  f"{np.max(np.abs(lhs - rhs)):.2e}")
        print()

    print("== domain bookkeeping ==")
    print(check_A0(euclidean_model(2)).summary())   # global: trivial chain
    print(check_A0(restricted_euclidean_model(2)).summary())

    s = Scale(Fraction(1, 2))
    print("\na Scale knows its modulus and inverse:",
          s, s.modulus, s.inv().modulus)


if __name__ == "__main__":
    main()
