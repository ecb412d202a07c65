"""Walk a small finite metric space through the groupoid pipeline.

Builds the pair groupoid of a 4-point space, checks the norm axioms,
then shows the two reconstructions: the double groupoid of difference
arrows and the per-fiber distance tables that give the norm back.
"""

from fractions import Fraction

from ngd import (
    FiniteMetricSpace,
    check_double_norm,
    check_fiber_distances,
    check_norm,
    check_separability,
    double_groupoid,
    fiber_distances,
    norm_from_fiber_distances,
    pair_groupoid,
    validate_groupoid,
)


def main():
    F = Fraction
    X = FiniteMetricSpace(
        points=["a", "b", "c", "d"],
        dist=[
            [F(0), F(1), F(2), F(5, 2)],
            [F(1), F(0), F(3, 2), F(2)],
            [F(2), F(3, 2), F(0), F(1)],
            [F(5, 2), F(2), F(1), F(0)],
        ],
    )
    G = pair_groupoid(X)
    print(f"pair groupoid of a 4-point space: {len(G.arrows)} arrows")
    print("a few labels:", G.arrows[:5])

    rep = validate_groupoid(G)
    rep.merge(check_norm(G)).merge(check_separability(G))
    print(rep.summary())

    D = double_groupoid(G)
    print(f"\ndouble groupoid: {len(D.arrows)} difference arrows")
    print(check_double_norm(G, D).summary())

    fib = fiber_distances(G)
    rebuilt = norm_from_fiber_distances(G, fib)
    print("\nnorm rebuilt from fiber tables matches:", rebuilt == G.norm)
    print(check_fiber_distances(G).summary())


if __name__ == "__main__":
    main()
