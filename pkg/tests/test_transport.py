"""Exact transport plans on finite metric spaces: composition through
disintegration, the plan norm, Lipschitz seminorms, and Kantorovich
duality solved by rational simplex."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngd.constructions import FiniteMetricSpace, random_metric_space
from ngd.transport import (
    Coupling,
    LipFunction,
    MarginalMismatch,
    Measure,
    check_kantorovich_duality,
    check_transport,
    compose_plans,
    diag_plan,
    inverse_plan,
    is_invtrans,
    kantorovich,
    lip1_vertices,
    lip1_witness,
    map_plan,
    norm_d,
    product_plan,
    push_forward,
    random_composable_chain,
    random_coupling_between,
    random_measure,
    seminorm_rho,
    solve_lp,
    two_point_space,
    wasserstein,
)

X2 = two_point_space()


def line3():
    return FiniteMetricSpace(
        points=[0, 1, 2],
        dist=[
            [Fraction(0), Fraction(1), Fraction(2)],
            [Fraction(1), Fraction(0), Fraction(1)],
            [Fraction(2), Fraction(1), Fraction(0)],
        ],
    )


def frac_weights(n):
    """Strategy: n positive rational weights summing to one."""
    return st.lists(
        st.integers(min_value=1, max_value=20), min_size=n, max_size=n
    ).map(lambda ks: tuple(Fraction(k, sum(ks)) for k in ks))


# ---------------------------------------------------------------------------
# measures and plans


def test_measure_must_sum_to_one():
    with pytest.raises(ValueError):
        Measure(X2, (Fraction(1, 2), Fraction(1, 3)))


def test_measure_rejects_negative_mass():
    with pytest.raises(ValueError):
        Measure(X2, (Fraction(3, 2), Fraction(-1, 2)))


def test_coupling_checks_declared_marginals():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    bad = Measure(X2, (Fraction(1, 4), Fraction(3, 4)))
    gamma = ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2)))
    Coupling(X2, gamma, mu=mu, nu=mu)  # fine
    with pytest.raises(ValueError, match="second marginal"):
        Coupling(X2, gamma, mu=mu, nu=bad)


def test_diag_and_product_plans():
    mu = Measure(X2, (Fraction(1, 4), Fraction(3, 4)))
    assert norm_d(diag_plan(mu)) == 0
    prod = product_plan(mu, mu)
    assert prod.gamma[0][1] == Fraction(3, 16)
    assert norm_d(prod) == 2 * Fraction(1, 4) * Fraction(3, 4)


def test_map_plan_and_push_forward():
    mu = Measure(X2, (Fraction(1, 3), Fraction(2, 3)))
    swap = map_plan([1, 0], mu)
    assert swap.nu.weights == (Fraction(2, 3), Fraction(1, 3))
    assert push_forward([1, 0], mu).weights == swap.nu.weights
    assert norm_d(swap) == 1


# ---------------------------------------------------------------------------
# composition


def test_composition_follows_the_disintegration_sum():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    nu = Measure(X2, (Fraction(1, 4), Fraction(3, 4)))
    gamma = Coupling(
        X2,
        ((Fraction(1, 4), Fraction(1, 4)), (Fraction(0), Fraction(1, 2))),
        mu=mu, nu=nu,
    )
    gp = Coupling(
        X2,
        ((Fraction(1, 4), Fraction(0)), (Fraction(1, 4), Fraction(1, 2))),
    )
    out = compose_plans(gamma, gp)
    assert out.gamma == (
        (Fraction(1, 3), Fraction(1, 6)),
        (Fraction(1, 6), Fraction(1, 3)),
    )
    assert out.mu.weights == mu.weights


def test_mismatch_carries_the_first_offending_index():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    nu2 = Measure(X2, (Fraction(49, 100), Fraction(51, 100)))
    with pytest.raises(MarginalMismatch) as exc:
        compose_plans(diag_plan(mu), diag_plan(nu2))
    assert exc.value.index == 0
    assert exc.value.left == Fraction(1, 2)
    assert exc.value.right == Fraction(49, 100)


def test_identity_plans_are_neutral():
    rng = random.Random(7)
    space = line3()
    for _ in range(20):
        mu = random_measure(space, rng)
        g = random_coupling_between(mu, random_measure(space, rng), rng)
        assert compose_plans(diag_plan(g.mu), g) == g
        assert compose_plans(g, diag_plan(g.nu)) == g


def test_composition_is_exactly_associative():
    """Including through zero-mass middle points — the double sums are
    literally identical, so == is the right assertion."""
    rng = random.Random(1)
    for trial in range(100):
        space = random_metric_space(seed=trial, max_points=5)
        full = trial % 2 == 0
        a, b, c = random_composable_chain(space, rng, length=3,
                                          full_support=full)
        assert compose_plans(compose_plans(a, b), c) == compose_plans(
            a, compose_plans(b, c)
        )


def test_inverse_is_an_involutive_antimorphism():
    rng = random.Random(2)
    space = line3()
    for _ in range(25):
        a, b = random_composable_chain(space, rng, length=2)
        assert inverse_plan(inverse_plan(a)) == a
        assert inverse_plan(compose_plans(a, b)) == compose_plans(
            inverse_plan(b), inverse_plan(a)
        )
        assert norm_d(inverse_plan(a)) == norm_d(a)


# ---------------------------------------------------------------------------
# the norm and the Lipschitz seminorms


class TestPlanNorm:
    @given(frac_weights(2), frac_weights(2))
    @settings(max_examples=40, deadline=None)
    def test_norm_zero_iff_diagonal_on_two_points(self, wmu, wnu):
        mu, nu = Measure(X2, wmu), Measure(X2, wnu)
        rng = random.Random(5)
        g = random_coupling_between(mu, nu, rng)
        offdiag = g.gamma[0][1] + g.gamma[1][0]
        assert (norm_d(g) == 0) == (offdiag == 0)

    @given(frac_weights(3), frac_weights(3), frac_weights(3))
    @settings(max_examples=30, deadline=None)
    def test_subadditive_along_composition(self, w1, w2, w3):
        space = line3()
        rng = random.Random(9)
        a = random_coupling_between(Measure(space, w1),
                                    Measure(space, w2), rng)
        b = random_coupling_between(Measure(space, w2),
                                    Measure(space, w3), rng)
        assert norm_d(compose_plans(a, b)) <= norm_d(a) + norm_d(b)


def test_lip1_witness_finds_violations():
    space = line3()
    assert lip1_witness(space, (Fraction(0), Fraction(1), Fraction(2))) is None
    w = lip1_witness(space, (Fraction(0), Fraction(5), Fraction(0)))
    assert w is not None


def test_lip_function_validates():
    with pytest.raises(ValueError):
        LipFunction(line3(), (Fraction(0), Fraction(3), Fraction(0)))


def test_seminorm_sees_only_the_marginals():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    nu = Measure(X2, (Fraction(1, 4), Fraction(3, 4)))
    u = LipFunction(X2, (Fraction(1), Fraction(0)))
    rng = random.Random(3)
    vals = {
        seminorm_rho(u, random_coupling_between(mu, nu, rng))
        for _ in range(10)
    }
    assert len(vals) == 1  # rho_u factors through (mu, nu)
    assert vals.pop() == Fraction(1, 4)


def test_lip1_vertices_two_points():
    vs = set(lip1_vertices(X2))
    assert vs == {(Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1))}


def test_lip1_vertices_line():
    vs = set(lip1_vertices(line3()))
    assert (Fraction(0), Fraction(1), Fraction(2)) in vs
    # every vertex is 1-Lipschitz and pinned at the first point
    for v in vs:
        assert v[0] == 0
        assert lip1_witness(line3(), v) is None


def test_plan_norm_dominates_every_vertex_seminorm():
    rng = random.Random(4)
    space = line3()
    for _ in range(15):
        mu = random_measure(space, rng)
        nu = random_measure(space, rng)
        g = random_coupling_between(mu, nu, rng)
        for v in lip1_vertices(space):
            u = LipFunction(space, v)
            assert seminorm_rho(u, g) <= norm_d(g)


# ---------------------------------------------------------------------------
# invertible transports


def test_swap_is_an_invertible_transport():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    swap = map_plan([1, 0], mu)
    w = is_invtrans(swap)
    assert w is not None
    fwd, bwd = w
    assert list(fwd.f) == [1, 0] and list(bwd.f) == [1, 0]


def test_quarter_uniform_is_not_invertible():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    assert is_invtrans(product_plan(mu, mu)) is None


def test_invertibility_matches_the_two_sided_dual_route():
    """gamma is an invertible transport iff BOTH gamma^-1 o gamma and
    gamma o gamma^-1 are diagonal.  The one-sided version is false in
    general: this plan's gamma^-1 o gamma is diagonal on the support but
    it is no map."""
    rng = random.Random(6)
    for trial in range(60):
        space = random_metric_space(seed=trial + 1000, max_points=4)
        mu = random_measure(space, rng, full_support=(trial % 2 == 0))
        g = random_coupling_between(
            mu, random_measure(space, rng, full_support=(trial % 3 == 0)),
            rng,
        )
        n = space.n_points()
        perm = list(range(n))
        rng.shuffle(perm)
        for plan in (g, map_plan(perm, mu)):
            # compose_plans(p, p^-1) runs mu -> nu -> mu, and vice versa
            two_sided = (
                compose_plans(plan, inverse_plan(plan))
                == diag_plan(plan.mu)
                and compose_plans(inverse_plan(plan), plan)
                == diag_plan(plan.nu)
            )
            assert (is_invtrans(plan) is not None) == two_sided, plan.gamma


def test_one_sided_diagonality_is_not_enough():
    # half the mass of point 0 goes each way; nothing is a map here, yet
    # the mu -> nu -> mu round trip collapses to the diagonal because mu
    # is a point mass
    gamma = Coupling(
        X2, ((Fraction(1, 2), Fraction(1, 2)), (Fraction(0), Fraction(0))),
    )
    round_trip = compose_plans(gamma, inverse_plan(gamma))
    assert round_trip == diag_plan(gamma.mu)
    # ... while the other side is the full product plan, not a diagonal
    other = compose_plans(inverse_plan(gamma), gamma)
    assert other == product_plan(gamma.nu, gamma.nu)
    assert is_invtrans(gamma) is None


# ---------------------------------------------------------------------------
# exact duality


def test_wasserstein_quarter_oracle():
    mu = Measure(X2, (Fraction(1, 2), Fraction(1, 2)))
    nu = Measure(X2, (Fraction(1, 4), Fraction(3, 4)))
    assert wasserstein(mu, nu) == Fraction(1, 4)


def test_kantorovich_point_masses_on_the_line():
    space = line3()
    d0 = Measure(space, (Fraction(1), Fraction(0), Fraction(0)))
    d2 = Measure(space, (Fraction(0), Fraction(0), Fraction(1)))
    res = kantorovich(d0, d2)
    assert res.primal == res.dual == Fraction(2)
    assert res.potential.values[0] - res.potential.values[2] == Fraction(2)


def test_duality_battery_on_random_spaces():
    rng = random.Random(8)
    for seed in (3, 14, 15):
        space = random_metric_space(seed=seed, max_points=5)
        pairs = [
            (random_measure(space, rng), random_measure(space, rng))
            for _ in range(3)
        ]
        rep = check_kantorovich_duality(space, pairs, rng=rng)
        assert rep.passed, rep.summary()


def test_optimal_value_is_a_lip1_vertex_value():
    """On small spaces the dual optimum is attained at a vertex of the
    Lipschitz ball — cross-check the simplex against enumeration."""
    rng = random.Random(10)
    for seed in (2, 7):
        space = random_metric_space(seed=seed, max_points=4)
        mu = random_measure(space, rng)
        nu = random_measure(space, rng)
        best = max(
            abs(sum(u[x] * (mu.weights[x] - nu.weights[x])
                    for x in range(space.n_points())))
            for u in lip1_vertices(space)
        )
        assert wasserstein(mu, nu) == best


def test_solve_lp_rejects_infeasible():
    # x >= 0 with x_1 + x_2 = -1 has no solution
    A = [[Fraction(1), Fraction(1)]]
    b = [Fraction(-1)]
    c = [Fraction(1), Fraction(1)]
    with pytest.raises(ArithmeticError):
        solve_lp(A, b, c)


def test_solve_lp_handles_redundant_rows():
    A = [
        [Fraction(1), Fraction(1)],
        [Fraction(2), Fraction(2)],  # same constraint, doubled
    ]
    b = [Fraction(1), Fraction(2)]
    c = [Fraction(1), Fraction(3)]
    val, x = solve_lp(A, b, c)
    assert val == Fraction(1)
    assert x == [Fraction(1), Fraction(0)]


# ---------------------------------------------------------------------------
# the full battery


def test_transport_battery_two_points():
    rep = check_transport(seed=0, samples=30)
    assert rep.passed, rep.summary()


def test_transport_battery_bigger_space():
    rep = check_transport(random_metric_space(seed=21, max_points=5),
                          seed=1, samples=20)
    assert rep.passed, rep.summary()
