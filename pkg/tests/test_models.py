"""Analytic pair models: the two carrier groups, dilation axioms, and the
deformation machinery."""

import numpy as np
import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ngd.models import (
    EuclideanGroup,
    HeisenbergGroup,
    check_A0,
    check_A1,
    check_A2,
    check_deformation,
    check_dilation_morphism,
    deform,
    euclidean_model,
    heisenberg_model,
    restricted_euclidean_model,
)
from ngd.scales import Scale, dyadic_grid

coords = st.floats(min_value=-8, max_value=8, allow_nan=False,
                   allow_infinity=False)


def hpoints():
    return st.tuples(coords, coords, coords).map(np.array)


class TestHeisenbergGroup:
    """Exact group laws for the nilpotent carrier, checked pointwise.
    Products involve one multiplication and one addition per slot, so
    1e-12 absolute slack is generous."""

    G = HeisenbergGroup()

    @given(hpoints(), hpoints(), hpoints())
    @settings(max_examples=80, deadline=None)
    def test_associativity(self, a, b, c):
        lhs = self.G.mul(self.G.mul(a, b), c)
        rhs = self.G.mul(a, self.G.mul(b, c))
        assert np.allclose(lhs, rhs, atol=1e-10)

    @given(hpoints())
    @settings(max_examples=50, deadline=None)
    def test_inverse_and_identity(self, a):
        e = self.G.e()
        assert np.allclose(self.G.mul(a, self.G.inv(a)), e, atol=1e-12)
        assert np.allclose(self.G.mul(self.G.inv(a), a), e, atol=1e-12)
        assert np.allclose(self.G.mul(a, e), a)

    @given(hpoints())
    @settings(max_examples=50, deadline=None)
    def test_gauge_homogeneity(self, a):
        # the layered dilation scales the gauge on the nose
        for s in (0.5, 0.75, 4.0):
            lhs = self.G.gauge(self.G.dil(s, a))
            assert np.isclose(lhs, s * self.G.gauge(a),
                              rtol=1e-12, atol=1e-13)

    @given(hpoints(), hpoints())
    @settings(max_examples=50, deadline=None)
    def test_dilation_is_a_group_morphism(self, a, b):
        lhs = self.G.dil(0.5, self.G.mul(a, b))
        rhs = self.G.mul(self.G.dil(0.5, a), self.G.dil(0.5, b))
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_center_is_vertical(self):
        a = np.array([0.0, 0.0, 2.5])
        b = np.array([1.0, -3.0, 0.5])
        assert np.allclose(self.G.mul(a, b), self.G.mul(b, a))

    def test_noncommutative_off_center(self):
        a = np.array([1.0, 0.0, 0.0])
        b = np.array([0.0, 1.0, 0.0])
        assert not np.allclose(self.G.mul(a, b), self.G.mul(b, a))


class TestEuclideanGroup:
    G = EuclideanGroup(dim=2)

    @given(st.tuples(coords, coords).map(np.array),
           st.tuples(coords, coords).map(np.array))
    @settings(max_examples=40, deadline=None)
    def test_abelian(self, a, b):
        assert np.allclose(self.G.mul(a, b), self.G.mul(b, a))

    def test_gauge_is_the_norm(self):
        assert self.G.gauge(np.array([3.0, 4.0])) == pytest.approx(5.0)


@pytest.mark.parametrize("model", [euclidean_model(dim=2),
                                   heisenberg_model()],
                         ids=["euclidean", "heisenberg"])
class TestDilationAxioms:
    def test_action_laws(self, model):
        rng = np.random.default_rng(5)
        arrows = model.sample_fiber_arrows(rng, 300)
        rep = check_A1(model, arrows)
        assert rep.passed, rep.summary()

    def test_vanishing_norms(self, model):
        rng = np.random.default_rng(6)
        arrows = model.sample_fiber_arrows(rng, 300)
        rep = check_A2(model, arrows)
        assert rep.passed, rep.summary()

    def test_induced_double_dilation(self, model):
        rep = check_dilation_morphism(model)
        assert rep.passed, rep.summary()

    def test_norm_homogeneity_is_exact_scaling(self, model):
        rng = np.random.default_rng(7)
        arrows = model.sample_fiber_arrows(rng, 200)
        for s in dyadic_grid(kmax=5):
            resid = np.max(np.abs(
                model.norm(model.delta(s, arrows))
                - float(s.modulus) * model.norm(arrows)
            ))
            assert resid < 1e-10


def test_trivial_domain_report_on_unrestricted_models():
    rep = check_A0(euclidean_model())
    assert rep.passed
    assert any("no DomainSpec" in c.note for c in rep.laws)


def test_restricted_model_domain_bookkeeping():
    rep = check_A0(restricted_euclidean_model())
    assert rep.passed, rep.summary()


def test_pair_distance_is_left_invariant():
    model = heisenberg_model()
    rng = np.random.default_rng(8)
    p = model.sample_points(rng, 100)
    q = model.sample_points(rng, 100)
    g = model.group.sample(rng, 1, 4.0)[0]
    lhs = model.pdist(model.group.mul(g, p), model.group.mul(g, q))
    assert np.allclose(lhs, model.pdist(p, q), atol=1e-9)


def test_deformation_keeps_the_axioms():
    for mu in [Scale(Fraction(1, 2)), Scale(3)]:
        rep = check_deformation(heisenberg_model(), mu)
        assert rep.passed, rep.summary()


def test_deformed_norm_collapses_for_homogeneous_models():
    # d(delta_mu a) = |mu| d(a) exactly, so the 1/|mu| rescaling cancels
    model = euclidean_model(dim=1)
    dm = deform(model, Scale(Fraction(1, 4)))
    rng = np.random.default_rng(9)
    arrows = model.sample_fiber_arrows(rng, 50)
    assert np.allclose(dm.norm(arrows), model.norm(arrows), atol=1e-13)
