"""Planted defects: structures that are wrong in one known way each.

Every fixture here is built to FAIL a specific honest check with a
specific witness.  They guard the checkers themselves: a test suite
that only ever sees correct models cannot tell a working validator
from `return True`.  Nothing in this module is weakened to pass —
the suite runner below is expected to come back red, and the CLI
maps that to a nonzero exit.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .constructions import FiniteMetricSpace, pair_groupoid
from .core import (
    SeminormFamily,
    ValidationReport,
    LawCheck,
    check_norm,
    check_seminorm_family,
    validate_groupoid,
)
from .emergent import check_pplay, gamma_irq_from_dilation, sample_point_quads
from .limits import BoundedSampler, check_A3
from .models import EuclideanGroup, HeisenbergGroup, PairModel
from .scales import as_scale, dyadic_grid
from .transport import Coupling, Measure, two_point_space


# ---------------------------------------------------------------------------
# analytic models, each broken in one place


class _SquaredDilationGroup(EuclideanGroup):
    """Euclidean carrier whose dilation contracts by s^2 instead of s."""

    def dil(self, s: float, a):
        return (s * s) * np.asarray(a, dtype=float)


def wrong_exponent_euclidean(dim: int = 1) -> PairModel:
    """Looks Euclidean, but the dilation exponent is wrong.

    The family still composes (s^2 mu^2 = (s mu)^2), so the purely
    algebraic identities all hold; what fails is everything that pins
    the numeric scale: norm homogeneity d(delta_s a) = |s| d(a) gives
    |s|^2 instead, and the rescaled distances (1/|eps|) d(...) collapse
    to zero, so the limit distance is degenerate."""
    return PairModel(
        _SquaredDilationGroup(dim), name=f"euclidean-{dim}d (squared dilation)"
    )


class _DroppedCorrectionModel(PairModel):
    """Point dilatation computed additively: x + D_eps(x^-1 y).

    The group-multiplication wrapper around the contracted difference is
    dropped.  At the origin both recipes agree, so origin-based spot
    checks pass; off the origin the based operations stop inverting each
    other."""

    def point_dilatation(self, scale, x, y):
        s = float(as_scale(scale).modulus)
        return np.asarray(x, dtype=float) + self.group.dil(s, self.pdiff(x, y))


def dropped_correction_heisenberg() -> PairModel:
    return _DroppedCorrectionModel(
        HeisenbergGroup(), name="heisenberg (dropped correction term)"
    )


def _horizontal_gauge(a):
    a = np.asarray(a, dtype=float)
    return np.sqrt(a[..., 0] ** 2 + a[..., 1] ** 2)


def flat_gauge_heisenberg() -> PairModel:
    """Heisenberg carrier measured with the flat horizontal gauge.

    The rescaled distances converge beautifully (the gauge is exactly
    homogeneous for the dilations), but the limit is only a
    pseudo-distance: any two points differing in the vertical coordinate
    alone are at distance zero.  The axis probes in check_A3 find that
    witness; random sampling essentially never does."""
    return PairModel(
        HeisenbergGroup(),
        name="heisenberg (flat horizontal gauge)",
        gauge=_horizontal_gauge,
    )


class _PerturbedTangentModel(PairModel):
    """Gauge carries a quadratic horizontal bump; tangent data does not."""

    def tangent_pair_dist(self, a, b):
        return self.group.gauge(
            self.pdiff(self.target(b), self.target(a))
        )

    def tangent_norm(self, a):
        return self.group.gauge(self.pdiff(self.source(a), self.target(a)))

    def tangent_point_dist(self, u, v):
        return self.group.gauge(self.pdiff(v, u))


def perturbed_heisenberg_model(c: float = 0.25) -> PairModel:
    """A not-exactly-homogeneous gauge with the honest homogeneous limit.

    d'(w) = cygan(w) + c (w1^2 + w2^2).  Rescaling kills the bump at
    first order: (1/eps) d'(D_eps w) = cygan(w) + c eps (w1^2 + w2^2),
    so the limit estimates converge with fitted order 1 instead of
    sitting at the noise floor — the useful positive-order exhibit.
    NOT a planted failure, and also not a metric at finite scale (the
    bump is superadditive, so the triangle inequality fails for aligned
    horizontal pairs); use it with the distance/distortion estimators,
    not with the full axiom battery."""
    group = HeisenbergGroup()

    def bumped(a):
        a = np.asarray(a, dtype=float)
        return group.gauge(a) + c * (a[..., 0] ** 2 + a[..., 1] ** 2)

    return _PerturbedTangentModel(
        group, name="heisenberg (quadratic gauge bump)", gauge=bumped
    )


# ---------------------------------------------------------------------------
# broken finite tables


def _three_point_space() -> FiniteMetricSpace:
    return FiniteMetricSpace(
        points=["a", "b", "c"],
        dist=[[0, 1, 2], [1, 0, 1], [2, 1, 0]],
    )


def retargeted_compose_groupoid():
    """A pair groupoid with one composition entry pointed at the wrong
    arrow, so the typing laws (and associativity) break there."""
    G = pair_groupoid(two_point_space())
    # (0<-1)(1<-0) should be (0<-0); send it to (1<-1) instead
    bad = dict(G.compose)
    bad[(1, 2)] = 3
    G.compose = bad
    return G


def inflated_norm_groupoid():
    """Symmetric norm table that overshoots the two-leg path a<-b<-c,
    violating subadditivity while keeping inversion invariance."""
    G = pair_groupoid(_three_point_space())
    norm = list(G.norm)
    labels = G.arrows
    i_ac = labels.index("a<-c")
    i_ca = labels.index("c<-a")
    norm[i_ac] = Fraction(100)
    norm[i_ca] = Fraction(100)
    G.norm = norm
    return G


def non_separating_seminorms():
    """A seminorm family that is identically zero: subadditive,
    inversion invariant, vanishing on units — and separating nothing."""
    G = pair_groupoid(two_point_space())
    fam = SeminormFamily(
        names=["collapse"],
        values=[[Fraction(0)] * len(G.arrows)],
    )
    return G, fam


# ---------------------------------------------------------------------------
# transport data that refuses to compose


def mismatched_transport_pair():
    """Two valid plans whose middle marginals differ by 1/100 at point
    index 0.  Close enough to tempt renormalization; composing them must
    raise instead."""
    X = two_point_space()
    h = Fraction(1, 2)
    gamma = Coupling(X, ((h, 0), (0, h)))  # nu = (1/2, 1/2)
    off = Fraction(1, 100)
    mu2 = Measure(X, (h - off, h + off))
    gamma_prime = Coupling(
        X, ((h - off, 0), (0, h + off)), mu=mu2, nu=mu2
    )
    return gamma, gamma_prime


# ---------------------------------------------------------------------------
# malformed DSL inputs (for the CLI's positioned parse errors)


def parse_error_samples():
    """Expressions the term parser must reject, with the 1-based
    line:column it should point at."""
    return [
        ("Delta(0.1, (3,0)", 1, 17),            # unclosed call
        ("Sigma(1/2, (1,0), (2,0)))", 1, 25),   # trailing junk
        ("frob((1,0), (2,0))", 1, 1),           # unknown operation
        ("inv(1/2)", 1, 8),                     # arity too low
        ("d()", 1, 3),                          # arity too low
        ("lim(eps -> 1, d((1,0)))", 1, 12),     # limits go to zero here
        ("circ(1/2, (1,0),, (2,0))", 1, 17),    # empty argument
        ("Delta(1/2, (1,0), (2,0)\n  ", 2, 3),  # unclosed, multiline
    ]


# ---------------------------------------------------------------------------
# the planted suite


def run_planted_suite(seed: int = 0, samples: int = 200):
    """Run each planted fixture through the honest checker it is built
    to fail.  Returns a list of (name, ValidationReport).  A healthy
    library produces a RED list here: every report must contain at
    least one failed law.  The CLI turns that red into exit code 1."""
    rng = np.random.default_rng(seed)
    out = []

    wrong = wrong_exponent_euclidean(dim=2)
    arrows = wrong.sample_fiber_arrows(rng, samples)
    rep = ValidationReport(subject=wrong.name)
    hom = LawCheck("d(delta_s a) = |s| d(a)")
    rep.add(hom)
    for s in dyadic_grid(kmax=4):
        hom.tick()
        resid = np.max(np.abs(
            wrong.norm(wrong.delta(s, arrows))
            - float(s.modulus) * wrong.norm(arrows)
        ))
        if resid > 1e-9:
            hom.fail(scale=str(s), residual=float(resid))
    out.append(("squared dilation exponent vs norm homogeneity", rep))
    out.append((
        "squared dilation exponent vs limit nondegeneracy",
        check_A3(
            wrong,
            sampler=BoundedSampler(wrong, n=min(samples, 120), seed=seed),
            grid=dyadic_grid(kmax=8),
        ),
    ))

    dropped = dropped_correction_heisenberg()
    quads = sample_point_quads(
        dropped, np.random.default_rng(seed + 1), n=min(samples, 120)
    )
    out.append((
        "dropped correction term vs based-operation identities",
        check_pplay(gamma_irq_from_dilation(dropped), quads),
    ))

    flat = flat_gauge_heisenberg()
    out.append((
        "flat horizontal gauge vs limit nondegeneracy",
        check_A3(
            flat,
            sampler=BoundedSampler(flat, n=min(samples, 120), seed=seed),
            grid=dyadic_grid(kmax=8),
        ),
    ))

    out.append((
        "retargeted composition vs groupoid typing",
        validate_groupoid(retargeted_compose_groupoid()),
    ))
    out.append((
        "inflated norm entry vs subadditivity",
        check_norm(inflated_norm_groupoid()),
    ))
    G, fam = non_separating_seminorms()
    out.append((
        "identically zero seminorms vs separation",
        check_seminorm_family(G, fam),
    ))

    rep = ValidationReport(subject="mismatched transport pair")
    law = LawCheck("planted pair has matching middle marginals")
    rep.add(law)
    from .transport import MarginalMismatch, compose_plans

    gamma, gamma_prime = mismatched_transport_pair()
    law.tick()
    try:
        compose_plans(gamma, gamma_prime)
        law.note = "composed silently — the mismatch went unnoticed"
        law.fail(index=None)
    except MarginalMismatch as e:
        law.fail(index=e.index, left=str(e.left), right=str(e.right))
    out.append(("mismatched middle marginals vs composability", rep))
    return out
