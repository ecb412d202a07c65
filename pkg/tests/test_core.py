"""Exact finite-groupoid layer: tables, norms, seminorm families."""

from fractions import Fraction

import pytest

from ngd.core import (
    FiniteGroupoid,
    LawCheck,
    SeminormFamily,
    ValidationReport,
    as_fraction,
    check_category_with_inverses,
    check_norm,
    check_seminorm_family,
    check_separability,
    validate_groupoid,
)
from ngd.fixtures import (
    inflated_norm_groupoid,
    non_separating_seminorms,
    retargeted_compose_groupoid,
)
from ngd.transport import transport_category_fixture


def cyclic_group_groupoid(n=4):
    # Z/n as a one-object groupoid, norm = distance to 0 around the circle
    compose = {(g, h): (g + h) % n for g in range(n) for h in range(n)}
    return FiniteGroupoid(
        arrows=[f"r{k}" for k in range(n)],
        compose=compose,
        inverse=[(-g) % n for g in range(n)],
        norm=[Fraction(min(k, n - k)) for k in range(n)],
    )


def test_as_fraction_accepts_exact_types():
    assert as_fraction(3) == Fraction(3)
    assert as_fraction("2/7") == Fraction(2, 7)
    assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)
    assert as_fraction("0.1") == Fraction(1, 10)  # decimal string, exact


def test_as_fraction_refuses_floats_and_bools():
    with pytest.raises(ValueError):
        as_fraction(0.1)
    with pytest.raises(ValueError):
        as_fraction(True)


def test_law_check_caps_witnesses():
    from ngd.core import MAX_WITNESSES

    c = LawCheck("demo")
    for k in range(50):
        c.tick()
        c.fail(k=k)
    assert c.failures == 50
    assert len(c.witnesses) == MAX_WITNESSES
    assert not c.passed


def test_report_merge_and_lookup():
    a = ValidationReport(subject="a").add(LawCheck("one"))
    b = ValidationReport(subject="b").add(LawCheck("two"))
    a.merge(b)
    assert a.law("two").law == "two"
    assert a.passed
    with pytest.raises(KeyError):
        a.law("three")


def test_cyclic_group_is_a_valid_groupoid():
    G = cyclic_group_groupoid(5)
    assert validate_groupoid(G).passed
    assert check_norm(G).passed


def test_cyclic_two_object_disjoint_union():
    # two copies of Z/2 living side by side; composition is partial
    compose = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0,
               (2, 2): 2, (2, 3): 3, (3, 2): 3, (3, 3): 2}
    G = FiniteGroupoid(
        arrows=["e", "s", "e'", "s'"],
        compose=compose,
        inverse=[0, 1, 2, 3],
        norm=[Fraction(0), Fraction(1), Fraction(0), Fraction(3, 2)],
    )
    rep = validate_groupoid(G)
    assert rep.passed, rep.summary()
    assert check_norm(G).passed
    # the two objects never talk to each other, so separability is vacuous
    assert check_separability(G).passed


def test_retargeted_composition_breaks_typing():
    G = retargeted_compose_groupoid()
    rep = validate_groupoid(G)
    assert not rep.passed
    # at least one typing/cancellation law has a concrete witness
    bad = [c for c in rep.laws if not c.passed]
    assert bad and bad[0].witnesses


def test_inflated_norm_breaks_subadditivity():
    G = inflated_norm_groupoid()
    rep = check_norm(G)
    assert not rep.passed
    sub = rep.law("d(gh) <= d(g) + d(h)")
    assert not sub.passed
    w = sub.witnesses[0]
    assert w["d_gh"] == "100"


def test_zero_seminorms_do_not_separate():
    G, fam = non_separating_seminorms()
    rep = check_seminorm_family(G, fam)
    assert not rep.passed
    assert rep.law("joint kernel = unit arrows").failures > 0


class TestTransportFixtureCategory:
    """The seven-plan category: a category with inverses whose norm
    genuinely fails the two groupoid-only clauses."""

    def setup_method(self):
        self.C, self.plans, self.labels = transport_category_fixture()

    def test_relaxed_check_passes(self):
        rep = check_category_with_inverses(
            self.C, strict_norm=False, joint_kernel=False
        )
        assert rep.passed, rep.summary()

    def test_strict_norm_clause_fails_on_quarter_uniform(self):
        rep = check_category_with_inverses(self.C, joint_kernel=False)
        law = rep.law("d = 0 exactly on arrows h^-1 h")
        assert not law.passed
        assert any(w.get("g") == "quarter-uniform" for w in law.witnesses)

    def test_joint_kernel_clause_fails_on_swap(self):
        rep = check_category_with_inverses(self.C, strict_norm=False)
        bad = [c for c in rep.laws if not c.passed]
        assert any(
            any(w.get("g") == "swap" for w in c.witnesses) for c in bad
        )

    def test_unit_like_arrows_are_the_four_designed_ones(self):
        units = {self.labels[i] for i in self.C.unit_like()}
        assert units == {"id(1/2,1/2)", "quarter-uniform", "id(1/4,3/4)",
                         "id(3/4,1/4)"}


def test_honest_norm_read_as_a_one_member_family():
    # the honest norm, viewed as a one-member family, passes every clause
    G = cyclic_group_groupoid(4)
    fam = SeminormFamily(names=["norm"], values=[list(G.norm)])
    assert check_seminorm_family(G, fam).passed
