from fractions import Fraction

import pytest

from cdgraded.cd_algebra import CayleyDickson
from cdgraded.group import elem
from cdgraded.identities import is_identity_multilinear
from cdgraded.rules import (
    Rule,
    RuleRegistrationError,
    _register,
    catalog,
    derived_rules,
    rule_by_label,
    ruleset_I,
    ruleset_z2_3,
    schema_poly,
    verify_rule,
)


def test_catalog_sizes():
    assert [r.label for r in ruleset_z2_3()] == ["1", "2", "3", "4"]
    assert [r.label for r in ruleset_I()] == [str(i) for i in range(5, 15)]
    assert [r.label for r in derived_rules()] == ["15a", "15b", "16"]
    assert len(catalog(2)) == 13 and len(catalog(3)) == 4
    with pytest.raises(ValueError):
        catalog(1)


def test_assignment_counts():
    counts = {r.label: len(list(r.grade_assignments())) for r in ruleset_I()}
    # rule 8: ordered pairs of distinct nonzero grades; rule 14: both zero
    assert counts["8"] == 6 and counts["14"] == 1
    assert counts["10"] == 6
    counts3 = {r.label: len(list(r.grade_assignments())) for r in ruleset_z2_3()}
    assert counts3["1"] + counts3["2"] == 64
    assert counts3["3"] + counts3["4"] == 512


@pytest.mark.parametrize("alphas", [(1, 1, 1), (1, 2, 3), (-1, -1, -1)])
def test_every_rule_sound(alphas):
    o = CayleyDickson(alphas)
    for r in ruleset_z2_3():
        assert verify_rule(r, o, o.grading(3)) == []
    for r in ruleset_I() + derived_rules():
        assert verify_rule(r, o, o.grading(2)) == []


def test_z2_3_examples(octonions, g3):
    r1, r2, r3, _ = ruleset_z2_3()
    g = {"x1": elem(1, 0, 0), "x2": elem(1, 0, 0)}
    assert r1.applies(g) and is_identity_multilinear(r1.instance(g), octonions, g3)
    g = {"x1": elem(1, 0, 0), "x2": elem(0, 1, 0)}
    assert r2.applies(g) and is_identity_multilinear(r2.instance(g), octonions, g3)
    g = {"x1": elem(1, 0, 0), "x2": elem(1, 0, 0), "x3": elem(0, 1, 0)}
    assert r3.applies(g) and is_identity_multilinear(r3.instance(g), octonions, g3)


def test_z2_2_examples(octonions, g2):
    r8, r10, r6 = rule_by_label("8"), rule_by_label("10"), rule_by_label("6")
    g = {"x": elem(1, 0), "y": elem(0, 1)}
    assert r8.applies(g) and is_identity_multilinear(r8.instance(g), octonions, g2)
    g = {"a": elem(0, 0), "v": elem(1, 0), "b": elem(1, 1)}
    assert r10.applies(g) and is_identity_multilinear(r10.instance(g), octonions, g2)
    g = {"a": elem(1, 0), "x": elem(0, 0), "b": elem(1, 0), "v": elem(0, 1)}
    assert r6.applies(g) and is_identity_multilinear(r6.instance(g), octonions, g2)


def test_derived_examples(octonions, g2):
    r15a, r15b, r16 = derived_rules()
    for r in (r15a, r15b):
        for g in r.grade_assignments():
            assert is_identity_multilinear(r.instance(g), octonions, g2)
    g = {"v": elem(1, 0), "w": elem(1, 1), "b": elem(0, 1)}
    assert r16.applies(g) and is_identity_multilinear(r16.instance(g), octonions, g2)
    # g(v) = g(b) puts v inside <g(b)>: the gate closes, although this instance happens to hold
    g = {"v": elem(1, 0), "w": elem(1, 1), "b": elem(1, 0)}
    assert not r16.applies(g)
    assert is_identity_multilinear(r16.instance(g), octonions, g2)
    g = {"v": elem(1, 0), "w": elem(1, 0), "b": elem(1, 0)}
    assert not r16.applies(g)


def test_gate_is_respected():
    r14 = rule_by_label("14")
    assert list(r14.grade_assignments()) == [{"x": elem(0, 0), "y": elem(0, 0)}]


def test_unsound_rule_rejected():
    bogus = Rule("bogus", "b", schema_poly("(x*y) - (y*x)"), lambda g: True, "none", 2)
    with pytest.raises(RuleRegistrationError):
        _register([bogus], (1, 1, 1))


def test_text_and_schema():
    r = rule_by_label("8")
    assert r.text() == "(x*y) + (y*x) = 0"
    assert r.vars == ("x", "y") and r.arity == 2
    assert schema_poly("(x*y) - 2 (y*x)")[1][0] == Fraction(-2)
