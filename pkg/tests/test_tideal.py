import csv
import itertools
from pathlib import Path

import pytest

from cdgraded.free import Mul, Poly, Var, catalan, is_regular_r2
from cdgraded.group import all_elements, elem
from cdgraded.identities import is_identity_generic
from cdgraded.parsing import parse
from cdgraded.rules import derived_rules, rule_by_label, ruleset_I, ruleset_z2_3
from cdgraded.tideal import (
    TSV_HEADER,
    DegreeCapError,
    MultilinearSpace,
    certify_all,
    certify_equality,
    consequence_space,
    identity_space,
    membership,
    rename,
    shirshov_span_check,
)

Z, A, B, C = elem(0, 0), elem(1, 0), elem(0, 1), elem(1, 1)
GOLDEN = Path(__file__).parent / "golden" / "identity_dims_z2_2_n3.tsv"


def test_space_dimensions():
    assert MultilinearSpace([Z]).dim == 1
    assert MultilinearSpace([A, B, C]).dim == 12
    assert MultilinearSpace([A, B, C, Z]).dim == 120
    for n in range(1, 5):
        assert MultilinearSpace([A] * n).dim == catalan(n - 1) * [1, 1, 2, 6, 24][n]


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        MultilinearSpace([A] * 5)
    assert MultilinearSpace([A] * 5, allow_degree5=True).dim == 14 * 120
    with pytest.raises(DegreeCapError):
        MultilinearSpace([A] * 6, allow_degree5=True)


def test_consequence_examples():
    sp = MultilinearSpace([Z, Z])
    cons = consequence_space([rule_by_label("14")], sp)
    assert cons.rank == 1
    assert cons.contains(sp.vector(parse("(x1:(0,0) * x2:(0,0)) - (x2:(0,0) * x1:(0,0))")))
    sp = MultilinearSpace([A, B])
    cons = consequence_space(ruleset_I(), sp)
    assert cons.contains(sp.vector(parse("(x1:(1,0) * x2:(0,1)) + (x2:(0,1) * x1:(1,0))")))


def test_identity_examples(octonions, g2):
    assert identity_space(MultilinearSpace([Z]), octonions, g2).rank == 0
    sp = MultilinearSpace([Z, Z])
    ids = identity_space(sp, octonions, g2)
    assert ids.rank >= 1
    assert ids.contains(sp.vector(parse("(x1:(0,0) * x2:(0,0)) - (x2:(0,0) * x1:(0,0))")))


def test_identity_dims_golden(octonions, g2):
    with open(GOLDEN) as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    assert len(rows) == 64
    for row in rows:
        grades = [elem(*map(int, g)) for g in row["grades"].split(",")]
        assert identity_space(MultilinearSpace(grades), octonions, g2).rank == int(row["dim_id"])


def test_z2_3_certified_small(octonions, g3):
    certs = certify_all(ruleset_z2_3(), octonions, g3, 2)
    assert len(certs) == 8 + 64 and all(c.equal for c in certs)


def test_deficit_control(octonions, g2):
    gens = [rule_by_label("13"), rule_by_label("14")]
    cert = certify_equality(gens, MultilinearSpace([A, B]), octonions, g2)
    assert not cert.equal and cert.dim_identities - cert.dim_consequences == len(cert.deficit) >= 1
    for f in cert.deficit:
        assert is_identity_generic(f, octonions, g2)


def test_certificate_row():
    assert TSV_HEADER.split("\t") == ["grades", "dim_ambient", "dim_cons", "dim_id", "equal"]


def test_known_gap_at_three_distinct_grades(octonions, g2):
    # the literal generators miss the right-normed identities at three distinct nonzero grades
    sp = MultilinearSpace([A, B, C])
    cert = certify_equality(ruleset_I(), sp, octonions, g2)
    assert (cert.dim_consequences, cert.dim_identities, cert.equal) == (8, 10, False)
    ids = identity_space(sp, octonions, g2)
    cons = consequence_space(ruleset_I(), sp)
    for text in ("(x2:(0,1) * (x1:(1,0) * x3:(1,1))) + (x1:(1,0) * (x2:(0,1) * x3:(1,1)))",
                 "-(x2:(0,1) * (x1:(1,0) * x3:(1,1))) + (x3:(1,1) * (x2:(0,1) * x1:(1,0)))"):
        v = sp.vector(parse(text))
        assert ids.contains(v) and not cons.contains(v)
    fixed = certify_equality(ruleset_I() + derived_rules(), sp, octonions, g2)
    assert fixed.equal and fixed.dim_consequences == 10


def test_gap_needs_three_distinct_nonzero_grades(octonions, g2):
    # every multidegree with at most two distinct nonzero grades certifies with the literal I
    checked = 0
    for n in range(1, 5):
        for grades in itertools.product(all_elements(2), repeat=n):
            if len({g for g in grades if not g.is_zero()}) >= 3:
                continue
            if n == 4 and sum(g.is_zero() for g in grades) < 2:
                continue
            assert certify_equality(ruleset_I(), MultilinearSpace(grades), octonions, g2).equal, grades
            checked += 1
    assert checked > 100


def test_membership_examples(octonions, g2):
    r15a, r15b, r16 = derived_rules()
    g = {"x": A, "y": A, "z": B}
    assert membership(r15a.instance(g), ruleset_I(), octonions, g2)
    assert membership(r15b.instance(g), ruleset_I(), octonions, g2)
    g = {"v": A, "w": A, "b": B}
    assert membership(r16.instance(g), ruleset_I(), octonions, g2)
    assert not membership(parse("(x1:(1,0) * x2:(0,1))"), ruleset_I(), octonions, g2)
    assert membership(Poly(), ruleset_I(), octonions, g2)
    with pytest.raises(ValueError):
        membership(parse("(x1:(1,0) * x1:(1,0))"), ruleset_I(), octonions, g2)


def test_derived_relations_in_I(octonions, g2):
    # stated consequences of I; the literal generators miss the full distinct-grade assignments
    missing = [(r.label, g) for r in derived_rules() for g in r.grade_assignments()
               if not membership(r.instance(g), ruleset_I(), octonions, g2)]
    assert not missing


def test_renaming_closure():
    sp = MultilinearSpace([A, B, Z])
    cons = consequence_space(ruleset_I(), sp)
    for perm in itertools.permutations(range(3)):
        dst_space = None
        for row in cons.rows:
            dst_space, v = rename(row, sp, perm)
            assert consequence_space(ruleset_I(), dst_space).contains(v)
        assert consequence_space(ruleset_I(), dst_space).rank == cons.rank


def test_shirshov_examples(octonions, g2):
    for grades in itertools.product(all_elements(2), repeat=2):
        assert shirshov_span_check(MultilinearSpace(grades), octonions, g2)
    for grades in [(A, B, C), (Z, A, A), (C, C, Z), (A, B, C, Z), (A, A, B, B)]:
        assert shirshov_span_check(MultilinearSpace(grades), octonions, g2)
    reverse = lambda v: (-v.grade.rank(), -v.id)
    for grades in itertools.product(all_elements(2), repeat=3):
        assert shirshov_span_check(MultilinearSpace(grades), octonions, g2, key=reverse)
