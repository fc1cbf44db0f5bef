import random

import pytest

from cdgraded.forms import (
    ShapeError,
    nonzero_top_form,
    split_by_generic_coefficients,
    split_two_components,
    zero_top_form,
)
from cdgraded.free import Mul, Poly, Var, random_term
from cdgraded.group import elem, nonzero_elements, span_size
from cdgraded.identities import is_identity_generic
from cdgraded.parsing import parse, parse_term

X0 = Var(1, elem(0, 0))
XH = Var(3, elem(1, 0))


def test_zero_top_examples():
    f = zero_top_form(parse("(x2:(1,0) * x1:(0,0))"), X0)
    assert f.ok and f.case == "nonzero" and f.n == 1
    assert f.slots[1] == parse("x2:(1,0)") and not f.slots[0]
    f = zero_top_form(parse("((x2:(1,0) * x1:(0,0)) * x3:(1,0))"), X0)
    assert f.ok and f.case == "zero"
    assert [(y, z) for _, y, z in f.slots[1]] == [(Var(2, elem(1, 0)), Var(3, elem(1, 0)))]
    f = zero_top_form(parse("(x1:(0,0) * x2:(1,0))"), X0)
    assert f.ok and f.slots[0] == parse("x2:(1,0)")


def test_nonzero_top_examples():
    f = nonzero_top_form(parse("(x1:(1,0) * x3:(1,0))"), XH)
    assert f.ok and f.case == "in" and list(f.families) == [("p", 0)]
    f = nonzero_top_form(parse("(x2:(0,1) * (x1:(1,0) * x3:(1,0)))"), XH)
    assert f.ok and f.case == "z"
    (fam, rows), = f.families.items()
    assert fam[0].startswith("z") and rows[0][2] == Var(2, elem(0, 1))
    f = nonzero_top_form(parse("(x3:(1,0) * x1:(1,0))"), XH)
    assert f.ok and list(f.families) == [("h", 1)]


def test_top_variable_checked():
    with pytest.raises(ShapeError):
        nonzero_top_form(parse("(x3:(1,0) * x4:(1,0))"), XH)
    with pytest.raises(ShapeError):
        zero_top_form(parse("(x2:(1,0) * x3:(1,0))"), X0)


def test_split_two_components():
    assert split_two_components(parse_term("(x1:(1,0) * x2:(0,1))")) == (1, Var(1, elem(1, 0)), Var(2, elem(0, 1)))
    assert split_two_components(parse_term("(x2:(0,1) * x1:(1,0))")) == (-1, Var(1, elem(1, 0)), Var(2, elem(0, 1)))
    s, w, v = split_two_components(parse_term("((x1:(1,0) * x2:(0,1)) * x3:(1,0))"))
    assert (s, w, v) == (-1, parse_term("(x1:(1,0) * x3:(1,0))"), Var(2, elem(0, 1)))
    with pytest.raises(ShapeError):
        split_two_components(parse_term("(x1:(1,0) * x2:(0,0))"))


def _check_reassembly(octonions, g2, f, form):
    # sound whether or not every monomial found its shape
    assert is_identity_generic(f - form.reassembled, octonions, g2)
    return form.ok


def test_random_reassembly(octonions, g2):
    rng = random.Random(7)
    seen_ok = 0
    for _ in range(40):
        n = rng.randint(1, 3)
        others = [Var(i + 2, rng.choice(nonzero_elements(2))) for i in range(n)]
        t = random_term(rng, others + [X0] * rng.randint(1, 2))
        f = Poly.from_term(t)
        seen_ok += _check_reassembly(octonions, g2, f, zero_top_form(f, X0))
    for _ in range(40):
        n = rng.randint(1, 3)
        others = [Var(i + 1, rng.choice(nonzero_elements(2))) for i in range(n)]
        top = Var(9, elem(1, 1))
        t = random_term(rng, others + [top] * rng.randint(1, 2))
        f = Poly.from_term(t)
        seen_ok += _check_reassembly(octonions, g2, f, nonzero_top_form(f, top))
    for _ in range(40):
        leaves = [Var(1, elem(1, 0)), Var(2, elem(0, 1))] + [Var(3 + i, rng.choice((elem(1, 0), elem(0, 1)))) for i in range(rng.randint(0, 3))]
        rng.shuffle(leaves)
        u = random_term(rng, leaves)
        s, w, v = split_two_components(u)
        assert is_identity_generic(Poly.from_term(u) - Poly.from_term(Mul(w, v), s), octonions, g2)
    assert seen_ok > 60


def test_split_by_generic_coefficients():
    x = Var(3, elem(0, 0))
    f = parse("((x1:(1,0) * x2:(0,1)) * x3:(0,0)) + ((x2:(0,1) * x1:(1,0)) * x3:(0,0))")
    assert split_by_generic_coefficients(f, x) == [parse("(x2:(0,1) * x1:(1,0)) + (x1:(1,0) * x2:(0,1))")]
    assert split_by_generic_coefficients(Poly(), x) == []
    # an instance of I whose slots all cancel
    f = parse("(x3:(0,0) * (x1:(1,0) * x2:(1,1))) - (x1:(1,0) * (x2:(1,1) * x3:(0,0)))")
    assert split_by_generic_coefficients(f, x) == []
    with pytest.raises(ValueError):
        split_by_generic_coefficients(parse("(x1:(1,0) * x3:(0,0))"), x)


def test_nonzero_top_slot_constraints():
    rng = random.Random(8)
    top = Var(9, elem(1, 1))
    h = top.grade
    for _ in range(150):
        others = [Var(i + 1, rng.choice(nonzero_elements(2))) for i in range(rng.randint(1, 3))]
        f = Poly.from_term(random_term(rng, others + [top] * rng.randint(1, 2)))
        form = nonzero_top_form(f, top)
        assert form.ok
        for (fam, i), rows in form.families.items():
            for _, blocks, z in rows:
                interior = blocks if fam.endswith("h") else blocks[1:]
                assert all(b.grade == h for b in interior)
                if z is not None:
                    assert span_size(z.grade, h) == 4
                if fam in ("p", "zp") and i >= 1:
                    # (n + i + 1) g(x) = g of the word without its z prefix
                    word_grade = f.grade() + z.grade if z is not None else f.grade()
                    assert word_grade == (h if (form.n + i + 1) % 2 else elem(0, 0))
