import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdgraded.cd_algebra import (
    CayleyDickson,
    associator,
    bracket_power,
    component,
    conj,
    conj_recursive,
    find_zero_divisor_witness,
    inverse,
    is_homogeneous,
    multiply_recursive,
    norm,
    tilde,
    trace,
    v_unit,
)
from cdgraded.group import all_elements, elem

ALPHAS = [(1, 1, 1), (1, 2, 3), (-1, -1, -1), (Fraction(1, 2), -3, 5)]

coord = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def octo(o, cs):
    return o.elem(cs)


def test_identity_and_doubling_unit(octonions):
    rng = random.Random(1)
    one = octonions.one()
    for _ in range(20):
        x = octonions.random(rng)
        assert one * x == x == x * one
    for alphas in ALPHAS:
        o = CayleyDickson(alphas)
        for level, a in enumerate(alphas):
            v = o.basis(1 << level)
            assert v * v == o.one() * a


@pytest.mark.parametrize("alphas", ALPHAS)
def test_golden_table_against_recursion(alphas):
    # the table builder and the plain doubling formula on coordinate lists must agree
    o = CayleyDickson(alphas)
    for i, j in itertools.product(range(8), repeat=2):
        ei = [Fraction(int(t == i)) for t in range(8)]
        ej = [Fraction(int(t == j)) for t in range(8)]
        assert list((o.basis(i) * o.basis(j)).coords) == multiply_recursive(ei, ej, o.alphas)


def test_conj(octonions):
    assert conj(octonions.one()) == octonions.one()
    for b in range(1, 8):
        assert octonions.basis(b).conj() == -octonions.basis(b)
    rng = random.Random(2)
    for _ in range(20):
        x = octonions.random(rng)
        assert x.conj().conj() == x
        assert list(x.conj().coords) == conj_recursive(list(x.coords))


def test_trace_norm(octonions):
    one = octonions.one()
    assert trace(one) == 2 and norm(one) == 1
    o = CayleyDickson((1, 2, 3))
    for b in range(8):
        bits = o.label_bits(b)
        expect = 1
        for bit, a in zip(bits, o.alphas):
            if bit:
                expect *= -a
        assert norm(o.basis(b)) == expect
    rng = random.Random(3)
    for _ in range(100):
        x = octonions.random(rng)
        assert (x * x - x * trace(x) + one * norm(x)).is_zero()


def test_component(octonions, g2):
    rng = random.Random(4)
    x = octonions.random(rng)
    c0 = component(x, elem(0, 0), g2)
    assert {i for i, c in enumerate(c0.coords) if c} <= {octonions.index_of((0, 0, 0)), octonions.index_of((1, 0, 0))}
    total = octonions.zero()
    for h in all_elements(2):
        total = total + component(x, h, g2)
    assert total == x
    e011 = octonions.e("011")
    assert component(e011, elem(1, 1), g2) == e011


def test_grading_closure(octonions, g2, g3):
    for gr in (g2, g3):
        for i, j in itertools.product(range(8), repeat=2):
            p = octonions.basis(i) * octonions.basis(j)
            assert is_homogeneous(p, gr) == gr.degrees[i] + gr.degrees[j]
    assert set(g2.component_dims().values()) == {2}


def test_v_units(octonions):
    assert v_unit(elem(0, 0), octonions) == octonions.one()
    assert v_unit(elem(1, 0), octonions) == octonions.e("010")
    assert v_unit(elem(1, 1), octonions) == octonions.e("010") * octonions.e("001")
    for h in all_elements(2):
        v = v_unit(h, octonions)
        assert v * inverse(v) == octonions.one()
        assert tilde(v) == v


def test_tilde_and_bracket_power(octonions, g2):
    rng = random.Random(5)
    for h in all_elements(2):
        for _ in range(5):
            x = component(octonions.random(rng), h, g2)
            if h.is_zero():
                assert tilde(x) == x.conj()
            assert tilde(tilde(x)) == x
            assert bracket_power(x, 0) == octonions.one()
            assert bracket_power(x, 1) == tilde(x)
            assert bracket_power(x, 2) == tilde(x) * x
            assert bracket_power(x, 3) == (tilde(x) * x) * tilde(x)


def test_zero_divisor_witness(octonions):
    x, e = find_zero_divisor_witness(octonions)
    assert not x.is_zero() and norm(x) == 0
    assert e * e == e and not e.is_zero() and e != octonions.one()
    y = octonions.one() - octonions.e("010")
    assert norm(y) == 0
    half = (octonions.one() + octonions.e("010")) * Fraction(1, 2)
    assert half * half == half


def test_division_octonions_have_no_small_witness():
    # (-1,-1,-1) is the real division octonions: positive definite norm
    assert find_zero_divisor_witness(CayleyDickson((-1, -1, -1))) is None


def test_nonassociative(octonions):
    a, b, c = octonions.e("100"), octonions.e("010"), octonions.e("001")
    assert not associator(a, b, c).is_zero()


def test_homogeneous_units_invertible(octonions):
    for b in range(8):
        assert norm(octonions.basis(b)) != 0


@pytest.mark.parametrize("alphas", ALPHAS)
def test_hurwitz_relation(alphas):
    # va . vb = v^2 . b conj(a) for a, b in the subalgebra and v the top doubling unit
    o = CayleyDickson(alphas)
    v = o.basis(4)
    rng = random.Random(6)
    for _ in range(20):
        a = o.elem(list(o.random(rng).coords[:4]) + [0] * 4)
        b = o.elem(list(o.random(rng).coords[:4]) + [0] * 4)
        assert (v * a) * (v * b) == (v * v) * (b * a.conj())


@settings(max_examples=60, deadline=None)
@given(st.lists(coord, min_size=8, max_size=8), st.lists(coord, min_size=8, max_size=8),
       st.sampled_from(ALPHAS))
def test_composition_properties(xs, ys, alphas):
    o = CayleyDickson(alphas)
    x, y = o.elem(xs), o.elem(ys)
    assert norm(x * y) == norm(x) * norm(y)
    assert (x * y).conj() == y.conj() * x.conj()
    assert associator(x, x, y).is_zero() and associator(x, y, y).is_zero()
    assert associator(x, y, x).is_zero()
