import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairmix import Side
from pairmix.conditions import NotFound, ss_witness
from pairmix.errors import NotInGamma0, SupportViolation
from pairmix.fourier import (
    ONE,
    ZERO,
    ComplexRational,
    DefectCurve,
    GroupOperator,
    adjoint,
    ah_curve,
    coefficient_decay,
    conjugation_defect,
    convolve,
    decimal_rendering,
    mixing_defect,
    operator_from_terms,
    project_onto_gamma0,
    strong_mixing_curve,
    trace,
    weak_mixing_witness,
)

from support import SHIPPED, ctx, f2_in_gamma0, f2_key, mat_mul, random_word

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
complexes = st.builds(ComplexRational, rationals, rationals)


def random_operator(rng, c, terms=3, length=3):
    names = c.family.generator_names()
    out = []
    for _ in range(terms):
        w = random_word(rng, names, rng.randint(0, length), max_exp=2)
        coeff = ComplexRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-2, 2), 2))
        out.append((c.canonicalize(w), coeff))
    return GroupOperator(out)


# -- complex rationals -------------------------------------------------------------


@given(complexes, complexes, complexes)
def test_complex_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).im == 0 and (a * a.conj()).re == a.abs2()


@given(complexes)
def test_complex_round_trip(z):
    assert ComplexRational.parse(str(z)) == z


def test_complex_parse_forms():
    assert ComplexRational.parse("1/2-3i") == ComplexRational(Fraction(1, 2), Fraction(-3))
    assert ComplexRational.parse("i") == ComplexRational(0, 1)
    assert ComplexRational.parse("-2") == ComplexRational(-2, 0)
    with pytest.raises(ValueError):
        ComplexRational.parse("1.5")


# -- operators ------------------------------------------------------------------


def test_convolution_example():
    f2 = ctx("f2")
    x = operator_from_terms(f2, [("a", "1"), ("b", "2")])
    y = operator_from_terms(f2, [("a^-1", "1"), ("b^-1", "i")])
    xy = convolve(f2, x, y)
    assert trace(f2, xy) == ComplexRational(1, 2)
    assert xy[f2.canonicalize("a b^-1")] == ComplexRational(0, 1)
    assert xy[f2.canonicalize("b a^-1")] == ComplexRational(2, 0)
    assert len(xy) == 3


def test_zero_terms_are_dropped():
    f2 = ctx("f2")
    a = f2.canonicalize("a")
    x = GroupOperator([(a, ONE), (a, ComplexRational(-1, 0))])
    assert not x and x == GroupOperator() and x[a] == ZERO


def _oracle_convolve(x_terms, y_terms):
    # F_2 convolution through the Sanov representation, never touching pairmix words
    out: dict = {}
    for wx, cx in x_terms:
        for wy, cy in y_terms:
            k = mat_mul(f2_key(wx), f2_key(wy))
            out[k] = out.get(k, ZERO) + cx * cy
    return {k: v for k, v in out.items() if v}


def test_convolution_against_matrix_oracle():
    f2 = ctx("f2")
    rng = random.Random("conv")
    for _ in range(60):
        xt = [(random_word(rng, ["a", "b"], rng.randint(0, 4)), ComplexRational(rng.randint(-2, 2), rng.randint(-1, 1)))
              for _ in range(3)]
        yt = [(random_word(rng, ["a", "b"], rng.randint(0, 4)), ComplexRational(rng.randint(-2, 2), 0))
              for _ in range(3)]
        x = GroupOperator([(f2.canonicalize(w), c) for w, c in xt])
        y = GroupOperator([(f2.canonicalize(w), c) for w, c in yt])
        got = {f2_key(f2.format(g).split() if g != f2.identity() else []): c
               for g, c in convolve(f2, x, y).items()}
        assert got == _oracle_convolve(xt, yt)


@pytest.mark.parametrize("name", SHIPPED)
def test_trace_and_adjoint_properties(name):
    c = ctx(name)
    rng = random.Random(f"tr-{name}")
    for _ in range(20):
        x, y, z = (random_operator(rng, c) for _ in range(3))
        assert trace(c, convolve(c, x, y)) == trace(c, convolve(c, y, x))
        assert adjoint(c, adjoint(c, x)) == x
        assert adjoint(c, convolve(c, x, y)) == convolve(c, adjoint(c, y), adjoint(c, x))
        assert convolve(c, convolve(c, x, y), z) == convolve(c, x, convolve(c, y, z))
        assert trace(c, convolve(c, adjoint(c, x), x)) == ComplexRational(x.norm2_sq(), 0)


@pytest.mark.parametrize("name", SHIPPED)
def test_conditional_expectation_properties(name):
    c = ctx(name)
    rng = random.Random(f"ea-{name}")
    for _ in range(20):
        x, y = random_operator(rng, c), random_operator(rng, c)
        a = project_onto_gamma0(c, random_operator(rng, c))
        ex = project_onto_gamma0(c, x)
        assert project_onto_gamma0(c, ex) == ex
        assert trace(c, ex) == trace(c, x)
        assert project_onto_gamma0(c, convolve(c, a, y)) == convolve(c, a, project_onto_gamma0(c, y))
        assert project_onto_gamma0(c, convolve(c, y, a)) == convolve(c, project_onto_gamma0(c, y), a)
        assert project_onto_gamma0(c, adjoint(c, x)) == adjoint(c, ex)


def test_f2_projection_matches_matrix_oracle():
    f2 = ctx("f2")
    rng = random.Random("f2-ea")
    for _ in range(200):
        w = random_word(rng, ["a", "b"], rng.randint(0, 6))
        x = GroupOperator.delta(f2.canonicalize(w))
        assert bool(project_onto_gamma0(f2, x)) == f2_in_gamma0(w)


# -- mixing defects -------------------------------------------------------------


def test_defect_requires_gamma0_support():
    f2 = ctx("f2")
    x = GroupOperator.delta(f2.canonicalize("b"))
    with pytest.raises(SupportViolation):
        mixing_defect(f2, x, GroupOperator.delta(f2.canonicalize("b")), x)


@pytest.mark.parametrize("name", SHIPPED)
def test_conjugation_equals_translation(name):
    c = ctx(name)
    rng = random.Random(f"conj-{name}")
    gammas = list(c.ball(Side.GAMMA0, 3))
    for _ in range(12):
        x, y = random_operator(rng, c), random_operator(rng, c)
        for gam in rng.sample(gammas, min(4, len(gammas))):
            d = mixing_defect(c, x, GroupOperator.delta(gam), y)
            e = conjugation_defect(c, x, GroupOperator.delta(c.inv(gam)), y)
            assert d == e


def test_bs23_strong_mixing_curve():
    bs = ctx("bs23")
    x = operator_from_terms(bs, [("b^3", "1")])
    y = operator_from_terms(bs, [("b^-2", "1")])
    curve = strong_mixing_curve(bs, x, y, 10)
    nz = curve.nonzero()
    assert [(bs.format(g), d) for g, d in nz] == [("a", 1)]
    assert len(curve.index) == 21


def test_gamma_2_3_curve_never_decays():
    g = ctx("gamma_2_3")
    u = g.canonicalize("u")
    x, y = GroupOperator.delta(u), GroupOperator.delta(g.inv(u))
    curve = strong_mixing_curve(g, x, y, 3)
    ones = [i for i, d in curve.nonzero()]
    assert len(ones) >= 8 and all(d == 1 for _, d in curve.nonzero())
    assert all(i.payload[1:] == (1, 0, 0) for i in ones)


def test_counting_identity_example():
    f2 = ctx("f2")
    words = [["b", "a^-1"], ["a^-1", "b^-1"], ["b"]]
    x = GroupOperator.indicator(f2.canonicalize(w) for w in words)
    g0 = f2.canonicalize("a^2")
    # only (b a^-1) a^2 (a^-1 b^-1) = 1 lands
    landing = sum(1 for g in words for h in words if f2_in_gamma0(g + ["a^2"] + h))
    assert mixing_defect(f2, x, GroupOperator.delta(g0), x) == landing == 1


def test_weak_mixing_witness_matches_ss_on_f2():
    f2 = ctx("f2")
    C = [f2.canonicalize("b^-1"), f2.canonicalize("b")]
    F = [GroupOperator.delta(g) for g in C]
    assert weak_mixing_witness(f2, F, 3) == ss_witness(f2, C, 3) == f2.canonicalize("a")
    assert weak_mixing_witness(f2, F, 0) == NotFound(0)
    assert weak_mixing_witness(f2, F, 0, eps_sq=1) == f2.identity()


def test_ah_curves():
    f2 = ctx("f2")
    x = operator_from_terms(f2, [("b", "1"), ("b^-1", "1")])
    curve = ah_curve(f2, x, f2.canonicalize("a"), x, 3)
    assert curve.index == tuple(range(-3, 4))
    assert [d for _, d in curve.nonzero()] == [4]
    assert curve.nonzero()[0][0] == 0
    bs = ctx("bs23")
    c2 = ah_curve(bs, GroupOperator.delta(bs.canonicalize("b^3")), bs.canonicalize("a"),
                  GroupOperator.delta(bs.canonicalize("b^-2")), 4)
    assert c2.nonzero() == [(1, 1)]
    with pytest.raises(NotInGamma0):
        ah_curve(f2, x, f2.canonicalize("b"), x, 2)


def test_coefficient_decay():
    f2 = ctx("f2")
    x = operator_from_terms(f2, [("a^-1", "3"), ("a^-2", "1+i")])
    S = [f2.canonicalize(w) for w in ("1", "a", "a^2", "a^3")]
    assert coefficient_decay(f2, x, S) == [0, 9, 2, 0]


def test_curve_and_decimal_helpers():
    with pytest.raises(ValueError):
        DefectCurve((1, 2), (Fraction(0),))
    assert decimal_rendering(Fraction(1, 3)) == "0.333333333333"
    assert decimal_rendering(Fraction(0)) == "0"
    assert decimal_rendering(Fraction(4)) == "4"


@given(st.data())
@settings(max_examples=30)
def test_defect_is_translation_invariant_under_gamma0(data):
    # E(x v y) - E(x) v E(y) for v = lambda(gamma) vanishes whenever x, y already lie in L(Gamma_0)
    name = data.draw(st.sampled_from(SHIPPED))
    c = ctx(name)
    ball = list(c.ball(Side.GAMMA0, 3))
    gam = data.draw(st.sampled_from(ball))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    x = project_onto_gamma0(c, random_operator(rng, c))
    y = project_onto_gamma0(c, random_operator(rng, c))
    assert mixing_defect(c, x, GroupOperator.delta(gam), y) == 0
