import random

import pytest

from leafconn.ideals import Ideal, normal_form_against, vanishing_ideal_of_point
from leafconn.parse import parse_polynomial
from leafconn.poly import Polynomial, VarContext, grevlex_key

import support

CTX = support.XY


def pp(text, ctx=CTX):
    return parse_polynomial(text, ctx)


def ideal_of(*texts, ctx=CTX, order="grevlex"):
    return Ideal(ctx, [pp(t, ctx) for t in texts], order=order)


def gb_strs(ideal):
    return [str(g) for g in ideal.groebner_basis()]


def test_coordinate_ideal():
    assert gb_strs(ideal_of("x", "y")) == ["y", "x"]


def test_monomial_ideal_monic():
    assert gb_strs(ideal_of("3*x^2", "2*x*y")) == ["x*y", "x^2"]


def test_scaled_generators_same_basis():
    assert gb_strs(ideal_of("3*x + 3*y")) == gb_strs(ideal_of("x + y"))


def test_circle_line_intersection():
    assert gb_strs(ideal_of("x^2 + y^2 - 1", "x - y")) == ["x - y", "y^2 - 1/2"]


def test_substitution_depends_on_order():
    yx = VarContext(["y", "x"])
    gens = ["y - x^2"]
    lex_ideal = ideal_of(*gens, ctx=yx, order="lex")
    assert str(lex_ideal.normal_form(pp("y^2", yx))) == "x^4"
    grevlex_ideal = ideal_of(*gens, ctx=yx)
    assert str(grevlex_ideal.normal_form(pp("y^2", yx))) == "y^2"


def test_unknown_order_rejected():
    with pytest.raises(ValueError):
        Ideal(CTX, [pp("x")], order="weird")


def test_zero_ideal():
    assert Ideal(CTX, []).is_zero_ideal
    assert Ideal(CTX, [Polynomial.zero(CTX)]).is_zero_ideal
    p = pp("x^2 - y")
    assert Ideal(CTX, []).normal_form(p) == p


def test_vanishing_ideal_evaluates():
    ideal = vanishing_ideal_of_point(CTX, (1, 2))
    assert gb_strs(ideal) == ["y - 2", "x - 1"]
    assert ideal.normal_form(pp("x^2*y")) == Polynomial.constant(CTX, 2)
    assert ideal.contains(pp("(x - 1)*(y + 5)"))


def test_contains():
    ideal = ideal_of("x", "y")
    assert ideal.contains(pp("x^2 + 3*x*y"))
    assert not ideal.contains(pp("x + 1"))


def test_normal_form_properties_random():
    rng = random.Random(5)
    for _ in range(15):
        gens = [support.rand_nonzero_poly(rng, CTX) for _ in range(rng.randint(1, 2))]
        ideal = Ideal(CTX, gens)
        p = support.rand_poly(rng, CTX)
        q = support.rand_poly(rng, CTX)
        np, nq = ideal.normal_form(p), ideal.normal_form(q)
        assert ideal.normal_form(np) == np
        assert ideal.normal_form(p + q) == ideal.normal_form(np + nq)
        assert ideal.normal_form(p * q) == ideal.normal_form(np * nq)
        for g in gens:
            assert ideal.normal_form(g * p).is_zero


def test_generator_permutation_invariance():
    rng = random.Random(9)
    for _ in range(8):
        gens = [support.rand_nonzero_poly(rng, CTX) for _ in range(3)]
        ideal = Ideal(CTX, gens)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert gb_strs(Ideal(CTX, shuffled)) == gb_strs(ideal)


def test_normal_form_against_no_reduction_needed():
    basis = [pp("x^2")]
    p = pp("x + y")
    assert normal_form_against(p, basis, grevlex_key) == p
