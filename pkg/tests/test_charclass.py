import random
from fractions import Fraction

import pytest

from leafconn.charclass import (
    LieIdeal,
    ProjectionOperator,
    abelianize,
    abelianized_class_agrees,
    action_on_h1,
    characteristic_class,
    complement_submodule,
    h1_module,
    h1_of_ideal,
    projection_form,
    pullback_cochain,
    quotient_by_ideal,
)
from leafconn.liealg import (
    abelian_algebra,
    ce_coboundary,
    direct_sum,
    heisenberg3,
    is_closed_cochain,
    sl2,
)

F = Fraction


def center_of_heisenberg():
    h3 = heisenberg3()
    return h3, LieIdeal.from_labels(h3, "h")


def test_ideal_validation():
    h3, _ = center_of_heisenberg()
    with pytest.raises(ValueError, match="linearly independent"):
        LieIdeal(h3, [[F(1), F(0), F(0)], [F(2), F(0), F(0)]])
    with pytest.raises(ValueError, match=r"not an ideal: \[f, e\] = -h leaves the subspace"):
        LieIdeal.from_labels(sl2(), "e")


def test_ideal_membership_and_coordinates():
    h3, ideal = center_of_heisenberg()
    assert ideal.dim == 1
    assert ideal.contains([F(0), F(0), F(5)])
    assert not ideal.contains([F(1), F(0), F(0)])
    assert ideal.coordinates([F(0), F(0), F(5)]) == [F(5)]


def test_commutator_quotient_of_ideal():
    h3, ideal = center_of_heisenberg()
    h1 = h1_of_ideal(ideal)
    assert h1.dim == 1
    assert h1.labels == ("[h]",)
    assert h1.reduce([F(0), F(0), F(3)]) == [F(3)]
    big = direct_sum(sl2(), heisenberg3())
    V = LieIdeal.from_labels(big, "e", "f", "h", "h2")
    assert h1_of_ideal(V).dim == 1


def test_complement_always_complete():
    _, ideal = center_of_heisenberg()
    assert complement_submodule(ideal).verdict == "complete"


def test_action_on_commutator_quotient():
    _, ideal = center_of_heisenberg()
    mats = action_on_h1(ideal)
    assert mats == [[[F(0)]], [[F(0)]], [[F(0)]]]
    h1, module = h1_module(ideal)
    assert module.dim == h1.dim == 1


def test_projection_operator():
    _, ideal = center_of_heisenberg()
    canonical = ProjectionOperator.canonical(ideal)
    assert canonical.apply([F(1), F(1), F(4)]) == [F(0), F(0), F(4)]
    with pytest.raises(ValueError, match="not in the ideal"):
        ProjectionOperator(ideal, [[F(1)] * 3] * 3)
    with pytest.raises(ValueError):
        ProjectionOperator(
            ideal, [[F(0), F(0), F(0)], [F(0), F(0), F(0)], [F(0), F(0), F(2)]]
        )


def test_projection_form_and_subcomplex_property():
    _, ideal = center_of_heisenberg()
    form = projection_form(ideal)
    assert str(form) == "h* -> (1)"
    d = ce_coboundary(form)
    assert str(d) == "e* ^ f* -> (-1)"
    assert d.evaluate([[0, 0, 1], [1, 5, 7]]) == [F(0)]
    assert d.evaluate([[1, 0, 0], [0, 1, 0]]) == [F(-1)]


def test_class_of_heisenberg_center():
    _, ideal = center_of_heisenberg()
    result = characteristic_class(ideal)
    assert not result.is_zero
    assert result.class_vector == (F(-1),)
    assert str(result) == "e* ^ f* -> -1*[h]"
    assert result.h1.labels == ("[h]",)
    assert is_closed_cochain(result.form)


def test_class_of_direct_sum_factor_is_zero():
    big = direct_sum(sl2(), heisenberg3())
    ideal = LieIdeal.from_labels(big, "e2", "f2", "h2")
    result = characteristic_class(ideal)
    assert result.is_zero
    assert result.form.is_zero


def test_class_trivial_cases():
    g = sl2()
    perfect = LieIdeal.from_labels(g, "e", "f", "h")
    result = characteristic_class(perfect)
    assert result.is_zero and result.h1.dim == 0 and result.class_vector == ()
    h3 = heisenberg3()
    codim1 = LieIdeal.from_labels(h3, "e", "h")
    result = characteristic_class(codim1)
    assert result.is_zero and result.quotient.algebra.dim == 1
    ab = abelian_algebra(3)
    flat = LieIdeal.from_labels(ab, "a1")
    assert characteristic_class(flat).is_zero


def test_class_independent_of_projection():
    h3, ideal = center_of_heisenberg()
    base = characteristic_class(ideal).class_vector
    rng = random.Random(73)
    for _ in range(8):
        a, b = rng.randint(-4, 4), rng.randint(-4, 4)
        matrix = [
            [F(0), F(0), F(0)],
            [F(0), F(0), F(0)],
            [F(a), F(b), F(1)],
        ]
        alt = characteristic_class(ideal, ProjectionOperator(ideal, matrix))
        assert alt.class_vector == base


def test_quotient_algebra():
    h3, ideal = center_of_heisenberg()
    quotient = quotient_by_ideal(h3, ideal)
    assert quotient.algebra.labels == ("e", "f")
    assert quotient.project([F(1), F(2), F(9)]) == [F(1), F(2)]
    lifted = quotient.lift([F(1), F(2)])
    assert quotient.project(lifted) == [F(1), F(2)]
    assert quotient.algebra.bracket_basis(0, 1) == (F(0), F(0))


def test_pullback_keeps_values_on_quotient_lifts():
    h3, ideal = center_of_heisenberg()
    result = characteristic_class(ideal)
    _, ambient_module = h1_module(ideal, result.h1)
    back = pullback_cochain(result.quotient, result.form, ambient_module)
    assert back.evaluate([[1, 0, 0], [0, 1, 0]]) == list(
        result.form.evaluate([[1, 0], [0, 1]])
    )
    assert back.evaluate([[0, 0, 1], [0, 1, 0]]) == [F(0)]


def test_abelianize():
    big = direct_sum(sl2(), heisenberg3())
    V = LieIdeal.from_labels(big, "e", "f", "h", "h2")
    ab = abelianize(big, V)
    assert ab.algebra.dim == 3
    assert ab.algebra.labels == ("e2", "f2", "h2")
    h3, center = center_of_heisenberg()
    same = abelianize(h3, center)
    assert same.algebra is h3


def test_abelianization_preserves_class():
    h3, center = center_of_heisenberg()
    assert abelianized_class_agrees(h3, center)
    big = direct_sum(sl2(), heisenberg3())
    V = LieIdeal.from_labels(big, "e", "f", "h", "h2")
    assert abelianized_class_agrees(big, V)
