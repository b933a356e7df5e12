"""Derivations preserving an ideal, computed exactly under a degree bound.

The spaces involved (all polynomial vector fields preserving an ideal,
those mapping everything into it, the ideal multiples of a distribution)
are infinite-dimensional over the rationals, so every computation here is
sliced to coefficient degree <= d with the bound always reported back.
Membership tests against the ideal are exact via normal forms, so within
a slice the answers are exact; what a slice cannot do is certify a
statement about all degrees, and the regularity verdict says so
explicitly instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from . import linalg
from .ideals import Ideal
from .poly import ContextMismatch, Polynomial, VarContext, grevlex_key
from .tensors import GradeError, MultivectorField


def monomials_up_to(context: VarContext, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree <= degree, ascending grevlex."""
    n = len(context)
    out: list[tuple[int, ...]] = []

    def build(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == n - 1:
            for e in range(remaining + 1):
                out.append(tuple(prefix + [e]))
            return
        for e in range(remaining + 1):
            build(prefix + [e], remaining - e, pos + 1)

    if n == 1:
        out = [(e,) for e in range(degree + 1)]
    else:
        build([], degree, 0)
    out.sort(key=grevlex_key)
    return out


def _field_coefficient_degree(field: MultivectorField) -> int:
    return max((c.total_degree() for _, c in field.components()), default=0)


def preserves_ideal(field: MultivectorField, ideal: Ideal) -> bool:
    """X(g) in I for every generator g — enough, by the Leibniz rule."""
    if field.grade != 1 and not field.is_zero:
        raise GradeError("expected a vector field")
    if field.context != ideal.context:
        raise ContextMismatch("field and ideal contexts differ")
    if field.is_zero:
        return True
    return all(
        ideal.normal_form(field.apply_to(g)).is_zero for g in ideal.generators
    )


def maps_into_ideal(field: MultivectorField, ideal: Ideal) -> bool:
    """Every coefficient of X lies in I (i.e. X(x_i) in I for all i)."""
    if field.grade != 1 and not field.is_zero:
        raise GradeError("expected a vector field")
    if field.context != ideal.context:
        raise ContextMismatch("field and ideal contexts differ")
    return all(ideal.normal_form(c).is_zero for _, c in field.components())


def _vector_to_field(
    context: VarContext, monos: Sequence[tuple[int, ...]], vec: Sequence[Fraction]
) -> MultivectorField:
    n = len(context)
    coeffs = [Polynomial.zero(context) for _ in range(n)]
    for k, value in enumerate(vec):
        if value == 0:
            continue
        i, m = divmod(k, len(monos))
        coeffs[i] = coeffs[i] + Polynomial.monomial(context, monos[m], value)
    return MultivectorField(
        context, 1, {(i,): c for i, c in enumerate(coeffs) if not c.is_zero}
    )


def _field_to_vector(
    field: MultivectorField, monos: Sequence[tuple[int, ...]]
) -> Optional[list[Fraction]]:
    index = {m: k for k, m in enumerate(monos)}
    vec = [Fraction(0)] * (len(field.context) * len(monos))
    for (i,), coeff in field.components():
        for exp, value in coeff.terms():
            if exp not in index:
                return None
            vec[i * len(monos) + index[exp]] = value
    return vec


def der_I_basis(ideal: Ideal, degree_bound: int) -> list[MultivectorField]:
    """Basis of the ideal-preserving fields with coefficient degree <= bound.

    The membership conditions normal_form(X(g_j)) = 0 are linear in the
    unknown field coefficients, so the space is an exact rational
    nullspace; the basis order follows the free-coordinate order
    (direction index, then ascending grevlex monomial).
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    context = ideal.context
    n = len(context)
    monos = monomials_up_to(context, degree_bound)
    unknowns = n * len(monos)

    rows: list[list[Fraction]] = []
    row_of: dict[tuple[int, tuple[int, ...]], int] = {}
    for j, g in enumerate(ideal.generators):
        for i in range(n):
            dg = g.partial(i)
            for m, mono in enumerate(monos):
                reduced = ideal.normal_form(
                    Polynomial.monomial(context, mono, Fraction(1)) * dg
                )
                for exp, value in reduced.terms():
                    key = (j, exp)
                    if key not in row_of:
                        row_of[key] = len(rows)
                        rows.append([Fraction(0)] * unknowns)
                    rows[row_of[key]][i * len(monos) + m] += value
    kernel = linalg.nullspace(rows, unknowns)
    return [_vector_to_field(context, monos, vec) for vec in kernel]


@dataclass(frozen=True)
class RegularityResult:
    status: Literal["regular", "not_regular", "inconclusive"]
    witness: Optional[MultivectorField]
    truncated_at: int

    def __str__(self) -> str:
        if self.status == "not_regular":
            return f"not_regular (witness {self.witness}, degree <= {self.truncated_at})"
        return f"{self.status} (degree <= {self.truncated_at})"


def is_regular_integral(
    distribution: Sequence[MultivectorField], ideal: Ideal, degree_bound: int
) -> RegularityResult:
    """Compare, within the slice, the ideal-vanishing part of a distribution
    with its ideal multiples.

    The distribution is the module generated by the given fields.  Its
    ideal-vanishing part is computed exactly inside the slice; the ideal
    multiples are generated with extra multiplier-degree headroom before
    being intersected with the slice, so a reported witness fails every
    representation within that budget.  Equality inside a slice of a
    nonzero ideal is reported as "inconclusive" (the slice cannot speak
    for higher degrees); the zero ideal is decidable outright.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    context = ideal.context
    for field in distribution:
        if field.context != context:
            raise ContextMismatch("distribution and ideal contexts differ")
        if not preserves_ideal(field, ideal):
            raise ValueError(f"ideal is not an integral: {field} does not preserve it")

    if ideal.is_zero_ideal:
        # X(A) subset of (0) forces X = 0, so both sides are zero in every degree.
        return RegularityResult("regular", None, degree_bound)

    d = degree_bound
    monos = monomials_up_to(context, d)
    gen_degrees = [_field_coefficient_degree(f) for f in distribution]

    # The distribution slice: monomial multiples of the generators that stay
    # within coefficient degree d.
    d_rows: list[list[Fraction]] = []
    for field, gdeg in zip(distribution, gen_degrees):
        if field.is_zero:
            continue
        for mono in monomials_up_to(context, max(d - gdeg, 0)):
            scaled = field.scale(Polynomial.monomial(context, mono, Fraction(1)))
            vec = _field_to_vector(scaled, monos)
            if vec is not None:
                d_rows.append(vec)
    d_basis, _ = linalg.rref(d_rows)

    # Within the span, select the subspace with every coefficient in the ideal.
    constraints: list[list[Fraction]] = []
    row_of: dict[tuple[int, tuple[int, ...]], int] = {}
    for t, basis_vec in enumerate(d_basis):
        field = _vector_to_field(context, monos, basis_vec)
        for (i,), coeff in field.components():
            reduced = ideal.normal_form(coeff)
            for exp, value in reduced.terms():
                key = (i, exp)
                if key not in row_of:
                    row_of[key] = len(constraints)
                    constraints.append([Fraction(0)] * len(d_basis))
                constraints[row_of[key]][t] += value
    lam_basis = linalg.nullspace(constraints, len(d_basis))
    zero_part: list[list[Fraction]] = []
    for lam in lam_basis:
        combo = [Fraction(0)] * len(monos) * len(context)
        for t, weight in enumerate(lam):
            if weight == 0:
                continue
            for k, value in enumerate(d_basis[t]):
                combo[k] += weight * value
        zero_part.append(combo)

    # Ideal multiples, generated with headroom then cut back to the slice.
    slack = max(d, 2)
    big_monos = monomials_up_to(context, d + slack)
    big_index = {m: k for k, m in enumerate(big_monos)}
    id_rows: list[list[Fraction]] = []
    for gb_elem in ideal.groebner_basis():
        for field, gdeg in zip(distribution, gen_degrees):
            if field.is_zero:
                continue
            budget = d + slack - gb_elem.total_degree() - gdeg
            for mono in monomials_up_to(context, max(budget, 0)):
                scaled = field.scale(
                    Polynomial.monomial(context, mono, Fraction(1)) * gb_elem
                )
                vec = [Fraction(0)] * (len(context) * len(big_monos))
                ok = True
                for (i,), coeff in scaled.components():
                    for exp, value in coeff.terms():
                        if exp not in big_index:
                            ok = False
                            break
                        vec[i * len(big_monos) + big_index[exp]] = value
                    if not ok:
                        break
                if ok:
                    id_rows.append(vec)
    id_big_basis, _ = linalg.rref(id_rows)
    # Intersect with the slice: kill every coordinate of degree above d.
    high = [k for k, m in enumerate(big_monos) if sum(m) > d]
    cut_rows: list[list[Fraction]] = []
    for vec in id_big_basis:
        cut_rows.append(
            [
                vec[i * len(big_monos) + k]
                for i in range(len(context))
                for k in high
            ]
        )
    inter = linalg.nullspace(linalg.transpose(cut_rows) if cut_rows else [], len(id_big_basis))
    low_positions = [
        i * len(big_monos) + big_index[m] for i in range(len(context)) for m in monos
    ]
    id_slice: list[list[Fraction]] = []
    for weights in inter:
        combo = [Fraction(0)] * (len(context) * len(big_monos))
        for t, weight in enumerate(weights):
            if weight == 0:
                continue
            for k, value in enumerate(id_big_basis[t]):
                combo[k] += weight * value
        id_slice.append([combo[k] for k in low_positions])
    id_basis, id_pivots = linalg.rref(id_slice)

    for vec in zero_part:
        if any(linalg.residue(vec, id_basis, id_pivots)):
            witness = _vector_to_field(context, monos, vec)
            return RegularityResult("not_regular", witness, d)
    return RegularityResult("inconclusive", None, d)
