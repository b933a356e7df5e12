"""Ideals in finite-dimensional Lie algebras and the obstruction class
measuring how far an ideal is from splitting off.

Given an ideal V of L, the quotient H_V = V/[V,V] carries an L-action
through brackets of representatives (V itself acts trivially).  Any
linear projection P of L onto V that fixes V pointwise gives an
H_V-valued 1-cochain x -> [P(x)]; its Koszul coboundary is annihilated
by insertions of V, hence descends to a 2-cochain on L/V.  Its class in
H^2(L/V, H_V) is independent of the projection, vanishes exactly when
the quotient map admits a splitting compatible with the bracket up to
[V,V], and survives passing to L/[V,V].

All linear algebra is exact over the rationals; representative and
complement choices are taken from leftmost-pivot row reduction, so every
output is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import linalg
from .liealg import ChainElement, CochainCE, LieAlgebraFD, LieModuleFD, ce_coboundary, coboundary_matrix

Vec = list[Fraction]


def _vector_str(algebra: LieAlgebraFD, vec: Sequence[Fraction]) -> str:
    return str(ChainElement.vector(algebra, list(vec)))


class LieIdeal:
    """A subspace closed under brackets with the whole algebra."""

    def __init__(self, ambient: LieAlgebraFD, rows: Sequence[Sequence[Fraction | int]]):
        clean = [[Fraction(c) for c in row] for row in rows]
        if any(len(row) != ambient.dim for row in clean):
            raise ValueError("ideal basis vectors must have ambient dimension")
        reduced, pivots = linalg.rref(clean)
        if len(reduced) != len(clean):
            raise ValueError("ideal basis vectors must be linearly independent")
        self.ambient = ambient
        self.rows = [list(row) for row in clean]
        self.reduced = reduced
        self.pivots = pivots
        self.dim = len(reduced)
        for i in range(ambient.dim):
            unit = [Fraction(0)] * ambient.dim
            unit[i] = Fraction(1)
            for row in self.rows:
                image = ambient.bracket(unit, row)
                if any(linalg.residue(image, reduced, pivots)):
                    raise ValueError(
                        f"not an ideal: [{ambient.labels[i]}, "
                        f"{_vector_str(ambient, row)}] = "
                        f"{_vector_str(ambient, image)} leaves the subspace"
                    )

    @classmethod
    def from_labels(cls, ambient: LieAlgebraFD, *labels: str) -> "LieIdeal":
        rows = []
        for label in labels:
            unit = [Fraction(0)] * ambient.dim
            unit[ambient.index(label)] = Fraction(1)
            rows.append(unit)
        return cls(ambient, rows)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(linalg.residue(list(vec), self.reduced, self.pivots))

    def coordinates(self, vec: Sequence[Fraction]) -> Vec:
        """Coefficients of ``vec`` in the stored basis rows."""
        solution = linalg.solve(linalg.transpose(self.rows), list(vec))
        if solution is None:
            raise ValueError(f"{_vector_str(self.ambient, vec)} is not in the ideal")
        return solution

    def __repr__(self) -> str:
        gens = "; ".join(_vector_str(self.ambient, row) for row in self.rows)
        return f"LieIdeal({gens})"


@dataclass(frozen=True)
class ComplementResult:
    rows: tuple[tuple[Fraction, ...], ...]
    verdict: str


def complement_submodule(ideal: LieIdeal) -> ComplementResult:
    """The smallest invariant-coefficient submodule containing the ideal.

    With scalar rational coefficients the invariants algebra is just the
    rationals, so the submodule generated by the ideal is the ideal:
    every ideal is complete.  The function exists to make that collapse
    explicit and queryable.
    """
    return ComplementResult(tuple(tuple(row) for row in ideal.rows), "complete")


class H1Quotient:
    """V/[V,V] with a deterministic basis and reduction map."""

    def __init__(self, ideal: LieIdeal):
        g = ideal.ambient
        commutators = []
        for i in range(ideal.dim):
            for j in range(i + 1, ideal.dim):
                image = g.bracket(ideal.rows[i], ideal.rows[j])
                if any(image):
                    commutators.append(ideal.coordinates(image))
        reduced, pivots = linalg.rref(commutators)
        self.ideal = ideal
        self.commutator_reduced = reduced
        self.commutator_pivots = pivots
        self.positions = [k for k in range(ideal.dim) if k not in set(pivots)]
        self.dim = len(self.positions)
        self.representatives = [list(ideal.rows[k]) for k in self.positions]
        self.labels = tuple(
            f"[{_vector_str(g, ideal.rows[k])}]" for k in self.positions
        )

    def reduce(self, vec: Sequence[Fraction]) -> Vec:
        """Class of an ideal element (ambient coordinates) in the basis."""
        coords = self.ideal.coordinates(vec)
        residue = linalg.residue(coords, self.commutator_reduced, self.commutator_pivots)
        return [residue[k] for k in self.positions]


def h1_of_ideal(ideal: LieIdeal) -> H1Quotient:
    return H1Quotient(ideal)


def action_on_h1(ideal: LieIdeal, h1: Optional[H1Quotient] = None) -> list[list[Vec]]:
    """One matrix per ambient basis element, acting by bracket on classes."""
    g = ideal.ambient
    if h1 is None:
        h1 = H1Quotient(ideal)
    matrices = []
    for i in range(g.dim):
        unit = [Fraction(0)] * g.dim
        unit[i] = Fraction(1)
        columns = [h1.reduce(g.bracket(unit, rep)) for rep in h1.representatives]
        matrices.append(
            [[columns[c][r] for c in range(h1.dim)] for r in range(h1.dim)]
        )
    return matrices


def h1_module(ideal: LieIdeal, h1: Optional[H1Quotient] = None) -> tuple[H1Quotient, LieModuleFD]:
    """The classes module together with its validated ambient action."""
    if h1 is None:
        h1 = H1Quotient(ideal)
    module = LieModuleFD(ideal.ambient, action_on_h1(ideal, h1), dim=h1.dim)
    return h1, module


class ProjectionOperator:
    """A linear retraction of the algebra onto the ideal."""

    def __init__(self, ideal: LieIdeal, matrix: Sequence[Sequence[Fraction | int]]):
        n = ideal.ambient.dim
        rows = [[Fraction(c) for c in row] for row in matrix]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("projection matrix must be square of ambient size")
        for i in range(n):
            unit = [Fraction(0)] * n
            unit[i] = Fraction(1)
            image = linalg.matvec(rows, unit)
            if not ideal.contains(image):
                raise ValueError(
                    f"projection image of {ideal.ambient.labels[i]} is not in the ideal"
                )
        for row in ideal.rows:
            if linalg.matvec(rows, row) != list(row):
                raise ValueError(
                    f"projection does not fix {_vector_str(ideal.ambient, row)}"
                )
        self.ideal = ideal
        self.matrix = rows

    @classmethod
    def canonical(cls, ideal: LieIdeal) -> "ProjectionOperator":
        """Projection along the coordinate complement of the pivot columns."""
        n = ideal.ambient.dim
        columns = []
        for i in range(n):
            unit = [Fraction(0)] * n
            unit[i] = Fraction(1)
            res = linalg.residue(unit, ideal.reduced, ideal.pivots)
            columns.append([a - b for a, b in zip(unit, res)])
        return cls(ideal, [[columns[c][r] for c in range(n)] for r in range(n)])

    def apply(self, vec: Sequence[Fraction]) -> Vec:
        return linalg.matvec(self.matrix, list(vec))


def projection_form(
    ideal: LieIdeal,
    projection: Optional[ProjectionOperator] = None,
    h1: Optional[H1Quotient] = None,
    module: Optional[LieModuleFD] = None,
) -> CochainCE:
    """The 1-cochain x -> [P(x)] on the ambient algebra, valued in V/[V,V]."""
    g = ideal.ambient
    if projection is None:
        projection = ProjectionOperator.canonical(ideal)
    if h1 is None or module is None:
        h1, module = h1_module(ideal, h1)
    data = {}
    for i in range(g.dim):
        unit = [Fraction(0)] * g.dim
        unit[i] = Fraction(1)
        data[(i,)] = tuple(h1.reduce(projection.apply(unit)))
    return CochainCE(g, module, 1, data)


class QuotientAlgebra:
    """L/V with basis the coordinate complement of the ideal's pivots."""

    def __init__(self, ideal: LieIdeal):
        g = ideal.ambient
        pivot_set = set(ideal.pivots)
        self.ideal = ideal
        self.positions = [i for i in range(g.dim) if i not in pivot_set]
        labels = tuple(g.labels[i] for i in self.positions)
        n_q = len(self.positions)
        for row in ideal.rows:
            for a in self.positions:
                unit = [Fraction(0)] * g.dim
                unit[a] = Fraction(1)
                if any(self._project_raw(g.bracket(row, unit))):
                    raise RuntimeError("quotient bracket is not well defined")
        table = [[[Fraction(0)] * n_q for _ in range(n_q)] for _ in range(n_q)]
        for a_pos, a in enumerate(self.positions):
            for b_pos, b in enumerate(self.positions):
                ua = [Fraction(0)] * g.dim
                ua[a] = Fraction(1)
                ub = [Fraction(0)] * g.dim
                ub[b] = Fraction(1)
                table[a_pos][b_pos] = self._project_raw(g.bracket(ua, ub))
        self.algebra = LieAlgebraFD(labels, table)

    def _project_raw(self, vec: Sequence[Fraction]) -> Vec:
        res = linalg.residue(list(vec), self.ideal.reduced, self.ideal.pivots)
        return [res[p] for p in self.positions]

    def project(self, vec: Sequence[Fraction]) -> Vec:
        return self._project_raw(vec)

    def lift(self, vec: Sequence[Fraction]) -> Vec:
        """The coordinate section: quotient coordinates back into the algebra."""
        out = [Fraction(0)] * self.ideal.ambient.dim
        for coeff, p in zip(vec, self.positions):
            out[p] = Fraction(coeff)
        return out


def quotient_by_ideal(algebra: LieAlgebraFD, ideal: LieIdeal) -> QuotientAlgebra:
    if ideal.ambient is not algebra:
        raise ValueError("ideal lives in a different algebra")
    return QuotientAlgebra(ideal)


def quotient_module(quotient: QuotientAlgebra, h1: H1Quotient, module: LieModuleFD) -> LieModuleFD:
    """The classes module restricted to quotient generators (V acts trivially,
    so the action descends)."""
    mats = [module.matrices[p] for p in quotient.positions]
    return LieModuleFD(quotient.algebra, mats, dim=h1.dim)


def pullback_cochain(
    quotient: QuotientAlgebra, w: CochainCE, ambient_module: LieModuleFD
) -> CochainCE:
    """Precompose a cochain on L/V with the quotient map."""
    g = quotient.ideal.ambient
    data = {}
    for blade in g.blades(w.grade):
        arguments = []
        for i in blade:
            unit = [Fraction(0)] * g.dim
            unit[i] = Fraction(1)
            arguments.append(quotient.project(unit))
        data[blade] = tuple(w.evaluate(arguments))
    return CochainCE(g, ambient_module, w.grade, data)


class CharClassResult:
    """The descended 2-cochain and its cohomology class coordinates."""

    def __init__(
        self,
        ideal: LieIdeal,
        h1: H1Quotient,
        quotient: QuotientAlgebra,
        module: LieModuleFD,
        form: CochainCE,
        class_vector: tuple[Fraction, ...],
    ):
        self.ideal = ideal
        self.h1 = h1
        self.quotient = quotient
        self.module = module
        self.form = form
        self.class_vector = class_vector

    @property
    def is_zero(self) -> bool:
        return not any(self.class_vector)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        q = self.quotient.algebra
        chunks = []
        m = self.h1.dim
        for k, blade in enumerate(q.blades(2)):
            coords = self.class_vector[k * m : (k + 1) * m]
            if not any(coords):
                continue
            value = " + ".join(
                f"{c}*{label}" if c != 1 else label
                for c, label in zip(coords, self.h1.labels)
                if c
            )
            blade_str = " ^ ".join(f"{q.labels[i]}*" for i in blade)
            chunks.append(f"{blade_str} -> {value}")
        return "; ".join(chunks)

    def __repr__(self) -> str:
        return f"CharClassResult({self})"


def characteristic_class(
    ideal: LieIdeal, projection: Optional[ProjectionOperator] = None
) -> CharClassResult:
    """The obstruction class of the ideal in H^2(L/V, V/[V,V])."""
    g = ideal.ambient
    h1, module = h1_module(ideal)
    quotient = quotient_by_ideal(g, ideal)
    q_module = quotient_module(quotient, h1, module)
    if h1.dim == 0 or len(quotient.positions) < 2:
        empty = CochainCE(quotient.algebra, q_module, 2)
        return CharClassResult(ideal, h1, quotient, q_module, empty, ())
    alpha = projection_form(ideal, projection, h1, module)
    dalpha = ce_coboundary(alpha)
    for row in ideal.rows:
        for i in range(g.dim):
            unit = [Fraction(0)] * g.dim
            unit[i] = Fraction(1)
            if any(dalpha.evaluate([list(row), unit])):
                raise RuntimeError(
                    "coboundary of the projection form is not annihilated by "
                    "the ideal; this indicates a bug"
                )
    data = {}
    for blade in quotient.algebra.blades(2):
        lifts = []
        for j in blade:
            unit_q = [Fraction(0)] * quotient.algebra.dim
            unit_q[j] = Fraction(1)
            lifts.append(quotient.lift(unit_q))
        data[blade] = tuple(dalpha.evaluate(lifts))
    descended = CochainCE(quotient.algebra, q_module, 2, data)
    if not ce_coboundary(descended).is_zero:
        raise RuntimeError("descended 2-cochain is not closed; this indicates a bug")
    exact_rows = linalg.transpose(coboundary_matrix(quotient.algebra, q_module, 1))
    reduced, pivots = linalg.rref(exact_rows)
    class_vector = tuple(linalg.residue(descended.coordinates(), reduced, pivots))
    return CharClassResult(ideal, h1, quotient, q_module, descended, class_vector)


@dataclass
class Abelianization:
    algebra: LieAlgebraFD
    ideal: LieIdeal
    project: Callable[[Sequence[Fraction]], Vec]


def abelianize(algebra: LieAlgebraFD, ideal: LieIdeal) -> Abelianization:
    """Quotient by [V,V]; the ideal's image becomes abelian."""
    commutators = []
    for i in range(ideal.dim):
        for j in range(i + 1, ideal.dim):
            image = algebra.bracket(ideal.rows[i], ideal.rows[j])
            if any(image):
                commutators.append(image)
    reduced, _pivots = linalg.rref(commutators)
    if not reduced:
        def identity(vec: Sequence[Fraction]) -> Vec:
            return [Fraction(c) for c in vec]

        return Abelianization(algebra, ideal, identity)
    vv = LieIdeal(algebra, reduced)
    quotient = quotient_by_ideal(algebra, vv)
    image_rows = [quotient.project(row) for row in ideal.rows]
    image_reduced, _ = linalg.rref(image_rows)
    new_ideal = LieIdeal(quotient.algebra, image_reduced)
    return Abelianization(quotient.algebra, new_ideal, quotient.project)


def abelianized_class_agrees(
    algebra: LieAlgebraFD,
    ideal: LieIdeal,
    projection: Optional[ProjectionOperator] = None,
) -> bool:
    """Whether the class computed before and after abelianizing coincides
    under the canonical identification of the two quotient pictures."""
    before = characteristic_class(ideal, projection)
    ab = abelianize(algebra, ideal)
    after = characteristic_class(ab.ideal)
    if before.h1.dim != after.h1.dim:
        return False
    if before.h1.dim == 0:
        return before.is_zero and after.is_zero
    # identify the two quotient algebras via images of coordinate lifts
    q_a, q_b = before.quotient, after.quotient
    n_a = q_a.algebra.dim
    if n_a != q_b.algebra.dim:
        return False
    m_cols = []
    for j in range(n_a):
        unit_q = [Fraction(0)] * n_a
        unit_q[j] = Fraction(1)
        m_cols.append(q_b.project(ab.project(q_a.lift(unit_q))))
    # identify the class modules via images of representatives
    n_cols = [after.h1.reduce(ab.project(rep)) for rep in before.h1.representatives]
    n_matrix = [[n_cols[c][r] for c in range(len(n_cols))] for r in range(before.h1.dim)]
    n_inverse = linalg.invert(n_matrix)
    if n_inverse is None:
        return False
    # pull the abelianized form back and compare modulo exact cochains
    data = {}
    for blade in q_a.algebra.blades(2):
        value = after.form.evaluate([m_cols[blade[0]], m_cols[blade[1]]])
        data[blade] = tuple(linalg.matvec(n_inverse, value))
    pulled = CochainCE(q_a.algebra, before.module, 2, data)
    difference = before.form - pulled
    exact_rows = linalg.transpose(coboundary_matrix(q_a.algebra, before.module, 1))
    reduced, pivots = linalg.rref(exact_rows)
    return not any(linalg.residue(difference.coordinates(), reduced, pivots))
