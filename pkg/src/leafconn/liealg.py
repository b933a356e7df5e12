"""Finite-dimensional Lie algebras over exact rationals, with the chain
and cochain complexes attached to them.

Structure constants are validated (antisymmetry and the Jacobi identity)
at construction, so downstream code can rely on them.  Chains live in the
exterior algebra on the basis; cochains carry values in a finite-
dimensional module given by action matrices.  The boundary operator
sends a basis blade x_1 ^ ... ^ x_m to

    sum_{i<j} (-1)^(i+j) [x_i, x_j] ^ ... (x_i, x_j dropped) ...,

the coboundary is the Koszul formula

    (dw)(X_1..X_{m+1}) = sum_i (-1)^(i-1) X_i w(..drop i..)
                       + sum_{i<j} (-1)^(i+j) w([X_i,X_j], ..drop i,j..),

and the wedge-degree bracket is defined by the deviation of the boundary
from being an odd derivation:

    [u, v] = delta(u) ^ v + (-1)^m u ^ delta(v) - delta(u ^ v).

All homology/cohomology dimensions come from exact rational row
reduction; representative choices are deterministic (leftmost pivots).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

from . import linalg

Vec = list[Fraction]
IndexTuple = tuple[int, ...]


def _insert_sign(element: int, rest: IndexTuple) -> tuple[IndexTuple, int]:
    """Sorted insertion of one index into an increasing tuple, with parity."""
    if element in rest:
        return (), 0
    before = sum(1 for r in rest if r < element)
    merged = tuple(sorted(rest + (element,)))
    return merged, (-1 if before % 2 else 1)


class LieAlgebraFD:
    """A Lie algebra given by labeled basis and structure constants."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[Sequence[Fraction | int]]]):
        labels = tuple(labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("basis labels must be distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("structure-constant table must be n x n x n")
        self.labels = labels
        self.dim = n
        self._table: tuple[tuple[tuple[Fraction, ...], ...], ...] = tuple(
            tuple(tuple(Fraction(c) for c in cell) for cell in row) for row in table
        )
        for i in range(n):
            for j in range(n):
                if len(self._table[i][j]) != n:
                    raise ValueError("structure-constant table must be n x n x n")
        self._validate()

    # -- construction helpers ----------------------------------------------

    @classmethod
    def from_brackets(
        cls,
        labels: Sequence[str],
        brackets: Mapping[tuple[str, str], Mapping[str, Fraction | int]],
    ) -> "LieAlgebraFD":
        """Build from sparse relations like {("e","f"): {"h": 1}}.

        Unlisted brackets are zero; the antisymmetric counterparts are
        filled in automatically.
        """
        labels = tuple(labels)
        index = {name: k for k, name in enumerate(labels)}
        n = len(labels)
        table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (a, b), combo in brackets.items():
            i, j = index[a], index[b]
            for name, coeff in combo.items():
                k = index[name]
                value = Fraction(coeff)
                table[i][j][k] += value
                table[j][i][k] -= value
        return cls(labels, table)

    def _validate(self) -> None:
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if self._table[i][j][k] != -self._table[j][i][k]:
                        raise ValueError(
                            f"structure constants are not antisymmetric at "
                            f"([{self.labels[i]},{self.labels[j]}], {self.labels[k]})"
                        )
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = [Fraction(0)] * n
                    for vec, other in (
                        (self.bracket_basis(i, j), k),
                        (self.bracket_basis(j, k), i),
                        (self.bracket_basis(k, i), j),
                    ):
                        for t, c in enumerate(vec):
                            if c:
                                for s, c2 in enumerate(self.bracket_basis(t, other)):
                                    acc[s] += c * c2
                    if any(acc):
                        raise ValueError(
                            f"Jacobi identity fails on "
                            f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                        )

    # -- brackets ----------------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self._table[i][j]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in enumerate(self._table[i][j]):
                    if c:
                        out[k] += a * b * c
        return out

    def blades(self, grade: int) -> list[IndexTuple]:
        return list(itertools.combinations(range(self.dim), grade))

    def __repr__(self) -> str:
        return f"LieAlgebraFD({', '.join(self.labels)})"


# -- standard examples --------------------------------------------------------


def abelian_algebra(n: int, prefix: str = "a") -> LieAlgebraFD:
    return LieAlgebraFD.from_brackets(tuple(f"{prefix}{i+1}" for i in range(n)), {})


def heisenberg3() -> LieAlgebraFD:
    """Basis e, f, h with [e, f] = h and h central."""
    return LieAlgebraFD.from_brackets(("e", "f", "h"), {("e", "f"): {"h": 1}})


def sl2() -> LieAlgebraFD:
    """Basis e, f, h with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebraFD.from_brackets(
        ("e", "f", "h"),
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
    )


def so3() -> LieAlgebraFD:
    """Basis r1, r2, r3 with cyclic brackets [r1,r2] = r3 etc."""
    return LieAlgebraFD.from_brackets(
        ("r1", "r2", "r3"),
        {("r1", "r2"): {"r3": 1}, ("r2", "r3"): {"r1": 1}, ("r3", "r1"): {"r2": 1}},
    )


def direct_sum(a: LieAlgebraFD, b: LieAlgebraFD) -> LieAlgebraFD:
    """Direct sum of Lie algebras; clashing labels from ``b`` get a numeric
    suffix (deterministically)."""
    labels = list(a.labels)
    used = set(labels)
    renamed = []
    for name in b.labels:
        candidate = name
        k = 2
        while candidate in used:
            candidate = f"{name}{k}"
            k += 1
        used.add(candidate)
        renamed.append(candidate)
    labels.extend(renamed)
    n = len(labels)
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for g, offset in ((a, 0), (b, a.dim)):
        for i in range(g.dim):
            for j in range(g.dim):
                for k, c in enumerate(g.bracket_basis(i, j)):
                    table[offset + i][offset + j][offset + k] = c
    return LieAlgebraFD(labels, table)


class LieModuleFD:
    """A finite-dimensional module given by one action matrix per basis element."""

    def __init__(
        self,
        algebra: LieAlgebraFD,
        matrices: Sequence[Sequence[Sequence[Fraction | int]]],
        dim: Optional[int] = None,
    ):
        if len(matrices) != algebra.dim:
            raise ValueError("need one action matrix per basis element")
        mats = []
        for mat in matrices:
            rows = [[Fraction(c) for c in row] for row in mat]
            if dim is None:
                dim = len(rows)
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise ValueError("action matrices must be square of equal size")
            mats.append(rows)
        self.algebra = algebra
        self.dim = dim if dim is not None else 0
        self.matrices = mats
        self._validate()

    @classmethod
    def trivial(cls, algebra: LieAlgebraFD, dim: int = 1) -> "LieModuleFD":
        zero = [[Fraction(0)] * dim for _ in range(dim)]
        return cls(algebra, [zero] * algebra.dim, dim=dim)

    def _validate(self) -> None:
        g = self.algebra
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = [[Fraction(0)] * self.dim for _ in range(self.dim)]
                for k, c in enumerate(g.bracket_basis(i, j)):
                    if c:
                        for r in range(self.dim):
                            for s in range(self.dim):
                                lhs[r][s] += c * self.matrices[k][r][s]
                rhs = linalg.matmul(self.matrices[i], self.matrices[j])
                rhs2 = linalg.matmul(self.matrices[j], self.matrices[i])
                for r in range(self.dim):
                    for s in range(self.dim):
                        if lhs[r][s] != rhs[r][s] - rhs2[r][s]:
                            raise ValueError(
                                "action matrices are not a homomorphism at "
                                f"({self.algebra.labels[i]}, {self.algebra.labels[j]})"
                            )

    def act_basis(self, i: int, vec: Sequence[Fraction]) -> Vec:
        return linalg.matvec(self.matrices[i], list(vec))

    def act(self, x: Sequence[Fraction], vec: Sequence[Fraction]) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, c in enumerate(x):
            if c:
                for r, value in enumerate(self.act_basis(i, vec)):
                    out[r] += c * value
        return out


class ChainElement:
    """An element of the exterior algebra on the Lie algebra basis."""

    __slots__ = ("algebra", "grade", "components")

    def __init__(self, algebra: LieAlgebraFD, grade: int, components: Mapping[IndexTuple, Fraction] = ()):
        if grade < 0:
            raise ValueError("negative grade")
        clean: dict[IndexTuple, Fraction] = {}
        for idx, coeff in dict(components).items():
            idx = tuple(idx)
            if len(idx) != grade or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"bad blade {idx!r} for grade {grade}")
            if any(not 0 <= i < algebra.dim for i in idx):
                raise ValueError(f"blade {idx!r} out of range")
            coeff = Fraction(coeff)
            if coeff:
                clean[idx] = coeff
        self.algebra = algebra
        self.grade = grade
        self.components = clean

    @classmethod
    def basis(cls, algebra: LieAlgebraFD, indices: Sequence[int]) -> "ChainElement":
        return cls(algebra, len(indices), {tuple(indices): Fraction(1)})

    @classmethod
    def vector(cls, algebra: LieAlgebraFD, coords: Sequence[Fraction | int]) -> "ChainElement":
        return cls(
            algebra, 1, {(i,): Fraction(c) for i, c in enumerate(coords) if Fraction(c)}
        )

    @property
    def is_zero(self) -> bool:
        return not self.components

    def items(self) -> Iterator[tuple[IndexTuple, Fraction]]:
        for idx in sorted(self.components):
            yield idx, self.components[idx]

    def coordinates(self) -> Vec:
        blades = self.algebra.blades(self.grade)
        return [self.components.get(b, Fraction(0)) for b in blades]

    def _check(self, other: "ChainElement") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("chain elements over different algebras")

    def __add__(self, other: "ChainElement") -> "ChainElement":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.grade != other.grade:
            raise ValueError("cannot add chains of different grades")
        data = dict(self.components)
        for idx, coeff in other.components.items():
            data[idx] = data.get(idx, Fraction(0)) + coeff
        return ChainElement(self.algebra, self.grade, data)

    def __neg__(self) -> "ChainElement":
        return self.scale(-1)

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def scale(self, factor: Fraction | int) -> "ChainElement":
        factor = Fraction(factor)
        return ChainElement(
            self.algebra, self.grade, {i: factor * c for i, c in self.components.items()}
        )

    def wedge(self, other: "ChainElement") -> "ChainElement":
        self._check(other)
        data: dict[IndexTuple, Fraction] = {}
        for left, c1 in self.components.items():
            for right, c2 in other.components.items():
                if set(left) & set(right):
                    continue
                inversions = sum(1 for a in left for b in right if a > b)
                merged = tuple(sorted(left + right))
                value = c1 * c2 * (-1 if inversions % 2 else 1)
                data[merged] = data.get(merged, Fraction(0)) + value
        return ChainElement(self.algebra, self.grade + other.grade, data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainElement) or self.algebra is not other.algebra:
            return NotImplemented
        if self.grade != other.grade and not (self.is_zero and other.is_zero):
            return False
        return self.components == other.components

    def __hash__(self) -> int:
        return hash((id(self.algebra), frozenset(self.components.items())))

    def __str__(self) -> str:
        if not self.components:
            return "0"
        chunks = []
        for idx, coeff in self.items():
            blade = " ^ ".join(self.algebra.labels[i] for i in idx) if idx else "1"
            if coeff == 1:
                term = blade
            elif coeff == -1:
                term = f"-{blade}"
            else:
                term = f"{coeff}*{blade}"
            if not chunks:
                chunks.append(term)
            elif term.startswith("-"):
                chunks.append(f"- {term[1:]}")
            else:
                chunks.append(f"+ {term}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"ChainElement({self})"


def boundary_delta(u: ChainElement) -> ChainElement:
    """The boundary operator; zero on grades 0 and 1."""
    g = u.algebra
    if u.grade <= 1:
        return ChainElement(g, max(u.grade - 1, 0))
    data: dict[IndexTuple, Fraction] = {}
    for idx, coeff in u.components.items():
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                pair_sign = -1 if (a + b) % 2 else 1  # (-1)^(i+j) with 1-based i,j
                rest = idx[:a] + idx[a + 1 : b] + idx[b + 1 :]
                bracket = g.bracket_basis(idx[a], idx[b])
                for t, c in enumerate(bracket):
                    if not c:
                        continue
                    merged, sign = _insert_sign(t, rest)
                    if sign == 0:
                        continue
                    value = coeff * c * pair_sign * sign
                    data[merged] = data.get(merged, Fraction(0)) + value
    return ChainElement(g, u.grade - 1, data)


def supercommutator(u: ChainElement, v: ChainElement) -> ChainElement:
    """[u, v] = delta(u) ^ v + (-1)^|u| u ^ delta(v) - delta(u ^ v)."""
    if u.algebra is not v.algebra:
        raise ValueError("chain elements over different algebras")
    sign = -1 if u.grade % 2 else 1
    term = boundary_delta(u).wedge(v) + u.wedge(boundary_delta(v)).scale(sign)
    return term - boundary_delta(u.wedge(v))


def delta_matrix(g: LieAlgebraFD, grade: int) -> list[Vec]:
    """Matrix rows of the boundary from grade to grade-1 blade coordinates."""
    source = g.blades(grade)
    target = g.blades(max(grade - 1, 0))
    position = {b: k for k, b in enumerate(target)}
    columns = []
    for blade in source:
        image = boundary_delta(ChainElement.basis(g, blade))
        col = [Fraction(0)] * len(target)
        for idx, coeff in image.components.items():
            col[position[idx]] = coeff
        columns.append(col)
    # rows: target coordinates, columns: source blades
    return [[columns[c][r] for c in range(len(source))] for r in range(len(target))]


class HomologyGrade:
    def __init__(self, grade: int, dimension: int, representatives: list[ChainElement]):
        self.grade = grade
        self.dimension = dimension
        self.representatives = representatives

    def __repr__(self) -> str:
        return f"HomologyGrade(grade={self.grade}, dim={self.dimension})"


def homology(g: LieAlgebraFD) -> list[HomologyGrade]:
    """Exact homology of the boundary complex, grades 0..dim."""
    out = []
    for m in range(g.dim + 1):
        blades = g.blades(m)
        dm = delta_matrix(g, m) if m >= 1 else []
        kernel = (
            linalg.nullspace(dm, len(blades)) if m >= 1 else [[Fraction(1)]]
        )
        next_matrix = delta_matrix(g, m + 1) if m + 1 <= g.dim else []
        image_rows = (
            linalg.transpose(next_matrix) if next_matrix else []
        )
        reduced, pivots = linalg.rref(image_rows)
        reps: list[ChainElement] = []
        rep_rows: list[Vec] = []
        rep_pivots: list[int] = []
        for vec in kernel:
            res = linalg.residue(vec, reduced, pivots)
            extra = linalg.residue(res, rep_rows, rep_pivots) if rep_rows else res
            if any(extra):
                combined = rep_rows + [extra]
                rep_rows, rep_pivots = linalg.rref(combined)
                reps.append(
                    ChainElement(
                        g, m, {b: c for b, c in zip(blades, res) if c}
                    )
                    if m >= 1
                    else ChainElement(g, 0, {(): res[0]})
                )
        rank_image = len(reduced)
        dim_h = len(kernel) - rank_image
        out.append(HomologyGrade(m, dim_h, reps))
    return out


def is_boundary(u: ChainElement) -> Optional[ChainElement]:
    """A preimage under the boundary operator, or None if there is none."""
    g = u.algebra
    if u.is_zero:
        return ChainElement(g, u.grade + 1)
    matrix = delta_matrix(g, u.grade + 1)
    solution = linalg.solve(matrix, u.coordinates())
    if solution is None:
        return None
    blades = g.blades(u.grade + 1)
    return ChainElement(g, u.grade + 1, {b: c for b, c in zip(blades, solution) if c})


class CochainCE:
    """An alternating multilinear map on the algebra with module values."""

    __slots__ = ("algebra", "module", "grade", "components")

    def __init__(
        self,
        algebra: LieAlgebraFD,
        module: LieModuleFD,
        grade: int,
        components: Mapping[IndexTuple, Sequence[Fraction | int]] = (),
    ):
        if module.algebra is not algebra:
            raise ValueError("module is over a different algebra")
        if grade < 0:
            raise ValueError("negative grade")
        clean: dict[IndexTuple, tuple[Fraction, ...]] = {}
        for idx, value in dict(components).items():
            idx = tuple(idx)
            if len(idx) != grade or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"bad blade {idx!r} for grade {grade}")
            vec = tuple(Fraction(c) for c in value)
            if len(vec) != module.dim:
                raise ValueError("component value has wrong module dimension")
            if any(vec):
                clean[idx] = vec
        self.algebra = algebra
        self.module = module
        self.grade = grade
        self.components = clean

    @property
    def is_zero(self) -> bool:
        return not self.components

    def value_on_blade(self, idx: IndexTuple) -> tuple[Fraction, ...]:
        return self.components.get(tuple(idx), tuple([Fraction(0)] * self.module.dim))

    def coordinates(self) -> Vec:
        out: Vec = []
        for blade in self.algebra.blades(self.grade):
            out.extend(self.value_on_blade(blade))
        return out

    @classmethod
    def from_coordinates(
        cls, algebra: LieAlgebraFD, module: LieModuleFD, grade: int, vec: Sequence[Fraction]
    ) -> "CochainCE":
        m = module.dim
        data = {}
        for k, blade in enumerate(algebra.blades(grade)):
            data[blade] = tuple(vec[k * m : (k + 1) * m])
        return cls(algebra, module, grade, data)

    def _check(self, other: "CochainCE") -> None:
        if self.algebra is not other.algebra or self.module is not other.module:
            raise ValueError("cochains over different data")

    def __add__(self, other: "CochainCE") -> "CochainCE":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.grade != other.grade:
            raise ValueError("cannot add cochains of different grades")
        data = {idx: list(vec) for idx, vec in self.components.items()}
        for idx, vec in other.components.items():
            if idx in data:
                data[idx] = [a + b for a, b in zip(data[idx], vec)]
            else:
                data[idx] = list(vec)
        return CochainCE(self.algebra, self.module, self.grade, data)

    def __sub__(self, other: "CochainCE") -> "CochainCE":
        return self + other.scale(-1)

    def scale(self, factor: Fraction | int) -> "CochainCE":
        factor = Fraction(factor)
        return CochainCE(
            self.algebra,
            self.module,
            self.grade,
            {i: tuple(factor * c for c in vec) for i, vec in self.components.items()},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CochainCE):
            return NotImplemented
        if self.algebra is not other.algebra or self.module is not other.module:
            return False
        if self.grade != other.grade and not (self.is_zero and other.is_zero):
            return False
        return self.components == other.components

    def evaluate(self, vectors: Sequence[Sequence[Fraction | int]]) -> Vec:
        """Multilinear alternating evaluation on arbitrary coordinate vectors."""
        if len(vectors) != self.grade:
            raise ValueError(f"expected {self.grade} arguments")
        vecs = [[Fraction(c) for c in v] for v in vectors]
        out = [Fraction(0)] * self.module.dim
        for blade, value in self.components.items():
            # minor determinant of the argument matrix on the blade's columns
            minor = [[vecs[r][c] for c in blade] for r in range(self.grade)]
            det = _determinant(minor)
            if det:
                for r, c in enumerate(value):
                    out[r] += det * c
        return out

    def __str__(self) -> str:
        if not self.components:
            return "0"
        chunks = []
        for idx in sorted(self.components):
            blade = " ^ ".join(f"{self.algebra.labels[i]}*" for i in idx) if idx else "1"
            value = ", ".join(str(c) for c in self.components[idx])
            chunks.append(f"{blade} -> ({value})")
        return "; ".join(chunks)

    def __repr__(self) -> str:
        return f"CochainCE({self})"


def _determinant(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    work = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                factor = work[r][col] * inv
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return det


def ce_coboundary(w: CochainCE) -> CochainCE:
    """The Koszul coboundary; on grade 0, (da)(X) = X(a)."""
    g = w.algebra
    S = w.module
    data: dict[IndexTuple, list[Fraction]] = {}

    def accumulate(idx: IndexTuple, vec: Sequence[Fraction], factor: int) -> None:
        if not any(vec):
            return
        cell = data.setdefault(idx, [Fraction(0)] * S.dim)
        for r, c in enumerate(vec):
            cell[r] += factor * c

    for blade in g.blades(w.grade + 1):
        for p in range(len(blade)):
            rest = blade[:p] + blade[p + 1 :]
            value = w.value_on_blade(rest)
            if any(value):
                acted = S.act_basis(blade[p], value)
                accumulate(blade, acted, -1 if p % 2 else 1)
        for p in range(len(blade)):
            for q in range(p + 1, len(blade)):
                pair_sign = -1 if (p + q) % 2 else 1
                rest = blade[:p] + blade[p + 1 : q] + blade[q + 1 :]
                for t, c in enumerate(g.bracket_basis(blade[p], blade[q])):
                    if not c:
                        continue
                    merged, sign = _insert_sign(t, rest)
                    if sign == 0:
                        continue
                    value = w.value_on_blade(merged)
                    if any(value):
                        factor = pair_sign * sign
                        accumulate(blade, [c * v for v in value], factor)
    return CochainCE(g, S, w.grade + 1, data)


def coboundary_matrix(g: LieAlgebraFD, S: LieModuleFD, grade: int) -> list[Vec]:
    """Matrix rows of d from grade to grade+1 cochain coordinates."""
    source = g.blades(grade)
    m = S.dim
    ncols = len(source) * m
    rows_len = len(g.blades(grade + 1)) * m
    columns = []
    for k, blade in enumerate(source):
        for r in range(m):
            unit = [Fraction(0)] * m
            unit[r] = Fraction(1)
            w = CochainCE(g, S, grade, {blade: unit})
            columns.append(ce_coboundary(w).coordinates())
    return [[columns[c][row] for c in range(ncols)] for row in range(rows_len)]


def cohomology(g: LieAlgebraFD, S: LieModuleFD) -> list[tuple[int, int]]:
    """(grade, dimension) of the cochain complex's cohomology, grades 0..dim."""
    out = []
    ranks = {}
    for m in range(g.dim + 1):
        matrix = coboundary_matrix(g, S, m)
        ncols = len(g.blades(m)) * S.dim
        ranks[m] = linalg.rank(linalg.transpose(matrix)) if matrix else 0
        kernel_dim = ncols - ranks[m]
        image_dim = ranks[m - 1] if m >= 1 else 0
        out.append((m, kernel_dim - image_dim))
    return out


def is_closed_cochain(w: CochainCE) -> bool:
    return ce_coboundary(w).is_zero


def is_coboundary(w: CochainCE) -> Optional[CochainCE]:
    """A preimage under d, or None; grade-0 cochains are never coboundaries."""
    if w.grade == 0:
        return None
    g, S = w.algebra, w.module
    matrix = coboundary_matrix(g, S, w.grade - 1)
    solution = linalg.solve(matrix, w.coordinates())
    if solution is None:
        return None
    return CochainCE.from_coordinates(g, S, w.grade - 1, solution)


def lemma_equivalence_probe(
    g: LieAlgebraFD, S: LieModuleFD, trials: int = 10, seed: int = 0
) -> bool:
    """Multilinearity of coboundaries over scalar coefficients, checked on
    random data; scaling any single argument scales the value."""
    import random

    rng = random.Random(seed)
    for _ in range(trials):
        grade = rng.randint(0, max(g.dim - 1, 0))
        data = {}
        for blade in g.blades(grade):
            data[blade] = tuple(Fraction(rng.randint(-3, 3)) for _ in range(S.dim))
        w = CochainCE(g, S, grade, data)
        dw = ce_coboundary(w)
        vectors = [
            [Fraction(rng.randint(-3, 3)) for _ in range(g.dim)]
            for _ in range(grade + 1)
        ]
        a = Fraction(rng.randint(-5, 5))
        base = dw.evaluate(vectors)
        for position in range(grade + 1):
            scaled = [list(v) for v in vectors]
            scaled[position] = [a * c for c in scaled[position]]
            got = dw.evaluate(scaled)
            if got != [a * c for c in base]:
                return False
    return True
