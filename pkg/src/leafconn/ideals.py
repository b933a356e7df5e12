"""Polynomial ideals with cached reduced Gröbner bases.

Buchberger's algorithm with the two classical shortcuts (skip pairs with
coprime leading monomials; skip pairs covered by an already-treated third
element).  The basis is fully inter-reduced and monic, so it is the unique
reduced Gröbner basis for the ideal and the chosen monomial order, which
makes ``normal_form`` canonical and ``contains`` decidable.

An :class:`Ideal` is immutable; the basis is computed once on first use
(thread-safe via a lock) and cached.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import MONOMIAL_ORDERS, ContextMismatch, Polynomial, VarContext

Exponent = tuple[int, ...]


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p: Polynomial, key) -> Polynomial:
    _, coeff = p.leading_term(key)
    return p * (Fraction(1) / coeff)


def normal_form_against(p: Polynomial, basis: Sequence[Polynomial], key) -> Polynomial:
    """Full remainder of ``p`` under multivariate division by ``basis``.

    Every remainder term is reduced, so the result has no term divisible by
    any basis leading monomial.  Deterministic: the first divisor in basis
    order wins at each step.
    """
    leads = [g.leading_term(key) for g in basis]
    remainder = Polynomial.zero(p.context)
    work = p
    while not work.is_zero:
        exponent, coeff = work.leading_term(key)
        for g, (g_exp, g_coeff) in zip(basis, leads):
            if _divides(g_exp, exponent):
                factor = Polynomial.monomial(p.context, _exp_sub(exponent, g_exp), coeff / g_coeff)
                work = work - factor * g
                break
        else:
            term = Polynomial.monomial(p.context, exponent, coeff)
            remainder = remainder + term
            work = work - term
    return remainder


def s_polynomial(f: Polynomial, g: Polynomial, key) -> Polynomial:
    f_exp, f_coeff = f.leading_term(key)
    g_exp, g_coeff = g.leading_term(key)
    lcm = _exp_lcm(f_exp, g_exp)
    f_factor = Polynomial.monomial(f.context, _exp_sub(lcm, f_exp), Fraction(1) / f_coeff)
    g_factor = Polynomial.monomial(g.context, _exp_sub(lcm, g_exp), Fraction(1) / g_coeff)
    return f_factor * f - g_factor * g


def buchberger(generators: Sequence[Polynomial], key) -> list[Polynomial]:
    """The reduced Gröbner basis of the ideal spanned by ``generators``."""
    basis = [_monic(g, key) for g in generators if not g.is_zero]
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done: set[tuple[int, int]] = set()

    def lead(i: int) -> Exponent:
        return basis[i].leading_term(key)[0]

    while pairs:
        i, j = min(pairs, key=lambda p: (key(_exp_lcm(lead(p[0]), lead(p[1]))), p))
        pairs.discard((i, j))
        done.add((i, j))
        lcm = _exp_lcm(lead(i), lead(j))
        # Coprime leading monomials: the S-polynomial reduces to zero.
        if lcm == tuple(a + b for a, b in zip(lead(i), lead(j))):
            continue
        # Chain criterion: a third element divides the lcm and both side
        # pairs are already treated.
        if any(
            k not in (i, j)
            and _divides(lead(k), lcm)
            and tuple(sorted((i, k))) in done
            and tuple(sorted((j, k))) in done
            for k in range(len(basis))
        ):
            continue
        remainder = normal_form_against(s_polynomial(basis[i], basis[j], key), basis, key)
        if not remainder.is_zero:
            basis.append(_monic(remainder, key))
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))
    return _reduce_basis(basis, key)


def _reduce_basis(basis: list[Polynomial], key) -> list[Polynomial]:
    # Drop elements whose lead is divisible by another element's lead,
    # then tail-reduce each survivor against the others.
    keep: list[Polynomial] = []
    for i, g in enumerate(basis):
        g_lead = g.leading_term(key)[0]
        others = basis[:i] + basis[i + 1 :]
        if any(_divides(h.leading_term(key)[0], g_lead) and h.leading_term(key)[0] != g_lead for h in others):
            continue
        if any(h.leading_term(key)[0] == g_lead for h in keep):
            continue
        keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        reduced.append(_monic(normal_form_against(g, others, key), key) if others else g)
    reduced.sort(key=lambda g: key(g.leading_term(key)[0]))
    return reduced


class Ideal:
    """A polynomial ideal given by generators, with a lazy reduced basis."""

    def __init__(self, context: VarContext, generators: Iterable[Polynomial] = (), order: str = "grevlex"):
        if order not in MONOMIAL_ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.context = context
        self.order = order
        self.generators: tuple[Polynomial, ...] = tuple(g for g in generators if not g.is_zero)
        for g in self.generators:
            if g.context != context:
                raise ValueError("generator context does not match the ideal context")
        self._key = MONOMIAL_ORDERS[order]
        self._basis: list[Polynomial] | None = None
        self._lock = threading.Lock()

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    def groebner_basis(self) -> list[Polynomial]:
        """The reduced Gröbner basis (computed once, then cached)."""
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    self._basis = buchberger(list(self.generators), self._key)
        return list(self._basis)

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.context != self.context:
            raise ContextMismatch("polynomial context does not match the ideal context")
        basis = self.groebner_basis()
        if not basis:
            return p
        return normal_form_against(p, basis, self._key)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({gens}; order={self.order})"


def vanishing_ideal_of_point(context: VarContext, point: Sequence, order: str = "grevlex") -> Ideal:
    """The maximal ideal of polynomials vanishing at a rational point."""
    if len(point) != len(context):
        raise ValueError("point dimension does not match the context")
    generators = [
        Polynomial.variable(context, name) - Polynomial.constant(context, Fraction(value))
        for name, value in zip(context.names, point)
    ]
    return Ideal(context, generators, order)
