"""Random-object builders shared by the test modules.

Everything takes an explicit ``random.Random`` so every test run is
reproducible from its seed.
"""

from fractions import Fraction

from leafconn.poly import Polynomial, VarContext
from leafconn.tensors import DifferentialForm, MultivectorField

XY = VarContext(["x", "y"])
XYZ = VarContext(["x", "y", "z"])

# Verdict lines collected by the acceptance tests; the conftest terminal
# summary hook prints them after the run, outside output capture.
ACCEPTANCE_LINES = []


def rand_fraction(rng, lo=-3, hi=3):
    return Fraction(rng.randint(lo, hi), rng.choice([1, 1, 1, 2, 3]))


def rand_exponent(rng, n, degree):
    exp = [0] * n
    for _ in range(rng.randint(0, degree)):
        exp[rng.randrange(n)] += 1
    return tuple(exp)


def rand_poly(rng, context, degree=2, terms=3):
    n = len(context)
    acc = {}
    for _ in range(terms):
        exp = rand_exponent(rng, n, degree)
        acc[exp] = acc.get(exp, Fraction(0)) + rand_fraction(rng)
    return Polynomial(context, acc)


def rand_nonzero_poly(rng, context, degree=2, terms=3):
    p = rand_poly(rng, context, degree, terms)
    if p.is_zero:
        p = p + Polynomial.variable(context, 0)
    return p


def rand_blade(rng, n, grade):
    return tuple(sorted(rng.sample(range(n), grade)))


def rand_multivector(rng, context, grade, degree=2, terms=2):
    n = len(context)
    if grade > n:
        return MultivectorField.zero(context, grade)
    acc = {}
    for _ in range(terms):
        blade = rand_blade(rng, n, grade)
        extra = rand_poly(rng, context, degree, 2)
        acc[blade] = acc[blade] + extra if blade in acc else extra
    return MultivectorField(context, grade, acc)


def rand_form(rng, context, grade, degree=2, terms=2):
    n = len(context)
    if grade > n:
        return DifferentialForm.zero(context, grade)
    acc = {}
    for _ in range(terms):
        blade = rand_blade(rng, n, grade)
        extra = rand_poly(rng, context, degree, 2)
        acc[blade] = acc[blade] + extra if blade in acc else extra
    return DifferentialForm(context, grade, acc)


def rand_monomial_field(rng, context, grade, degree=2):
    """Single-blade multivector with a monomial coefficient."""
    n = len(context)
    if grade > n:
        return MultivectorField.zero(context, grade)
    blade = rand_blade(rng, n, grade)
    coeff = Polynomial.monomial(context, rand_exponent(rng, n, degree), rand_fraction(rng))
    return MultivectorField(context, grade, {blade: coeff})


def rand_constant_vector(rng, context):
    acc = {}
    for i in range(len(context)):
        c = rand_fraction(rng)
        if c:
            acc[(i,)] = Polynomial.constant(context, c)
    if not acc:
        acc[(0,)] = Polynomial.constant(context, 1)
    return MultivectorField(context, 1, acc)


def rand_constant_covector(rng, context):
    acc = {}
    for i in range(len(context)):
        c = rand_fraction(rng)
        if c:
            acc[(i,)] = Polynomial.constant(context, c)
    if not acc:
        acc[(0,)] = Polynomial.constant(context, 1)
    return DifferentialForm(context, 1, acc)
