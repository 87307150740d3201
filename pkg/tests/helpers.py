"""Shared constructions for the test suite."""

from fractions import Fraction
from itertools import product

from gstruct.bilinear import Bilinear
from gstruct.forms import Form, all_tuples
from gstruct.g2 import g2_project

# rational points on the unit circle (cos, sin)
CIRCLE_POINTS = [
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(-4, 5), Fraction(3, 5)),
    (Fraction(5, 13), Fraction(-12, 13)),
    (Fraction(-8, 17), Fraction(-15, 17)),
]


def rand_fraction(rng, lo=-4, hi=4, denom=(1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(denom))


def rand_form(space, grade, rng, density=0.4):
    terms = {}
    for key in all_tuples(space.dim, grade):
        if rng.random() < density:
            c = rand_fraction(rng)
            if c:
                terms[key] = space.scalar(c)
    return Form(space, grade, terms)


def rand_vector(space, rng):
    return Form(space, 1, {(i,): space.scalar(rng.randint(-3, 3))
                           for i in range(space.dim)})


def rand_bilinear(space, rng, lo=-3, hi=3):
    return Bilinear(space, [[space.scalar(rng.randint(lo, hi))
                             for _ in range(space.dim)]
                            for _ in range(space.dim)])


def rand_symmetric(space, rng, lo=-3, hi=3):
    n = space.dim
    m = [[space.scalar(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = space.scalar(rng.randint(lo, hi))
            m[i][j] = v
            m[j][i] = v
    return Bilinear(space, m)


def rand_skew(space, rng, lo=-3, hi=3):
    n = space.dim
    m = [[space.scalar(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = space.scalar(rng.randint(lo, hi))
            m[i][j] = v
            m[j][i] = -v
    return Bilinear(space, m)


def rand_g2_matrix(g2, rng):
    return g2_project(g2, rand_skew(g2.space, rng)).g2part


def rand_s02_matrix(space, rng):
    b = rand_symmetric(space, rng)
    return b - Bilinear.identity(space).scale(b.trace() / space.dim)


def inner_by_definition(a: Form, b: Form):
    """Independent oracle: (1/p!) sum over all index tuples of a(e_I) b(e_I)."""
    space = a.space
    assert a.grade == b.grade
    p = a.grade
    total = space.scalar(0)
    for idxs in product(range(space.dim), repeat=p):
        total += a.coeff(idxs) * b.coeff(idxs)
    fact = 1
    for i in range(2, p + 1):
        fact *= i
    return total / fact


def assert_canonical(form: Form):
    for key, coeff in form.terms.items():
        assert list(key) == sorted(key), f"unsorted tuple {key}"
        assert len(set(key)) == len(key), f"repeated index in {key}"
        assert not form.space.is_zero(coeff), f"stored zero at {key}"


def bilinear_from_entries(space, entries):
    return Bilinear.from_entries(space, {k: space.scalar(v)
                                         for k, v in entries.items()})
