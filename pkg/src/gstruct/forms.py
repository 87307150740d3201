"""Sparse alternating forms over an orthonormal frame.

A grade-p form is stored as a map from strictly increasing p-tuples of
frame indices to nonzero coefficients.  Basis monomials evaluate with the
determinant convention, so sorted monomials are orthonormal for the inner
product  <a,b> = (1/p!) sum a(e_I) b(e_I)  over all index tuples.

Vectors are identified with their metric-dual 1-forms and are represented
as grade-1 forms throughout.
"""

from __future__ import annotations

from itertools import combinations

from .errors import GradeError
from .frames import FrameSpace


def sort_tuple(idxs) -> tuple[tuple[int, ...], int] | None:
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    Returns None when an index repeats (the monomial vanishes).
    """
    idxs = list(idxs)
    if len(set(idxs)) != len(idxs):
        return None
    sign = 1
    # insertion sort; tuples are tiny (length <= 7)
    for i in range(1, len(idxs)):
        j = i
        while j > 0 and idxs[j - 1] > idxs[j]:
            idxs[j - 1], idxs[j] = idxs[j], idxs[j - 1]
            sign = -sign
            j -= 1
    return tuple(idxs), sign


class Form:
    """Immutable sparse alternating form of a fixed grade."""

    __slots__ = ("space", "grade", "terms")

    def __init__(self, space: FrameSpace, grade: int, terms=None):
        if grade < 0:
            raise GradeError("negative grade")
        clean = {}
        if terms:
            for idxs, coeff in terms.items():
                if len(idxs) != grade:
                    raise GradeError(f"tuple {idxs} has wrong length for grade {grade}")
                st = sort_tuple(idxs)
                if st is None:
                    continue
                key, sign = st
                if any(i < 0 or i >= space.dim for i in key):
                    raise IndexError(f"frame index out of range in {idxs}")
                val = clean.get(key, 0) + sign * coeff
                if space.is_zero(val):
                    clean.pop(key, None)
                else:
                    clean[key] = val
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Form is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, space: FrameSpace, grade: int) -> "Form":
        return cls(space, grade, {})

    @classmethod
    def monomial(cls, space: FrameSpace, idxs, coeff=1) -> "Form":
        return cls(space, len(tuple(idxs)), {tuple(idxs): space.scalar(coeff)})

    @classmethod
    def scalar_form(cls, space: FrameSpace, value) -> "Form":
        return cls(space, 0, {(): space.scalar(value)})

    @classmethod
    def vol(cls, space: FrameSpace) -> "Form":
        return cls.monomial(space, space.vol_tuple)

    # -- basic algebra -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, idxs):
        st = sort_tuple(idxs)
        if st is None:
            return self.space.scalar(0)
        key, sign = st
        return sign * self.terms.get(key, self.space.scalar(0))

    def __add__(self, other: "Form") -> "Form":
        self.space.check_same(other.space)
        if self.grade != other.grade:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise GradeError("cannot add forms of different grades")
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged.get(k, 0) + v
        return Form(self.space, self.grade, merged)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.space, self.grade, {k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "Form":
        c = self.space.scalar(c)
        return Form(self.space, self.grade, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "Form":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if self.space.labels != other.space.labels or self.grade != other.grade:
            return False
        keys = set(self.terms) | set(other.terms)
        z = self.space.scalar(0)
        return all(
            self.space.eq(self.terms.get(k, z), other.terms.get(k, z)) for k in keys
        )

    def __hash__(self):
        raise TypeError("Form is unhashable (tolerance-based equality)")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            mono = "^".join(self.space.labels[i] for i in key) if key else "1"
            bits.append(f"({self.terms[key]}) {mono}")
        return " + ".join(bits)

    def evaluate(self, *vectors: "Form"):
        """Evaluate the form on grade-1 arguments (determinant convention)."""
        if len(vectors) != self.grade:
            raise GradeError("wrong number of arguments")
        result = self.space.scalar(0)
        for key, coeff in self.terms.items():
            # expand det over permutations implicitly via recursive contraction
            total = _eval_monomial(key, vectors, self.space)
            result += coeff * total
        return result


def _eval_monomial(key, vectors, space):
    if not key:
        return space.scalar(1)
    total = space.scalar(0)
    first = key[0]
    for pos, v in enumerate(vectors):
        comp = v.terms.get((first,), 0)
        if comp == 0:
            continue
        rest = vectors[:pos] + vectors[pos + 1 :]
        sign = 1 if pos % 2 == 0 else -1
        total += sign * comp * _eval_monomial(key[1:], rest, space)
    return total


def basis_vector(space: FrameSpace, i: int) -> Form:
    return Form.monomial(space, (i,))


def vector(space: FrameSpace, components: dict[int, object]) -> Form:
    return Form(space, 1, {(i,): space.scalar(c) for i, c in components.items()})


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; grades beyond the dimension give the zero form."""
    a.space.check_same(b.space)
    grade = a.grade + b.grade
    if grade > a.space.dim:
        return Form.zero(a.space, grade)
    terms: dict[tuple[int, ...], object] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            st = sort_tuple(ka + kb)
            if st is None:
                continue
            key, sign = st
            terms[key] = terms.get(key, 0) + sign * va * vb
    return Form(a.space, grade, terms)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(x: Form, a: Form) -> Form:
    """Interior product of a vector (grade-1 form) into a grade-p form."""
    x.space.check_same(a.space)
    if x.grade != 1:
        raise GradeError("first argument of contract must be grade 1")
    if a.grade == 0:
        raise GradeError("cannot contract into a grade-0 form")
    terms: dict[tuple[int, ...], object] = {}
    for key, coeff in a.terms.items():
        for pos, idx in enumerate(key):
            comp = x.terms.get((idx,), 0)
            if comp == 0:
                continue
            sign = 1 if pos % 2 == 0 else -1
            rest = key[:pos] + key[pos + 1 :]
            terms[rest] = terms.get(rest, 0) + sign * comp * coeff
    return Form(a.space, a.grade - 1, terms)


def inner(a: Form, b: Form):
    """Inner product of same-grade forms; sorted monomials are orthonormal."""
    a.space.check_same(b.space)
    if a.grade != b.grade:
        raise GradeError("inner product requires equal grades")
    total = a.space.scalar(0)
    for key, va in a.terms.items():
        vb = b.terms.get(key)
        if vb is not None:
            total += va * vb
    return total


def hodge(a: Form, orientation: int = 1) -> Form:
    """Hodge star, fixed by  wedge(u, hodge(v)) = inner(u, v) * Vol.

    `orientation` = -1 computes the star of the oppositely oriented space.
    """
    space = a.space
    n = space.dim
    terms: dict[tuple[int, ...], object] = {}
    for key, coeff in a.terms.items():
        comp = tuple(i for i in range(n) if i not in key)
        st = sort_tuple(key + comp)
        assert st is not None
        _, sign = st
        terms[comp] = orientation * sign * coeff
    return Form(space, n - a.grade, terms)


def all_tuples(n: int, p: int):
    return combinations(range(n), p)


def random_form(space: FrameSpace, grade: int, rng, density: float = 0.5,
                lo: int = -4, hi: int = 4) -> Form:
    """Small random form with integer coefficients (test utility)."""
    terms = {}
    for key in all_tuples(space.dim, grade):
        if rng.random() < density:
            c = rng.randint(lo, hi)
            if c:
                terms[key] = space.scalar(c)
    return Form(space, grade, terms)
