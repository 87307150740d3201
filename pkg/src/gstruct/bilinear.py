"""Covariant 2-tensors over an orthonormal frame, and the I-operators.

A Bilinear stores a dense n x n matrix of scalars, row index = first slot.
An orthogonal almost-complex structure is passed around as the matrix
M with  I e_j = sum_i M[i][j] e_i ; since the frame is orthonormal this is
also the matrix of the Kaehler form  w(x, y) = <x, I y>.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GradeError, InvalidComplexStructureError
from .forms import Form
from .frames import FrameSpace


class Bilinear:
    """Immutable dense covariant 2-tensor."""

    __slots__ = ("space", "rows")

    def __init__(self, space: FrameSpace, rows):
        n = space.dim
        rows = tuple(tuple(space.scalar(v) for v in row) for row in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("Bilinear is immutable")

    @classmethod
    def zero(cls, space: FrameSpace) -> "Bilinear":
        z = space.scalar(0)
        return cls(space, [[z] * space.dim for _ in range(space.dim)])

    @classmethod
    def identity(cls, space: FrameSpace) -> "Bilinear":
        return cls(space, [[1 if i == j else 0 for j in range(space.dim)]
                           for i in range(space.dim)])

    @classmethod
    def from_entries(cls, space: FrameSpace, entries: dict) -> "Bilinear":
        rows = [[space.scalar(0)] * space.dim for _ in range(space.dim)]
        for (i, j), v in entries.items():
            rows[i][j] = space.scalar(v)
        return cls(space, rows)

    @classmethod
    def from_form2(cls, space: FrameSpace, form: Form) -> "Bilinear":
        if form.grade != 2:
            raise GradeError("expected a 2-form")
        rows = [[space.scalar(0)] * space.dim for _ in range(space.dim)]
        for (i, j), c in form.terms.items():
            rows[i][j] = c
            rows[j][i] = -c
        return cls(space, rows)

    def __call__(self, i: int, j: int):
        return self.rows[i][j]

    def __add__(self, other: "Bilinear") -> "Bilinear":
        self.space.check_same(other.space)
        return Bilinear(self.space, [[a + b for a, b in zip(ra, rb)]
                                     for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Bilinear") -> "Bilinear":
        return self + (-other)

    def __neg__(self) -> "Bilinear":
        return Bilinear(self.space, [[-v for v in r] for r in self.rows])

    def scale(self, c) -> "Bilinear":
        c = self.space.scalar(c)
        return Bilinear(self.space, [[c * v for v in r] for r in self.rows])

    def __rmul__(self, c) -> "Bilinear":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bilinear):
            return NotImplemented
        return all(
            self.space.eq(a, b)
            for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def __hash__(self):
        raise TypeError("Bilinear is unhashable")

    def __repr__(self):
        return "Bilinear(" + "; ".join(
            " ".join(str(v) for v in r) for r in self.rows) + ")"

    def transpose(self) -> "Bilinear":
        return Bilinear(self.space, list(zip(*self.rows)))

    def sym(self) -> "Bilinear":
        half = self.space.scalar(1) / 2
        return (self + self.transpose()).scale(half)

    def skew(self) -> "Bilinear":
        half = self.space.scalar(1) / 2
        return (self - self.transpose()).scale(half)

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.space.dim)),
                   self.space.scalar(0))

    def pair(self, other: "Bilinear"):
        """Full contraction sum_ij a_ij b_ij."""
        return sum(
            (a * b for ra, rb in zip(self.rows, other.rows)
             for a, b in zip(ra, rb)),
            self.space.scalar(0),
        )

    def norm_sq(self):
        return self.pair(self)

    def is_zero(self) -> bool:
        return all(self.space.is_zero(v) for r in self.rows for v in r)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_skew(self) -> bool:
        return self == -self.transpose()

    def to_form2(self) -> Form:
        if not self.is_skew():
            raise ValueError("only a skew tensor is a 2-form")
        n = self.space.dim
        return Form(self.space, 2,
                    {(i, j): self.rows[i][j] for i in range(n) for j in range(i + 1, n)})

    def apply_vector(self, v: Form) -> Form:
        """Treat the matrix as an endomorphism: (M v)_i = sum_j M_ij v_j."""
        comps = {}
        for j in range(self.space.dim):
            c = v.terms.get((j,), 0)
            if c == 0:
                continue
            for i in range(self.space.dim):
                if self.rows[i][j] != 0:
                    comps[i] = comps.get(i, 0) + self.rows[i][j] * c
        return Form(self.space, 1, {(i,): c for i, c in comps.items()})


def check_complex_structure(I: Bilinear):
    n = I.space.dim
    for i in range(n):
        for j in range(n):
            v = sum((I.rows[i][k] * I.rows[k][j] for k in range(n)),
                    I.space.scalar(0))
            want = I.space.scalar(-1 if i == j else 0)
            if not I.space.eq(v, want):
                raise InvalidComplexStructureError("matrix does not square to -Id")


def apply_I_oneform(I: Bilinear, mu: Form) -> Form:
    """I acting on a 1-form:  (I mu)(x) = -mu(I x).

    For an orthogonal I this agrees with pushing the dual vector through I.
    """
    if mu.grade != 1:
        raise GradeError("expected a 1-form")
    comps = {}
    for j in range(I.space.dim):
        total = I.space.scalar(0)
        for i in range(I.space.dim):
            c = mu.terms.get((i,), 0)
            if c != 0:
                total += -c * I.rows[i][j]
        if not I.space.is_zero(total):
            comps[(j,)] = total
    return Form(I.space, 1, comps)


def islot(b, slot: int, I: Bilinear):
    """Insert -(...)(I X_slot)(...) into slot `slot` (1-based).

    Works on Bilinear values and on alternating forms; for a form the
    result is checked to be alternating again.
    """
    check_complex_structure(I)
    if isinstance(b, Bilinear):
        if slot not in (1, 2):
            raise ValueError("slot must be 1 or 2 for a bilinear tensor")
        n = b.space.dim
        rows = [[b.space.scalar(0)] * n for _ in range(n)]
        for p in range(n):
            for q in range(n):
                total = b.space.scalar(0)
                for k in range(n):
                    if slot == 1:
                        total += -I.rows[k][p] * b.rows[k][q]
                    else:
                        total += -I.rows[k][q] * b.rows[p][k]
                rows[p][q] = total
        return Bilinear(b.space, rows)
    if isinstance(b, Form):
        return _islot_form(b, slot, I)
    raise TypeError("islot expects a Bilinear or a Form")


def _islot_form(form: Form, slot: int, I: Bilinear) -> Form:
    if not 1 <= slot <= form.grade:
        raise ValueError("slot out of range")
    space = form.space
    n = space.dim
    p = form.grade

    def value(idxs):
        # -form(e_{i1}, ..., I e_{i_slot}, ..., e_{ip})
        total = space.scalar(0)
        col = idxs[slot - 1]
        for k in range(n):
            c = I.rows[k][col]
            if c == 0:
                continue
            args = idxs[: slot - 1] + (k,) + idxs[slot:]
            total += -c * form.coeff(args)
        return total

    from itertools import combinations, permutations

    terms = {}
    for key in combinations(range(n), p):
        v = value(key)
        if not space.is_zero(v):
            terms[key] = v
    out = Form(space, p, terms)
    # the slot insertion of a form need not alternate; reject if it does not
    for key in combinations(range(n), p):
        for perm in permutations(key):
            st_sign = _perm_sign(perm, key)
            if not space.eq(value(perm), st_sign * out.coeff(key)):
                raise GradeError("slot insertion did not produce an alternating tensor")
    return out


def _perm_sign(perm, sorted_key):
    seq = list(perm)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    assert tuple(seq) == tuple(sorted_key)
    return sign


def iall(b, I: Bilinear):
    """Apply I to every slot with the sign (-1)^s."""
    check_complex_structure(I)
    if isinstance(b, Bilinear):
        n = b.space.dim
        rows = [[b.space.scalar(0)] * n for _ in range(n)]
        for p in range(n):
            for q in range(n):
                total = b.space.scalar(0)
                for k in range(n):
                    if I.rows[k][p] == 0:
                        continue
                    for l in range(n):
                        if I.rows[l][q] != 0:
                            total += I.rows[k][p] * I.rows[l][q] * b.rows[k][l]
                rows[p][q] = total
        return Bilinear(b.space, rows)
    if isinstance(b, Form):
        # (-1)^p b(I., ..., I.) is alternating even when single-slot
        # insertions are not, so compute it directly.
        from itertools import combinations

        space = b.space
        n, p = space.dim, b.grade
        sign = space.scalar(-1 if p % 2 else 1)
        terms = {}
        for key in combinations(range(n), p):
            total = space.scalar(0)
            for imgs, coeff in _I_images(I, key):
                total += coeff * b.coeff(imgs)
            v = sign * total
            if not space.is_zero(v):
                terms[key] = v
        return Form(space, p, terms)
    raise TypeError("iall expects a Bilinear or a Form")


def _I_images(I: Bilinear, key):
    """Expand b(I e_{k1}, ..., I e_{kp}) into basis evaluations."""
    n = I.space.dim
    expansions = [[(k, I.rows[k][col]) for k in range(n) if I.rows[k][col] != 0]
                  for col in key]
    out = [((), I.space.scalar(1))]
    for options in expansions:
        out = [(idxs + (k,), c * ck) for idxs, c in out for k, ck in options]
    return out


@dataclass(frozen=True)
class BilinearSplit:
    sym: Bilinear
    skew: Bilinear
    trace: object
    omega_component: object
    invariant: Bilinear
    anti_invariant: Bilinear


def bilinear_split(b: Bilinear, I: Bilinear, omega: Bilinear) -> BilinearSplit:
    """Symmetric/skew and I-(anti)invariant splittings of a 2-tensor.

    The invariance convention is  (I b)(x, y) = b(I x, I y);  the omega
    component is <b, omega> / <omega, omega> under the full contraction.
    """
    ib = iall(b, I)
    half = b.space.scalar(1) / 2
    inv = (b + ib).scale(half)
    anti = (b - ib).scale(half)
    omega_comp = b.pair(omega) / omega.norm_sq()
    return BilinearSplit(
        sym=b.sym(),
        skew=b.skew(),
        trace=b.trace(),
        omega_component=omega_comp,
        invariant=inv,
        anti_invariant=anti,
    )
