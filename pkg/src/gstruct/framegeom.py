"""Invariant-coframe differential geometry.

The computational model is a coframe of invariant 1-forms with constant
structure equations: d is given on generators and extended as a degree-one
derivation, Lie brackets are read from  e_i([e_j, e_k]) = -de_i(e_j, e_k),
and the Levi-Civita connection comes from the Koszul formula.  All tensor
components are constant in the frame.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bilinear import Bilinear
from .errors import GStructError, InconsistentGeometryError
from .forms import Form, basis_vector, contract, hodge, wedge
from .frames import FrameSpace
from .g2 import G2Structure, dphi_from_a, dstarphi_from_a, rbar_of


@dataclass(frozen=True)
class CoframeDGA:
    """Coframe with structure equations d(e_i) = 2-form; d^2 = 0 is enforced."""

    space: FrameSpace
    d_table: tuple[Form, ...]

    @classmethod
    def build(cls, space: FrameSpace, d_map: dict[int, Form]) -> "CoframeDGA":
        table = []
        for i in range(space.dim):
            di = d_map.get(i, Form.zero(space, 2))
            if di.grade != 2:
                raise GStructError("structure equations must be 2-forms")
            table.append(di)
        dga = cls(space, tuple(table))
        for i in range(space.dim):
            dd = exterior_d(dga, dga.d_table[i])
            if not dd.is_zero():
                raise GStructError(
                    f"d(d {space.labels[i]}) != 0; structure equations do not close")
        return dga


def exterior_d(dga: CoframeDGA, a: Form) -> Form:
    """Derivation extension of the generator table to any invariant form."""
    space = dga.space
    out = Form.zero(space, a.grade + 1)
    for key, coeff in a.terms.items():
        for pos, idx in enumerate(key):
            d_gen = dga.d_table[idx]
            if d_gen.is_zero():
                continue
            rest_left = key[:pos]
            rest_right = key[pos + 1 :]
            sign = 1 if pos % 2 == 0 else -1
            piece = d_gen
            for l in reversed(rest_left):
                piece = wedge(basis_vector(space, l), piece)
            tail = Form.monomial(space, rest_right) if rest_right else None
            piece = wedge(piece, tail) if tail is not None else piece
            out = out + piece.scale(sign * coeff)
    return out


def brackets(dga: CoframeDGA) -> list[list[Form]]:
    """Lie brackets  [e_j, e_k] = -sum_i de_i(e_j, e_k) e_i."""
    n = dga.space.dim
    out = [[Form.zero(dga.space, 1) for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for k in range(n):
            comps = {}
            for i in range(n):
                v = -dga.d_table[i].coeff((j, k))
                if not dga.space.is_zero(v):
                    comps[(i,)] = v
            out[j][k] = Form(dga.space, 1, comps)
    return out


@dataclass(frozen=True)
class Connection:
    """Levi-Civita coefficients Gamma(i, j) = covariant derivative of e_j along e_i."""

    space: FrameSpace
    gamma: tuple[tuple[Form, ...], ...]

    def __call__(self, i: int, j: int) -> Form:
        return self.gamma[i][j]

    def endo_matrix(self, i: int) -> Bilinear:
        """Matrix A with A e_j = Gamma(i, j)."""
        n = self.space.dim
        rows = [[self.gamma[i][j].terms.get((k,), self.space.scalar(0))
                 for j in range(n)] for k in range(n)]
        return Bilinear(self.space, rows)


def koszul(dga: CoframeDGA) -> Connection:
    """Koszul formula for an orthonormal invariant frame:

        2 <G(i,j), e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>
    """
    space = dga.space
    n = space.dim
    br = brackets(dga)
    half = space.scalar(1) / 2

    def comp(v: Form, k: int):
        return v.terms.get((k,), space.scalar(0))

    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            comps = {}
            for k in range(n):
                v = half * (comp(br[i][j], k) - comp(br[j][k], i) + comp(br[k][i], j))
                if not space.is_zero(v):
                    comps[(k,)] = v
            row.append(Form(space, 1, comps))
        gamma.append(tuple(row))
    conn = Connection(space, tuple(gamma))
    _check_connection(conn, br)
    return conn


def _check_connection(conn: Connection, br):
    space = conn.space
    n = space.dim
    for i in range(n):
        for j in range(n):
            # metric: <G(i,j), e_k> + <e_j, G(i,k)> = 0
            for k in range(n):
                a = conn(i, j).terms.get((k,), space.scalar(0))
                b = conn(i, k).terms.get((j,), space.scalar(0))
                if not space.is_zero(a + b):
                    raise GStructError("connection is not metric")
            # torsion-free: G(i,j) - G(j,i) = [e_i, e_j]
            if conn(i, j) - conn(j, i) != br[i][j]:
                raise GStructError("connection is not torsion-free")


def covariant_derivative_form(conn: Connection, i: int, a: Form) -> Form:
    """Derivative of a constant-coefficient form along e_i.

    For frames, (nabla_i a)(x, ...) = -sum_slots a(..., Gamma(i, slot), ...),
    computed through the dual action on each generator.
    """
    space = conn.space
    n = space.dim
    A = conn.endo_matrix(i)
    out = Form.zero(space, a.grade)
    for key, coeff in a.terms.items():
        for pos, idx in enumerate(key):
            # replace e_idx by its image under the dual of A, with a minus sign
            for m in range(n):
                c = A.rows[idx][m]  # e_idx(A e_m)
                if space.is_zero(c):
                    continue
                new_key = key[:pos] + (m,) + key[pos + 1 :]
                out = out + Form.monomial(space, new_key, -c * coeff)
    return out


def nabla_phi(conn: Connection, g2: G2Structure, dga: CoframeDGA) -> Bilinear:
    """Torsion matrix of the covariant derivative of phi, cross-checked
    against the exterior derivatives computed independently from the dga.
    """
    if conn.space.dim != 7:
        raise GStructError("nabla_phi needs a 7-dimensional frame")
    alpha = [covariant_derivative_form(conn, i, g2.phi) for i in range(7)]
    a = rbar_of(g2, alpha)
    # the identification of the derivative with its torsion matrix is exact
    for i in range(7):
        via_a = Form.zero(g2.space, 3)
        for j in range(7):
            if not g2.space.is_zero(a(i, j)):
                via_a = via_a + contract(basis_vector(g2.space, j),
                                         g2.star_phi).scale(a(i, j))
        if via_a != alpha[i]:
            raise InconsistentGeometryError(
                "covariant derivative of phi is not of pure torsion type")

    d_phi = exterior_d(dga, g2.phi)
    if dphi_from_a(g2, a) != d_phi:
        raise InconsistentGeometryError("d(phi) mismatch between routes")
    dstar = hodge(exterior_d(dga, g2.star_phi)).scale(-1)
    if dstarphi_from_a(g2, a) != dstar:
        raise InconsistentGeometryError("d*(phi) mismatch between routes")
    return a


def codifferential_phi(dga: CoframeDGA, g2: G2Structure) -> Form:
    """d*phi = -*d*phi computed purely from the structure equations."""
    return hodge(exterior_d(dga, g2.star_phi)).scale(-1)


@dataclass(frozen=True)
class HypersurfaceSlice:
    normal: tuple[int, int]            # (sign, frame index)
    tangent: tuple[int, ...]           # remaining indices, increasing
    space: FrameSpace                  # 6-dim frame with the tangent labels
    B: Bilinear                        # shape tensor B(x,y) = <D_x y, n>
    h: object                          # mean-curvature length, 6h = trace B

    def is_totally_geodesic(self) -> bool:
        return self.B.is_zero()

    def is_minimal(self) -> bool:
        return self.space.is_zero(self.B.trace())

    def is_totally_umbilic(self) -> bool:
        return self.B == Bilinear.identity(self.space).scale(self.h)


def slice_hypersurface(conn: Connection, dga: CoframeDGA,
                       normal: tuple[int, int]) -> HypersurfaceSlice:
    """Shape tensor of the maximal integral submanifold orthogonal to a
    signed frame direction; requires the orthogonal distribution to close.
    """
    sign, idx = normal
    if sign not in (1, -1):
        raise GStructError("normal sign must be +1 or -1")
    space = conn.space
    n_form = basis_vector(space, idx)
    closure = wedge(exterior_d(dga, n_form), n_form)
    if not closure.is_zero():
        raise GStructError(
            f"distribution orthogonal to {space.labels[idx]} is not integrable: "
            f"d(n)^n = {closure}")

    tangent = tuple(i for i in range(space.dim) if i != idx)
    sub = FrameSpace(space.dim - 1,
                     tuple(space.labels[i] for i in tangent),
                     space.backend)
    rows = []
    for a in tangent:
        row = []
        for b in tangent:
            v = conn(a, b).terms.get((idx,), space.scalar(0))
            row.append(space.scalar(sign) * v)
        rows.append(row)
    B = Bilinear(sub, rows)
    h = B.trace() / 6
    return HypersurfaceSlice((sign, idx), tangent, sub, B, h)
