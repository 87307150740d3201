"""G2-structure tensors on a seven-dimensional orthonormal frame.

The fundamental 3-form is the Cayley-frame model

    phi = sum_{i in Z7} e_i ^ e_{i+1} ^ e_{i+3},

the 4-form is its Hodge dual, and the two-fold cross product P is read off
from  <P(x,y), z> = phi(x,y,z).  Intrinsic-torsion data is carried as the
7x7 matrix r(x,y) = (1/4) <x . alpha, y . *phi> of the covariant
derivative alpha, which identifies the torsion space with all covariant
2-tensors; Fernandez-Gray membership then becomes matrix algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bilinear import Bilinear
from .errors import GStructError
from .forms import Form, basis_vector, contract, hodge, inner, wedge
from .frames import FrameSpace

# the index triples (i, i+1, i+3) mod 7; shared by the cross product, the
# g2 membership test and the p-vector sums, which all quantify over them
PHI_TRIPLES = tuple((i, (i + 1) % 7, (i + 3) % 7) for i in range(7))

_MOD7 = tuple(tuple((i + k) % 7 for k in range(7)) for i in range(7))


@dataclass(frozen=True)
class G2Structure:
    space: FrameSpace
    phi: Form
    star_phi: Form
    # cross[i][j] = (sign, k) with P(e_i, e_j) = sign * e_k, or None
    cross_table: tuple

    def cross_basis(self, i: int, j: int) -> Form:
        entry = self.cross_table[i][j]
        if entry is None:
            return Form.zero(self.space, 1)
        sign, k = entry
        return Form.monomial(self.space, (k,), sign)


def build_g2(space: FrameSpace) -> G2Structure:
    """Model G2-structure on a 7-frame; validates the Cayley-frame identities."""
    if space.dim != 7:
        raise GStructError("a G2-structure needs a 7-dimensional frame")
    phi = Form.zero(space, 3)
    for t in PHI_TRIPLES:
        phi = phi + Form.monomial(space, t)
    star_phi = hodge(phi)

    table = []
    for i in range(7):
        row = []
        for j in range(7):
            entry = None
            for k in range(7):
                c = phi.coeff((i, j, k))
                if not space.is_zero(c):
                    entry = (1 if c > 0 else -1, k)
                    break
            row.append(entry)
        table.append(tuple(row))
    g2 = G2Structure(space, phi, star_phi, tuple(table))

    for i in range(7):
        entry = g2.cross_table[i][(i + 1) % 7]
        if entry != (1, (i + 3) % 7):
            raise GStructError("frame is not a Cayley frame")
    if wedge(phi, star_phi) != Form.vol(space).scale(7):
        raise GStructError("phi ^ *phi != 7 Vol")
    return g2


def cross(g2: G2Structure, x: Form, y: Form) -> Form:
    """Two-fold vector cross product P(x, y)."""
    out = Form.zero(g2.space, 1)
    for (i,), cx in x.terms.items():
        for (j,), cy in y.terms.items():
            entry = g2.cross_table[i][j]
            if entry is not None:
                sign, k = entry
                out = out + Form.monomial(g2.space, (k,), sign * cx * cy)
    return out


def alpha_from_a(g2: G2Structure, a: Bilinear) -> list[Form]:
    """Row i of the covariant derivative:  sum_j a_ij (e_j . *phi)."""
    rows = []
    for i in range(7):
        row = Form.zero(g2.space, 3)
        for j in range(7):
            if not g2.space.is_zero(a(i, j)):
                row = row + contract(basis_vector(g2.space, j), g2.star_phi).scale(a(i, j))
        rows.append(row)
    return rows


def rbar_of(g2: G2Structure, alpha: list[Form]) -> Bilinear:
    """Torsion matrix  (1/4) <e_i . alpha, e_j . *phi>;  left inverse of alpha_from_a."""
    quarter = g2.space.scalar(1) / 4
    contractions = [contract(basis_vector(g2.space, j), g2.star_phi) for j in range(7)]
    rows = [[quarter * inner(alpha[i], contractions[j]) for j in range(7)]
            for i in range(7)]
    return Bilinear(g2.space, rows)


def dphi_from_a(g2: G2Structure, a: Bilinear) -> Form:
    """Exterior derivative of phi generated by the torsion matrix a."""
    space = g2.space
    out = Form.zero(space, 4)
    for m in _MOD7:
        c1 = -(a(m[2], m[2]) + a(m[4], m[4]) + a(m[5], m[5]) + a(m[6], m[6]))
        out = out + Form.monomial(space, (m[2], m[4], m[5], m[6]), c1)
        c2 = a(m[4], m[5]) + a(m[1], m[3]) + a(m[2], m[6])
        out = out + Form.monomial(space, (m[0], m[1], m[2], m[4]), c2)
        c3 = -a(m[5], m[4]) - a(m[3], m[1]) + a(m[2], m[6])
        out = out + Form.monomial(space, (m[0], m[2], m[3], m[5]), c3)
        c4 = a(m[4], m[5]) - a(m[3], m[1]) - a(m[6], m[2])
        out = out + Form.monomial(space, (m[0], m[3], m[4], m[6]), c4)
        c5 = -a(m[5], m[4]) + a(m[1], m[3]) - a(m[6], m[2])
        out = out + Form.monomial(space, (m[0], m[5], m[6], m[1]), c5)
    return out


def dstarphi_from_a(g2: G2Structure, a: Bilinear) -> Form:
    """Coderivative of phi generated by the torsion matrix a."""
    space = g2.space
    out = Form.zero(space, 2)
    for m in _MOD7:
        c1 = a(m[5], m[4]) - a(m[4], m[5]) + a(m[6], m[2]) - a(m[2], m[6])
        out = out + Form.monomial(space, (m[1], m[3]), c1)
        c2 = a(m[3], m[1]) - a(m[1], m[3]) + a(m[6], m[2]) - a(m[2], m[6])
        out = out + Form.monomial(space, (m[4], m[5]), c2)
        c3 = a(m[3], m[1]) - a(m[1], m[3]) + a(m[5], m[4]) - a(m[4], m[5])
        out = out + Form.monomial(space, (m[2], m[6]), c3)
    return out


def rbar_from_derivatives(g2: G2Structure, dphi: Form, dstarphi: Form) -> Bilinear:
    """Recover the torsion matrix from (dphi, d*phi):

        4 r(X,Y) = <X . dphi, Y . *phi> - <Y . (X ^ *phi), dphi> + 2 d*phi(X,Y)
    """
    space = g2.space
    quarter = space.scalar(1) / 4
    e = [basis_vector(space, i) for i in range(7)]
    star_contr = [contract(e[j], g2.star_phi) for j in range(7)]
    rows = []
    for i in range(7):
        di = contract(e[i], dphi)
        wi = wedge(e[i], g2.star_phi)
        row = []
        for j in range(7):
            t1 = inner(di, star_contr[j])
            t2 = inner(contract(e[j], wi), dphi)
            t3 = 2 * dstarphi.coeff((i, j))
            row.append(quarter * (t1 - t2 + t3))
        rows.append(row)
    return Bilinear(space, rows)


@dataclass(frozen=True)
class G2Components:
    lam: object           # coefficient of the metric
    s0: Bilinear          # trace-free symmetric part
    g2part: Bilinear      # skew part inside the Lie algebra g2
    pvec: Form            # vector p with g2-orthogonal part p . phi
    p_dstar: Form         # the 1-form -2 sum_i sum_{triples} (b_jk - b_kj) e_i

    def g2perp(self, g2: G2Structure) -> Bilinear:
        return _vec_contract_phi(g2, self.pvec)


def _vec_contract_phi(g2: G2Structure, p: Form) -> Bilinear:
    return Bilinear.from_form2(g2.space, contract(p, g2.phi))


def g2_project(g2: G2Structure, b: Bilinear) -> G2Components:
    """Split a 7x7 tensor into metric, trace-free symmetric, g2 and g2-perp parts."""
    space = g2.space
    lam = b.trace() / 7
    sym0 = b.sym() - Bilinear.identity(space).scale(lam)
    skew = b.skew()

    # project the skew part onto span{e_k . phi}; the basis Gram matrix is
    # computed here rather than hard-coded (it is diagonal for a Cayley frame)
    basis = [_vec_contract_phi(g2, basis_vector(space, k)) for k in range(7)]
    comps = {}
    for k in range(7):
        gram = basis[k].norm_sq()
        coeff = skew.pair(basis[k]) / gram
        if not space.is_zero(coeff):
            comps[k] = coeff
    pvec = Form(space, 1, {(k,): c for k, c in comps.items()})
    g2part = skew - _vec_contract_phi(g2, pvec)

    # -2 sum over the positively oriented pairs of each triple
    p_dstar_terms = {}
    acc = [space.scalar(0)] * 7
    for i, j, k in PHI_TRIPLES:
        # phi(e_i, e_j, e_k) = 1 and cyclic rotations
        for (a_, b_, c_) in ((i, j, k), (j, k, i), (k, i, j)):
            acc[a_] += b(b_, c_) - b(c_, b_)
    for i in range(7):
        v = -2 * acc[i]
        if not space.is_zero(v):
            p_dstar_terms[(i,)] = v
    p_dstar = Form(space, 1, p_dstar_terms)
    return G2Components(lam, sym0, g2part, pvec, p_dstar)


def in_g2(g2: G2Structure, b: Bilinear) -> bool:
    """Membership test:  sum over each triple's pairs of b(e_j, e_k) vanishes."""
    if not b.is_skew():
        return False
    space = g2.space
    acc = [space.scalar(0)] * 7
    for i, j, k in PHI_TRIPLES:
        for (a_, b_, c_) in ((i, j, k), (j, k, i), (k, i, j)):
            acc[a_] += b(b_, c_)
    return all(space.is_zero(v) for v in acc)


G2_CLASS_LABELS = ("X1", "X2", "X3", "X4")


@dataclass(frozen=True)
class G2Class:
    components: frozenset[str]
    norms_sq: dict[str, object]

    def __str__(self):
        if not self.components:
            return "P"
        return "+".join(l for l in G2_CLASS_LABELS if l in self.components)


def g2_classify(g2: G2Structure, r: Bilinear) -> G2Class:
    """Fernandez-Gray class of a torsion matrix: nonzero irreducible parts."""
    parts = g2_project(g2, r)
    space = g2.space
    norms = {
        "X1": parts.lam * parts.lam * 7,
        "X2": parts.g2part.norm_sq(),
        "X3": parts.s0.norm_sq(),
        "X4": parts.g2perp(g2).norm_sq(),
    }
    members = frozenset(l for l in G2_CLASS_LABELS if not space.is_zero(norms[l]))
    return G2Class(members, norms)


def xi_g2(g2: G2Structure, r: Bilinear, x: Form, y: Form) -> Form:
    """Minimal-connection difference tensor:
        xi_X Y = -(1/3) sum_i r(X, e_i) P(e_i, Y).
    """
    space = g2.space
    third = space.scalar(1) / 3
    out = Form.zero(space, 1)
    for (p,), cx in x.terms.items():
        for i in range(7):
            c = r(p, i)
            if space.is_zero(c):
                continue
            out = out + cross(g2, basis_vector(space, i), y).scale(-third * c * cx)
    return out


def xi_g2_matrix(g2: G2Structure, r: Bilinear, i: int) -> Bilinear:
    """Matrix of xi_{e_i} as an endomorphism (column j = xi_{e_i} e_j)."""
    space = g2.space
    cols = [xi_g2(g2, r, basis_vector(space, i), basis_vector(space, j))
            for j in range(7)]
    rows = [[cols[j].terms.get((k,), space.scalar(0)) for j in range(7)]
            for k in range(7)]
    return Bilinear(space, rows)
