"""SU(3)-structure tensors on a six-dimensional orthonormal frame.

A structure is determined by an orthogonal almost-complex matrix I, the
Kaehler form  w(x,y) = <x, I y>, and a unit complex volume form
Psi = psi+ + i psi-.  The phase theta rotates (psi+, psi-) and is stored
as an exact cosine/sine pair.

Intrinsic torsion is carried as the 6x6 matrix
    r(x,y) = (1/2) <x . (nabla w), y . psi+>
together with the 1-form eta; Gray-Hervella membership is then matrix
algebra on r (symmetry, I-invariance, trace, omega-component).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .bilinear import Bilinear, apply_I_oneform, check_complex_structure, iall
from .errors import GStructError, InconsistentInputError, InvalidPhaseError
from .forms import Form, basis_vector, contract, hodge, inner, wedge
from .frames import FrameSpace


@dataclass(frozen=True)
class SU3Structure:
    space: FrameSpace
    # adapted frame (u1, u2, u3, Iu1, Iu2, Iu3) as signed frame directions
    adapted: tuple[tuple[int, int], ...]
    I: Bilinear
    omega: Form
    omega_bil: Bilinear
    psi_plus: Form
    psi_minus: Form
    theta: tuple
    orientation: int  # +1 when 6 Vol(frame order) = omega^3, else -1

    def star(self, a: Form) -> Form:
        """Hodge star of the orientation fixed by 6 Vol = omega^3."""
        return hodge(a, self.orientation)

    def vol(self) -> Form:
        return Form.vol(self.space).scale(self.orientation)

    def apply_I(self, v: Form) -> Form:
        """I on vectors; equals the 1-form action -mu(I .) under metric duality."""
        return self.I.apply_vector(v)


def _signed_basis(space: FrameSpace, idx: int, sign: int) -> Form:
    return Form.monomial(space, (idx,), sign)


def _model_psis(space: FrameSpace, adapted):
    """psi+/psi- expansions in an adapted frame (u1,u2,u3,Iu1,Iu2,Iu3)."""
    u = [_signed_basis(space, i, s) for i, s in adapted[:3]]
    iu = [_signed_basis(space, i, s) for i, s in adapted[3:]]

    def w3(a, b, c):
        return wedge(wedge(a, b), c)

    psi_plus = (w3(u[0], u[1], u[2]) - w3(iu[0], iu[1], u[2])
                - w3(iu[0], u[1], iu[2]) - w3(u[0], iu[1], iu[2]))
    psi_minus = (-w3(iu[0], iu[1], iu[2]) + w3(iu[0], u[1], u[2])
                 + w3(u[0], iu[1], u[2]) + w3(u[0], u[1], iu[2]))
    return psi_plus, psi_minus


def rotate_phase(psi0_plus: Form, psi0_minus: Form, theta) -> tuple[Form, Form]:
    c, s = theta
    return (psi0_plus.scale(c) - psi0_minus.scale(s),
            psi0_plus.scale(s) + psi0_minus.scale(c))


def check_phase(space: FrameSpace, theta):
    c, s = (space.scalar(theta[0]), space.scalar(theta[1]))
    if not space.eq(c * c + s * s, space.scalar(1)):
        raise InvalidPhaseError(f"(c, s) = ({c}, {s}) is not on the unit circle")
    return (c, s)


def su3_from_tensors(space: FrameSpace, adapted, I: Bilinear, theta,
                     psi0_plus: Form, psi0_minus: Form) -> SU3Structure:
    theta = check_phase(space, theta)
    check_complex_structure(I)
    omega_bil = _omega_from_I(space, I)
    omega = omega_bil.to_form2()
    psi_plus, psi_minus = rotate_phase(psi0_plus, psi0_minus, theta)

    omega3 = wedge(wedge(omega, omega), omega)
    six_vol = omega3.coeff(space.vol_tuple)
    if space.eq(six_vol, space.scalar(6)):
        orientation = 1
    elif space.eq(six_vol, space.scalar(-6)):
        orientation = -1
    else:
        raise GStructError("omega^3 is not +-6 times the frame volume")

    structure = SU3Structure(space, tuple(adapted), I, omega, omega_bil,
                             psi_plus, psi_minus, theta, orientation)
    _check_structure(structure)
    return structure


def _omega_from_I(space: FrameSpace, I: Bilinear) -> Bilinear:
    # w(x, y) = <x, I y>: for an orthonormal frame this is the matrix of I
    return Bilinear(space, I.rows)


def _check_structure(st: SU3Structure):
    """Volume and star identities every special almost Hermitian 6-frame obeys."""
    space = st.space
    vol4 = st.vol().scale(4)
    if wedge(st.psi_plus, st.omega) != Form.zero(space, 5):
        raise GStructError("psi+ ^ omega != 0")
    if wedge(st.psi_minus, st.omega) != Form.zero(space, 5):
        raise GStructError("psi- ^ omega != 0")
    if wedge(st.psi_plus, st.psi_minus) != -vol4:
        raise GStructError("psi+ ^ psi- != -4 Vol")
    if not wedge(st.psi_plus, st.psi_plus).is_zero():
        raise GStructError("psi+ ^ psi+ != 0")
    if not wedge(st.psi_minus, st.psi_minus).is_zero():
        raise GStructError("psi- ^ psi- != 0")
    for i in range(space.dim):
        x = basis_vector(space, i)
        if contract(x, st.psi_plus) != contract(st.apply_I(x), st.psi_minus):
            raise GStructError("x . psi+ != Ix . psi-")
        mu = x
        if st.star(wedge(st.star(wedge(mu, st.psi_plus)), st.psi_plus)) != mu.scale(-2):
            raise GStructError("*(*(mu^psi+)^psi+) != -2 mu")
        if st.star(wedge(st.star(wedge(mu, st.psi_minus)), st.psi_plus)) != \
                apply_I_oneform(st.I, mu).scale(2):
            raise GStructError("*(*(mu^psi-)^psi+) != 2 I mu")


def build_su3(space: FrameSpace, adapted_perm, theta=(1, 0)) -> SU3Structure:
    """Model structure from an adapted ordering (u1,u2,u3,Iu1,Iu2,Iu3) of the frame."""
    if space.dim != 6:
        raise GStructError("an SU(3)-structure needs a 6-dimensional frame")
    if sorted(adapted_perm) != list(range(6)):
        raise GStructError("adapted frame must be a permutation of the frame indices")
    adapted = tuple((i, 1) for i in adapted_perm)
    n = space.dim
    rows = [[space.scalar(0)] * n for _ in range(n)]
    for k in range(3):
        u, iu = adapted_perm[k], adapted_perm[k + 3]
        rows[iu][u] = space.scalar(1)   # I u_k = Iu_k
        rows[u][iu] = space.scalar(-1)  # I Iu_k = -u_k
    I = Bilinear(space, rows)
    psi0_plus, psi0_minus = _model_psis(space, adapted)
    return su3_from_tensors(space, adapted, I, theta, psi0_plus, psi0_minus)


# -- torsion as a matrix -------------------------------------------------


def alpha6_from_a(st: SU3Structure, a: Bilinear) -> list[Form]:
    """Row i of nabla omega:  sum_j a_ij (e_j . psi+)."""
    rows = []
    for i in range(6):
        row = Form.zero(st.space, 2)
        for j in range(6):
            if not st.space.is_zero(a(i, j)):
                row = row + contract(basis_vector(st.space, j), st.psi_plus).scale(a(i, j))
        rows.append(row)
    return rows


def r_of(st: SU3Structure, alpha: list[Form]) -> Bilinear:
    """Torsion matrix  (1/2) <e_i . alpha, e_j . psi+>."""
    half = st.space.scalar(1) / 2
    contr = [contract(basis_vector(st.space, j), st.psi_plus) for j in range(6)]
    rows = [[half * inner(alpha[i], contr[j]) for j in range(6)] for i in range(6)]
    return Bilinear(st.space, rows)


@dataclass(frozen=True)
class SU3Torsion:
    r: Bilinear
    eta: Form


@dataclass(frozen=True)
class SU3Components:
    w1p: object
    w1m: object
    w2p: Bilinear
    w2m: Bilinear
    w3: Bilinear
    w4: Bilinear


def su3_project(st: SU3Structure, r: Bilinear) -> SU3Components:
    """Split r into the six matrix types:

    W1+ metric multiples; W1- omega multiples; W2+ trace-free symmetric
    I-invariant; W2- skew I-invariant orthogonal to omega; W3 symmetric
    anti-invariant; W4 skew anti-invariant.
    """
    space = st.space
    g = Bilinear.identity(space)
    omega = st.omega_bil
    ir = iall(r, st.I)
    half = space.scalar(1) / 2
    inv = (r + ir).scale(half)
    anti = (r - ir).scale(half)

    w1p = r.trace() / 6
    w1m = r.pair(omega) / omega.norm_sq()
    w2p = inv.sym() - g.scale(w1p)
    w2m = inv.skew() - omega.scale(w1m)
    w3 = anti.sym()
    w4 = anti.skew()
    return SU3Components(w1p, w1m, w2p, w2m, w3, w4)


SU3_CLASS_LABELS = ("W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5")


@dataclass(frozen=True)
class SU3Class:
    components: frozenset[str]
    norms_sq: dict[str, object]

    def __str__(self):
        if not self.components:
            return "{}"
        return "+".join(l for l in SU3_CLASS_LABELS if l in self.components)


def su3_classify(st: SU3Structure, torsion: SU3Torsion) -> SU3Class:
    """Gray-Hervella class with the W5 norm convention |W5| = 3 |eta|."""
    space = st.space
    parts = su3_project(st, torsion.r)
    eta_sq = inner(torsion.eta, torsion.eta)
    norms = {
        "W1+": parts.w1p * parts.w1p * 6,
        "W1-": parts.w1m * parts.w1m * 6,
        "W2+": parts.w2p.norm_sq(),
        "W2-": parts.w2m.norm_sq(),
        "W3": parts.w3.norm_sq(),
        "W4": parts.w4.norm_sq(),
        "W5": 9 * eta_sq,
    }
    members = frozenset(l for l in SU3_CLASS_LABELS if not space.is_zero(norms[l]))
    return SU3Class(members, norms)


def dstar_omega(st: SU3Structure, r: Bilinear) -> Form:
    """Coderivative of omega from the torsion matrix:

        (d*w)_i = (1/2) sum_{j,k} psi+(e_i, e_j, e_k) (r_jk - r_kj),

    which reduces to summing r(e_j,e_k) - r(e_k,e_j) over the pairs with
    psi+(e_i, e_j, e_k) = 1 whenever the frame is adapted.
    """
    space = st.space
    acc = [space.scalar(0)] * 6
    for (a, b, c), coeff in st.psi_plus.terms.items():
        for (i, j, k) in permutations((a, b, c)):
            sign = _perm_sign3((i, j, k), (a, b, c))
            acc[i] += coeff * sign * (r(j, k) - r(k, j))
    half = space.scalar(1) / 2
    return Form(space, 1, {(i,): half * v for i, v in enumerate(acc)
                           if not space.is_zero(v)})


def _perm_sign3(perm, key):
    seq = list(perm)
    sign = 1
    for i in range(1, 3):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    assert tuple(seq) == tuple(key)
    return sign


def xi_su3(st: SU3Structure, r: Bilinear, x: Form, y: Form) -> Form:
    """u(3)-part of the minimal-connection difference:

        xi_X Y = -(1/2) r(X, e_i) psi+(e_i, e_j, Y) I e_j   (summed over i, j)
    """
    space = st.space
    half = space.scalar(1) / 2
    out = Form.zero(space, 1)
    for (p,), cx in x.terms.items():
        for i in range(6):
            c = r(p, i)
            if space.is_zero(c):
                continue
            pairing = contract(basis_vector(space, i), st.psi_plus)
            v = contract_form2_vector(pairing, y)
            out = out + st.apply_I(v).scale(-half * c * cx)
    return out


def contract_form2_vector(beta: Form, y: Form) -> Form:
    """The vector  sum_j beta(e_j, y) e_j ... i.e. -(y . beta) raised."""
    return -contract(y, beta)


def xi_su3_matrix(st: SU3Structure, r: Bilinear, i: int) -> Bilinear:
    space = st.space
    cols = [xi_su3(st, r, basis_vector(space, i), basis_vector(space, j))
            for j in range(6)]
    rows = [[cols[j].terms.get((k,), space.scalar(0)) for j in range(6)]
            for k in range(6)]
    return Bilinear(space, rows)


def eta_matrix(st: SU3Structure, eta: Form, i: int) -> Bilinear:
    """Matrix of eta_{e_i} Y = (I eta)(e_i) I Y."""
    space = st.space
    ieta = apply_I_oneform(st.I, eta)
    c = ieta.terms.get((i,), space.scalar(0))
    return Bilinear(space, st.I.rows).scale(c)


# -- exterior derivatives of the structure forms -------------------------


def domega_from_a(st: SU3Structure, a: Bilinear) -> Form:
    """d omega = sum a_ij e_i ^ (e_j . psi+)."""
    out = Form.zero(st.space, 3)
    for i in range(6):
        for j in range(6):
            if not st.space.is_zero(a(i, j)):
                out = out + wedge(basis_vector(st.space, i),
                                  contract(basis_vector(st.space, j), st.psi_plus)
                                  ).scale(a(i, j))
    return out


def dpsi_xi_from_a(st: SU3Structure, a: Bilinear) -> tuple[Form, Form]:
    """The xi-parts of (d psi+, d psi-) generated by a:

        (d psi+)_xi = - sum a_ij e_i ^ e_j ^ omega
        (d psi-)_xi = - sum a_ij e_i ^ (I e_j) ^ omega

    (Both signs are fixed by alternating  nabla psi+- = -eta psi+- - xi psi+-;
    see the minimal-connection tests.)
    """
    space = st.space
    plus = Form.zero(space, 4)
    minus = Form.zero(space, 4)
    for i in range(6):
        ei = basis_vector(space, i)
        for j in range(6):
            c = a(i, j)
            if space.is_zero(c):
                continue
            ej = basis_vector(space, j)
            plus = plus + wedge(wedge(ei, ej), st.omega).scale(-c)
            minus = minus + wedge(wedge(ei, st.apply_I(ej)), st.omega).scale(-c)
    return plus, minus


def d45_part(st: SU3Structure, eta: Form, dstar_omega_in: Form) -> tuple[Form, Form]:
    """W4+W5 parts of (d psi+, d psi-):  -(3 eta + (1/2) I d*w) ^ psi+-."""
    idw = apply_I_oneform(st.I, dstar_omega_in)
    mu = eta.scale(3) + idw.scale(st.space.scalar(1) / 2)
    return -wedge(mu, st.psi_plus), -wedge(mu, st.psi_minus)


def eta_candidates(st: SU3Structure, dpsi_plus: Form, dpsi_minus: Form,
                   dstar_omega_in: Form) -> list[Form]:
    """The four equivalent expressions for 6 eta."""
    idw = apply_I_oneform(st.I, dstar_omega_in)
    e1 = st.star(wedge(st.star(dpsi_plus), st.psi_plus)) - idw
    e2 = st.star(wedge(st.star(dpsi_minus), st.psi_minus)) - idw
    e3 = -apply_I_oneform(st.I, st.star(wedge(st.star(dpsi_plus), st.psi_minus))) - idw
    e4 = apply_I_oneform(st.I, st.star(wedge(st.star(dpsi_minus), st.psi_plus))) - idw
    return [e1, e2, e3, e4]


def torsion_from_exterior(st: SU3Structure, domega: Form, dpsi_plus: Form,
                          dpsi_minus: Form, dstar_omega_in: Form) -> SU3Torsion:
    """Recover (r, eta) from the exterior derivatives of the structure forms.

    eta comes from the star expressions, which must all agree; the matrix r
    comes from the pairing formula

      2 r(X,Y) = <X . dw, Y . psi+> - <(X^Y) . (dpsi+)_xi, w>
                                    + <(IX^Y) . (dpsi-)_xi, w>,

    whose raw output carries the pure-trace and pure-omega parts with a
    sevenfold weight; those two components are rescaled before returning.
    """
    space = st.space
    six = space.scalar(6)
    cands = eta_candidates(st, dpsi_plus, dpsi_minus, dstar_omega_in)
    eta = Form(space, 1, {k: v / six for k, v in cands[0].terms.items()})
    for other in cands[1:]:
        if other != cands[0]:
            raise InconsistentInputError(
                "the four eta expressions disagree; input forms are not the "
                "exterior derivatives of a single structure")

    dpsi_plus_xi = dpsi_plus + wedge(eta.scale(3), st.psi_plus)
    dpsi_minus_xi = dpsi_minus + wedge(eta.scale(3), st.psi_minus)

    e = [basis_vector(space, i) for i in range(6)]
    psi_contr = [contract(e[j], st.psi_plus) for j in range(6)]
    half = space.scalar(1) / 2
    rows = []
    for i in range(6):
        di = contract(e[i], domega)
        iei = st.apply_I(e[i])
        row = []
        for j in range(6):
            t1 = inner(di, psi_contr[j])
            t2 = inner(contract(e[j], contract(e[i], dpsi_plus_xi)), st.omega)
            t3 = inner(contract(e[j], contract(iei, dpsi_minus_xi)), st.omega)
            row.append(half * (t1 - t2 + t3))
        rows.append(row)
    raw = Bilinear(space, rows)
    g = Bilinear.identity(space)
    seven = space.scalar(7)
    r = raw - g.scale(raw.trace() / seven) \
            - st.omega_bil.scale(raw.pair(st.omega_bil) / seven)
    return SU3Torsion(r, eta)
