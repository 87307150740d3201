"""Hypersurface induction: ambient G2 data + shape tensor -> SU(3) data.

Given a unit frame normal n, the induced almost-complex structure is
I x = P(n, x) and the complex volume form is the phase-theta rotation of
(restriction of phi, restriction of n . *phi).  The induced torsion
matrix and the extra 1-form eta follow from the shape-tensor relations

    r = cos(t) (-I_(2) i*rbar + B) - sin(t) (i*rbar + I_(2) B)
    3 I eta = dt - rbar(i_* . , n)

with three scalar/vector identities used as cross-checks:

    2 I d*w          = i* pd*phi - 2 rbar(n, i_* I .) + 2 rbar(i_* I ., n)
    pd*phi(n)        = -2 cos(t) Tr r - 2 sin(t) <r, w> + 12 h
    Tr(i* rbar)      = -sin(t) Tr r + cos(t) <r, w>
"""

from __future__ import annotations

from dataclasses import dataclass

from .bilinear import Bilinear, apply_I_oneform, iall, islot
from .errors import GStructError, InconsistentGeometryError
from .forms import Form, basis_vector, contract
from .frames import FrameSpace
from .g2 import G2Class, G2Components, G2Structure, g2_classify, g2_project
from .su3 import (SU3Class, SU3Structure, SU3Torsion, dstar_omega,
                  su3_classify, su3_from_tensors)


class InconsistentInductionError(InconsistentGeometryError):
    """A shape-tensor cross-check identity failed."""


@dataclass(frozen=True)
class AmbientData:
    g2: G2Structure
    rbar: Bilinear
    components: G2Components
    g2_class: G2Class

    @classmethod
    def from_rbar(cls, g2: G2Structure, rbar: Bilinear) -> "AmbientData":
        return cls(g2, rbar, g2_project(g2, rbar), g2_classify(g2, rbar))

    @property
    def p_dstar(self) -> Form:
        return self.components.p_dstar


def induce_structure(g2: G2Structure, normal: tuple[int, int],
                     theta=(1, 0)) -> SU3Structure:
    """Induced SU(3)-structure on the hyperplane orthogonal to a signed
    unit frame direction, with phase theta."""
    sign, idx = normal
    if sign not in (1, -1) or not 0 <= idx < 7:
        raise GStructError("normal must be a signed frame index")
    space = g2.space
    tangent = tuple(i for i in range(7) if i != idx)
    sub = FrameSpace(6, tuple(space.labels[i] for i in tangent), space.backend)
    pos = {amb: k for k, amb in enumerate(tangent)}

    # I x = P(n, x); the cross table has single signed entries
    rows = [[sub.scalar(0)] * 6 for _ in range(6)]
    for t in tangent:
        entry = g2.cross_table[idx][t]
        if entry is None:
            raise GStructError("cross table degenerate")
        s_, k_ = entry
        rows[pos[k_]][pos[t]] = sub.scalar(sign * s_)
    I = Bilinear(sub, rows)

    psi0_plus = _pullback(sub, pos, g2.phi)
    psi0_minus = _pullback(sub, pos,
                           contract(basis_vector(space, idx), g2.star_phi)).scale(sign)
    adapted = _adapted_frame(sub, I, psi0_plus, psi0_minus)
    return su3_from_tensors(sub, adapted, I, theta, psi0_plus, psi0_minus)


def _pullback(sub: FrameSpace, pos: dict[int, int], form: Form) -> Form:
    terms = {}
    for key, coeff in form.terms.items():
        if all(i in pos for i in key):
            terms[tuple(pos[i] for i in key)] = coeff
    return Form(sub, form.grade, terms)


def _adapted_frame(sub: FrameSpace, I: Bilinear, psi0_plus: Form,
                   psi0_minus: Form):
    """Signed frame directions (u1,u2,u3,Iu1,Iu2,Iu3) with psi+(u1,u2,u3)=1
    and psi-(u1,u2,u3)=0 for the unrotated forms."""
    used = set()
    us = []
    for i in range(6):
        if i in used:
            continue
        img = I.apply_vector(basis_vector(sub, i))
        ((j,), c) = next(iter(img.terms.items()))
        s = 1 if c > 0 else -1
        us.append(((i, 1), (j, s)))
        used.update((i, j))
    (u1, iu1), (u2, iu2), (u3, iu3) = us

    def vec(p):
        return Form.monomial(sub, (p[0],), p[1])

    zp = psi0_plus.evaluate(vec(u1), vec(u2), vec(u3))
    zm = psi0_minus.evaluate(vec(u1), vec(u2), vec(u3))
    one = sub.scalar(1)
    if sub.eq(zp, one):
        pass
    elif sub.eq(zp, -one):
        u3, iu3 = (u3[0], -u3[1]), (iu3[0], -iu3[1])
    elif sub.eq(zm, one):
        # multiply u3 by -i: (u3, Iu3) -> (-Iu3, u3)
        u3, iu3 = (iu3[0], -iu3[1]), u3
    elif sub.eq(zm, -one):
        u3, iu3 = iu3, (u3[0], -u3[1])
    else:
        raise GStructError("no unit-volume adapted frame among frame directions")
    adapted = (u1, u2, u3, iu1, iu2, iu3)
    if not sub.eq(psi0_plus.evaluate(*(vec(p) for p in adapted[:3])), one):
        raise GStructError("adapted frame normalisation failed")
    if not sub.is_zero(psi0_minus.evaluate(*(vec(p) for p in adapted[:3]))):
        raise GStructError("adapted frame normalisation failed")
    return adapted


@dataclass(frozen=True)
class InducedData:
    structure: SU3Structure
    normal: tuple[int, int]
    tangent: tuple[int, ...]
    B: Bilinear
    h: object
    torsion: SU3Torsion
    dstar_w: Form
    su3_class: SU3Class
    residuals: dict[str, object]
    b_source: str
    # restrictions of the ambient torsion data, kept for rule checking
    iota_rbar: Bilinear = None
    rbar_tn: Form = None
    rbar_nn: object = None
    iota_p_dstar: Form = None
    p_dstar_n: object = None
    dtheta: Form = None

    def is_su3_kahler(self) -> bool:
        sp = self.structure.space
        return self.torsion.r.is_zero() and all(
            sp.is_zero(v) for v in self.torsion.eta.terms.values())


def rrb(ambient: AmbientData, normal: tuple[int, int], B: Bilinear,
        theta=(1, 0), dtheta: Form | None = None,
        b_source: str = "explicit") -> InducedData:
    """Induced torsion (r, eta) from ambient torsion and shape tensor,
    with the codifferential and trace identities verified exactly."""
    st = induce_structure(ambient.g2, normal, theta)
    sub = st.space
    if not B.is_symmetric():
        raise GStructError("shape tensor must be symmetric")
    sign, idx = normal
    tangent = tuple(i for i in range(7) if i != idx)
    pos = {amb: k for k, amb in enumerate(tangent)}
    rbar = ambient.rbar
    space7 = ambient.g2.space

    iota_rbar = Bilinear(sub, [[rbar(a, b) for b in tangent] for a in tangent])
    rbar_tn = Form(sub, 1, {(pos[a],): space7.scalar(sign) * rbar(a, idx)
                            for a in tangent})
    rbar_nt = Form(sub, 1, {(pos[a],): space7.scalar(sign) * rbar(idx, a)
                            for a in tangent})
    rbar_nn = rbar(idx, idx)
    iota_p = _pullback(sub, pos, ambient.p_dstar)
    p_dstar_n = sub.scalar(sign) * ambient.p_dstar.terms.get((idx,), space7.scalar(0))

    c, s = st.theta
    if dtheta is None:
        dtheta = Form.zero(sub, 1)

    r = (islot(iota_rbar, 2, st.I).scale(-1) + B).scale(c) \
        - (iota_rbar + islot(B, 2, st.I)).scale(s)

    i_eta = (dtheta - rbar_tn).scale(sub.scalar(1) / 3)
    eta = apply_I_oneform(st.I, i_eta).scale(-1)
    torsion = SU3Torsion(r, eta)

    dstar_w = dstar_omega(st, r)
    h = B.trace() / 6

    # codifferential identity
    lhs2 = apply_I_oneform(st.I, dstar_w).scale(2)
    q1 = _compose_I(st, rbar_nt)   # rbar(n, i_* I .)
    q2 = _compose_I(st, rbar_tn)   # rbar(i_* I ., n)
    rhs2 = iota_p - q1.scale(2) + q2.scale(2)
    res2 = lhs2 - rhs2
    # scalar identities
    c_w = r.pair(st.omega_bil)
    res3 = p_dstar_n - (-2 * c * r.trace() - 2 * s * c_w + 12 * h)
    res4 = iota_rbar.trace() - (-s * r.trace() + c * c_w)

    residuals = {
        "codifferential": sum((v * v for v in res2.terms.values()), sub.scalar(0)),
        "normal_trace": res3 * res3,
        "trace": res4 * res4,
    }
    for name, bad in residuals.items():
        if not sub.is_zero(bad):
            raise InconsistentInductionError(
                f"shape-tensor identity '{name}' failed (residual^2 = {bad})")

    su3_class = su3_classify(st, torsion)
    return InducedData(
        structure=st, normal=normal, tangent=tangent, B=B, h=h,
        torsion=torsion, dstar_w=dstar_w, su3_class=su3_class,
        residuals=residuals, b_source=b_source,
        iota_rbar=iota_rbar, rbar_tn=rbar_tn, rbar_nn=rbar_nn,
        iota_p_dstar=iota_p, p_dstar_n=p_dstar_n, dtheta=dtheta,
    )


def _compose_I(st: SU3Structure, mu: Form) -> Form:
    """The 1-form x -> mu(I x)."""
    return apply_I_oneform(st.I, mu).scale(-1)


@dataclass(frozen=True)
class HypersurfaceReport:
    name: str
    induced: InducedData
    predicates: dict[str, bool]
    crosschecks: list

    @property
    def su3_class(self) -> SU3Class:
        return self.induced.su3_class


def shape_predicates(induced: InducedData) -> dict[str, bool]:
    B, sub = induced.B, induced.structure.space
    g = Bilinear.identity(sub)
    ib = iall(B, induced.structure.I)
    return {
        "totally_geodesic": B.is_zero(),
        "minimal": sub.is_zero(B.trace()),
        "totally_umbilic": B == g.scale(induced.h),
        "IB_eq_B": ib == B,
        "IB_eq_minus_B": ib == -B,
    }


def classify_hypersurface(ambient: AmbientData, name: str,
                          normal: tuple[int, int], B: Bilinear,
                          theta=(1, 0), dtheta: Form | None = None,
                          b_source: str = "explicit") -> HypersurfaceReport:
    from .tables import table_crosscheck

    induced = rrb(ambient, normal, B, theta, dtheta, b_source)
    checks = table_crosscheck(ambient, induced)
    return HypersurfaceReport(name, induced, shape_predicates(induced), checks)
