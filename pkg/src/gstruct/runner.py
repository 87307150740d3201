"""Execute a parsed manifest: build ambient data, slice, classify."""

from __future__ import annotations

from fractions import Fraction

from .backend import EXACT
from .bilinear import Bilinear
from .errors import GStructError, InconsistentInputError, ManifestError
from .forms import Form, hodge, wedge
from .frames import FrameSpace
from .framegeom import CoframeDGA, koszul, nabla_phi, slice_hypersurface
from .g2 import (build_g2, dphi_from_a, dstarphi_from_a,
                 rbar_from_derivatives)
from .manifest import ManifestFile, Term
from .pipeline import AmbientData, HypersurfaceReport, classify_hypersurface


def _terms_to_form(space: FrameSpace, terms: list[Term], grade: int,
                   params: dict[str, Fraction], label_index) -> Form:
    out = Form.zero(space, grade)
    for t in terms:
        idxs = tuple(label_index[l] for l in t.labels)
        out = out + Form.monomial(space, idxs, space.scalar(t.resolve(params)))
    return out


class ManifoldRun:
    """All geometric artifacts produced from one manifest evaluation."""

    def __init__(self, ambient: AmbientData, hypersurfaces: list[HypersurfaceReport],
                 source: str, params: dict[str, Fraction],
                 dga: CoframeDGA | None):
        self.ambient = ambient
        self.hypersurfaces = hypersurfaces
        self.source = source
        self.params = params
        self.dga = dga


def build_ambient(mf: ManifestFile, backend=EXACT,
                  params: dict[str, Fraction] | None = None):
    space = FrameSpace(7, mf.labels, backend)
    g2 = build_g2(space)
    label_index = {l: i for i, l in enumerate(mf.labels)}
    params = dict(mf.params if params is None else params)

    dga = None
    if mf.torsion_source == "structure-equations":
        d_map = {}
        for label, terms in mf.d_lines.items():
            d_map[label_index[label]] = _terms_to_form(space, terms, 2,
                                                       params, label_index)
        dga = CoframeDGA.build(space, d_map)
        conn = koszul(dga)
        rbar = nabla_phi(conn, g2, dga)
    elif mf.torsion_source == "injected-rbar":
        vals = [backend.scalar(v) for v in mf.inject_rbar]
        rbar = Bilinear(space, [vals[7 * i: 7 * i + 7] for i in range(7)])
    else:
        dphi = _terms_to_form(space, mf.inject_dphi, 4, params, label_index)
        raw = mf.inject_dstarphi
        grade = len(raw[0].labels) if raw else 2
        dstar_in = _terms_to_form(space, raw, grade, params, label_index)
        if grade == 5:
            # d of the dual 4-form was supplied; convert to the coderivative
            dstar = hodge(dstar_in).scale(-1)
        else:
            dstar = dstar_in
        rbar = rbar_from_derivatives(g2, dphi, dstar)
        if dphi_from_a(g2, rbar) != dphi or dstarphi_from_a(g2, rbar) != dstar:
            raise InconsistentInputError(
                "injected (dphi, d*phi) are not the derivatives of any torsion")
        # independent route to the torsion vector 1-form
        p_hodge = hodge(wedge(hodge(dphi), g2.phi))
        ambient = AmbientData.from_rbar(g2, rbar)
        if ambient.p_dstar != p_hodge:
            raise InconsistentInputError("pd*phi routes disagree on injected data")
        return ambient, dga, params

    return AmbientData.from_rbar(g2, rbar), dga, params


def run_manifest(mf: ManifestFile, backend=EXACT,
                 params: dict[str, Fraction] | None = None) -> ManifoldRun:
    ambient, dga, params = build_ambient(mf, backend, params)
    space = ambient.g2.space
    label_index = {l: i for i, l in enumerate(mf.labels)}
    conn = koszul(dga) if dga is not None else None

    reports = []
    for hs in mf.hypersurfaces:
        idx = label_index[hs.normal_label]
        normal = (hs.normal_sign, idx)
        tangent = tuple(i for i in range(7) if i != idx)
        sub = FrameSpace(6, tuple(mf.labels[i] for i in tangent), backend)
        if hs.B is not None:
            vals = [backend.scalar(v) for v in hs.B]
            B = Bilinear(sub, [vals[6 * i: 6 * i + 6] for i in range(6)])
            b_source = "explicit"
        elif conn is not None:
            sl = slice_hypersurface(conn, dga, normal)
            B = sl.B
            b_source = "connection"
        else:
            raise ManifestError(
                f"hypersurface '{hs.name}' needs an explicit B when the "
                "torsion data is injected")
        theta = (backend.scalar(hs.theta[0]), backend.scalar(hs.theta[1]))
        reports.append(classify_hypersurface(
            ambient, hs.name, normal, B, theta, b_source=b_source))
    return ManifoldRun(ambient, reports, mf.torsion_source, params, dga)


def param_stability(mf: ManifestFile, backend=EXACT) -> str:
    """Re-run the classification at shifted parameter values; a class that
    changes indicates an accidental cancellation at the chosen values."""
    if not mf.params:
        return "n/a"
    base = run_manifest(mf, backend)
    shifted = {}
    for k, v in mf.params.items():
        w = v + 1
        if w == 0:
            w = v + 2
        shifted[k] = w
    try:
        other = run_manifest(mf, backend, params=shifted)
    except GStructError:
        return "shifted-run-failed"
    same = other.ambient.g2_class.components == base.ambient.g2_class.components
    for a, b in zip(base.hypersurfaces, other.hypersurfaces):
        # explicit shape tensors do not track parameters; only derived ones
        if a.induced.b_source == "connection":
            same = same and (a.su3_class.components == b.su3_class.components)
    return "stable" if same else "class-depends-on-parameter-value"
