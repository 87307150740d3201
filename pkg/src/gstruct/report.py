"""Report assembly and serialization.

The machine format is JSON with every scalar rendered as a string
(rationals as 'p/q'), sorted keys and LF line endings, so identical runs
are byte-identical and the file parses back losslessly.  The text format
is a stable line-oriented rendering of the same data.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bilinear import Bilinear
from .forms import Form
from .pipeline import HypersurfaceReport
from .runner import ManifoldRun
from .su3 import SU3_CLASS_LABELS
from .g2 import G2_CLASS_LABELS


def _s(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _matrix(b: Bilinear) -> list[list[str]]:
    return [[_s(v) for v in row] for row in b.rows]


def _one_form(f: Form) -> list[str]:
    n = f.space.dim
    zero = f.space.scalar(0)
    return [_s(f.terms.get((i,), zero)) for i in range(n)]


def build_report(name: str, run: ManifoldRun, backend_name: str) -> dict:
    amb = run.ambient
    report = {
        "manifold": name,
        "dim": 7,
        "backend": backend_name,
        "torsion_source": run.source,
        "params": {k: _s(v) for k, v in run.params.items()},
        "ambient": {
            "rbar": _matrix(amb.rbar),
            "class": sorted(amb.g2_class.components,
                            key=G2_CLASS_LABELS.index),
            "norms_sq": {k: _s(v) for k, v in amb.g2_class.norms_sq.items()},
            "p_dstar": _one_form(amb.p_dstar),
        },
        "hypersurfaces": [
            _hypersurface_section(h, amb.g2.space.labels)
            for h in run.hypersurfaces
        ],
    }
    return report


def _hypersurface_section(h: HypersurfaceReport, ambient_labels) -> dict:
    ind = h.induced
    st = ind.structure
    sign, idx = ind.normal
    return {
        "name": h.name,
        "normal": ("+" if sign > 0 else "-") + ambient_labels[idx],
        "theta": [_s(st.theta[0]), _s(st.theta[1])],
        "tangent": list(st.space.labels),
        "B": _matrix(ind.B),
        "B_source": ind.b_source,
        "h": _s(ind.h),
        "predicates": h.predicates,
        "r": _matrix(ind.torsion.r),
        "eta": _one_form(ind.torsion.eta),
        "dstar_omega": _one_form(ind.dstar_w),
        "class": sorted(ind.su3_class.components, key=SU3_CLASS_LABELS.index),
        "norms_sq": {k: _s(v) for k, v in ind.su3_class.norms_sq.items()},
        "su3_kahler": ind.is_su3_kahler(),
        "residuals_sq": {k: _s(v) for k, v in ind.residuals.items()},
        "crosschecks": [
            {
                "table": c.table,
                "row": c.row,
                "bound": sorted(c.bound, key=SU3_CLASS_LABELS.index),
                "predicate": c.predicate_value,
                "class_within_bound": c.class_within_bound,
                "verdict": c.verdict,
            }
            for c in h.crosschecks
        ],
    }


def emit_machine(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=1,
                       ensure_ascii=False) + "\n").encode("utf-8")


def parse_machine(data: bytes) -> dict:
    return json.loads(data.decode("utf-8"))


def emit_text(report: dict) -> str:
    lines = [f"manifold {report['manifold']} (dim {report['dim']}, "
             f"backend {report['backend']}, source {report['torsion_source']})"]
    if report.get("params"):
        lines.append("params: " + " ".join(
            f"{k}={v}" for k, v in sorted(report["params"].items())))
    amb = report["ambient"]
    cls = "+".join(amb["class"]) if amb["class"] else "P"
    lines.append(f"ambient class: {cls}")
    lines.append("rbar:")
    for row in amb["rbar"]:
        lines.append("  " + " ".join(row))
    lines.append("p_dstar: " + " ".join(amb["p_dstar"]))
    for hs in report["hypersurfaces"]:
        lines.append("")
        lines.append(f"hypersurface {hs['name']}  normal {hs['normal']}  "
                     f"theta ({hs['theta'][0]}, {hs['theta'][1]})")
        cls = " ".join(hs["class"]) if hs["class"] else "(torsion-free class)"
        lines.append(f"  class: {cls}" + ("  [su(3)-Kahler]" if hs["su3_kahler"] else ""))
        lines.append(f"  B ({hs['B_source']}):")
        for row in hs["B"]:
            lines.append("    " + " ".join(row))
        lines.append("  h: " + hs["h"])
        preds = hs["predicates"]
        lines.append("  predicates: " + " ".join(
            f"{k}={'yes' if v else 'no'}" for k, v in sorted(preds.items())))
        lines.append("  r:")
        for row in hs["r"]:
            lines.append("    " + " ".join(row))
        lines.append("  eta: " + " ".join(hs["eta"]))
        lines.append("  dstar_omega: " + " ".join(hs["dstar_omega"]))
        lines.append("  residuals_sq: " + " ".join(
            f"{k}={v}" for k, v in sorted(hs["residuals_sq"].items())))
        agree = sum(1 for c in hs["crosschecks"] if c["verdict"] == "AGREE")
        lines.append(f"  crosschecks: {agree}/{len(hs['crosschecks'])} AGREE")
        for c in hs["crosschecks"]:
            if c["verdict"] != "AGREE":
                lines.append(f"    CONFLICT {c['table']}:{c['row']}")
    return "\n".join(lines) + "\n"
