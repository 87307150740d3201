"""Ambient-type tables as executable biconditional rules.

Each rule pairs a geometric predicate on (shape tensor, phase, restricted
ambient torsion) with a bound on the induced Gray-Hervella class; a
crosscheck evaluates both sides and reports AGREE or CONFLICT.  The rules
follow the standing computational model of a constant phase (dt = 0).

Rule sets are keyed by the ambient Fernandez-Gray type.  The constant
phase tables come in a plus version (theta = 0) and a minus version
(theta = pi/2) obtained by swapping every W1/W2 sign label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bilinear import Bilinear, iall, islot
from .forms import Form
from .pipeline import AmbientData, InducedData

W_ALL = frozenset({"W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5"})


@dataclass(frozen=True)
class RuleContext:
    induced: InducedData
    ambient: AmbientData

    @property
    def sub(self):
        return self.induced.structure.space

    @property
    def I(self) -> Bilinear:
        return self.induced.structure.I

    @property
    def theta(self):
        return self.induced.structure.theta

    @property
    def B(self) -> Bilinear:
        return self.induced.B

    @property
    def g(self) -> Bilinear:
        return Bilinear.identity(self.sub)

    @property
    def h(self):
        return self.induced.h

    @property
    def k_scalar(self):
        """k with ambient torsion (k/4) <.,.> (zero for other types)."""
        return 4 * self.ambient.rbar.trace() / 7

    def is_zero_bil(self, b: Bilinear) -> bool:
        return b.is_zero()

    def is_zero_form(self, f: Form) -> bool:
        return f.is_zero()

    def one_plus_I(self, b: Bilinear) -> Bilinear:
        return b + iall(b, self.I)

    def one_minus_I(self, b: Bilinear) -> Bilinear:
        return b - iall(b, self.I)

    def i1_minus_i2(self, b: Bilinear) -> Bilinear:
        return islot(b, 1, self.I) - islot(b, 2, self.I)

    def i1_plus_i2(self, b: Bilinear) -> Bilinear:
        return islot(b, 1, self.I) + islot(b, 2, self.I)


@dataclass(frozen=True)
class TableRule:
    table: str
    row: str
    bound: frozenset
    predicate: Callable[[RuleContext], bool]
    fuzz: bool = True
    note: str = ""


@dataclass(frozen=True)
class CrosscheckResult:
    table: str
    row: str
    bound: frozenset
    predicate_value: bool
    class_within_bound: bool

    @property
    def verdict(self) -> str:
        return "AGREE" if self.predicate_value == self.class_within_bound else "CONFLICT"


# -- predicate helpers ----------------------------------------------------


def _p_geodesic(ctx):
    return ctx.B.is_zero()


def _p_minimal(ctx):
    return ctx.sub.is_zero(ctx.B.trace())


def _p_umbilic(ctx):
    return ctx.B == ctx.g.scale(ctx.h)


def _p_IB_eq_B(ctx):
    return iall(ctx.B, ctx.I) == ctx.B


def _p_IB_eq_minus_B(ctx):
    return iall(ctx.B, ctx.I) == -ctx.B


def _p_one_plus_I_B_2h(ctx):
    return ctx.one_plus_I(ctx.B) == ctx.g.scale(2 * ctx.h)


def _p_parallel(ctx):
    return ctx.ambient.rbar.is_zero()


def _p_theta_const(ctx):
    return ctx.induced.dtheta.is_zero()


def _p_rbar_tn_zero(ctx):
    return ctx.induced.rbar_tn.is_zero()


def _p_eta_vanishes(ctx):
    # dt = rbar(i_* ., n), the no-W5 condition, at the standing dt = 0
    return (ctx.induced.dtheta - ctx.induced.rbar_tn).is_zero()


def _and(*preds):
    return lambda ctx: all(p(ctx) for p in preds)


# -- ambient type X1 (torsion a multiple of the metric) -------------------


def _x1_rows() -> list[TableRule]:
    c = lambda ctx: ctx.theta[0]
    s = lambda ctx: ctx.theta[1]

    def sin_times_umb(ctx):
        return ctx.is_zero_bil(
            (ctx.one_plus_I(ctx.B) - ctx.g.scale(2 * ctx.h)).scale(s(ctx)))

    def cos_times_umb(ctx):
        return ctx.is_zero_bil(
            (ctx.one_plus_I(ctx.B) - ctx.g.scale(2 * ctx.h)).scale(c(ctx)))

    def row5(ctx):
        return ctx.sub.eq(-4 * ctx.h * s(ctx), ctx.k_scalar * c(ctx))

    def row6(ctx):
        return ctx.sub.eq(4 * ctx.h * c(ctx), ctx.k_scalar * s(ctx))

    W = frozenset
    rows = [
        ("theta-const", W({"W1+", "W1-", "W2+", "W2-", "W3"}), _p_theta_const),
        ("IB=B", W({"W1+", "W1-", "W2+", "W2-", "W5"}), _p_IB_eq_B),
        ("sin(1+I)B=2hsin", W({"W1+", "W1-", "W2+", "W3", "W5"}), sin_times_umb),
        ("cos(1+I)B=2hcos", W({"W1+", "W1-", "W2-", "W3", "W5"}), cos_times_umb),
        ("-4hsin=kcos", W({"W1+", "W2+", "W2-", "W3", "W5"}), row5),
        ("4hcos=ksin", W({"W1-", "W2+", "W2-", "W3", "W5"}), row6),
        ("(1+I)B=2h", W({"W1+", "W1-", "W3", "W5"}), _p_one_plus_I_B_2h),
        ("minimal-and-parallel", W({"W2+", "W2-", "W3", "W5"}),
         _and(_p_minimal, _p_parallel)),
        ("umbilic", W({"W1+", "W1-", "W5"}), _p_umbilic),
        ("IB=B-minimal-parallel", W({"W2+", "W2-", "W5"}),
         _and(_p_IB_eq_B, _p_minimal, _p_parallel)),
        ("IB=-B-parallel", W({"W3", "W5"}), _and(_p_IB_eq_minus_B, _p_parallel)),
        ("geodesic-parallel", W({"W5"}), _and(_p_geodesic, _p_parallel)),
        ("geodesic-const-parallel", W(), _and(_p_geodesic, _p_theta_const, _p_parallel)),
    ]
    return [TableRule("X1", r, b, p) for r, b, p in rows]


# -- constant-phase tables: +/- sign juggling ------------------------------

_SWAP = {"W1+": "W1-", "W1-": "W1+", "W2+": "W2-", "W2-": "W2+",
         "W3": "W3", "W4": "W4", "W5": "W5"}


def _swap_bound(bound: frozenset) -> frozenset:
    return frozenset(_SWAP[w] for w in bound)


def _x1_const_rows(mode: str) -> list[TableRule]:
    """Ambient X1 with theta = 0 ('+') or theta = pi/2 ('-')."""
    W = frozenset
    rows = [
        ("IB=B", W({"W1+", "W1-", "W2+"}), _p_IB_eq_B),
        ("(1+I)B=2h", W({"W1+", "W1-", "W3"}), _p_one_plus_I_B_2h),
        ("parallel", W({"W1+", "W2+", "W3"}), _p_parallel),
        ("minimal", W({"W1-", "W2+", "W3"}), _p_minimal),
        ("umbilic", W({"W1+", "W1-"}), _p_umbilic),
        ("IB=B-parallel", W({"W1+", "W2+"}), _and(_p_IB_eq_B, _p_parallel)),
        ("IB=B-minimal", W({"W1-", "W2+"}), _and(_p_IB_eq_B, _p_minimal)),
        ("(1+I)B=2h-parallel", W({"W1+", "W3"}),
         _and(_p_one_plus_I_B_2h, _p_parallel)),
        ("IB=-B", W({"W1-", "W3"}), _p_IB_eq_minus_B),
        ("minimal-parallel", W({"W2+", "W3"}), _and(_p_minimal, _p_parallel)),
        ("IB=-B-parallel", W({"W3"}), _and(_p_IB_eq_minus_B, _p_parallel)),
        ("IB=B-minimal-parallel", W({"W2+"}),
         _and(_p_IB_eq_B, _p_minimal, _p_parallel)),
        ("geodesic", W({"W1-"}), _p_geodesic),
        ("umbilic-parallel", W({"W1+"}), _and(_p_umbilic, _p_parallel)),
        ("geodesic-parallel", W(), _and(_p_geodesic, _p_parallel)),
    ]
    out = []
    for r, b, p in rows:
        bound = b if mode == "+" else _swap_bound(b)
        out.append(TableRule(f"X1@{mode}", r, bound, p))
    return out


def _parallel_const_rows(mode: str) -> list[TableRule]:
    """Ambient type P with theta = 0 ('+') or theta = pi/2 ('-')."""
    W = frozenset
    rows = [
        ("IB=B", W({"W1+", "W2+"}), _p_IB_eq_B),
        ("(1+I)B=2h", W({"W1+", "W3"}), _p_one_plus_I_B_2h),
        ("minimal", W({"W2+", "W3"}), _p_minimal),
        ("IB=-B", W({"W3"}), _p_IB_eq_minus_B),
        ("IB=B-minimal", W({"W2+"}), _and(_p_IB_eq_B, _p_minimal)),
        ("umbilic", W({"W1+"}), _p_umbilic),
        ("geodesic", W(), _p_geodesic),
    ]
    out = []
    for r, b, p in rows:
        bound = b if mode == "+" else _swap_bound(b)
        out.append(TableRule(f"P@{mode}", r, bound, p))
    return out


# -- ambient type X2 (torsion in the Lie algebra g2) -----------------------


def _x2_general_rows() -> list[TableRule]:
    c = lambda ctx: ctx.theta[0]
    s = lambda ctx: ctx.theta[1]

    def i_combo(ctx):
        return ctx.i1_minus_i2(ctx.induced.iota_rbar) + ctx.one_plus_I(ctx.B) \
            - ctx.g.scale(2 * ctx.h)

    def sin_combo(ctx):
        return ctx.is_zero_bil(i_combo(ctx).scale(s(ctx)))

    def cos_combo(ctx):
        return ctx.is_zero_bil(i_combo(ctx).scale(c(ctx)))

    def combo(ctx):
        return ctx.is_zero_bil(i_combo(ctx))

    def h_sin(ctx):
        return ctx.sub.is_zero(ctx.h * s(ctx))

    def h_cos(ctx):
        return ctx.sub.is_zero(ctx.h * c(ctx))

    W = frozenset
    rows = [
        ("no-W5", W({"W1+", "W1-", "W2+", "W2-", "W3", "W4"}), _p_eta_vanishes),
        ("rbar(.,n)=0", W({"W1+", "W1-", "W2+", "W2-", "W3", "W5"}),
         _p_rbar_tn_zero),
        ("IB=B", W({"W1+", "W1-", "W2+", "W2-", "W4", "W5"}), _p_IB_eq_B),
        ("sin-combo", W({"W1+", "W1-", "W2+", "W3", "W4", "W5"}), sin_combo),
        ("cos-combo", W({"W1+", "W1-", "W2-", "W3", "W4", "W5"}), cos_combo),
        ("hsin=0", W({"W1+", "W2+", "W2-", "W3", "W4", "W5"}), h_sin),
        ("hcos=0", W({"W1-", "W2+", "W2-", "W3", "W4", "W5"}), h_cos),
        ("rbar(.,n)=0-const", W({"W1+", "W1-", "W2+", "W2-", "W3"}),
         _and(_p_rbar_tn_zero, _p_theta_const)),
        ("combo=2h", W({"W1+", "W1-", "W3", "W4", "W5"}), combo),
        ("minimal", W({"W2+", "W2-", "W3", "W4", "W5"}), _p_minimal),
    ]
    return [TableRule("X2", r, b, p) for r, b, p in rows]


def _x2_const_rows(mode: str) -> list[TableRule]:
    def combo(ctx):
        return ctx.is_zero_bil(
            ctx.i1_minus_i2(ctx.induced.iota_rbar) + ctx.one_plus_I(ctx.B)
            - ctx.g.scale(2 * ctx.h))

    W = frozenset
    rows = [
        ("rbar(.,n)=0", W({"W1+", "W2+", "W3"}), _p_rbar_tn_zero),
        ("IB=B", W({"W1+", "W2+", "W4", "W5"}), _p_IB_eq_B),
        ("combo=2h", W({"W1+", "W3", "W4", "W5"}), combo),
        ("minimal", W({"W2+", "W3", "W4", "W5"}), _p_minimal),
    ]
    out = []
    for r, b, p in rows:
        bound = b if mode == "+" else _swap_bound(b)
        out.append(TableRule(f"X2@{mode}", r, bound, p))
    return out


# -- ambient type X3 (trace-free symmetric torsion) ------------------------


def _x3_general_rows() -> list[TableRule]:
    c = lambda ctx: ctx.theta[0]
    s = lambda ctx: ctx.theta[1]

    def no_w3(ctx):
        return ctx.i1_plus_i2(ctx.induced.iota_rbar) == ctx.one_minus_I(ctx.B)

    def no_w2m(ctx):
        lhs = ctx.one_plus_I(ctx.induced.iota_rbar).scale(3 * c(ctx)) \
            + ctx.one_plus_I(ctx.B).scale(3 * s(ctx))
        rhs = ctx.g.scale(6 * ctx.h * s(ctx) - c(ctx) * ctx.induced.rbar_nn)
        return lhs == rhs

    def no_w2p(ctx):
        lhs = ctx.one_plus_I(ctx.induced.iota_rbar).scale(-3 * s(ctx)) \
            + ctx.one_plus_I(ctx.B).scale(3 * c(ctx))
        rhs = ctx.g.scale(6 * ctx.h * c(ctx) + s(ctx) * ctx.induced.rbar_nn)
        return lhs == rhs

    def no_w1m(ctx):
        return ctx.sub.eq(c(ctx) * ctx.induced.rbar_nn, 6 * ctx.h * s(ctx))

    def no_w1p(ctx):
        return ctx.sub.eq(s(ctx) * ctx.induced.rbar_nn, -6 * ctx.h * c(ctx))

    def no_w2pm(ctx):
        return (ctx.one_plus_I(ctx.induced.iota_rbar).scale(3)
                == ctx.g.scale(-ctx.induced.rbar_nn)) and _p_one_plus_I_B_2h(ctx)

    def no_w1pm(ctx):
        return ctx.sub.is_zero(ctx.induced.rbar_nn) and _p_minimal(ctx)

    W = frozenset
    rows = [
        ("no-W5", W({"W1+", "W1-", "W2+", "W2-", "W3"}), _p_eta_vanishes),
        ("no-W3", W({"W1+", "W1-", "W2+", "W2-", "W5"}), no_w3),
        ("no-W2-", W({"W1+", "W1-", "W2+", "W3", "W5"}), no_w2m),
        ("no-W2+", W({"W1+", "W1-", "W2-", "W3", "W5"}), no_w2p),
        ("no-W1-", W({"W1+", "W2+", "W2-", "W3", "W5"}), no_w1m),
        ("no-W1+", W({"W1-", "W2+", "W2-", "W3", "W5"}), no_w1p),
        ("no-W2+-", W({"W1+", "W1-", "W3", "W5"}), no_w2pm),
        ("no-W1+-", W({"W2+", "W2-", "W3", "W5"}), no_w1pm),
    ]
    return [TableRule("X3", r, b, p) for r, b, p in rows]


def _x3_const_rows(mode: str) -> list[TableRule]:
    def no_w3(ctx):
        return ctx.i1_plus_i2(ctx.induced.iota_rbar) == ctx.one_minus_I(ctx.B)

    def rbar_combo(ctx):
        return (ctx.one_plus_I(ctx.induced.iota_rbar).scale(3)
                == ctx.g.scale(-ctx.induced.rbar_nn))

    def rbar_nn_zero(ctx):
        return ctx.sub.is_zero(ctx.induced.rbar_nn)

    W = frozenset
    # the ambient-torsion condition always pins the W2/W1 part sourced from
    # the restricted torsion; swapping the bound labels between the two
    # phases keeps each condition attached to the part it controls
    rows = [
        ("rbar(.,n)=0", W({"W1+", "W1-", "W2+", "W2-", "W3"}), _p_rbar_tn_zero),
        ("no-W3", W({"W1+", "W1-", "W2+", "W2-", "W5"}), no_w3),
        ("no-W2-", W({"W1+", "W1-", "W2+", "W3", "W5"}), rbar_combo),
        ("no-W2+", W({"W1+", "W1-", "W2-", "W3", "W5"}), _p_one_plus_I_B_2h),
        ("no-W1-", W({"W1+", "W2+", "W2-", "W3", "W5"}), rbar_nn_zero),
        ("no-W1+", W({"W1-", "W2+", "W2-", "W3", "W5"}), _p_minimal),
    ]
    out = []
    for r, b, p in rows:
        bound = b if mode == "+" else _swap_bound(b)
        out.append(TableRule(f"X3@{mode}", r, bound, p,
                             note="phase pairing follows the computed split"))
    return out


# -- ambient type X4 (torsion p . phi) -------------------------------------


def _x4_general_rows() -> list[TableRule]:
    c = lambda ctx: ctx.theta[0]
    s = lambda ctx: ctx.theta[1]

    def p_normal(ctx):
        return ctx.induced.iota_p_dstar.is_zero()

    def sin_umb(ctx):
        return ctx.is_zero_bil(
            (ctx.one_plus_I(ctx.B) - ctx.g.scale(2 * ctx.h)).scale(s(ctx)))

    def cos_umb(ctx):
        return ctx.is_zero_bil(
            (ctx.one_plus_I(ctx.B) - ctx.g.scale(2 * ctx.h)).scale(c(ctx)))

    def sin_pd(ctx):
        return ctx.sub.is_zero(s(ctx) * (ctx.induced.p_dstar_n - 12 * ctx.h))

    def cos_pd(ctx):
        return ctx.sub.is_zero(c(ctx) * (ctx.induced.p_dstar_n - 12 * ctx.h))

    def pd_12h(ctx):
        return ctx.sub.eq(ctx.induced.p_dstar_n, 12 * ctx.h)

    W = frozenset
    rows = [
        ("no-W5", W({"W1+", "W1-", "W2+", "W2-", "W3", "W4"}), p_normal),
        ("p-normal", W({"W1+", "W1-", "W2+", "W2-", "W3", "W5"}), p_normal),
        ("IB=B", W({"W1+", "W1-", "W2+", "W2-", "W4", "W5"}), _p_IB_eq_B),
        ("sin-umb", W({"W1+", "W1-", "W2+", "W3", "W4", "W5"}), sin_umb),
        ("cos-umb", W({"W1+", "W1-", "W2-", "W3", "W4", "W5"}), cos_umb),
        ("sin(pd-12h)=0", W({"W1+", "W2+", "W2-", "W3", "W4", "W5"}), sin_pd),
        ("cos(pd-12h)=0", W({"W1-", "W2+", "W2-", "W3", "W4", "W5"}), cos_pd),
        ("(1+I)B=2h", W({"W1+", "W1-", "W3", "W4", "W5"}), _p_one_plus_I_B_2h),
        ("pd=12h", W({"W2+", "W2-", "W3", "W4", "W5"}), pd_12h),
        ("umbilic", W({"W1+", "W1-", "W4", "W5"}), _p_umbilic),
    ]
    return [TableRule("X4", r, b, p) for r, b, p in rows]


def _x4_tangent_rows() -> list[TableRule]:
    """Ambient X4 with the torsion vector tangent to the hypersurface."""
    c = lambda ctx: ctx.theta[0]
    s = lambda ctx: ctx.theta[1]

    def never(ctx):
        # i* pd*phi = 12 I dt cannot hold with dt = 0 and a tangent vector
        return ctx.induced.iota_p_dstar.is_zero()

    def sin_umb(ctx):
        return ctx.is_zero_bil(
            (ctx.one_plus_I(ctx.B) - ctx.g.scale(2 * ctx.h)).scale(s(ctx)))

    def cos_umb(ctx):
        return ctx.is_zero_bil(
            (ctx.one_plus_I(ctx.B) - ctx.g.scale(2 * ctx.h)).scale(c(ctx)))

    def h_sin(ctx):
        return ctx.sub.is_zero(ctx.h * s(ctx))

    def h_cos(ctx):
        return ctx.sub.is_zero(ctx.h * c(ctx))

    W = frozenset
    rows = [
        ("no-W5", W({"W1+", "W1-", "W2+", "W2-", "W3", "W4"}), never),
        ("IB=B", W({"W1+", "W1-", "W2+", "W2-", "W4", "W5"}), _p_IB_eq_B),
        ("sin-umb", W({"W1+", "W1-", "W2+", "W3", "W4", "W5"}), sin_umb),
        ("cos-umb", W({"W1+", "W1-", "W2-", "W3", "W4", "W5"}), cos_umb),
        ("hsin=0", W({"W1+", "W2+", "W2-", "W3", "W4", "W5"}), h_sin),
        ("hcos=0", W({"W1-", "W2+", "W2-", "W3", "W4", "W5"}), h_cos),
        ("(1+I)B=2h", W({"W1+", "W1-", "W3", "W4", "W5"}), _p_one_plus_I_B_2h),
        ("minimal", W({"W2+", "W2-", "W3", "W4", "W5"}), _p_minimal),
        ("umbilic", W({"W1+", "W1-", "W4", "W5"}), _p_umbilic),
        ("geodesic", W({"W4", "W5"}), _p_geodesic),
    ]
    return [TableRule("X4-tangent", r, b, p) for r, b, p in rows]


# -- dispatch ---------------------------------------------------------------


def applicable_rules(ambient: AmbientData, induced: InducedData) -> list[TableRule]:
    cls = ambient.g2_class.components
    theta = induced.structure.theta
    sub = induced.structure.space
    mode = None
    if sub.eq(theta[0], sub.scalar(1)) and sub.is_zero(theta[1]):
        mode = "+"
    elif sub.is_zero(theta[0]) and sub.eq(theta[1], sub.scalar(1)):
        mode = "-"

    rules: list[TableRule] = []
    if cls <= {"X1"}:
        rules += _x1_rows()
        if mode:
            rules += _x1_const_rows(mode)
    if not cls and mode:
        rules += _parallel_const_rows(mode)
    if cls == {"X2"}:
        rules += _x2_general_rows()
        if mode:
            rules += _x2_const_rows(mode)
    if cls == {"X3"}:
        rules += _x3_general_rows()
        if mode:
            rules += _x3_const_rows(mode)
    if cls == {"X4"}:
        rules += _x4_general_rows()
        tangent_p = induced.structure.space.is_zero(induced.p_dstar_n)
        if tangent_p:
            rules += _x4_tangent_rows()
    return rules


def table_crosscheck(ambient: AmbientData, induced: InducedData) -> list[CrosscheckResult]:
    ctx = RuleContext(induced, ambient)
    out = []
    for rule in applicable_rules(ambient, induced):
        pred = bool(rule.predicate(ctx))
        within = induced.su3_class.components <= rule.bound
        out.append(CrosscheckResult(rule.table, rule.row, rule.bound, pred, within))
    return out
