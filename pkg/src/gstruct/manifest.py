"""Line-oriented manifold description files (.gman).

Grammar (one statement per line; '#' starts a comment):

    manifold <name>
    dim 7
    coframe <label> x 7
    param <id> = <rational>
    d <label> = 0 | <coef> <label>^<label> [+ <coef> <label>^<label> ...]
    inject rbar <49 rationals>        (alternative to d-lines)
    inject a <49 rationals>           (synonym for rbar)
    inject dphi <coef> <l>^<l>^<l>^<l> [+ ...]
    inject dstarphi <coef> <l>^<l>[^<l>^<l>^<l>] [+ ...]
    hypersurface <name> normal <+|-><label> theta <0|pi/2|cs c s> [B <36 rationals>]

Coefficients are rationals 'p', 'p/q', decimals, or (signed) parameter
names.  A manifold carries exactly one torsion source: structure
equations (d-lines, defaulting to zero) or one injection block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ManifestError

_THETA_NAMED = {"0": (Fraction(1), Fraction(0)), "pi/2": (Fraction(0), Fraction(1))}


@dataclass(frozen=True)
class Term:
    coeff: Fraction | str      # number, or a parameter name with optional sign
    sign: int
    labels: tuple[str, ...]

    def resolve(self, params: dict[str, Fraction]) -> Fraction:
        if isinstance(self.coeff, str):
            if self.coeff not in params:
                raise ManifestError(f"unknown parameter '{self.coeff}'")
            return self.sign * params[self.coeff]
        return self.sign * self.coeff


@dataclass(frozen=True)
class HypersurfaceSpec:
    name: str
    normal_sign: int
    normal_label: str
    theta: tuple[Fraction, Fraction]
    B: tuple[Fraction, ...] | None = None


@dataclass
class ManifestFile:
    name: str = ""
    dim: int = 0
    labels: tuple[str, ...] = ()
    params: dict[str, Fraction] = field(default_factory=dict)
    d_lines: dict[str, list[Term]] = field(default_factory=dict)
    inject_rbar: tuple[Fraction, ...] | None = None
    inject_dphi: list[Term] | None = None
    inject_dstarphi: list[Term] | None = None
    hypersurfaces: list[HypersurfaceSpec] = field(default_factory=list)

    @property
    def torsion_source(self) -> str:
        if self.inject_rbar is not None:
            return "injected-rbar"
        if self.inject_dphi is not None:
            return "injected-derivatives"
        return "structure-equations"


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.tokens: list[tuple[str, int]] = []
        col = 0
        for raw in text.split(" "):
            if raw and not raw.isspace():
                stripped = raw.strip()
                if stripped:
                    self.tokens.append((stripped, col + 1))
            col += len(raw) + 1
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self, what: str) -> tuple[str, int]:
        if self.pos >= len(self.tokens):
            last_col = self.tokens[-1][1] if self.tokens else 1
            raise ManifestError(f"expected {what}", self.number, last_col)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, literal: str):
        tok, col = self.next(f"'{literal}'")
        if tok != literal:
            raise ManifestError(f"expected '{literal}', got '{tok}'", self.number, col)

    def done(self):
        if self.pos < len(self.tokens):
            tok, col = self.tokens[self.pos]
            raise ManifestError(f"unexpected trailing token '{tok}'", self.number, col)


def _parse_rational(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ManifestError(f"'{tok}' is not a rational number", line, col) from None


_COEF_SIGNS = {"+": 1, "-": -1}


def _parse_coeff(tok: str, line: int, col: int) -> tuple[Fraction | str, int]:
    sign = 1
    body = tok
    if body and body[0] in _COEF_SIGNS:
        sign = _COEF_SIGNS[body[0]]
        body = body[1:]
    if not body:
        raise ManifestError("empty coefficient", line, col)
    try:
        return Fraction(tok), 1
    except (ValueError, ZeroDivisionError):
        pass
    if body.isidentifier():
        return body, sign
    raise ManifestError(f"'{tok}' is not a rational or parameter name", line, col)


def _parse_terms(ln: _Line, labels: set[str], arity: tuple[int, ...]) -> list[Term]:
    terms: list[Term] = []
    first = True
    while ln.peek() is not None:
        tok = ln.peek()
        if tok == "+":
            ln.next("term")
            tok = ln.peek()
        if tok is None:
            raise ManifestError("dangling '+'", ln.number, 1)
        if first and tok == "0" and len(ln.tokens) - ln.pos == 1:
            ln.next("zero")
            break
        ctok, ccol = ln.next("coefficient")
        coeff, sign = _parse_coeff(ctok, ln.number, ccol)
        mtok, mcol = ln.next("monomial")
        parts = tuple(mtok.split("^"))
        if len(parts) not in arity:
            raise ManifestError(
                f"monomial '{mtok}' must have {' or '.join(map(str, arity))} factors",
                ln.number, mcol)
        for p in parts:
            if p not in labels:
                raise ManifestError(f"unknown coframe label '{p}'", ln.number, mcol)
        if len(set(parts)) != len(parts):
            raise ManifestError(f"repeated label in monomial '{mtok}'", ln.number, mcol)
        terms.append(Term(coeff, sign, parts))
        first = False
    return terms


def parse_manifest(text: str) -> ManifestFile:
    mf = ManifestFile()
    seen_d: set[str] = set()
    seen: set[str] = set()
    inject_kind: str | None = None

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        ln = _Line(number, stripped)
        keyword, kcol = ln.next("statement keyword")

        if keyword == "manifold":
            if "manifold" in seen:
                raise ManifestError("duplicate 'manifold' line", number, kcol)
            mf.name, _ = ln.next("manifold name")
            ln.done()
            seen.add("manifold")

        elif keyword == "dim":
            tok, col = ln.next("dimension")
            if tok != "7":
                raise ManifestError("only 'dim 7' is supported", number, col)
            mf.dim = 7
            ln.done()
            seen.add("dim")

        elif keyword == "coframe":
            if mf.labels:
                raise ManifestError("duplicate 'coframe' line", number, kcol)
            labels = []
            while ln.peek() is not None:
                labels.append(ln.next("label")[0])
            if len(labels) != 7:
                raise ManifestError("coframe needs exactly 7 labels", number, kcol)
            if len(set(labels)) != 7:
                raise ManifestError("coframe labels must be distinct", number, kcol)
            mf.labels = tuple(labels)

        elif keyword == "param":
            name, ncol = ln.next("parameter name")
            if not name.isidentifier():
                raise ManifestError(f"bad parameter name '{name}'", number, ncol)
            if name in mf.params:
                raise ManifestError(f"duplicate parameter '{name}'", number, ncol)
            ln.expect("=")
            tok, col = ln.next("rational value")
            mf.params[name] = _parse_rational(tok, number, col)
            ln.done()

        elif keyword == "d":
            _need_coframe(mf, number, kcol)
            label, lcol = ln.next("generator label")
            if label not in mf.labels:
                raise ManifestError(f"unknown coframe label '{label}'", number, lcol)
            if label in seen_d:
                raise ManifestError(f"duplicate 'd {label}' line", number, lcol)
            if inject_kind is not None:
                raise ManifestError("cannot mix d-lines with an inject block",
                                    number, kcol)
            ln.expect("=")
            mf.d_lines[label] = _parse_terms(ln, set(mf.labels), (2,))
            seen_d.add(label)

        elif keyword == "inject":
            _need_coframe(mf, number, kcol)
            if seen_d:
                raise ManifestError("cannot mix an inject block with d-lines",
                                    number, kcol)
            kind, kindcol = ln.next("inject kind")
            if kind in ("rbar", "a"):
                if mf.inject_rbar is not None or inject_kind in ("rbar", "a"):
                    raise ManifestError("duplicate torsion injection", number, kindcol)
                if inject_kind is not None:
                    raise ManifestError("conflicting inject blocks", number, kindcol)
                vals = []
                while ln.peek() is not None:
                    tok, col = ln.next("rational")
                    vals.append(_parse_rational(tok, number, col))
                if len(vals) != 49:
                    raise ManifestError(
                        f"inject {kind} needs 49 rationals, got {len(vals)}",
                        number, kindcol)
                mf.inject_rbar = tuple(vals)
                inject_kind = "rbar"
            elif kind == "dphi":
                if mf.inject_dphi is not None:
                    raise ManifestError("duplicate 'inject dphi'", number, kindcol)
                if inject_kind not in (None, "derivatives"):
                    raise ManifestError("conflicting inject blocks", number, kindcol)
                mf.inject_dphi = _parse_terms(ln, set(mf.labels), (4,))
                inject_kind = "derivatives"
            elif kind == "dstarphi":
                if mf.inject_dstarphi is not None:
                    raise ManifestError("duplicate 'inject dstarphi'", number, kindcol)
                if inject_kind not in (None, "derivatives"):
                    raise ManifestError("conflicting inject blocks", number, kindcol)
                mf.inject_dstarphi = _parse_terms(ln, set(mf.labels), (2, 5))
                inject_kind = "derivatives"
            else:
                raise ManifestError(f"unknown inject kind '{kind}'", number, kindcol)

        elif keyword == "hypersurface":
            _need_coframe(mf, number, kcol)
            name, _ = ln.next("hypersurface name")
            ln.expect("normal")
            ntok, ncol = ln.next("signed normal")
            if not ntok or ntok[0] not in "+-":
                raise ManifestError("normal needs an explicit sign, e.g. +e0",
                                    number, ncol)
            sign = 1 if ntok[0] == "+" else -1
            nlabel = ntok[1:]
            if nlabel not in mf.labels:
                raise ManifestError(f"unknown coframe label '{nlabel}'", number, ncol)
            ln.expect("theta")
            ttok, tcol = ln.next("theta spec")
            if ttok in _THETA_NAMED:
                theta = _THETA_NAMED[ttok]
            elif ttok == "cs":
                ctok, ccol = ln.next("cos value")
                stok, scol = ln.next("sin value")
                theta = (_parse_rational(ctok, number, ccol),
                         _parse_rational(stok, number, scol))
            else:
                raise ManifestError(
                    f"theta must be '0', 'pi/2' or 'cs <c> <s>', got '{ttok}'",
                    number, tcol)
            B = None
            if ln.peek() == "B":
                ln.next("B")
                vals = []
                while ln.peek() is not None:
                    tok, col = ln.next("rational")
                    vals.append(_parse_rational(tok, number, col))
                if len(vals) != 36:
                    raise ManifestError(
                        f"B needs 36 rationals, got {len(vals)}", number, ncol)
                B = tuple(vals)
            ln.done()
            if any(hs.name == name for hs in mf.hypersurfaces):
                raise ManifestError(f"duplicate hypersurface '{name}'", number, kcol)
            mf.hypersurfaces.append(HypersurfaceSpec(name, sign, nlabel, theta, B))

        else:
            raise ManifestError(f"unknown statement '{keyword}'", number, kcol)

    if "manifold" not in seen:
        raise ManifestError("missing 'manifold' line")
    if mf.dim != 7:
        raise ManifestError("missing 'dim 7' line")
    if not mf.labels:
        raise ManifestError("missing 'coframe' line")
    if (mf.inject_dphi is None) != (mf.inject_dstarphi is None):
        raise ManifestError("inject dphi and inject dstarphi must both be given")
    for hs in mf.hypersurfaces:
        c, s = hs.theta
        # the chosen backend re-validates at run time; reject gross errors here
        if abs(c * c + s * s - 1) > Fraction(1, 10**9):
            raise ManifestError(
                f"hypersurface '{hs.name}': cos^2 + sin^2 != 1")
    return mf


def _need_coframe(mf: ManifestFile, number: int, col: int):
    if not mf.labels:
        raise ManifestError("coframe must be declared first", number, col)
