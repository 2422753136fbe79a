"""Text syntax for expressions, plus the matching pretty-printer.

Accepted syntax (whitespace-insensitive), e.g.::

    3*z^0 + 2*exp(1.5*z) - sin(2*z) + zero(0.5) + H(z) + ln(2*z) + bose(z) + z^2*exp(-z)

``zero(a)`` is the order-``a`` zero function, ``delta(k)`` the k-th delta
derivative.  The variable may be written ``z``, ``t`` or ``x`` (one per
expression).  Complex literals are written ``(a+bi)``.  ``sinh``/``cosh``
parse to their exponential expansions.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

from .errors import ParseError
from .expr import (
    BoseKernel,
    Cos,
    DeltaDeriv,
    Exponential,
    Expr,
    Heaviside,
    HeavisideMonomial,
    Kernel,
    KummerPair,
    Log,
    LogMonomial,
    Monomial,
    MonomialExp,
    OpaqueProduct,
    PolylogExp,
    Sin,
    Term,
    ZeroFn,
    kummer_pair_coefficients,
    normalize,
)

_VARS = ("z", "t", "x")
_NUM_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_CPLX_RE = re.compile(
    r"\(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*"
    r"([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i\s*\)"
)
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass
class _Tok:
    kind: str  # NUM, CPLX, NAME, OP, END
    value: object
    col: int  # 1-based column in the original text


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            m = _CPLX_RE.match(text, i)
            if m:
                re_part = float(m.group(1))
                im_part = float(m.group(3))
                if m.group(2) == "-":
                    im_part = -im_part
                toks.append(_Tok("CPLX", complex(re_part, im_part), i + 1))
                i = m.end()
                continue
        m = _NUM_RE.match(text, i)
        if m:
            toks.append(_Tok("NUM", float(m.group()), i + 1))
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            toks.append(_Tok("NAME", m.group(), i + 1))
            i = m.end()
            continue
        if c in "+-*^(),/":
            toks.append(_Tok("OP", c, i + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i + 1)
    toks.append(_Tok("END", None, n + 1))
    return toks


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, text: str, allow_y: bool = False):
        self.text = text
        self.toks = _lex(text)
        self.pos = 0
        self.var: str | None = None
        self.allow_y = allow_y
        self.y_coeff = 0.0 + 0.0j

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op: str) -> _Tok:
        t = self.next()
        if t.kind != "OP" or t.value != op:
            raise ParseError(f"expected {op!r}", t.col)
        return t

    def fail(self, msg: str):
        raise ParseError(msg, self.peek().col)

    # ---- grammar ----

    def parse(self) -> Expr:
        terms = self.parse_sum()
        if self.peek().kind != "END":
            self.fail(f"unexpected trailing input {self.peek().value!r}")
        return normalize(Expr(tuple(terms)))

    def parse_sum(self) -> list[Term]:
        terms: list[Term] = []
        sign = 1.0
        t = self.peek()
        if t.kind == "OP" and t.value in "+-":
            sign = -1.0 if t.value == "-" else 1.0
            self.next()
        terms.extend(self.parse_term(sign))
        while True:
            t = self.peek()
            if t.kind == "OP" and t.value in "+-":
                self.next()
                terms.extend(self.parse_term(-1.0 if t.value == "-" else 1.0))
            else:
                return terms

    def parse_term(self, sign: float) -> list[Term]:
        coeff = complex(sign)
        kernels: list[Kernel] = []
        subexprs: list[Expr] = []
        while True:
            c, ks, sub = self.parse_factor()
            coeff *= c
            kernels.extend(ks)
            if sub is not None:
                subexprs.append(sub)
            t = self.peek()
            if t.kind == "OP" and t.value == "*":
                self.next()
                continue
            break
        if subexprs:
            if kernels or len(subexprs) > 1:
                self.fail("sinh/cosh may only be scaled, not multiplied by other kernels")
            return [Term(coeff * st.coeff, st.kernel, st.shift) for st in subexprs[0].terms]
        if not kernels:
            return [Term(coeff, Monomial(0.0))]
        if len(kernels) == 1:
            return [Term(coeff, kernels[0])]
        return [Term(coeff, OpaqueProduct(tuple(kernels)))]

    def parse_factor(self) -> tuple[complex, list[Kernel], Expr | None]:
        t = self.peek()
        if t.kind in ("NUM", "CPLX"):
            self.next()
            base = complex(t.value)
            if self._at_caret():
                self.next()
                base = base ** self.parse_scalar()
            return base, [], None
        if t.kind == "NAME":
            name = t.value
            if name in _VARS:
                self.next()
                self._bind_var(name, t.col)
                power = 1.0 + 0.0j
                if self._at_caret():
                    self.next()
                    power = self.parse_scalar()
                return 1.0 + 0.0j, [Monomial(power)], None
            if self.allow_y and name == "y":
                self.next()
                return 1.0 + 0.0j, [_YMarker()], None
            return self.parse_call()
        self.fail(f"expected a number, variable, or function, got {t.value!r}")

    def _at_caret(self) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.value == "^"

    def _bind_var(self, name: str, col: int):
        if self.var is None:
            self.var = name
        elif self.var != name:
            raise ParseError(f"mixed variables {self.var!r} and {name!r}", col)

    def parse_scalar(self) -> complex:
        sign = 1.0
        t = self.peek()
        if t.kind == "OP" and t.value in "+-":
            sign = -1.0 if t.value == "-" else 1.0
            self.next()
        t = self.next()
        if t.kind not in ("NUM", "CPLX"):
            raise ParseError("expected a numeric literal", t.col)
        return sign * complex(t.value)

    def parse_call(self) -> tuple[complex, list[Kernel], Expr | None]:
        t = self.next()
        name = t.value
        self.expect_op("(")
        if name in ("zero", "delta"):
            arg = self.parse_scalar()
            self.expect_op(")")
            return 1.0 + 0.0j, [ZeroFn(arg) if name == "zero" else DeltaDeriv(arg)], None
        if name in ("exp", "sin", "cos", "sinh", "cosh", "ln", "log", "bose", "H"):
            rate, phase = self.parse_linear_arg(name, t.col)
            self.expect_op(")")
            return self._build_call(name, rate, phase, t.col)
        raise ParseError(f"unknown function {name!r}", t.col)

    def parse_linear_arg(self, fname: str, col: int) -> tuple[complex, complex]:
        """``[c*]var [+- c]`` inside a function call; returns (rate, phase)."""
        rate = 1.0 + 0.0j
        t = self.peek()
        if t.kind == "OP" and t.value in "+-":
            self.next()
            if t.value == "-":
                rate = -rate
            t = self.peek()
        if t.kind in ("NUM", "CPLX"):
            self.next()
            rate *= complex(t.value)
            self.expect_op("*")
            t = self.peek()
        if t.kind != "NAME" or t.value not in _VARS:
            raise ParseError(f"{fname}(...) expects an argument linear in the variable", t.col)
        self.next()
        self._bind_var(t.value, t.col)
        phase = 0.0 + 0.0j
        t = self.peek()
        if t.kind == "OP" and t.value in "+-":
            sign = -1.0 if t.value == "-" else 1.0
            self.next()
            t = self.next()
            if t.kind not in ("NUM", "CPLX"):
                raise ParseError("expected a numeric phase", t.col)
            phase = sign * complex(t.value)
        return rate, phase

    def _build_call(self, name, rate, phase, col) -> tuple[complex, list[Kernel], Expr | None]:
        if name == "exp":
            # exp(c*z + p) = e^p * exp(c*z)
            scale = cmath.exp(phase) if phase != 0 else 1.0 + 0.0j
            return scale, [Exponential(rate)], None
        if name in ("sin", "cos"):
            if abs(rate.imag) > 1e-14 or abs(phase.imag) > 1e-14:
                raise ParseError(f"{name} takes real rate and phase", col)
            k = Sin(rate.real, phase.real) if name == "sin" else Cos(rate.real, phase.real)
            return 1.0 + 0.0j, [k], None
        if name in ("sinh", "cosh"):
            if phase != 0:
                raise ParseError(f"{name} does not take a phase", col)
            s = 1.0 if name == "sinh" else -1.0
            pos = Term(0.5, Exponential(rate))
            neg = Term(-0.5 * s * 1.0, Exponential(-rate)) if name == "sinh" else Term(
                0.5, Exponential(-rate)
            )
            return 1.0 + 0.0j, [], Expr((pos, neg))
        if name in ("ln", "log"):
            if phase != 0:
                raise ParseError("ln takes an argument of the form c*z", col)
            if rate == 0:
                raise ParseError("ln(0*z) is not defined", col)
            return 1.0 + 0.0j, [Log(rate)], None
        if name == "bose":
            if phase != 0 or rate != 1:
                raise ParseError("bose takes the bare variable", col)
            return 1.0 + 0.0j, [BoseKernel()], None
        if name == "H":
            if phase != 0 or rate != 1:
                raise ParseError("H takes the bare variable", col)
            return 1.0 + 0.0j, [Heaviside()], None
        raise ParseError(f"unknown function {name!r}", col)


class _YMarker:
    """Sentinel kernel marking the unknown ``y`` in right-hand sides."""


def parse_expr(text: str) -> Expr:
    """Parse expression text into a normalized :class:`Expr`."""
    return _Parser(text).parse()


def parse_expr_with_variable(text: str) -> tuple[Expr, str]:
    """Like :func:`parse_expr`, also reporting the variable name used."""
    p = _Parser(text)
    e = p.parse()
    return e, p.var or "z"


def parse_rhs(text: str):
    """Parse an FDE right-hand side ``f(x, y)``.

    Returns ``(g, y_coeff)`` where ``g`` is an Expr (or None) and the rhs is
    ``f(x, y) = g(x) + y_coeff * y``.  Only rhs linear in ``y`` carry a
    symbolic form; anything else should be supplied as a Python callable.
    """
    p = _Parser(text, allow_y=True)
    raw_terms = p.parse_sum()
    if p.peek().kind != "END":
        p.fail(f"unexpected trailing input {p.peek().value!r}")
    y_coeff = 0.0 + 0.0j
    g_terms = []
    for t in raw_terms:
        marks = []
        others = []
        kernels = (
            t.kernel.factors if isinstance(t.kernel, OpaqueProduct) else (t.kernel,)
        )
        for k in kernels:
            (marks if isinstance(k, _YMarker) else others).append(k)
        if len(marks) > 1:
            raise ParseError("right-hand sides must be linear in y", 1)
        if marks:
            if others:
                raise ParseError("y may only appear with a scalar coefficient", 1)
            y_coeff += t.coeff
        else:
            g_terms.append(t)
    g = normalize(Expr(tuple(g_terms))) if g_terms else None
    return g, y_coeff


# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.12g}"


def _fmt_num(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _fmt_real(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"({_fmt_real(z.real)}{sign}{_fmt_real(abs(z.imag))}i)"


def _var_str(var: str, shift: complex) -> str:
    if shift == 0:
        return var
    return f"({var}-{_fmt_num(shift)})" if complex(shift).real >= 0 or complex(shift).imag != 0 else f"({var}+{_fmt_num(-shift)})"


def _fmt_linear(rate: complex, var: str) -> str:
    if rate == 1:
        return var
    if rate == -1:
        return f"-{var}"
    return f"{_fmt_num(rate)}*{var}"


def _fmt_phase(phase: float) -> str:
    if phase == 0:
        return ""
    return f"+{_fmt_real(phase)}" if phase > 0 else f"-{_fmt_real(abs(phase))}"


def _kernel_str(k: Kernel, var: str, shift: complex) -> str:
    v = _var_str(var, shift)
    if isinstance(k, Monomial):
        if k.n == 1:
            return v
        return f"{v}^{_fmt_num(k.n)}"
    if isinstance(k, ZeroFn):
        return f"zero({_fmt_num(k.order)})"
    if isinstance(k, Heaviside):
        return f"H({v})"
    if isinstance(k, DeltaDeriv):
        return f"delta({_fmt_num(k.order)})"
    if isinstance(k, HeavisideMonomial):
        return f"H({v})*{v}^{_fmt_num(k.power)}/gamma({_fmt_num(1 + complex(k.power))})"
    if isinstance(k, Exponential):
        return f"exp({_fmt_linear(k.rate, v)})"
    if isinstance(k, Sin):
        return f"sin({_fmt_linear(k.rate, v)}{_fmt_phase(k.phase)})"
    if isinstance(k, Cos):
        return f"cos({_fmt_linear(k.rate, v)}{_fmt_phase(k.phase)})"
    if isinstance(k, Log):
        return f"ln({_fmt_linear(k.rate, v)})"
    if isinstance(k, LogMonomial):
        from .errors import PoleError
        from .special import EULER_GAMMA, digamma

        try:
            const = cmath.log(complex(k.rate)) - EULER_GAMMA - digamma(1.0 + complex(k.power))
        except PoleError:
            # digamma/gamma poles cancel: the image at power -m is the
            # plain power (-1)^(m-1) (m-1)! z^(-m)
            m = int(round(-complex(k.power).real))
            lead = (-1.0) ** (m - 1) * math.factorial(m - 1)
            if lead == 1.0:
                return f"{v}^{_fmt_num(k.power)}"
            return f"{_fmt_real(lead)}*{v}^{_fmt_num(k.power)}"
        sign = "+" if const.real >= 0 or const.imag != 0 else "-"
        cval = _fmt_num(const) if const.imag != 0 else _fmt_real(abs(const.real))
        return (
            f"{v}^{_fmt_num(k.power)}*(ln({v}) {sign} {cval})"
            f"/gamma({_fmt_num(1 + complex(k.power))})"
        )
    if isinstance(k, BoseKernel):
        return f"bose({v})"
    if isinstance(k, PolylogExp):
        return f"Li_{_fmt_num(k.s)}(exp({v}))"
    if isinstance(k, MonomialExp):
        return f"{v}^{_fmt_num(k.n)}*exp({_fmt_linear(k.rate, v)})"
    if isinstance(k, KummerPair):
        a_coeff, b_coeff = kummer_pair_coefficients(k.n, k.rate, k.order)
        total = complex(k.n) + complex(k.order)
        arg = _fmt_linear(k.rate, v)
        parts = []
        if a_coeff != 0:
            parts.append(
                f"{_fmt_num(a_coeff)}*{v}^{_fmt_num(total)}"
                f"*1F1({_fmt_num(1 + complex(k.n))};{_fmt_num(1 + total)};{arg})"
            )
        parts.append(
            f"{_fmt_num(b_coeff)}*{_fmt_num(complex(k.rate))}^{_fmt_num(-total)}"
            f"*1F1({_fmt_num(1 - complex(k.order))};{_fmt_num(1 - total)};{arg})"
        )
        return "[" + " + ".join(parts) + "]"
    if isinstance(k, OpaqueProduct):
        return "*".join(_kernel_str(f, var, shift) for f in k.factors)
    return repr(k)


def format_expr(e: Expr, var: str = "z") -> str:
    """Render an expression in (a superset of) the parser's syntax."""
    e = normalize(e)
    if not e.terms:
        return "0"
    parts: list[str] = []
    for i, t in enumerate(e.terms):
        coeff = t.coeff
        lead = ""
        if i > 0:
            if coeff.imag == 0 and coeff.real < 0:
                lead = " - "
                coeff = -coeff
            else:
                lead = " + "
        elif coeff.imag == 0 and coeff.real < 0:
            lead = "-"
            coeff = -coeff
        kstr = _kernel_str(t.kernel, var, t.shift)
        if abs(coeff - 1.0) < 1e-12:
            parts.append(lead + kstr)
        else:
            parts.append(f"{lead}{_fmt_num(coeff)}*{kstr}")
    return "".join(parts)
