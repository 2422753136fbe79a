"""Closed-form differintegration: the term-by-term rule table.

``differintegrate(e, alpha)`` applies the operator of positive-order
integration / negative-order differentiation to every term of ``e``.  The
sign convention is fixed once for the whole package: ``alpha > 0``
integrates, ``alpha < 0`` differentiates, and the user-facing "derivative
of order a" is order ``-a`` here.

Branch policy: ``rate**(-alpha)`` uses the principal branch; the sin/cos
rules use the printed ``|rate|**(-alpha) * sin(rate*z - alpha*pi/2)`` form
for real rates, which disagrees with the linearity route for negative
rates (the discrepancy is recorded in ``branch_notes``), and complex
orders route trigonometry through exponentials.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NoRuleError, SingularPoint
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
    _as_int,
    _is_int,
    as_expr,
    evaluate,
    normalize,
)
from .special import cpow, gamma, reciprocal_gamma

_PIECES = list[tuple[complex, Kernel]]


@dataclass(frozen=True)
class RuleResult:
    """Differintegration output plus which rule fired for each input term."""

    expr: Expr
    rules_applied: tuple[str, ...]
    branch_notes: tuple[str, ...]


def differintegrate(e, alpha, distributional_phase: bool = False) -> RuleResult:
    """Apply the order-``alpha`` operator to every term of ``e``.

    ``distributional_phase=True`` multiplies the action on true
    distributions (delta derivatives) by ``exp(-i*pi*alpha)``; the default
    matches the plain printed delta/step rules.
    """
    e = normalize(as_expr(e))
    alpha = complex(alpha)
    if alpha == 0:
        return RuleResult(e, tuple("identity" for _ in e.terms), ())
    out_terms: list[Term] = []
    rules: list[str] = []
    notes: list[str] = []
    for t in e.terms:
        pieces, rule, term_notes = _apply(t.kernel, alpha, distributional_phase)
        for c, k in pieces:
            out_terms.append(Term(t.coeff * c, k, t.shift))
        rules.append(rule)
        notes.extend(term_notes)
    return RuleResult(normalize(Expr(tuple(out_terms))), tuple(rules), tuple(notes))


def _apply(k: Kernel, alpha: complex, phase_opt: bool) -> tuple[_PIECES, str, list[str]]:
    notes: list[str] = []
    if isinstance(k, Monomial):
        n = complex(k.n)
        target = n + alpha
        if _is_int(target) and _as_int(target) < 0:
            # Gamma(1+n+alpha) pole: the image is a scaled zero function
            return [(gamma(1.0 + n), ZeroFn(-1.0 - target))], "monomial", notes
        scale = gamma(1.0 + n) * reciprocal_gamma(1.0 + target)
        return [(scale, Monomial(target))], "monomial", notes
    if isinstance(k, ZeroFn):
        return [(1.0, ZeroFn(complex(k.order) - alpha))], "zero_function", notes
    if isinstance(k, Heaviside):
        return [(1.0, HeavisideMonomial(alpha))], "heaviside", notes
    if isinstance(k, DeltaDeriv):
        coeff = 1.0 + 0.0j
        if phase_opt:
            coeff = cmath.exp(-1j * cmath.pi * alpha)
            notes.append(f"distributional phase exp(-i*pi*{alpha}) applied to delta rule")
        return [(coeff, HeavisideMonomial(alpha - complex(k.order) - 1.0))], "delta", notes
    if isinstance(k, HeavisideMonomial):
        return [(1.0, HeavisideMonomial(complex(k.power) + alpha))], "heaviside_monomial", notes
    if isinstance(k, Exponential):
        lam = complex(k.rate)
        scale = cpow(lam, -alpha)
        if lam.imag != 0 or lam.real < 0:
            notes.append(f"principal branch taken for ({lam})^(-{alpha})")
        return [(scale, k)], "exponential", notes
    if isinstance(k, (Sin, Cos)):
        return _apply_trig(k, alpha, notes)
    if isinstance(k, Log):
        return [(1.0, LogMonomial(alpha, k.rate))], "log", notes
    if isinstance(k, LogMonomial):
        return [(1.0, LogMonomial(complex(k.power) + alpha, k.rate))], "log_monomial", notes
    if isinstance(k, BoseKernel):
        return [(1.0, PolylogExp(alpha))], "bose", notes
    if isinstance(k, PolylogExp):
        return [(1.0, PolylogExp(complex(k.s) + alpha))], "polylog_exp", notes
    if isinstance(k, MonomialExp):
        if complex(k.rate).real <= 0:
            notes.append(
                f"rate {k.rate}: the defining integral diverges for Re rate <= 0; "
                "the closed form is its principal-branch continuation"
            )
        pieces, extra = _apply_monomial_exp(complex(k.n), complex(k.rate), alpha)
        return pieces, "monomial_exp", notes + extra
    if isinstance(k, KummerPair):
        pieces, extra = _apply_monomial_exp(
            complex(k.n), complex(k.rate), complex(k.order) + alpha
        )
        return pieces, "kummer", notes + extra
    raise NoRuleError(
        f"no differintegration rule for {type(k).__name__}; only "
        "monomial*exponential products have a closed form"
    )


def _apply_trig(k: Sin | Cos, alpha: complex, notes: list[str]) -> tuple[_PIECES, str, list[str]]:
    lam = float(k.rate)
    phase = float(k.phase)
    if alpha.imag == 0:
        a = alpha.real
        scale = abs(lam) ** (-a)
        shift = phase - a * math.pi / 2.0
        if lam < 0:
            notes.append(
                "printed |rate|^(-alpha) trig rule applied with rate < 0; "
                "disagrees with the linearity route through exponentials"
            )
        kind = Sin if isinstance(k, Sin) else Cos
        return [(scale, kind(lam, shift))], "trig", notes
    # complex order: route through the exponential expansion
    notes.append("complex order: trig routed through exponentials")
    eip = cmath.exp(1j * phase)
    eim = cmath.exp(-1j * phase)
    cp = cpow(1j * lam, -alpha)
    cm = cpow(-1j * lam, -alpha)
    if isinstance(k, Sin):
        pieces = [
            (eip / 2j * cp, Exponential(1j * lam)),
            (-eim / 2j * cm, Exponential(-1j * lam)),
        ]
    else:
        pieces = [
            (eip / 2.0 * cp, Exponential(1j * lam)),
            (eim / 2.0 * cm, Exponential(-1j * lam)),
        ]
    return pieces, "trig", notes


def _apply_monomial_exp(n: complex, lam: complex, order: complex) -> tuple[_PIECES, list[str]]:
    """Image of z^n e^{lam z} under the order-``order`` operator."""
    if order == 0:
        return [(1.0, MonomialExp(n, lam))], []
    if _is_int(n) and _is_int(order):
        m = _as_int(order)
        pieces: _PIECES = [(1.0, MonomialExp(n, lam))]
        if m > 0:
            for _ in range(m):
                pieces = _integrate_monexp_once(pieces)
        else:
            for _ in range(-m):
                pieces = _differentiate_monexp_once(pieces)
        return pieces, ["integer order on monomial*exp resolved classically"]
    if not _is_int(n) and _is_int(n + order):
        raise NoRuleError(
            f"degenerate parameters n={n}, order={order}: n+order integer with "
            "non-integer n hits the logarithmic case of the confluent pair, "
            "which has no two-1F1 form"
        )
    return [(1.0, KummerPair(n, lam, order))], []


def _integrate_monexp_once(pieces: _PIECES) -> _PIECES:
    out: _PIECES = []
    for c, k in pieces:
        n, lam = _monexp_parts(k)
        j = _as_int(n)
        # constant-free antiderivative: e^{lz} sum_i (-1)^i j!/(j-i)! z^{j-i} / l^{i+1}
        fall = 1.0
        for i in range(j + 1):
            coeff = c * ((-1.0) ** i) * fall / lam ** (i + 1)
            out.append((coeff, _monexp_make(float(j - i), lam)))
            fall *= j - i
    return out


def _differentiate_monexp_once(pieces: _PIECES) -> _PIECES:
    out: _PIECES = []
    for c, k in pieces:
        n, lam = _monexp_parts(k)
        j = _as_int(n)
        if j > 0:
            out.append((c * j, _monexp_make(float(j - 1), lam)))
        out.append((c * lam, _monexp_make(float(j), lam)))
    return out


def _monexp_parts(k: Kernel) -> tuple[complex, complex]:
    if isinstance(k, MonomialExp):
        return complex(k.n), complex(k.rate)
    if isinstance(k, Exponential):
        return 0.0 + 0.0j, complex(k.rate)
    raise NoRuleError(f"expected monomial*exp piece, got {k!r}")


def _monexp_make(n: float, lam: complex) -> Kernel:
    if n == 0:
        return Exponential(lam)
    return MonomialExp(n, lam)


def zero_function_value(order, z) -> complex:
    """``z^(-1-order) / Gamma(-order)``, the order-``order`` zero function.

    Exactly 0 for integer orders >= 0 (and any z != 0); singular at z = 0
    whenever Re(order) >= -1.
    """
    order = complex(order)
    z = complex(z)
    rg = reciprocal_gamma(-order)
    if rg == 0:
        if z == 0:
            raise SingularPoint("zero function evaluated at z = 0", z)
        return 0.0 + 0.0j
    return cpow(z, -1.0 - order) * rg


# --------------------------------------------------------------------------
# integer-order derivatives with distributional terms (for the lifted
# quadrature and the product kernels the rule table cannot touch)
# --------------------------------------------------------------------------


def derivative(e) -> Expr:
    """First derivative of ``e``, producing delta terms at Heaviside jumps.

    Rule-table kernels go through ``differintegrate(e, -1)``; gated
    products differentiate by the product rule, with the jump contributing
    ``g(edge) * delta``.
    """
    e = normalize(as_expr(e))
    out: list[Term] = []
    for t in e.terms:
        k = t.kernel
        if not isinstance(k, OpaqueProduct):
            res = differintegrate(Expr((Term(t.coeff, k, t.shift),)), -1.0)
            out.extend(res.expr.terms)
            continue
        gated = [f for f in k.factors if isinstance(f, Heaviside)]
        smooth = [f for f in k.factors if not isinstance(f, Heaviside)]
        if len(gated) > 1 or any(isinstance(f, (DeltaDeriv, HeavisideMonomial)) for f in smooth):
            raise NoRuleError(f"cannot differentiate product {k!r}")
        g = normalize(Expr((Term(1.0, OpaqueProduct(tuple(smooth)) if len(smooth) > 1 else smooth[0]),)))
        gprime = derivative(g)
        if gated:
            jump = evaluate(g, 0.0)
            if jump != 0:
                out.append(Term(t.coeff * jump, DeltaDeriv(0.0), t.shift))
            for gt in gprime.terms:
                out.append(
                    Term(
                        t.coeff * gt.coeff,
                        OpaqueProduct((Heaviside(), gt.kernel)),
                        t.shift + gt.shift,
                    )
                )
        else:
            for gt in gprime.terms:
                out.append(Term(t.coeff * gt.coeff, gt.kernel, t.shift + gt.shift))
    return normalize(Expr(tuple(out)))


def nth_derivative(e, m: int) -> Expr:
    d = normalize(as_expr(e))
    for _ in range(m):
        d = derivative(d)
    return d


def split_delta_terms(e: Expr) -> tuple[Expr, list[Term]]:
    """Separate delta-derivative terms (resolved by sifting) from the rest."""
    deltas = [t for t in e.terms if isinstance(t.kernel, DeltaDeriv)]
    regular = Expr(tuple(t for t in e.terms if not isinstance(t.kernel, DeltaDeriv)))
    return regular, deltas


# --------------------------------------------------------------------------
# the complimentary series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplimentarySeries:
    """Coefficients reconciling a finite lower bound with the canonical operator."""

    x0: complex
    coefficients: tuple[complex, ...]
    order_offset: complex = 0.0


def complimentary_coefficients(f, x0, count: int) -> ComplimentarySeries:
    """Coefficients ``c_k`` of the lower-bound correction polynomial.

    ``c_k = (S^{k+1} f)(x0) - sum_{j<k} c_j x0^{k-j}/(k-j)!``, which makes

        (1/(n-1)!) * int_{x0}^x f(t) (x-t)^{n-1} dt
            = S^n f(x) - sum_{k<n} c_k x^{n-1-k}/(n-1-k)!

    hold for every n >= 1 with a single sequence.  (The same ``c_k`` feed
    the zero-function correction series at fractional orders, where the
    series is asymptotic rather than convergent.)
    """
    f = normalize(as_expr(f))
    x0 = complex(x0)
    coeffs: list[complex] = []
    for k in range(count):
        try:
            sk = evaluate(differintegrate(f, float(k + 1)).expr, x0)
        except (SingularPoint, DomainError) as exc:
            raise SingularPoint(
                f"S^{k + 1} f is singular at x0 = {x0} (coefficient k = {k})", x0
            ) from exc
        acc = sk
        for j in range(k):
            acc -= coeffs[j] * cpow(x0, k - j) / math.factorial(k - j)
        coeffs.append(acc)
    return ComplimentarySeries(x0, tuple(coeffs))


def verify_recursion(series: ComplimentarySeries, f) -> bool:
    """Recompute the recursion and compare (the stored-coefficients invariant)."""
    again = complimentary_coefficients(f, series.x0, len(series.coefficients))
    return all(
        abs(a - b) <= 1e-9 * max(1.0, abs(a))
        for a, b in zip(series.coefficients, again.coefficients)
    )


def reconstruct_with_complimentary(f, x0, alpha, count: int) -> Expr:
    """``S^{-alpha} f  -  sum_{k<count} c_k * ZeroFn(k + alpha)``.

    The right-hand side of the finite-lower-bound identity rearranged:
    evaluating this expression should reproduce the lower-bound
    Riemann-Liouville derivative of order ``alpha`` wherever the
    zero-function series is within its asymptotic range.
    """
    alpha = complex(alpha)
    series = complimentary_coefficients(f, x0, count)
    series = ComplimentarySeries(series.x0, series.coefficients, alpha)
    base = differintegrate(f, -alpha).expr
    corr = Expr(
        tuple(Term(-c, ZeroFn(k + alpha)) for k, c in enumerate(series.coefficients))
    )
    return normalize(Expr(base.terms + corr.terms))
