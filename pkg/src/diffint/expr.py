"""Normalized term-sum representation of the admissible function classes.

An :class:`Expr` is a finite sum of :class:`Term`s, each ``coeff *
kernel(z - shift)``.  The representation enforces the trivial-constant
convention: a bare constant ``C`` is stored as ``C * z^0`` (an object equal
to ``C`` almost everywhere but undefined at ``z = 0``), which is what makes
differentiation invertible in this calculus.

Canonical-form rules applied by :func:`normalize`:

* zero-coefficient terms are dropped and like terms merged;
* ``ZeroFn`` kernels survive only at non-negative integer orders (the
  almost-everywhere-zero objects); fractional orders are rewritten as
  scaled monomials, so monomial/zero-function aliases have one spelling;
* ``DeltaDeriv`` survives only at non-negative integer orders; fractional
  delta derivatives are the Heaviside-monomial functions they equal;
* degenerate parameters collapse (``exp(0*z) -> z^0``, ``H*z^0 -> H``,
  ``z^0*exp(az) -> exp(az)``, order-0 Kummer pairs -> plain products);
* terms are sorted by a fixed structural key so equal expressions compare
  equal.

Monomials ``z^n`` with negative integer ``n`` are rejected: in this
calculus those objects must arrive either as zero-function derivatives or
as images of the logarithm, and the caller has to choose which.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, NoRuleError, SingularPoint
from .special import (
    EULER_GAMMA,
    cpow,
    gamma,
    is_nonpositive_integer,
    kummer_1f1,
    polylog,
    principal_log,
    reciprocal_gamma,
    reciprocal_gamma_prime,
    riemann_zeta,
    sinpi,
)

_INT_TOL = 1e-12


def _cx(z) -> complex:
    return complex(z)


def _is_int(z, minimum: float | None = None) -> bool:
    """Numerically exact integer test (tolerance 1e-12), optionally bounded below."""
    z = _cx(z)
    if abs(z.imag) > _INT_TOL:
        return False
    k = round(z.real)
    if abs(z.real - k) > _INT_TOL:
        return False
    return minimum is None or k >= minimum


def _as_int(z) -> int:
    return int(round(_cx(z).real))


# --------------------------------------------------------------------------
# kernels
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """``z^n`` with ``n`` not a negative integer."""

    n: complex


@dataclass(frozen=True)
class ZeroFn:
    """``z^(-1-order) / Gamma(-order)``; identically 0 a.e. at integer orders >= 0."""

    order: complex


@dataclass(frozen=True)
class Heaviside:
    """Unit step ``H(z)``."""


@dataclass(frozen=True)
class DeltaDeriv:
    """``delta^(order)(z)``; canonical only for integer order >= 0."""

    order: complex


@dataclass(frozen=True)
class HeavisideMonomial:
    """``H(z) * z^power / Gamma(1 + power)`` (the step/delta image family)."""

    power: complex


@dataclass(frozen=True)
class Exponential:
    """``exp(rate * z)``, rate != 0."""

    rate: complex


@dataclass(frozen=True)
class Sin:
    """``sin(rate*z + phase)`` with real rate and phase."""

    rate: float
    phase: float = 0.0


@dataclass(frozen=True)
class Cos:
    """``cos(rate*z + phase)`` with real rate and phase."""

    rate: float
    phase: float = 0.0


@dataclass(frozen=True)
class Log:
    """``ln(rate) + ln(z)`` (the printed splitting of ``ln(rate*z)``)."""

    rate: complex


@dataclass(frozen=True)
class LogMonomial:
    """``z^power * (ln z + ln rate - euler_gamma - psi(1+power)) / Gamma(1+power)``.

    Image of the logarithm under differintegration.  Near non-positive
    integer ``1+power`` the digamma and reciprocal-gamma poles cancel; the
    value is computed through the derivative of ``1/Gamma`` so the limit
    (a plain power, e.g. ``1/z`` at power -1) comes out without
    catastrophic cancellation.
    """

    power: complex
    rate: complex


@dataclass(frozen=True)
class BoseKernel:
    """``1 / (exp(-z) - 1)``."""


@dataclass(frozen=True)
class PolylogExp:
    """``Li_s(exp(z))``, evaluable for Re z < 0 (or z = 0 with Re s > 1)."""

    s: complex


@dataclass(frozen=True)
class MonomialExp:
    """``z^n * exp(rate*z)`` with nonzero rate and n not a negative integer."""

    n: complex
    rate: complex


@dataclass(frozen=True)
class KummerPair:
    """Closed form of ``S^order (z^n exp(rate*z))`` as two 1F1 terms.

    Stores the originating product parameters plus the accumulated
    differintegration order; further differintegration only shifts
    ``order``, which keeps the index law structural for this family.
    """

    n: complex
    rate: complex
    order: complex


@dataclass(frozen=True)
class OpaqueProduct:
    """A pointwise product of kernels with no closed-form rule (evaluation only)."""

    factors: tuple


Kernel = (
    Monomial
    | ZeroFn
    | Heaviside
    | DeltaDeriv
    | HeavisideMonomial
    | Exponential
    | Sin
    | Cos
    | Log
    | LogMonomial
    | BoseKernel
    | PolylogExp
    | MonomialExp
    | KummerPair
    | OpaqueProduct
)


def kummer_pair_coefficients(n, rate, order) -> tuple[complex, complex]:
    """Coefficients (A, B) of the two-1F1 closed form for ``S^order z^n e^{rate z}``.

    The represented function is::

        A * z^(n+order) * 1F1(1+n; 1+n+order; rate*z)
      + B * rate^(-n-order) * 1F1(1-order; 1-n-order; rate*z)

    with the ``exp(i*pi*n)`` branch matching principal-branch evaluation of
    ``tau^n`` on the negative half-line of the defining convolution.  For
    integer ``n`` the first coefficient vanishes identically.
    """
    n = _cx(n)
    rate = _cx(rate)
    order = _cx(order)
    if _is_int(n):
        k = _as_int(n)
        sign = -1.0 if k % 2 else 1.0
        # B = (-1)^n (order)_n = Gamma(n+order)/Gamma(order) continued
        b = sign
        for j in range(k):
            b *= order + j
        return 0.0 + 0.0j, b
    phase = cmath.exp(1j * cmath.pi * n)
    a = gamma(1.0 + n) * (
        reciprocal_gamma(1.0 + n + order) + phase * gamma(-n - order) * sinpi(order) / cmath.pi
    )
    b = phase * gamma(n + order) * reciprocal_gamma(order)
    return a, b


# --------------------------------------------------------------------------
# terms and expressions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    coeff: complex
    kernel: Kernel
    shift: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeff", _cx(self.coeff))
        object.__setattr__(self, "shift", _cx(self.shift))


@dataclass(frozen=True)
class Expr:
    """A sum of terms; linearity of the operator is structural."""

    terms: tuple[Term, ...]

    def __add__(self, other: Expr) -> Expr:
        return normalize(Expr(self.terms + as_expr(other).terms))

    def __radd__(self, other) -> Expr:
        return self.__add__(other)

    def __sub__(self, other) -> Expr:
        return self.__add__(-as_expr(other))

    def __neg__(self) -> Expr:
        return self.scale(-1.0)

    def __mul__(self, c) -> Expr:
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c) -> Expr:
        c = _cx(c)
        return normalize(Expr(tuple(replace(t, coeff=t.coeff * c) for t in self.terms)))

    def __str__(self) -> str:
        from .parsing import format_expr

        return format_expr(self)


def as_expr(obj) -> Expr:
    """Coerce a kernel, term, number, or Expr into an Expr (constants become C*z^0)."""
    if isinstance(obj, Expr):
        return obj
    if isinstance(obj, Term):
        return Expr((obj,))
    if isinstance(obj, (int, float, complex)):
        return Expr((Term(_cx(obj), Monomial(0.0)),))
    # a bare kernel
    return Expr((Term(1.0, obj),))


def constant(c) -> Expr:
    """The trivial-constant image of ``c``: ``c * z^0``."""
    return Expr((Term(_cx(c), Monomial(0.0)),))


# --------------------------------------------------------------------------
# normalization
# --------------------------------------------------------------------------


def _canon_kernel(k: Kernel) -> tuple[complex, Kernel]:
    """One canonicalization step; returns (scale, replacement kernel)."""
    if isinstance(k, Monomial):
        if _is_int(k.n) and _as_int(k.n) < 0:
            raise DomainError(
                f"monomial z^{_as_int(k.n)} is not admissible; use a ZeroFn "
                "(zero(k)) or a logarithm derivative instead"
            )
        return 1.0, k
    if isinstance(k, ZeroFn):
        if _is_int(k.order, minimum=0):
            return 1.0, ZeroFn(float(_as_int(k.order)))
        # z^(-1-order)/Gamma(-order) is an honest scaled monomial
        return reciprocal_gamma(-_cx(k.order)), Monomial(-1.0 - _cx(k.order))
    if isinstance(k, DeltaDeriv):
        if _is_int(k.order, minimum=0):
            return 1.0, DeltaDeriv(float(_as_int(k.order)))
        return 1.0, HeavisideMonomial(-1.0 - _cx(k.order))
    if isinstance(k, HeavisideMonomial):
        p = _cx(k.power)
        if _is_int(p) and _as_int(p) == 0:
            return 1.0, Heaviside()
        if is_nonpositive_integer(1.0 + p) or (_is_int(p) and _as_int(p) <= -1):
            return 1.0, DeltaDeriv(float(-1 - _as_int(p)))
        return 1.0, k
    if isinstance(k, Exponential):
        if k.rate == 0:
            return 1.0, Monomial(0.0)
        return 1.0, k
    if isinstance(k, (Sin, Cos)):
        if k.rate == 0:
            value = math.sin(k.phase) if isinstance(k, Sin) else math.cos(k.phase)
            return value, Monomial(0.0)
        return 1.0, k
    if isinstance(k, MonomialExp):
        if k.rate == 0:
            return 1.0, Monomial(k.n)
        if k.n == 0:
            return 1.0, Exponential(k.rate)
        if _is_int(k.n) and _as_int(k.n) < 0:
            raise DomainError("monomial-exponential products need n not a negative integer")
        return 1.0, k
    if isinstance(k, PolylogExp):
        if _is_int(k.s) and _as_int(k.s) == 0:
            # Li_0(e^z) = e^z/(1 - e^z) is the Bose kernel itself
            return 1.0, BoseKernel()
        return 1.0, k
    if isinstance(k, LogMonomial):
        if _is_int(k.power) and _as_int(k.power) == 0:
            # psi(1) = -euler_gamma, so the order-0 image is the plain log
            return 1.0, Log(k.rate)
        return 1.0, k
    if isinstance(k, KummerPair):
        if k.order == 0:
            return 1.0, MonomialExp(k.n, k.rate)
        return 1.0, k
    if isinstance(k, OpaqueProduct):
        return _fuse_product(k.factors)
    return 1.0, k


def _fuse_product(factors) -> tuple[complex, Kernel]:
    """Combine product factors into a table kernel where one exists."""
    scale = 1.0 + 0.0j
    has_h = False
    mono_n = 0.0 + 0.0j
    exp_rate = 0.0 + 0.0j
    others: list[Kernel] = []
    stack = list(factors)
    while stack:
        f = stack.pop()
        if isinstance(f, OpaqueProduct):
            stack.extend(f.factors)
        elif isinstance(f, Heaviside):
            has_h = True
        elif isinstance(f, Monomial):
            mono_n += _cx(f.n)
        elif isinstance(f, Exponential):
            exp_rate += _cx(f.rate)
        elif isinstance(f, MonomialExp):
            mono_n += _cx(f.n)
            exp_rate += _cx(f.rate)
        elif isinstance(f, HeavisideMonomial):
            has_h = True
            mono_n += _cx(f.power)
            scale *= reciprocal_gamma(1.0 + _cx(f.power))
        elif isinstance(f, ZeroFn):
            s, rep = _canon_kernel(f)
            if isinstance(rep, ZeroFn):
                # integer-order zero function: the whole product is 0 a.e.
                return 0.0, Monomial(0.0)
            scale *= s
            mono_n += _cx(rep.n)
        elif isinstance(f, DeltaDeriv):
            raise NoRuleError("products containing delta derivatives are not supported")
        else:
            others.append(f)

    have_mono = mono_n != 0
    have_exp = exp_rate != 0
    if _is_int(mono_n) and _as_int(mono_n) < 0 and (has_h or have_exp or others):
        raise NoRuleError("negative-integer powers are not admissible inside products")

    if not others:
        if not has_h:
            if have_mono and have_exp:
                return scale, MonomialExp(mono_n, exp_rate)
            if have_exp:
                return scale, Exponential(exp_rate)
            return _chain(scale, Monomial(mono_n))
        if not have_exp:
            if not have_mono:
                return scale, Heaviside()
            return scale * gamma(1.0 + mono_n), HeavisideMonomial(mono_n)
        inner = MonomialExp(mono_n, exp_rate) if have_mono else Exponential(exp_rate)
        return scale, OpaqueProduct((Heaviside(), inner))

    rebuilt: list[Kernel] = []
    if has_h:
        rebuilt.append(Heaviside())
    if have_mono and have_exp:
        rebuilt.append(MonomialExp(mono_n, exp_rate))
    elif have_mono:
        rebuilt.append(Monomial(mono_n))
    elif have_exp:
        rebuilt.append(Exponential(exp_rate))
    rebuilt.extend(sorted(others, key=_kernel_key))
    if len(rebuilt) == 1:
        return _chain(scale, rebuilt[0])
    return scale, OpaqueProduct(tuple(rebuilt))


def _chain(scale, k: Kernel) -> tuple[complex, Kernel]:
    s2, k2 = _canon_kernel(k)
    return scale * s2, k2


def _q(x: float) -> float:
    # quantize for merge/sort keys; exact params differ only in round-off
    return round(float(x), 12)


def _qz(z) -> tuple[float, float]:
    z = _cx(z)
    return (_q(z.real), _q(z.imag))


def _kernel_key(k: Kernel):
    name = type(k).__name__
    if isinstance(k, OpaqueProduct):
        return (name, tuple(_kernel_key(f) for f in k.factors))
    vals = []
    for f in getattr(k, "__dataclass_fields__", {}):
        vals.append(_qz(getattr(k, f)))
    return (name, tuple(vals))


def normalize(e: Expr | Term | Kernel | complex) -> Expr:
    """Canonical form: constants as C*z^0, aliases collapsed, like terms merged, sorted."""
    e = as_expr(e)
    merged: dict = {}
    for t in e.terms:
        coeff = t.coeff
        kern = t.kernel
        for _ in range(8):
            s, k2 = _canon_kernel(kern)
            coeff = coeff * s
            if k2 == kern:
                kern = k2
                break
            kern = k2
        if coeff == 0:
            continue
        key = (_kernel_key(kern), _qz(t.shift))
        if key in merged:
            prev = merged[key]
            merged[key] = Term(prev.coeff + coeff, prev.kernel, prev.shift)
        else:
            merged[key] = Term(coeff, kern, t.shift)
    terms = tuple(t for t in merged.values() if t.coeff != 0)
    return Expr(tuple(sorted(terms, key=lambda t: (_kernel_key(t.kernel), _qz(t.shift)))))


def structurally_equal(a: Expr, b: Expr, tol: float = 1e-9) -> bool:
    """Same kernels, same shifts, coefficients and parameters equal to ``tol``.

    Different closed-form routes to one expression accumulate different
    round-off in their gamma-ratio coefficients, so "exact" structural
    equality means exact tags with float fields compared at ``tol``.
    """
    a = normalize(a)
    b = normalize(b)
    if len(a.terms) != len(b.terms):
        return False
    for ta, tb in zip(a.terms, b.terms):
        if type(ta.kernel) is not type(tb.kernel):
            return False
        if not _close(ta.coeff, tb.coeff, tol) or not _close(ta.shift, tb.shift, tol):
            return False
        if isinstance(ta.kernel, OpaqueProduct):
            if _kernel_key(ta.kernel) != _kernel_key(tb.kernel):
                return False
            continue
        for f in ta.kernel.__dataclass_fields__:
            if not _close(getattr(ta.kernel, f), getattr(tb.kernel, f), tol):
                return False
    return True


def _close(a, b, tol: float) -> bool:
    a, b = _cx(a), _cx(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _require_real(w: complex, what: str) -> float:
    if abs(w.imag) > 1e-12 * max(1.0, abs(w)):
        raise DomainError(f"{what} is defined on the real line; got argument {w}")
    return w.real


def _eval_kernel(k: Kernel, w: complex) -> complex:
    if isinstance(k, Monomial):
        if w == 0:
            if _cx(k.n).real > 0 and k.n != 0:
                return 0.0
            raise SingularPoint(f"z^{k.n} is undefined at its singular point z = 0", w)
        return cpow(w, k.n)
    if isinstance(k, ZeroFn):
        if w == 0:
            raise SingularPoint("zero function evaluated at z = 0", w)
        return 0.0
    if isinstance(k, Heaviside):
        x = _require_real(w, "H(z)")
        if x == 0:
            raise SingularPoint("H(z) is undefined at its jump z = 0", w)
        return 1.0 if x > 0 else 0.0
    if isinstance(k, DeltaDeriv):
        if w == 0:
            raise SingularPoint("delta derivative evaluated at z = 0", w)
        return 0.0
    if isinstance(k, HeavisideMonomial):
        x = _require_real(w, "H(z)*z^p")
        if x < 0:
            return 0.0
        if x == 0:
            if _cx(k.power).real > 0:
                return 0.0
            raise SingularPoint("H(z)*z^p/Gamma(1+p) undefined at z = 0", w)
        return cpow(x, k.power) * reciprocal_gamma(1.0 + _cx(k.power))
    if isinstance(k, Exponential):
        return cmath.exp(k.rate * w)
    if isinstance(k, Sin):
        return cmath.sin(k.rate * w + k.phase)
    if isinstance(k, Cos):
        return cmath.cos(k.rate * w + k.phase)
    if isinstance(k, Log):
        if w == 0:
            raise SingularPoint("ln(z) evaluated at z = 0", w)
        return principal_log(k.rate) + principal_log(w)
    if isinstance(k, LogMonomial):
        if w == 0:
            raise SingularPoint("z^a*ln(z) form evaluated at z = 0", w)
        wprime = 1.0 + _cx(k.power)
        bracket = (principal_log(k.rate) + principal_log(w) - EULER_GAMMA) * reciprocal_gamma(
            wprime
        ) + reciprocal_gamma_prime(wprime)
        return cpow(w, k.power) * bracket
    if isinstance(k, BoseKernel):
        if w == 0:
            raise SingularPoint("1/(e^(-z) - 1) evaluated at pole z = 0", w)
        if w.imag == 0.0:
            den = math.expm1(-w.real)
        else:
            den = cmath.exp(-w) - 1.0
        if den == 0:
            raise SingularPoint("1/(e^(-z) - 1) evaluated at a pole", w)
        return 1.0 / den
    if isinstance(k, PolylogExp):
        if w == 0:
            if _cx(k.s).real > 1.0:
                return riemann_zeta(k.s)
            raise DomainError(f"Li_s(e^z) at z = 0 needs Re s > 1; got s = {k.s}")
        if w.real > 1e-13:
            raise DomainError(f"Li_s(e^z) series region is Re z <= 0; got z = {w}")
        return polylog(k.s, cmath.exp(w))
    if isinstance(k, MonomialExp):
        if w == 0:
            if _cx(k.n).real > 0:
                return 0.0
            raise SingularPoint(f"z^{k.n}*exp evaluated at z = 0", w)
        return cpow(w, k.n) * cmath.exp(k.rate * w)
    if isinstance(k, KummerPair):
        a_coeff, b_coeff = kummer_pair_coefficients(k.n, k.rate, k.order)
        total = _cx(k.n) + _cx(k.order)
        value = 0.0 + 0.0j
        if a_coeff != 0:
            value += a_coeff * cpow(w, total) * kummer_1f1(1.0 + _cx(k.n), 1.0 + total, k.rate * w)
        value += b_coeff * cpow(k.rate, -total) * kummer_1f1(
            1.0 - _cx(k.order), 1.0 - total, k.rate * w
        )
        return value
    if isinstance(k, OpaqueProduct):
        out = 1.0 + 0.0j
        for f in k.factors:
            out *= _eval_kernel(f, w)
            if out == 0:
                # short-circuit so H(z)=0 masks singularities of other factors
                return 0.0
        return out
    raise NoRuleError(f"no evaluation defined for kernel {k!r}")


def evaluate(e: Expr | Kernel | Term, z) -> complex:
    """Pointwise value ``sum coeff * kernel(z - shift)``.

    Raises :class:`SingularPoint` when any kernel is evaluated at its
    singular point, and :class:`DomainError` outside a kernel's supported
    region (e.g. ``Li_s(e^z)`` with Re z > 0).
    """
    e = as_expr(e)
    z = _cx(z)
    total = 0.0 + 0.0j
    for t in e.terms:
        total += t.coeff * _eval_kernel(t.kernel, z - t.shift)
    return total


def try_evaluate(e: Expr, z) -> complex | None:
    """Like :func:`evaluate` but returns None at singular points."""
    try:
        return evaluate(e, z)
    except SingularPoint:
        return None


def translate(e: Expr, z0) -> Expr:
    """Shift the independent variable: every term's argument becomes ``z - z0``."""
    z0 = _cx(z0)
    return Expr(tuple(replace(t, shift=t.shift + z0) for t in as_expr(e).terms))


# --------------------------------------------------------------------------
# fast vectorized evaluation for the numeric engines
# --------------------------------------------------------------------------


def _vector_kernel(k: Kernel, w: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        if isinstance(k, Monomial):
            return w ** _cx(k.n)
        if isinstance(k, ZeroFn):
            return np.zeros_like(w)
        if isinstance(k, Heaviside):
            return (w.real > 0).astype(complex)
        if isinstance(k, DeltaDeriv):
            return np.zeros_like(w)
        if isinstance(k, HeavisideMonomial):
            mask = w.real > 0
            out = np.zeros_like(w)
            out[mask] = w[mask] ** _cx(k.power) * reciprocal_gamma(1.0 + _cx(k.power))
            return out
        if isinstance(k, Exponential):
            return np.exp(k.rate * w)
        if isinstance(k, Sin):
            return np.sin(k.rate * w + k.phase)
        if isinstance(k, Cos):
            return np.cos(k.rate * w + k.phase)
        if isinstance(k, Log):
            return principal_log(k.rate) + np.log(w)
        if isinstance(k, MonomialExp):
            return w ** _cx(k.n) * np.exp(k.rate * w)
        if isinstance(k, OpaqueProduct):
            out = np.ones_like(w)
            for f in k.factors:
                out = out * _vector_kernel(f, w)
            return out
        if isinstance(k, BoseKernel):
            if np.all(w.imag == 0.0):
                return 1.0 / np.expm1(-w.real).astype(complex)
            return 1.0 / (np.exp(-w) - 1.0)
    # slow scalar fallback (LogMonomial, PolylogExp, KummerPair)
    flat = w.ravel()
    vals = np.array([_eval_kernel(k, complex(v)) for v in flat], dtype=complex)
    return vals.reshape(w.shape)


def as_callable(e: Expr):
    """A numpy-vectorized evaluator for the numeric engines.

    Unlike :func:`evaluate`, singular points inside an array map to
    inf/nan rather than raising; quadrature nodes never sit on interval
    endpoints, so this only surfaces if the caller samples a singularity
    directly.
    """
    e = as_expr(e)

    def f(u):
        arr = np.asarray(u, dtype=complex)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        out = np.zeros_like(arr)
        for t in e.terms:
            out = out + t.coeff * _vector_kernel(t.kernel, arr - t.shift)
        return complex(out[0]) if scalar else out

    return f


def heaviside_support_edge(e: Expr) -> float | None:
    """If every term is Heaviside-gated with one common real jump, its location.

    The numeric engine uses this to clip an infinite lower bound to the
    support edge instead of integrating across an interior jump.
    """
    e = as_expr(e)
    if not e.terms:
        return None
    edges = set()
    for t in e.terms:
        k = t.kernel
        gated = isinstance(k, (Heaviside, HeavisideMonomial, DeltaDeriv)) or (
            isinstance(k, OpaqueProduct)
            and any(isinstance(f, (Heaviside, HeavisideMonomial)) for f in k.factors)
        )
        if not gated:
            return None
        if abs(t.shift.imag) > 1e-12:
            return None
        edges.add(_q(t.shift.real))
    return min(edges) if edges else None
