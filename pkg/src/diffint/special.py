"""Complex-valued special functions used by every other module.

All functions accept real or complex arguments and return ``complex``.
Powers and logarithms use the principal branch throughout: ``w**a`` means
``exp(a*Log(w))`` with ``arg(Log w)`` in ``(-pi, pi]``.  The reciprocal
gamma function is computed directly so that its zeros at non-positive
integers are exact rather than huge-magnitude round-off artifacts; the
closed-form differintegration rules rely on that to annihilate terms
cleanly at integer orders.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, NonConvergenceError, PoleError

EULER_GAMMA = 0.5772156649015328606

# Lanczos coefficients, g = 7, n = 9.  Good to ~1e-14 relative accuracy on
# the half-plane Re z > 0.5; reflection covers the rest.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_TINY = 1e-12


def _as_complex(z) -> complex:
    return complex(z)


def is_nonpositive_integer(z) -> bool:
    """True when ``z`` is (numerically exactly) one of 0, -1, -2, ..."""
    z = _as_complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real)


def near_nonpositive_integer(z, tol: float = 0.25) -> int | None:
    """Nearest non-positive integer within ``tol`` of ``z``, else None."""
    z = _as_complex(z)
    k = round(z.real)
    if k <= 0 and abs(z - k) < tol:
        return int(k)
    return None


def sinpi(z) -> complex:
    """sin(pi*z) with argument reduction so integers map to exactly 0."""
    z = _as_complex(z)
    n = round(z.real)
    r = z - n
    s = cmath.sin(cmath.pi * r)
    return -s if n % 2 else s


def cospi(z) -> complex:
    """cos(pi*z) with argument reduction so half-integers map to exactly 0."""
    z = _as_complex(z)
    n = round(z.real)
    r = z - n
    c = cmath.cos(cmath.pi * r)
    return -c if n % 2 else c


def _unsign_zero(z: complex) -> complex:
    """Map -0.0 components to +0.0 so negative reals sit on arg = +pi."""
    re, im = z.real, z.imag
    if re == 0.0:
        re = 0.0
    if im == 0.0:
        im = 0.0
    return complex(re, im)


def principal_log(w) -> complex:
    """Log on the principal branch with arg in (-pi, pi], -0.0 normalized."""
    return cmath.log(_unsign_zero(_as_complex(w)))


def cpow(w, a) -> complex:
    """Principal-branch power ``w**a`` with the 0-base conventions.

    ``0**0 == 1`` (trivial-constant convention) and ``0**a == 0`` for
    ``Re a > 0``; raising 0 to a power with ``Re a <= 0`` is singular.
    """
    w = _unsign_zero(_as_complex(w))
    a = _as_complex(a)
    if w == 0:
        if a == 0:
            return 1.0 + 0.0j
        if a.real > 0:
            return 0.0 + 0.0j
        from .errors import SingularPoint

        raise SingularPoint(f"0 raised to power {a} with Re <= 0", 0.0)
    if a == 0:
        return 1.0 + 0.0j
    if a == 1:
        return w
    return cmath.exp(a * cmath.log(w))  # w already has -0.0 normalized


def _lanczos_gamma(z: complex) -> complex:
    # assumes Re z >= 0.5
    z = z - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc = acc + c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


def gamma(alpha) -> complex:
    """Gamma function for complex argument, Lanczos plus reflection.

    Raises :class:`PoleError` at the poles 0, -1, -2, ...
    """
    z = _as_complex(alpha)
    if is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at {z}")
    if z.imag == 0.0 and z.real == round(z.real) and 1 <= z.real <= 170:
        return float(math.factorial(int(z.real) - 1)) + 0.0j
    if z.real < 0.5:
        s = sinpi(z)
        return cmath.pi / (s * _lanczos_gamma(1.0 - z))
    return _lanczos_gamma(z)


def reciprocal_gamma(alpha) -> complex:
    """1/Gamma(alpha); entire, with exact zeros at non-positive integers."""
    z = _as_complex(alpha)
    if is_nonpositive_integer(z):
        return 0.0 + 0.0j
    if z.imag == 0.0 and z.real == round(z.real) and 1 <= z.real <= 170:
        return 1.0 / float(math.factorial(int(z.real) - 1)) + 0.0j
    if z.real < 0.5:
        return sinpi(z) * _lanczos_gamma(1.0 - z) / cmath.pi
    return 1.0 / _lanczos_gamma(z)


def gamma_ratio(num, den) -> complex:
    """Gamma(num)/Gamma(den), finite whenever the ratio is.

    Routes through :func:`reciprocal_gamma` when the denominator sits on a
    pole (ratio is then an exact 0 unless the numerator does too).
    """
    num = _as_complex(num)
    den = _as_complex(den)
    if num == den:
        return 1.0 + 0.0j
    if is_nonpositive_integer(num):
        if is_nonpositive_integer(den):
            # Gamma(-n)/Gamma(-m) = (-1)^(n-m) m!/n! by residue ratio
            n = int(round(-num.real))
            m = int(round(-den.real))
            sign = -1.0 if (n - m) % 2 else 1.0
            return sign * math.factorial(m) / math.factorial(n) + 0.0j
        raise PoleError(f"gamma_ratio numerator pole at {num}")
    return gamma(num) * reciprocal_gamma(den)


def digamma(alpha) -> complex:
    """Digamma function psi(z) = Gamma'(z)/Gamma(z).

    Reflection for Re z < 0.5, recurrence up to |z| >= 12, then the
    asymptotic Bernoulli series.  Raises :class:`PoleError` at the poles.
    """
    z = _as_complex(alpha)
    if is_nonpositive_integer(z):
        raise PoleError(f"digamma pole at {z}")
    if z.real < 0.5:
        return digamma(1.0 - z) - cmath.pi * cospi(z) / sinpi(z)
    acc = 0.0 + 0.0j
    while abs(z) < 12.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    # B_2/2, B_4/4, ... B_14/14 over z^{2n}
    series = inv2 * (
        1.0 / 12.0
        - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0)))))
    )
    return acc + cmath.log(z) - 0.5 / z - series


def reciprocal_gamma_prime(w) -> complex:
    """Derivative of the entire function 1/Gamma at ``w``.

    Equals -psi(w)/Gamma(w) away from the digamma poles; near a pole the
    product is formed from a high-order central difference of the entire
    reciprocal so no huge intermediates appear.
    """
    w = _as_complex(w)
    if near_nonpositive_integer(w, tol=0.1) is not None:
        h = 1e-3
        return (
            8.0 * (reciprocal_gamma(w + h) - reciprocal_gamma(w - h))
            - (reciprocal_gamma(w + 2 * h) - reciprocal_gamma(w - 2 * h))
        ) / (12.0 * h)
    return -digamma(w) * reciprocal_gamma(w)


def kummer_1f1(a, b, z) -> complex:
    """Confluent hypergeometric 1F1(a;b;z) by its power series.

    Supported for ``|z| <= 50``; ``b`` must not be a non-positive integer.
    """
    a = _as_complex(a)
    b = _as_complex(b)
    z = _as_complex(z)
    if is_nonpositive_integer(b):
        raise PoleError(f"1F1 undefined for denominator parameter {b}")
    if abs(z) > 50.0:
        raise DomainError(f"1F1 series supported for |z| <= 50, got |z| = {abs(z):.3g}")
    if z == 0:
        return 1.0 + 0.0j
    total = 1.0 + 0.0j
    comp = 0.0 + 0.0j
    term = 1.0 + 0.0j
    below = 0
    for k in range(10_000):
        term = term * (a + k) / ((b + k) * (k + 1.0)) * z
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-12 * (1.0 + abs(total)):
            below += 1
            if below >= 2:
                return total
        else:
            below = 0
    raise NonConvergenceError(f"1F1({a};{b};{z}) did not converge in 10^4 terms")


def riemann_zeta(s) -> complex:
    """zeta(s) for Re s > 1 by Euler-Maclaurin summation."""
    s = _as_complex(s)
    if s.real <= 1.0:
        raise DomainError(f"zeta supported for Re s > 1, got {s}")
    n_head = 24
    total = sum(cpow(k, -s) for k in range(1, n_head))
    n = float(n_head)
    total += 0.5 * cpow(n, -s) + cpow(n, 1.0 - s) / (s - 1.0)
    # Bernoulli tail: sum_j B_2j/(2j)! * (s)_{2j-1} * n^{-s-2j+1}
    bern = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)
    rising = s  # (s)_1
    for j, b2j in enumerate(bern, start=1):
        total += b2j / math.factorial(2 * j) * rising * cpow(n, -s - (2 * j - 1))
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
    return total


def polylog(s, x) -> complex:
    """Polylogarithm Li_s(x) = sum_{k>=1} x^k / k^s.

    Supported on ``|x| < 1`` and at ``x = 1`` for ``Re s > 1`` (where it is
    the Riemann zeta function); analytic continuation beyond that region is
    out of scope and raises :class:`DomainError`.
    """
    s = _as_complex(s)
    x = _as_complex(x)
    if x == 0:
        return 0.0 + 0.0j
    if abs(x - 1.0) < 1e-15:
        return riemann_zeta(s)
    if abs(x) >= 1.0:
        raise DomainError(f"polylog series supported for |x| < 1 (or x = 1, Re s > 1); got x = {x}")
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    xk = 1.0 + 0.0j
    for k in range(1, 1_000_000):
        xk *= x
        term = xk * cpow(k, -s)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-17 + 1e-16 * abs(total):
            return total
    raise NonConvergenceError(f"polylog({s}, {x}) did not converge in 10^6 terms")


def mittag_leffler(alpha: float, z) -> complex:
    """One-parameter Mittag-Leffler function E_alpha(z).

    Series sum_{j>=0} z^j / Gamma(1 + j*alpha), terms summed (compensated)
    until they drop below 1e-14.  Supported for ``alpha > 0``, ``|z| <= 30``.
    """
    if not alpha > 0:
        raise DomainError(f"mittag_leffler requires alpha > 0, got {alpha}")
    z = _as_complex(z)
    if abs(z) > 30.0:
        raise DomainError(f"mittag_leffler supported for |z| <= 30, got |z| = {abs(z):.3g}")
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    zj = 1.0 + 0.0j
    below = 0
    for j in range(100_000):
        term = zj * reciprocal_gamma(1.0 + j * alpha)
        if not (abs(term) < math.inf):
            raise NonConvergenceError(f"mittag_leffler({alpha}, {z}) overflowed at term {j}")
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) < 1e-14:
            below += 1
            if below >= 3 and j >= 2:
                return total
        else:
            below = 0
        zj *= z
    raise NonConvergenceError(f"mittag_leffler({alpha}, {z}) did not converge in 10^5 terms")
