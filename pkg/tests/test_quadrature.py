"""Numeric engine vs closed forms: singular-kernel quadrature and the lift."""

import math

import numpy as np
import pytest

from diffint import (
    BoundaryContractWarning,
    DomainError,
    MINUS_INF,
    QuadratureSpec,
    as_expr,
    differint_numeric,
    differint_numeric_continued,
    differintegrate,
    dirichlet_kernel_check,
    evaluate,
    gamma,
    parse_expr,
)
from diffint.expr import HeavisideMonomial, MonomialExp
from diffint.quadrature import differint_best_effort

SPEC0 = QuadratureSpec(lower_bound=0.0)
SPECINF = QuadratureSpec(lower_bound=MINUS_INF)

GAMMA_THREE_HALVES = 0.8862269254527580
GAMMA_FIVE_HALVES = 1.3293403881791370


def smooth_window(center: float, radius: float):
    """A compactly supported bump and its first derivative."""

    def w(t):
        t = np.asarray(t, dtype=float)
        u = (t - center) / radius
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out

    def wprime(t):
        t = np.asarray(t, dtype=float)
        u = (t - center) / radius
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = (
            np.exp(1.0 - 1.0 / (1.0 - ui * ui))
            * (-2.0 * ui / (1.0 - ui * ui) ** 2)
            / radius
        )
        return out

    return w, wprime


class TestDirectQuadrature:
    def test_step_half_integral_value(self):
        got = differint_numeric(parse_expr("H(t)"), 0.5, 1.0, SPEC0)
        assert abs(got - 1.0 / GAMMA_THREE_HALVES) < 1e-9
        assert abs(got - 1.1283791670955126) < 1e-9

    def test_exponential_identity_at_origin(self):
        got = differint_numeric(parse_expr("exp(t)"), 0.7, 0.0, SPECINF)
        assert abs(got - 1.0) < 1e-9

    def test_ramp_classical_integral(self):
        got = differint_numeric(parse_expr("H(t)*t"), 1.0, 2.0, SPEC0)
        assert abs(got - 2.0) < 1e-9

    def test_complex_order(self):
        a = 0.8 + 0.4j
        rule = differintegrate(parse_expr("exp(t)"), a).expr
        got = differint_numeric(parse_expr("exp(t)"), a, 0.6, SPECINF)
        assert abs(got - evaluate(rule, 0.6)) < 1e-7

    def test_callable_operand(self):
        got = differint_numeric(lambda t: np.exp(np.asarray(t)), 0.5, 0.0, SPECINF)
        assert abs(got - 1.0) < 1e-8

    def test_positive_order_required(self):
        with pytest.raises(DomainError, match="continued"):
            differint_numeric(parse_expr("H(t)"), -0.5, 1.0, SPEC0)

    def test_divergent_monomial_refused(self):
        with pytest.raises(DomainError, match="diverges"):
            differint_numeric(parse_expr("t^2"), 0.5, 1.0, SPECINF)

    def test_nan_integrand_rejected(self):
        def bad(t):
            t = np.asarray(t, dtype=float)
            return np.where(t < -5, np.nan, 1.0)

        with pytest.raises(DomainError, match="non-finite"):
            differint_numeric(bad, 0.5, 1.0, QuadratureSpec(lower_bound=-10.0))


class TestRuleAgreement:
    """Each closed form with a convergent integral representation."""

    @pytest.mark.parametrize("alpha", [0.4, 0.9, 1.6])
    def test_gated_monomial(self, alpha):
        e = parse_expr("H(t)*t^0.5")
        rule = differintegrate(e, alpha).expr
        for x in np.linspace(0.3, 2.4, 10):
            q = differint_numeric(e, alpha, float(x), SPEC0)
            assert abs(q - evaluate(rule, float(x))) < 1e-6

    @pytest.mark.parametrize("alpha", [0.5, 1.2])
    def test_delta_image_family(self, alpha):
        e = as_expr(HeavisideMonomial(-0.5))  # the half-integral of delta
        rule = differintegrate(e, alpha).expr
        for x in np.linspace(0.4, 2.0, 10):
            q = differint_numeric(e, alpha, float(x), SPEC0)
            assert abs(q - evaluate(rule, float(x))) < 1e-6

    @pytest.mark.parametrize("rate", [1.0, 2.5])
    def test_exponential(self, rate):
        e = as_expr(MonomialExp(0.0, rate))  # normalizes to the pure exponential
        rule = differintegrate(e, 0.6).expr
        for x in np.linspace(-0.5, 1.5, 10):
            q = differint_numeric(e, 0.6, float(x), SPECINF)
            assert abs(q - evaluate(rule, float(x))) < 1e-6

    @pytest.mark.parametrize("s", [1.5, 2.5])
    def test_bose_to_polylog_at_interior_points(self, s):
        e = parse_expr("bose(t)")
        rule = differintegrate(e, s).expr
        for x in (-0.5, -1.5):
            q = differint_numeric(e, s, x, SPECINF)
            assert abs(q - evaluate(rule, x)) < 1e-8

    def test_logarithm_from_zero(self):
        e = parse_expr("ln(2*t)")
        for alpha in (0.6, 1.0):
            rule = differintegrate(e, alpha).expr
            for x in np.linspace(0.4, 2.0, 10):
                q = differint_numeric(e, alpha, float(x), SPEC0)
                assert abs(q - evaluate(rule, float(x))) < 1e-6

    @pytest.mark.parametrize("n", [1.0, 2.0, 0.5])
    def test_monomial_exponential_pair(self, n):
        e = as_expr(MonomialExp(n, 1.0))
        rule = differintegrate(e, 0.7).expr
        for x in np.linspace(0.3, 2.1, 10):
            q = differint_numeric(e, 0.7, float(x), SPECINF)
            assert abs(q - evaluate(rule, float(x))) < 1e-5


class TestContinued:
    def test_exponential_half_derivative_identity(self):
        spec = QuadratureSpec(lower_bound=MINUS_INF, lift_order=1)
        got = differint_numeric_continued(parse_expr("exp(t)"), -0.5, 0.0, spec)
        assert abs(got - 1.0) < 1e-8

    def test_windowed_sine_first_derivative(self):
        # window centered at the sample point: w = 1, w' = 0 there, so the
        # derivative of the windowed sine is plain cos(0.3)
        w, _ = smooth_window(0.3, 2.0)

        def f(t):
            t = np.asarray(t, dtype=float)
            return np.sin(t) * w(t)

        spec = QuadratureSpec(lower_bound=MINUS_INF, lift_order=2, truncation_window=20.0)
        got = differint_numeric_continued(f, -1.0, 0.3, spec)
        assert abs(got - 0.9553364891256060) < 5e-6

    def test_gated_square_half_derivative(self):
        # S^{-0.5} H t^2 at 1 -> Gamma(3)/Gamma(2.5)
        e = parse_expr("H(t)*t^2")
        spec = QuadratureSpec(lower_bound=0.0, lift_order=1)
        got = differint_numeric_continued(e, -0.5, 1.0, spec)
        want = 2.0 / GAMMA_FIVE_HALVES
        assert abs(want - 1.5045055561273502) < 1e-10
        assert abs(got - want) < 1e-7

    def test_gated_exponential_identity_via_delta_sifting(self):
        e = parse_expr("H(t)*exp(-t)")
        spec = QuadratureSpec(lower_bound=MINUS_INF, lift_order=1)
        for x in (0.4, 1.3):
            got = differint_numeric_continued(e, 0.0, x, spec)
            assert abs(got - math.exp(-x)) < 1e-8

    def test_boundary_contract_warning(self):
        spec = QuadratureSpec(lower_bound=0.0, lift_order=1)
        with pytest.warns(BoundaryContractWarning):
            differint_numeric_continued(parse_expr("exp(t)"), -0.5, 1.0, spec)

    def test_callable_finite_difference_route(self):
        w, wp = smooth_window(3.0, 2.5)

        def f(t):
            t = np.asarray(t, dtype=float)
            return np.sin(t) * w(t)

        spec = QuadratureSpec(lower_bound=0.4, lift_order=1)
        got = differint_numeric_continued(f, 0.0, 3.0, spec)
        want = float(np.sin(3.0) * w(np.array(3.0)))
        assert abs(got - want) < 1e-6

    def test_deep_callable_lift_rejected(self):
        spec = QuadratureSpec(lower_bound=0.0, lift_order=3)
        with pytest.raises(DomainError, match="m <= 2"):
            differint_numeric_continued(lambda t: np.asarray(t) * 0.0, -2.5, 1.0, spec)


class TestDirichletKernel:
    def test_unit_exponents(self):
        got = dirichlet_kernel_check(1.0, 1.0, 2.5, 0.5)
        assert abs(got - 2.0) < 1e-10

    def test_half_half_gives_pi(self):
        got = dirichlet_kernel_check(0.5, 0.5, 1.0, 0.0)
        assert abs(got - math.pi) < 1e-10

    def test_two_three(self):
        got = dirichlet_kernel_check(2.0, 3.0, 1.0, 0.0)
        assert abs(got - 1.0 / 12.0) < 1e-12

    def test_complex_exponents(self):
        a, b = 0.7 + 0.5j, 1.2 - 0.3j
        got = dirichlet_kernel_check(a, b, 1.7, 0.4)
        from diffint import cpow

        want = gamma(a) * gamma(b) / gamma(a + b) * cpow(1.3, a + b - 1.0)
        assert abs(got - want) < 1e-8 * abs(want)


class TestIdentities:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.5, 2.5])
    def test_gamma_identity(self, alpha):
        got = differint_numeric(parse_expr("exp(t)"), alpha, 0.0, SPECINF)
        assert abs(got - 1.0) < 1e-7

    @pytest.mark.parametrize("s", [2.0, 3.0, 4.0])
    def test_zeta_identity(self, s):
        from diffint import riemann_zeta

        got = differint_numeric(parse_expr("bose(t)"), s, 0.0, SPECINF)
        assert abs(got - riemann_zeta(s)) < 1e-6

    def test_zeta_near_edge_degrades_without_crash(self):
        val, est = differint_best_effort(parse_expr("bose(t)"), 1.05, 0.0, SPECINF)
        assert np.isfinite(val.real)
        assert est > 0

    def test_numeric_linearity(self):
        f = parse_expr("H(t)*exp(-t)")
        g = parse_expr("H(t)*t^2")
        combo = 2.0 * f + 0.5 * g
        for x in (0.5, 1.5):
            lhs = differint_numeric(combo, 0.6, x, SPEC0)
            rhs = 2.0 * differint_numeric(f, 0.6, x, SPEC0) + 0.5 * differint_numeric(
                g, 0.6, x, SPEC0
            )
            assert abs(lhs - rhs) < 1e-8

    def test_numeric_index_law_light(self):
        # S^0.3(S^0.7 f) vs S^1.0 f on the gated exponential, one point,
        # fully nested (no interpolation shortcut)
        f = parse_expr("H(t)*exp(-t)")
        inner_spec = QuadratureSpec(node_count=16, tolerance=1e-7, lower_bound=0.0)
        outer_spec = QuadratureSpec(node_count=16, tolerance=1e-6, lower_bound=0.0)

        def inner(t):
            t = np.asarray(t, dtype=float)
            out = np.zeros(t.shape, dtype=complex)
            for i, tv in enumerate(t.ravel()):
                if tv > 0:
                    out.ravel()[i] = differint_numeric(f, 0.7, float(tv), inner_spec)
            return out

        x = 1.0
        composed = differint_numeric(inner, 0.3, x, outer_spec)
        direct = differint_numeric(f, 1.0, x, QuadratureSpec(lower_bound=0.0))
        assert abs(composed - direct) < 1e-5
