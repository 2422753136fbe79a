"""Special-function kernel: frozen oracle values and recurrence properties."""

import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffint import (
    DomainError,
    PoleError,
    cpow,
    digamma,
    gamma,
    kummer_1f1,
    mittag_leffler,
    polylog,
    reciprocal_gamma,
    riemann_zeta,
)
from diffint.special import EULER_GAMMA, reciprocal_gamma_prime

# int_0^inf t^(-1/2) e^(-t) dt computed by quadrature ahead of the build
GAMMA_HALF = 1.7724538509055160


def simpson(f, a, b, n):
    h = (b - a) / n
    total = f(a) + f(b)
    for i in range(1, n):
        total += (4.0 if i % 2 else 2.0) * f(a + i * h)
    return total * h / 3.0


def zeta_partial_sums(s: float, n: int = 200_000) -> float:
    """Direct partial sums with the integral tail (independent of the package)."""
    head = sum(k ** (-s) for k in range(1, n))
    return head + n ** (1.0 - s) / (s - 1.0) + 0.5 * n ** (-s)


class TestGamma:
    def test_factorials(self):
        assert gamma(1) == 1
        assert gamma(5) == 24

    def test_half_matches_integral_oracle(self):
        # Gamma(1/2) = int t^(-1/2) e^(-t) dt = 2 int_0^inf e^(-u^2) du
        oracle = 2.0 * simpson(lambda u: math.exp(-u * u), 0.0, 12.0, 6000)
        assert abs(oracle - GAMMA_HALF) < 1e-10
        assert abs(gamma(0.5) - GAMMA_HALF) < 1e-10

    def test_poles_raise(self):
        for k in (0, -1, -2, -7):
            with pytest.raises(PoleError):
                gamma(k)

    @settings(max_examples=100, deadline=None)
    @given(
        st.floats(min_value=0.01, max_value=10.0),
        st.floats(min_value=-10.0, max_value=10.0),
    )
    def test_recurrence(self, re, im):
        a = complex(re, im)
        lhs = gamma(a + 1)
        rhs = a * gamma(a)
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_relative_accuracy_large(self):
        # Gamma(30) = 29!
        assert abs(gamma(30.0) - math.factorial(29)) <= 1e-12 * math.factorial(29)


class TestReciprocalGamma:
    def test_exact_zeros_at_poles(self):
        assert reciprocal_gamma(0) == 0
        assert reciprocal_gamma(-3) == 0
        assert reciprocal_gamma(-17.0) == 0

    def test_plain_values(self):
        assert reciprocal_gamma(2) == 1.0  # Gamma(2) = 1! = 1
        assert reciprocal_gamma(3) == 0.5

    def test_product_with_gamma(self):
        random.seed(11)
        for _ in range(100):
            a = complex(random.uniform(0.1, 8), random.uniform(-5, 5))
            assert abs(gamma(a) * reciprocal_gamma(a) - 1) < 1e-10

    def test_prime_at_origin(self):
        # d/dw [1/Gamma] at 0 is 1 (leading series coefficient)
        assert abs(reciprocal_gamma_prime(0.0) - 1.0) < 1e-9
        assert abs(reciprocal_gamma_prime(-1.0) + 1.0) < 1e-9


class TestDigamma:
    def test_euler_mascheroni(self):
        assert abs(digamma(1) + EULER_GAMMA) < 1e-12

    def test_at_two_by_recurrence_from_one(self):
        assert abs(digamma(2) - (1.0 - EULER_GAMMA)) < 1e-12

    def test_half_by_series_oracle(self):
        # psi(x) = -gamma + sum_n (1/(n+1) - 1/(n+x))
        x = 0.5
        oracle = -EULER_GAMMA + sum(1.0 / (n + 1) - 1.0 / (n + x) for n in range(3_000_000))
        assert abs(oracle - (-EULER_GAMMA - 2 * math.log(2))) < 1e-6
        assert abs(digamma(0.5) - (-EULER_GAMMA - 2 * math.log(2))) < 1e-10

    def test_recurrence_property(self):
        random.seed(5)
        for _ in range(100):
            a = complex(random.uniform(0.05, 9), random.uniform(-4, 4))
            assert abs(digamma(a + 1) - digamma(a) - 1.0 / a) < 1e-9

    def test_pole(self):
        with pytest.raises(PoleError):
            digamma(-2)


class TestKummer:
    def test_at_zero(self):
        assert kummer_1f1(1.3, 2.7, 0) == 1

    def test_collapses_to_exp(self):
        for z in (0.3, -1.2, 2.5):
            assert abs(kummer_1f1(1, 1, z) - cmath.exp(z)) < 1e-12 * abs(cmath.exp(z))

    def test_series_oracle_2_3_1(self):
        # direct 60-term sum of (2)_k/(3)_k * 1/k!
        total = 0.0
        term = 1.0
        for k in range(60):
            total += term
            term *= (2 + k) / ((3 + k) * (k + 1.0))
        assert abs(total - 2.0) < 1e-14
        assert abs(kummer_1f1(2, 3, 1) - 2.0) < 1e-12

    def test_1_3_1_closed_form(self):
        # 1F1(1;3;1) = 2(e - 2)
        assert abs(kummer_1f1(1, 3, 1) - 2 * (math.e - 2)) < 1e-12

    def test_denominator_pole(self):
        with pytest.raises(PoleError):
            kummer_1f1(1.0, -2.0, 0.5)

    def test_range_guard(self):
        with pytest.raises(DomainError):
            kummer_1f1(1.0, 2.0, 60.0)


class TestPolylogZeta:
    def test_empty_sum(self):
        assert polylog(2.0, 0) == 0

    def test_li1_is_log(self):
        assert abs(polylog(1, 0.5) - math.log(2)) < 1e-12

    def test_li2_at_one_is_zeta2(self):
        oracle = zeta_partial_sums(2.0)
        assert abs(polylog(2, 1) - oracle) < 1e-10

    def test_matches_direct_summation(self):
        random.seed(23)
        for _ in range(20):
            s = complex(random.uniform(0.5, 3.0), random.uniform(-1, 1))
            x = random.uniform(-0.9, 0.9)
            if abs(x) < 1e-3:
                continue
            direct = sum(x**k * k ** (-s) for k in range(1, 100_000))
            assert abs(polylog(s, x) - direct) < 1e-8

    def test_zeta_values(self):
        for s, want in ((2.0, 1.6449340668482264), (3.0, 1.2020569031595943), (4.0, 1.0823232337111382)):
            assert abs(zeta_partial_sums(s) - want) < 1e-9
            assert abs(riemann_zeta(s) - want) < 1e-10

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            polylog(2.0, 1.5)
        with pytest.raises(DomainError):
            riemann_zeta(0.5)


class TestMittagLeffler:
    def test_alpha_one_is_exp(self):
        for x in [-5.0, -2.5, -1.0, 0.3, 2.0, 5.0]:
            assert abs(mittag_leffler(1.0, x) - math.exp(x)) < 1e-12

    def test_at_zero(self):
        assert mittag_leffler(0.37, 0) == 1

    def test_alpha_two_is_cosh(self):
        # E_2(z^2) = cosh z, checked through the series at z = 1
        assert abs(mittag_leffler(2.0, 1.0) - math.cosh(1.0)) < 1e-13

    def test_guards(self):
        with pytest.raises(DomainError):
            mittag_leffler(0.0, 1.0)
        with pytest.raises(DomainError):
            mittag_leffler(1.0, 31.0)


class TestPrincipalPower:
    def test_zero_conventions(self):
        assert cpow(0.0, 0.0) == 1
        assert cpow(0.0, 2.5) == 0

    def test_principal_branch(self):
        # (-1)^0.5 = i on the principal branch
        assert abs(cpow(-1.0, 0.5) - 1j) < 1e-15

    def test_zero_to_negative_is_singular(self):
        from diffint import SingularPoint

        with pytest.raises(SingularPoint):
            cpow(0.0, -1.0)
