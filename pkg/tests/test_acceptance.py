"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with
``pytest -s``) before asserting.  Criterion 7 is implemented faithfully and
is expected to fail: the zero-function correction series of the
complimentary function is asymptotic (factorially divergent at fixed
argument), so no truncation at K = 15 can reconcile the finite-lower-bound
half-derivative with the canonical operator at x = 1 to 1e-5.  The same
machinery passes comfortably inside the series' asymptotic range (see
test_rules.py::TestComplimentarySeries::test_asymptotic_reconciliation_far_from_base).
"""

import math
import random
import warnings

import numpy as np

from diffint import (
    BoseKernel,
    Cos,
    DeltaDeriv,
    Exponential,
    FDEProblem,
    Heaviside,
    HeavisideMonomial,
    KummerPair,
    Log,
    LogMonomial,
    MINUS_INF,
    Monomial,
    MonomialExp,
    PolylogExp,
    QuadratureSpec,
    Sin,
    TransformRequest,
    ZeroFn,
    as_expr,
    complimentary_coefficients,
    differint_numeric,
    differint_numeric_continued,
    differintegrate,
    dirichlet_kernel_check,
    evaluate,
    gamma,
    laplace_frac,
    normalize,
    parse_expr,
    picard_series,
    solve_fde,
    structurally_equal,
    zero_function_value,
)

SPEC0 = QuadratureSpec(lower_bound=0.0)
SPECINF = QuadratureSpec(lower_bound=MINUS_INF)


def report(num: int, ok: bool, label: str, detail: str = ""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] criterion {num}: {label}" + (f" ({detail})" if detail else ""))
    return ok


def ml_series_oracle(alpha: float, z: float, terms: int = 400) -> float:
    """Mittag-Leffler by direct summation with the stdlib gamma."""
    total = 0.0
    for j in range(terms):
        g = 1.0 + j * alpha
        total += z**j / math.gamma(g)
        if abs(z**j / math.gamma(g)) < 1e-18 and j > 4:
            break
    return total


def zeta_oracle(s: float, n: int = 200_000) -> float:
    head = sum(k ** (-s) for k in range(1, n))
    return head + n ** (1.0 - s) / (s - 1.0) + 0.5 * n ** (-s)


def simpson_laplace(fn, s: complex, upper: float = 80.0, n: int = 80_000) -> complex:
    t = np.linspace(0.0, upper, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return complex(np.sum(w * fn(t) * np.exp(-s * t)) * (upper / n) / 3.0)


def bump(center, radius):
    def w(t):
        t = np.asarray(t, dtype=float)
        u = (t - center) / radius
        out = np.zeros_like(u)
        m = np.abs(u) < 1
        out[m] = np.exp(1.0 - 1.0 / (1.0 - u[m] ** 2))
        return out

    def wp(t):
        t = np.asarray(t, dtype=float)
        u = (t - center) / radius
        out = np.zeros_like(u)
        m = np.abs(u) < 1
        out[m] = np.exp(1.0 - 1.0 / (1.0 - u[m] ** 2)) * (-2 * u[m] / (1 - u[m] ** 2) ** 2) / radius
        return out

    return w, wp


def test_criterion_1_endpoint_identities():
    """S^0 f = f and S^-1 f = f' numerically, three operand families."""
    tol = 1e-5
    ok = True
    # gated exponential: symbolic distributional lift (delta sifted)
    f = parse_expr("H(t)*exp(-t)")
    pts = np.linspace(0.25, 2.5, 10)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for x in pts:
            s0 = differint_numeric_continued(f, 0.0, float(x), QuadratureSpec(lower_bound=MINUS_INF, lift_order=1))
            s1 = differint_numeric_continued(f, -1.0, float(x), QuadratureSpec(lower_bound=MINUS_INF, lift_order=2))
            ok &= abs(s0 - math.exp(-x)) < tol
            ok &= abs(s1 + math.exp(-x)) < tol
        # gated square
        g = parse_expr("H(t)*t^2")
        for x in pts:
            s0 = differint_numeric_continued(g, 0.0, float(x), QuadratureSpec(lower_bound=0.0, lift_order=1))
            s1 = differint_numeric_continued(g, -1.0, float(x), QuadratureSpec(lower_bound=0.0, lift_order=2))
            ok &= abs(s0 - x * x) < tol
            ok &= abs(s1 - 2 * x) < tol
        # windowed sine through the finite-difference route
        w, wp = bump(3.0, 2.5)

        def h(t):
            t = np.asarray(t, dtype=float)
            return np.sin(t) * w(t)

        for x in np.linspace(2.2, 3.8, 10):
            s0 = differint_numeric_continued(h, 0.0, float(x), QuadratureSpec(lower_bound=0.5, lift_order=1))
            s1 = differint_numeric_continued(h, -1.0, float(x), QuadratureSpec(lower_bound=0.5, lift_order=2))
            want0 = float(np.sin(x) * w(np.array(x)))
            want1 = float(np.cos(x) * w(np.array(x)) + np.sin(x) * wp(np.array(x)))
            ok &= abs(s0 - want0) < tol
            ok &= abs(s1 - want1) < tol
    assert report(1, ok, "numeric S^0 f = f and S^-1 f = f' at 10 points, |err| < 1e-5")


def test_criterion_2_index_law():
    """Structural S^a S^b = S^(a+b), 200 random pairs per kernel class; numeric check."""
    rng = random.Random(20260808)

    def rc(radius=3.0):
        return complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))

    gens = {
        "Monomial": lambda: Monomial(complex(rng.uniform(0.1, 4), rng.uniform(-1, 1))),
        "ZeroFn": lambda: ZeroFn(float(rng.randint(0, 4))),
        "Heaviside": lambda: Heaviside(),
        "DeltaDeriv": lambda: DeltaDeriv(float(rng.randint(0, 3))),
        "HeavisideMonomial": lambda: HeavisideMonomial(complex(rng.uniform(0.2, 3), rng.uniform(-1, 1))),
        "Exponential": lambda: Exponential(complex(rng.uniform(0.3, 3), rng.uniform(-2, 2))),
        "Sin": lambda: Sin(rng.choice([-1, 1]) * rng.uniform(0.3, 3), rng.uniform(-1, 1)),
        "Cos": lambda: Cos(rng.choice([-1, 1]) * rng.uniform(0.3, 3), rng.uniform(-1, 1)),
        "Log": lambda: Log(rng.uniform(0.3, 3)),
        "LogMonomial": lambda: LogMonomial(complex(rng.uniform(0.2, 2), rng.uniform(-0.4, 0.4)), rng.uniform(0.3, 3)),
        "BoseKernel": lambda: BoseKernel(),
        "PolylogExp": lambda: PolylogExp(rc(2.0)),
        "MonomialExp": lambda: MonomialExp(complex(rng.uniform(0.2, 3), rng.uniform(-0.5, 0.5)), complex(rng.uniform(0.3, 2), rng.uniform(-1, 1))),
        "KummerPair": lambda: KummerPair(complex(rng.uniform(0.2, 3), 0.3), complex(rng.uniform(0.3, 2), 0.0), rc(1.0)),
    }
    ok = True
    for name, gen in gens.items():
        trig = name in ("Sin", "Cos")
        for _ in range(200):
            e = normalize(as_expr(gen()))
            if trig:
                a, b = complex(rng.uniform(-3, 3)), complex(rng.uniform(-3, 3))
            else:
                a, b = rc(), rc()
            lhs = differintegrate(differintegrate(e, b).expr, a).expr
            rhs = differintegrate(e, a + b).expr
            if not structurally_equal(lhs, rhs, 1e-8):
                ok = False
                break
        if not ok:
            break
    report(2, ok, "structural index law, 200 random (a, b) per kernel class")
    # numeric composition on the gated exponential: the inner numeric image
    # behaves as t^0.7 * (analytic), so interpolate its analytic part once
    # (interpolation error ~1e-12, far under the 1e-5 budget) and feed the
    # outer quadrature with it
    f = parse_expr("H(t)*exp(-t)")
    inner_spec = QuadratureSpec(node_count=32, tolerance=1e-9, lower_bound=0.0)
    outer_spec = QuadratureSpec(tolerance=1e-7, lower_bound=0.0)
    x_max = 2.0
    deg = 60
    nodes = x_max * (np.cos((2 * np.arange(deg + 1) + 1) * np.pi / (2 * (deg + 1))) + 1.0) / 2.0
    smooth = np.array(
        [differint_numeric(f, 0.7, float(t), inner_spec).real / t**0.7 for t in nodes]
    )
    coeffs = np.polynomial.chebyshev.chebfit(2.0 * nodes / x_max - 1.0, smooth, deg)

    def inner(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        m = t > 0
        vals = np.polynomial.chebyshev.chebval(2.0 * t[m] / x_max - 1.0, coeffs)
        out[m] = vals * t[m] ** 0.7
        return out

    num_ok = True
    for x in (0.5, 1.0, 2.0):
        composed = differint_numeric(inner, 0.3, x, outer_spec)
        direct = differint_numeric(f, 1.0, x, SPEC0)
        num_ok &= abs(composed - direct) < 1e-5
    assert report(2, num_ok, "numeric S^0.3 S^0.7 = S^1.0 on H(t)e^-t, |err| < 1e-5") and ok


def test_criterion_3_beta_kernel_identity():
    rng = random.Random(99)
    ok = True
    worst = 0.0
    for _ in range(50):
        a = complex(rng.uniform(0.15, 3.0), rng.uniform(-2.0, 2.0))
        b = complex(rng.uniform(0.15, 3.0), rng.uniform(-2.0, 2.0))
        zz = rng.uniform(0.5, 3.0)
        ph = zz - rng.uniform(0.2, 2.0)
        got = dirichlet_kernel_check(a, b, zz, ph)
        want = gamma(a) * gamma(b) / gamma(a + b) * (zz - ph) ** (a + b - 1.0)
        rel = abs(got - want) / abs(want)
        worst = max(worst, rel)
        ok &= rel < 1e-7
    pi_case = dirichlet_kernel_check(0.5, 0.5, 1.0, 0.0)
    ok &= abs(pi_case - math.pi) / math.pi < 1e-7
    assert report(3, ok, "beta-kernel identity, 50 random pairs rel < 1e-7 plus pi case", f"worst rel {worst:.2e}")


def test_criterion_4_gamma_identity():
    ok = True
    for a in (0.25, 0.5, 1.5, 2.5):
        got = differint_numeric(parse_expr("exp(t)"), a, 0.0, SPECINF)
        ok &= abs(got - 1.0) < 1e-7
    recovered = gamma(0.5) * differint_numeric(parse_expr("exp(t)"), 0.5, 0.0, SPECINF)
    ok &= abs(recovered - 1.7724538509) < 1e-7
    assert report(4, ok, "exponential differintegral identity recovers Gamma, |err| < 1e-7")


def test_criterion_5_zeta_identity():
    oracles = {2.0: 1.6449340668, 3.0: 1.2020569031, 4.0: 1.0823232337}
    ok = True
    for s, frozen in oracles.items():
        oracle = zeta_oracle(s)
        assert abs(oracle - frozen) < 1e-9
        got = differint_numeric(parse_expr("bose(t)"), s, 0.0, SPECINF)
        ok &= abs(got - oracle) < 1e-6
    assert report(5, ok, "Bose-kernel differintegral at 0 equals zeta(s), |err| < 1e-6")


def test_criterion_6_rule_vs_quadrature():
    ok = True
    # gated monomial, lower bound 0
    e = parse_expr("H(t)*t^0.5")
    rule = differintegrate(e, 0.6).expr
    for x in np.linspace(0.3, 2.4, 10):
        ok &= abs(differint_numeric(e, 0.6, float(x), SPEC0) - evaluate(rule, float(x))) < 1e-5
    # step rule
    e = parse_expr("H(t)")
    rule = differintegrate(e, 0.5).expr
    for x in np.linspace(0.3, 2.4, 10):
        ok &= abs(differint_numeric(e, 0.5, float(x), SPEC0) - evaluate(rule, float(x))) < 1e-5
    # delta rule through its image family (the half-integral of delta)
    e = as_expr(HeavisideMonomial(-0.5))
    rule = differintegrate(e, 0.8).expr
    for x in np.linspace(0.3, 2.4, 10):
        ok &= abs(differint_numeric(e, 0.8, float(x), SPEC0) - evaluate(rule, float(x))) < 1e-5
    # exponential, Re rate > 0, lower bound -inf
    e = parse_expr("exp(1.5*t)")
    rule = differintegrate(e, 0.6).expr
    for x in np.linspace(-0.5, 1.6, 10):
        ok &= abs(differint_numeric(e, 0.6, float(x), SPECINF) - evaluate(rule, float(x))) < 1e-5
    # logarithm, lower bound 0, through the continued entry point
    e = parse_expr("ln(2*t)")
    rule = differintegrate(e, 0.6).expr
    for x in np.linspace(0.4, 2.2, 10):
        got = differint_numeric_continued(e, 0.6, float(x), SPEC0)
        ok &= abs(got - evaluate(rule, float(x))) < 1e-5
    # monomial-exponential product (the two-1F1 closed form, both branches)
    for n in (1.0, 2.0, 0.5):
        e = as_expr(MonomialExp(n, 1.0))
        rule = differintegrate(e, 0.7).expr
        for x in np.linspace(0.3, 2.1, 10):
            ok &= abs(differint_numeric(e, 0.7, float(x), SPECINF) - evaluate(rule, float(x))) < 1e-5
    assert report(6, ok, "every convergent closed-form rule matches quadrature at 10 points, |err| < 1e-5")


def test_criterion_7_complimentary_series():
    """Faithful implementation of the stated check; mathematically unattainable.

    The coefficients are exactly right for the integer-order Cauchy
    identity (verified in test_rules.py against brute-force quadrature),
    but at fractional order the zero-function correction series is
    asymptotic, not convergent: at x = 1 its terms |c_k O^(k+1/2)(1)| =
    Gamma(k + 3/2)/pi grow factorially, the optimal truncation is K = 1
    with O(0.1) error, and the K = 15 partial sum misses by ~1e11.  No
    truncation can reach 1e-5 here; inside the asymptotic range (x = 30)
    the same machinery reconciles the two sides to ~1e-7 (green test in
    test_rules.py).
    """
    x = 1.0
    series = complimentary_coefficients(parse_expr("exp(x)"), 0.0, 15)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rl_half = differint_numeric_continued(
            parse_expr("exp(x)"), -0.5, x, QuadratureSpec(lower_bound=0.0, lift_order=1)
        )
    corrected = rl_half + sum(
        c * zero_function_value(k + 0.5, x) for k, c in enumerate(series.coefficients)
    )
    canonical = evaluate(differintegrate(parse_expr("exp(x)"), -0.5).expr, x)
    err = abs(corrected - canonical)
    report(7, err < 1e-5, "complimentary series reconciles RL(0) with S^-0.5 at x=1, K=15", f"err {err:.3e}")
    assert err < 1e-5


def test_criterion_8_transforms():
    ok = True
    # alpha = 0 reproduces the operand exactly (symbolic)
    for text, s in (("H(t)*exp(-t)", 2.0), ("H(t)*t*exp(-2*t)", 1.5)):
        f = parse_expr(text)
        (_, v), = laplace_frac(TransformRequest(f, 0.0, (s,)))
        ok &= v == evaluate(f, s)
    # alpha = 1 matches the classical transform oracle
    for text, fn in (
        ("H(t)*exp(-t)", lambda t: np.exp(-t)),
        ("H(t)*t*exp(-2*t)", lambda t: t * np.exp(-2.0 * t)),
    ):
        f = parse_expr(text)
        for s in (1.0, 2.0, 5.0):
            (_, v), = laplace_frac(TransformRequest(f, 1.0, (s,)))
            ok &= abs(v - simpson_laplace(fn, s)) < 1e-6
    # zero-function transform
    for a in (0.25, 0.5, 0.75):
        f = parse_expr(f"zero({a})")
        for s in (0.5, 2.0, 4.0):
            (_, v), = laplace_frac(TransformRequest(f, 1.0, (s,)))
            ok &= abs(v - s**a) < 1e-8
    assert report(8, ok, "transform endpoints exact/1e-6 and L[zero(a)] = s^a to 1e-8")


def test_criterion_9_solvers():
    ok = True
    sol = picard_series(parse_expr("z^0"), 1.0, 25)
    ok &= abs(sol(1.0) - math.e) < 1e-9
    sol = picard_series(parse_expr("z^0"), 0.5, 40)
    ok &= abs(sol(1.0) - ml_series_oracle(0.5, 1.0)) < 1e-8
    report(9, ok, "picard series match exp and E_1/2 oracles")
    p = FDEProblem(order=0.5, rhs=lambda x, y: -y, initial_data=((0.0, 1.0),), domain=1.0, step=1.0 / 1024, lipschitz=1.0)
    _, y = solve_fde(p)
    for xv in (0.25, 0.5, 1.0):
        i = int(round(xv * 1024))
        want = ml_series_oracle(0.5, -math.sqrt(xv))
        ok &= abs(y[i] - want) < 2e-3
    report(9, ok, "half-order relaxation matches E_1/2(-sqrt(x)) to 2e-3")
    errs = []
    for h in (1e-2, 1e-3, 1e-4):
        p = FDEProblem(order=1.0, rhs=lambda x, y: -y, initial_data=((0.0, 1.0),), domain=1.0, step=h, lipschitz=1.0)
        _, y = solve_fde(p)
        errs.append(abs(y[-1] - math.exp(-1.0)))
    ok &= errs[1] < 1e-3 and errs[0] > errs[1] > errs[2]
    assert report(9, ok, "classical relaxation 1e-3 at h=1e-3 with monotone error decrease")


def test_criterion_10_log_rule_limit():
    ok = True
    lm = as_expr(LogMonomial(-1.0 + 1e-6, 1.0))
    for z in (0.5, 1.0, 2.0):
        ok &= abs(evaluate(lm, z) - 1.0 / z) < 1e-5
    assert report(10, ok, "log-rule image at order -1+1e-6 within 1e-5 of 1/z")


def test_criterion_11_zero_function_algebra():
    rng = random.Random(17)
    ok = True
    for k in range(4):
        e = as_expr(ZeroFn(float(k)))
        for _ in range(100):
            z = rng.uniform(-8.0, 8.0)
            if z == 0.0:
                continue
            ok &= evaluate(e, z) == 0.0
    half = differintegrate(as_expr(ZeroFn(0.0)), -0.5).expr
    ok &= abs(evaluate(half, 1.0)) > 0.1
    assert report(11, ok, "integer zero functions vanish exactly; fractional derivative is nonzero")
