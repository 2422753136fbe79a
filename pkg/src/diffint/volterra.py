"""Fractional differintegral equations: generalized Volterra forms and solvers.

The fixed-point form solved here is::

    y(x) = sum_k y_k * x^(a_k) / Gamma(1 + a_k)  +  J^alpha[f(., y)](x)

with arbitrary fractional initial orders ``a_k`` (the classical Volterra
equation is the all-integer case).  ``solve_fde`` marches it with implicit
product-rectangle integration: the weights integrate the singular kernel
exactly against piecewise-constant data, the newest value enters through a
per-step fixed point whose contraction factor is ``L h^alpha /
Gamma(1+alpha)``.  ``picard_series`` is the closed-form contraction series
``sum_j S^(j alpha) f`` available when ``f`` does not depend on ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractionError,
    DomainError,
    NonConvergenceError,
    SingularPoint,
    SingularSystemError,
)
from .expr import Expr, Monomial, Term, as_expr, evaluate, normalize, try_evaluate
from .rules import differintegrate
from .special import cpow, gamma, reciprocal_gamma


@dataclass(frozen=True)
class FDEProblem:
    """``y^(alpha)(x) = rhs(x, y)`` on [0, X] with fractional initial data.

    ``initial_data`` lists ``(a_k, value)`` pairs meaning the order-``a_k``
    derivative of ``y`` at 0; ``lipschitz`` is the caller-declared Lipschitz
    constant of ``rhs`` in ``y`` (the solver only checks the contraction
    inequality it implies, it does not estimate it).
    """

    order: float
    rhs: object  # callable (x, y) -> value
    initial_data: tuple = ()
    domain: float = 1.0
    step: float = 1e-2
    lipschitz: float = 1.0

    def __post_init__(self):
        if not self.order > 0:
            raise DomainError("order must be positive")
        if not (self.step > 0 and self.domain > 0):
            raise DomainError("step and domain must be positive")
        orders = [complex(a).real for a, _ in self.initial_data]
        if len(set(orders)) != len(orders):
            raise DomainError("initial-condition orders must be distinct")


@dataclass(frozen=True)
class VolterraForm:
    """The fixed-point functional: explicit initial polynomial plus J^alpha rhs."""

    initial_poly: Expr
    order: float
    rhs: object

    def initial_value(self, x) -> complex:
        """Evaluate the initial-data polynomial (0^0 = 1 convention at x = 0)."""
        total = 0.0 + 0.0j
        for t in self.initial_poly.terms:
            n = complex(t.kernel.n)
            total += t.coeff * cpow(complex(x), n)
        return total


def volterra_form(p: FDEProblem) -> VolterraForm:
    """Rewrite the problem as ``y = initial polynomial + S^alpha rhs``."""
    terms = tuple(
        Term(complex(v) * reciprocal_gamma(1.0 + complex(a)), Monomial(complex(a)))
        for a, v in p.initial_data
    )
    return VolterraForm(normalize(Expr(terms)), p.order, p.rhs)


@dataclass(frozen=True)
class SeriesSolution:
    """Truncated contraction series ``sum_j S^(j alpha) f``."""

    terms: tuple[Expr, ...]
    truncation: int
    tail_estimate: float

    def partial_sum(self) -> Expr:
        total = Expr(())
        for t in self.terms:
            total = total + t
        return total

    def __call__(self, z) -> complex:
        return evaluate(self.partial_sum(), z)


def picard_series(f, alpha: float, count: int, domain_samples=(0.5, 1.0)) -> SeriesSolution:
    """Terms ``S^(j alpha) f`` for j = 0..count-1, with a last-term tail estimate."""
    if count < 1:
        raise DomainError("need at least one series term")
    f = as_expr(f)
    terms = []
    for j in range(count):
        terms.append(differintegrate(f, j * float(alpha)).expr)
    tail = 0.0
    for z in domain_samples:
        v = try_evaluate(terms[-1], z)
        if v is not None:
            tail = max(tail, abs(v))
    return SeriesSolution(tuple(terms), count, tail)


def _rect_weights(alpha: float, xi1: float, x: np.ndarray, i: int) -> np.ndarray:
    """Product-rectangle weights ((x_{i+1}-x_j)^a - (x_{i+1}-x_{j+1})^a)/a for j<=i."""
    left = (xi1 - x[: i + 1]) ** alpha
    right = (xi1 - x[1 : i + 2]) ** alpha
    return (left - right) / alpha


def solve_fde(p: FDEProblem) -> tuple[np.ndarray, np.ndarray]:
    """March the fixed-point form; returns the grid and sampled solution.

    Implicit product rectangle: history values enter at the right endpoint
    of each subinterval, the newest through a per-step fixed point iterated
    to 1e-10.  Requires the declared contraction ``L h^alpha/Gamma(1+alpha)
    < 1``.
    """
    alpha = float(p.order)
    h = float(p.step)
    contraction = p.lipschitz * h**alpha * abs(reciprocal_gamma(1.0 + alpha))
    if contraction >= 1.0:
        raise ContractionError(
            f"step weight L*h^alpha/Gamma(1+alpha) = {contraction:.3g} >= 1; shrink the step"
        )
    form = volterra_form(p)
    n = int(round(p.domain / h))
    x = np.linspace(0.0, n * h, n + 1)
    y = np.zeros(n + 1, dtype=complex)
    y[0] = form.initial_value(0.0)
    ga = complex(gamma(alpha))
    c_last = h**alpha / complex(gamma(1.0 + alpha))
    fvals = np.zeros(n + 1, dtype=complex)  # rhs at right endpoints, index j+1
    for i in range(n):
        xi1 = x[i + 1]
        w = _rect_weights(alpha, xi1, x, i)
        known = form.initial_value(xi1)
        if i > 0:
            known += complex(np.dot(w[:i], fvals[1 : i + 1])) / ga
        guess = y[i]
        for _ in range(100):
            nxt = known + c_last * complex(p.rhs(xi1, guess))
            if abs(nxt - guess) < 1e-10:
                guess = nxt
                break
            guess = nxt
        else:
            raise NonConvergenceError(f"per-step fixed point stalled at x = {xi1:g}")
        y[i + 1] = guess
        fvals[i + 1] = complex(p.rhs(xi1, guess))
    return x, y


@dataclass(frozen=True)
class BoundaryProblem:
    """``y^(alpha)(x) = rhs`` with boundary data ``y^(a_k)(x_k) = value``.

    The solution ansatz is ``y = sum_k c_k x^(alpha - k) + S^alpha rhs``
    with the constants collocated against the boundary conditions.
    """

    order: float
    rhs: object  # Expr (y-independent) or callable (x, y)
    conditions: tuple  # of (a_k, x_k, value)
    domain: float = 1.0
    step: float = 1e-2
    lipschitz: float = 1.0


def solve_boundary(p: BoundaryProblem):
    """Solve for the boundary constants; returns (constants, grid, samples).

    With a y-independent Expr right-hand side the collocation system is
    linear and solved symbolically.  For y-dependent callables an outer
    fixed point (damped 0.5 on divergence) alternates marching with
    re-collocation; that path supports plain value conditions (a_k = 0)
    and non-singular basis exponents only.
    """
    n = len(p.conditions)
    if n == 0:
        raise DomainError("need at least one boundary condition")
    alpha = float(p.order)
    if isinstance(p.rhs, Expr) or hasattr(p.rhs, "terms"):
        return _solve_boundary_symbolic(p, alpha, n)
    return _solve_boundary_outer(p, alpha, n)


def _basis_deriv_at(alpha: float, j: int, ak: float, xk: float) -> complex:
    """(S^(-a_k) x^(alpha-j)) at x_k."""
    expo = alpha - j
    if ak == 0:
        return cpow(xk, expo)
    num = 1.0 + expo
    if num.real <= 0 and num == round(num.real):
        raise SingularSystemError(
            f"basis exponent {expo} is a negative integer; its fractional "
            "derivative leaves the monomial class"
        )
    return gamma(num) * reciprocal_gamma(num - ak) * cpow(xk, expo - ak)


def _solve_boundary_symbolic(p: BoundaryProblem, alpha: float, n: int):
    rhs = as_expr(p.rhs)
    mat = np.zeros((n, n), dtype=complex)
    vec = np.zeros(n, dtype=complex)
    for row, (ak, xk, value) in enumerate(p.conditions):
        ak = float(ak)
        xk = float(xk)
        for j in range(1, n + 1):
            mat[row, j - 1] = _basis_deriv_at(alpha, j, ak, xk)
        part = differintegrate(rhs, alpha - ak).expr
        vec[row] = complex(value) - evaluate(part, xk)
    try:
        consts = np.linalg.solve(mat, vec)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"collocation system is singular: {exc}") from exc
    grid = np.linspace(0.0, p.domain, max(2, int(round(p.domain / p.step)) + 1))
    s_rhs = differintegrate(rhs, alpha).expr
    samples = np.full(grid.size, complex("nan"), dtype=complex)
    for idx, xv in enumerate(grid):
        try:
            acc = evaluate(s_rhs, xv) if xv != 0 else (try_evaluate(s_rhs, xv) or 0.0)
            for j in range(1, n + 1):
                acc += consts[j - 1] * cpow(xv, alpha - j)
            samples[idx] = acc
        except SingularPoint:
            continue  # singular basis point (e.g. x^(alpha-n) at 0) stays nan
    return consts, grid, samples


def _solve_boundary_outer(p: BoundaryProblem, alpha: float, n: int):
    for ak, _, _ in p.conditions:
        if float(ak) != 0.0:
            raise DomainError(
                "y-dependent right-hand sides support value conditions (a_k = 0) only"
            )
    if alpha - n < 0:
        raise DomainError(
            "outer fixed-point path needs non-singular basis exponents (alpha >= n)"
        )
    h = float(p.step)
    m = int(round(p.domain / h))
    x = np.linspace(0.0, m * h, m + 1)
    idxs = []
    for _, xk, _ in p.conditions:
        i = int(round(float(xk) / h))
        if abs(x[i] - float(xk)) > 1e-9 * max(1.0, abs(xk)):
            raise DomainError(f"boundary point {xk} must lie on the marching grid")
        idxs.append(i)
    targets = np.array([complex(v) for _, _, v in p.conditions])
    basis = np.array([[cpow(x[i], alpha - j) for j in range(1, n + 1)] for i in idxs])
    consts = np.zeros(n, dtype=complex)
    prev_miss = math.inf
    for _ in range(80):
        y = _march_with_poly(p, alpha, x, consts, n)
        jalpha = y[idxs] - basis @ consts
        try:
            new_consts = np.linalg.solve(basis, targets - jalpha)
        except np.linalg.LinAlgError as exc:
            raise SingularSystemError(f"collocation system is singular: {exc}") from exc
        miss = float(np.max(np.abs(new_consts - consts)))
        if miss > prev_miss:
            new_consts = 0.5 * (new_consts + consts)
        prev_miss = miss
        consts = new_consts
        if miss < 1e-8:
            return consts, x, _march_with_poly(p, alpha, x, consts, n)
    raise NonConvergenceError("outer fixed point on boundary constants diverged")


def _march_with_poly(p: BoundaryProblem, alpha: float, x: np.ndarray, consts, n: int):
    h = float(p.step)
    contraction = p.lipschitz * h**alpha * abs(reciprocal_gamma(1.0 + alpha))
    if contraction >= 1.0:
        raise ContractionError(
            f"step weight L*h^alpha/Gamma(1+alpha) = {contraction:.3g} >= 1; shrink the step"
        )

    def poly(xv: float) -> complex:
        return sum(consts[j - 1] * cpow(xv, alpha - j) for j in range(1, n + 1))

    m = x.size - 1
    y = np.zeros(m + 1, dtype=complex)
    y[0] = poly(0.0)
    ga = complex(gamma(alpha))
    c_last = h**alpha / complex(gamma(1.0 + alpha))
    fvals = np.zeros(m + 1, dtype=complex)
    for i in range(m):
        xi1 = x[i + 1]
        w = _rect_weights(alpha, xi1, x, i)
        known = poly(xi1)
        if i > 0:
            known += complex(np.dot(w[:i], fvals[1 : i + 1])) / ga
        guess = y[i]
        for _ in range(100):
            nxt = known + c_last * complex(p.rhs(xi1, guess))
            if abs(nxt - guess) < 1e-10:
                guess = nxt
                break
            guess = nxt
        else:
            raise NonConvergenceError(f"per-step fixed point stalled at x = {xi1:g}")
        y[i + 1] = guess
        fvals[i + 1] = complex(p.rhs(xi1, guess))
    return y


def contraction_fixed_point(t_apply, b: np.ndarray, max_terms: int, tol: float = 1e-10):
    """Partial sums of ``sum_j T^j b`` on a sample grid.

    The contraction hypothesis is checked empirically on two probe pairs
    before iterating; sums stop when successive partial sums differ by less
    than ``tol`` in sup-norm, and exhausting ``max_terms`` with a larger
    tail raises.
    """
    b = np.asarray(b, dtype=complex)
    rng = np.random.default_rng(1234)
    for u, v in ((b, 0.5 * b), (b, b + rng.standard_normal(b.shape))):
        du = np.max(np.abs(u - v))
        if du == 0:
            continue
        ratio = float(np.max(np.abs(np.asarray(t_apply(u)) - np.asarray(t_apply(v)))) / du)
        if ratio >= 1.0:
            raise ContractionError(f"empirical operator ratio {ratio:.3g} >= 1")
    total = b.copy()
    term = b
    for _ in range(1, max_terms):
        term = np.asarray(t_apply(term), dtype=complex)
        total = total + term
        if float(np.max(np.abs(term))) < tol:
            return total
    if float(np.max(np.abs(term))) >= tol:
        raise NonConvergenceError(
            f"series tail {float(np.max(np.abs(term))):.3g} above tolerance "
            f"after {max_terms} terms"
        )
    return total
