"""diffint: symbolic and numeric differintegrals of arbitrary complex order.

One operator family covers integration (positive order), the identity
(order 0), and differentiation (negative order), acting on a small algebra
of admissible functions: monomials and zero functions, step/delta images,
exponentials and trigonometry, logarithms, the Bose kernel (whose images
are polylogarithms, and the Riemann zeta function at the origin), and
monomial-exponential products (whose images are confluent hypergeometric
pairs).  A quadrature engine evaluates the defining convolution directly
and serves as the independent check on every closed form; on top sit
fractional Laplace/Fourier transforms and generalized Volterra solvers.
"""

from .errors import (
    BoundaryContractWarning,
    ContractionError,
    DiffintError,
    DomainError,
    NonConvergenceError,
    NoRuleError,
    ParseError,
    PoleError,
    SingularPoint,
    SingularSystemError,
)
from .expr import (
    BoseKernel,
    Cos,
    DeltaDeriv,
    Exponential,
    Expr,
    Heaviside,
    HeavisideMonomial,
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
    as_callable,
    as_expr,
    constant,
    evaluate,
    normalize,
    structurally_equal,
    translate,
    try_evaluate,
)
from .parsing import format_expr, parse_expr, parse_expr_with_variable, parse_rhs
from .quadrature import (
    MINUS_INF,
    QuadratureSpec,
    differint_numeric,
    differint_numeric_continued,
    dirichlet_kernel_check,
)
from .rules import (
    ComplimentarySeries,
    RuleResult,
    complimentary_coefficients,
    derivative,
    differintegrate,
    nth_derivative,
    reconstruct_with_complimentary,
    zero_function_value,
)
from .special import (
    EULER_GAMMA,
    cpow,
    digamma,
    gamma,
    kummer_1f1,
    mittag_leffler,
    polylog,
    reciprocal_gamma,
    riemann_zeta,
)
from .transforms import (
    TransformRequest,
    classical_laplace,
    fourier_differint,
    laplace_frac,
    laplace_of_differint,
)
from .volterra import (
    BoundaryProblem,
    FDEProblem,
    SeriesSolution,
    VolterraForm,
    contraction_fixed_point,
    picard_series,
    solve_boundary,
    solve_fde,
    volterra_form,
)

__version__ = "0.1.0"
