"""Functions of square matrices by Hermite-Lagrange interpolation at the spectrum."""

from ._kernels import USE_NUMBA
from .errors import (
    DegenerateCondition,
    DependentCycles,
    DimensionMismatch,
    DivisionByZeroPolynomial,
    IdentityCheckFailed,
    IllConditioned,
    InconsistentMultiplicities,
    InvalidInput,
    MatfunError,
    NoConvergence,
    NodeCollision,
    NodesTooClose,
    NonRealInput,
    PoleAtEigenvalue,
    PoleAtNode,
    RankMismatch,
    SingularMatrix,
    Unsupported,
    VerificationFailed,
)
from .interp import (
    InterpolationNode,
    InterpolationSpec,
    RemainderBound,
    extend_one_point,
    extension_coefficient,
    hermite_from_function,
    hermite_solve,
    hermite_solve_dense,
    interp_equals_remainder,
    merge_union,
    principal_resolvent,
    principal_resolvents,
    remainder_bound_check,
    sample_deriv_sup,
)
from .jordan import JordanForm, cycle_basis, generalized_eigenspace_basis, jordan_form
from .matrix_functions import (
    IdentityReport,
    SpectralDecomposition,
    apply_function,
    inverse_via_interp,
    matrix_exp,
    newton_at_matrix,
    poly_at_matrix,
    resolvents_at_matrix,
    taylor_resolvent_apply,
    verify_resolvent_identities,
)
from .odesolve import LinearODE, SolutionBasis, companion, general_solution_basis, ivp_solve
from .poly import Polynomial, poly_bezout, poly_derivative, poly_divmod, poly_eval, poly_from_roots
from .scalar import (
    COS,
    EXP,
    RECIPROCAL,
    SIN,
    Cos,
    Exp,
    FunctionSpec,
    Jet,
    Power,
    PolynomialFunction,
    Rational,
    Reciprocal,
    ScaledExp,
    Sin,
    evaluate,
    jet_of,
    parse_function,
)
from .spectral import (
    SpectrumEstimate,
    characteristic_polynomial,
    find_roots_with_multiplicity,
    spectrum_of,
)

__version__ = "0.1.0"
