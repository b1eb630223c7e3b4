"""gammakit: hypercomplex algebras A(l1, l2), the operator
Gamma = d_xx + alpha d_xy + beta d_yy, and polynomial solutions of
Gamma h = 0 and Gamma^2 h = 0 generated from algebra-valued polynomials."""

from .algebra import (
    AlgebraParams,
    HNum,
    Kind,
    OperatorParams,
    algebra_from_operator,
    conjugate,
    inverse,
    mul,
    norm_form,
)
from .analytic import APoly, ComponentPair, cr_residuals, expand, is_a_differentiable, zbar_times
from .errors import (
    AlgebraMismatch,
    DegenerateBasis,
    DegenerateOperator,
    GammakitError,
    NotASolution,
    NotInvertible,
    UnderDetermined,
)
from .poly2 import BiPoly, compose, gamma_apply
from .theorems import (
    FDScheme,
    Order,
    ResidualReport,
    compose_solution,
    fd_residual,
    goursat_solution,
    lemma1_residuals,
    theorem1_residual,
    theorem2_residual,
)

__version__ = "0.1.0"
