"""thetaq: Jacobi theta functions, Gosper's q-trigonometry and an identity verifier."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DomainError,
    GridError,
    LexError,
    ParseError,
    PoleError,
    SymbolMismatch,
    ThetaqError,
    UnboundVariable,
)
from .params import ModularParam, Precision, Transform, from_real_nome, make_param, q_pow, transform, with_base
from .qtrig import EvalForm, QTrigBase, ccs_q, cos_q, pi_q, sin_q, ssn_q
from .theta import SeriesControl, q_pochhammer, theta_null, theta_product, theta_series
