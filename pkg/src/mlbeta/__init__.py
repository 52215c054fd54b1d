"""Multi-index Mittag-Leffler and generalized Wright functions, a beta-weighted
integral operator built on them, and a harness that checks the operator's
series expansions against direct quadrature."""

from .beta_operator import (
    AffinePower,
    CrossFactor,
    MultiFactor,
    OperatorSpec,
    TwoFactor,
    WeightedDenominator,
    quad_operator,
    series_operator,
    thm21_series,
    thm22_series,
    thm23_series,
    thm24_closed,
    thm41_series,
)
from .errors import ConvergenceError, DomainError, MLBetaError, ParameterError, PoleError, QuadratureError
from .genfun import (
    GegenbauerGF,
    GenIntegralSpec,
    GeneratingFunction,
    HumbertGF,
    HypergeomGF,
    symmetric_series,
    example_instances,
    gen_quad,
    gen_series,
)
from .hypergeom import appell_f1, appell_f3, gauss_2f1, gegenbauer, humbert_phi2, kummer_1f1, lauricella_fd
from .mittag_leffler import MLParams, ml_classical, ml_multi, ml_multi_array, reduction_check, wiman
from .numeric_kernel import DEFAULT_CONTROL, SeriesControl, beta_fn, gamma_fn, ln_gamma, pochhammer, rgamma
from .oracles import oracle_double_sum
from .quadrature import QuadControl, tanh_sinh_beta
from .verify import IdentityCase, SweepReport, run_sweep
from .wright import WrightParams, wright_eval

__version__ = "0.1.0"
