"""Restricted subset sums over prime fields and Combinatorial Nullstellensatz certificates."""
from .closedforms import cd_closed, dsh_closed, main_closed
from .coeffengine import (
    coeff_full_sum,
    coeff_single_point,
    cns_audit,
    expansion_coefficient,
    g_prime,
    nonzero_points,
)
from .constructions import (
    ProofModel,
    cd_model,
    dsh_model,
    eval_model,
    main_model,
    p_side_model,
)
from .fieldcore import FactoredRational, fp_inv, fp_normalize, is_prime
from .subsums import (
    FpSet,
    hfold,
    is_asymmetric,
    restricted_sumset,
    sigma_double,
    sigma_lower,
    sigma_upper,
    subsum_table,
    sumset,
)

__version__ = "0.1.0"
