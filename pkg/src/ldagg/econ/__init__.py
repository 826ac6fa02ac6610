"""Economic calculus on low-distortion aggregators."""

from .calculus import (
    HomogeneityResult,
    curvature_exponent,
    elasticities,
    elasticity,
    elasticity_fd,
    elasticity_sum,
    elasticity_sum_diagnostic,
    homogeneity_probe,
    mrs,
    mrs_fd,
    substitution_elasticity,
    substitution_elasticity_fn,
    unit_substitution_weights,
)
from .diagnostics import REFERENCE, Cell, DiagnosticsReport, completeness_matrix
from .duality import (
    DualPair,
    cd_dual_pair,
    cd_price_index,
    ces_dual_pair,
    curvature_link_ratio,
    demand_from_prices,
    duality_residual,
)
from .lifting import (
    PriceCurve,
    lift_consumptions,
    lifting_residual,
    price_consumption_curve,
    reconstruct_hidden_index,
    unlift_consumptions,
)
from .mst import MstParams, implied_lda_weights, mst_lda_residual, mst_log_partials, mst_value
