"""Coupled fixed points of mixed monotone operators on ordered metric spaces."""

from .errors import (
    CoupledFPError,
    DegenerateSample,
    InvalidConfig,
    MetricError,
    NonFiniteIntegrand,
    PreconditionFailed,
    SingularKernel,
)
from .iteration import (
    Branch,
    IterationConfig,
    IterationTrace,
    SolveResult,
    Status,
    StoppingRule,
    a_posteriori_bound,
    a_priori_bound,
    check_initial,
    solve,
    uniqueness_report,
)
from .probes import (
    ContractionReport,
    Sampler,
    compare_conditions,
    estimate_k_bhaskar,
    estimate_k_symmetric,
    grid_function_sampler,
    probe_mixed_monotone,
    real_line_sampler,
)
from .product_space import (
    OrderedMetricSpace,
    ProductPoint,
    lift,
    product_distance,
    product_leq,
    real_line,
    sup_norm_space,
    verify_metric_axioms,
    verify_order_axioms,
)

__version__ = "0.1.0"
