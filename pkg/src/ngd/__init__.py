"""Normed groupoids with dilations, their induced approximate operations,
numerical certification of the zero-scale limit structures, and exact
optimal-transport categories on finite metric spaces.
"""

from .core import (
    CategoryWithInverses,
    FiniteGroupoid,
    LawCheck,
    SeminormFamily,
    ValidationReport,
    as_fraction,
    check_category_with_inverses,
    check_norm,
    check_seminorm_family,
    check_separability,
    validate_groupoid,
)
from .constructions import (
    FiniteMetricSpace,
    check_double_norm,
    check_fiber_distances,
    double_difference_morphism,
    double_groupoid,
    fiber_distances,
    norm_from_fiber_distances,
    pair_groupoid,
    random_metric_space,
)
from .scales import IntScale, Scale, as_scale, dyadic_grid
from .models import (
    DeformedModel,
    EuclideanGroup,
    HeisenbergGroup,
    PairModel,
    check_A0,
    check_A1,
    check_A2,
    check_deformation,
    check_dilation_morphism,
    deform,
    euclidean_model,
    heisenberg_model,
    restricted_euclidean_model,
)
from .emergent import (
    Delta_eps,
    GammaIrq,
    Irq,
    Sigma_eps,
    check_based_compat,
    check_gamma_irq,
    check_irq,
    check_pplay,
    dif_eps,
    gamma_irq_from_dilation,
    inv_eps,
    irq_from_dilation,
    iterate_irq,
    z_irq_from_iterates,
)
from .limits import (
    BoundedSampler,
    FiberStructure,
    LimitEstimate,
    TranslationGroupoid,
    check_A3,
    check_A3mod_A4,
    check_A4weak,
    check_translation_groupoid,
    cone_check,
    estimate_from_residuals,
    fiber_dilatation_structure,
    gh_estimate,
    limit_of_values,
    richardson,
    translation_groupoid,
    uniform_limit,
)
from .transport import (
    Coupling,
    KantorovichResult,
    LipFunction,
    MapPlan,
    MarginalMismatch,
    Measure,
    check_kantorovich_duality,
    check_transport,
    compose_plans,
    diag_plan,
    inverse_plan,
    is_invtrans,
    kantorovich,
    lip1_vertices,
    map_plan,
    norm_d,
    product_plan,
    push_forward,
    seminorm_rho,
    transport_category_fixture,
    wasserstein,
)
from .dsl import EvalContext, TermError, evaluate, parse, run, to_text

__version__ = "0.1.0"
