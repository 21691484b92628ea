"""Certified entanglement-charge bounds and nonlocality verdicts for
ensembles of bipartite quantum states."""

__version__ = "0.1.0"

from .accessible import (
    InfoInterval,
    OptimizerConfig,
    Povm,
    accessible_info_exact_orthogonal,
    delta_epsilon,
    estimate_accessible_info,
    lower_bound_general,
    make_povm,
    mutual_information_of_measurement,
)
from .bounds import (
    ChargeReport,
    FamilyReport,
    VERDICT_ENTANGLEMENT,
    VERDICT_INDETERMINATE,
    VERDICT_INFORMATION,
    VERDICT_NEITHER,
    analyze,
    chi_rewrite_bounds,
    exact_charge_max_entangled,
    lower_bound_pure,
    rotated_family_report,
    upper_bound_compress_teleport,
    upper_bound_merging,
)
from .ensembles import (
    Ensemble,
    PROB_FLOOR,
    StructureFlags,
    average_state,
    classify_structure,
    make_ensemble,
    reduced_ensemble,
    shannon_of,
)
from .entropy import (
    binary_entropy,
    clamp_spectrum,
    conditional_entropy,
    entanglement_entropy,
    holevo_chi,
    quantum_mutual_information,
    shannon_entropy,
    von_neumann_entropy,
)
from .errors import (
    EntchargeError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    ShapeError,
    UnsupportedFormError,
    ValidationError,
)
from .fileio import parse_ensemble, write_ensemble
from .generators import (
    bell_basis,
    equal_probs,
    generalized_bell_basis,
    is_canonical_product_basis,
    product_basis,
    rotated_basis,
)
from .linalg import (
    DEFAULT_TOLERANCES,
    MAX_JOINT_DIM,
    STRICT_TOLERANCES,
    Tolerances,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    partial_trace,
)
from .states import (
    BipartiteDims,
    BipartiteState,
    density_of,
    is_maximally_entangled,
    is_product,
    pairwise_orthogonal,
    schmidt_coefficients,
    validate_state,
)
