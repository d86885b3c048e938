"""Exact-arithmetic workbench for highest-weight modules over gl(m|n) and q(n)."""

from .algebra import (
    beta_weight,
    build_gl,
    build_q,
    install_grading,
    rho_weight,
    standard_semiinfinite_character,
    supertrace,
    validate_algebra,
    verify_semiinfinite,
    w0_action,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import (
    CliffordWeightError,
    DominanceError,
    GradingError,
    InvalidAlgebraError,
    ResourceLimitError,
    TruncationError,
    WindowError,
    WorkbenchError,
)
from .rational import QQ, rat, rat_str
from .weights import format_weight, parse_weight, weight
from .modules import (
    ExplicitModule,
    direct_sum,
    dual_module,
    induced_module,
    parity_flip,
    tau_dual,
    validate_module,
)
from .forms import (
    clifford_module,
    contravariant_form,
    induced_projective,
    kac_module,
    simple_even_module,
    simple_module,
    verma_module_truncated,
)
from .homs import end_ring, fitting_decompose, hom_dims, hom_space, is_isomorphic
from .structure import (
    KacExtensions,
    delta_flag,
    ext1_kac,
    ext1_with_representative,
    flag_multiplicities,
    glue_extension,
    projective_cover,
    projective_cover_h,
    tilting_module,
    verify_kac_dual,
    verify_projective_dual,
)
from .characters import (
    DecompositionMatrix,
    blocks,
    cartan_matrix_direct,
    cartan_matrix_via_bgg,
    char_mass,
    char_mul,
    decomposition_matrix,
    dominant_weights_in_box,
    even_character,
    flag_matrix,
    kac_character,
    matrix_to_json_dict,
    matrix_to_tsv,
    reflected_window,
    simple_character,
    tilting_table,
    verma_decomposition_truncated,
    weyl_character,
    window_from_box,
)

__version__ = "0.1.0"

__all__ = [
    "beta_weight",
    "build_gl",
    "build_q",
    "install_grading",
    "rho_weight",
    "standard_semiinfinite_character",
    "supertrace",
    "validate_algebra",
    "verify_semiinfinite",
    "w0_action",
    "DEFAULT_LIMITS",
    "Limits",
    "CliffordWeightError",
    "DominanceError",
    "GradingError",
    "InvalidAlgebraError",
    "ResourceLimitError",
    "TruncationError",
    "WindowError",
    "WorkbenchError",
    "QQ",
    "rat",
    "rat_str",
    "format_weight",
    "parse_weight",
    "weight",
    "ExplicitModule",
    "direct_sum",
    "dual_module",
    "induced_module",
    "parity_flip",
    "tau_dual",
    "validate_module",
    "clifford_module",
    "contravariant_form",
    "induced_projective",
    "kac_module",
    "simple_even_module",
    "simple_module",
    "verma_module_truncated",
    "end_ring",
    "fitting_decompose",
    "hom_dims",
    "hom_space",
    "is_isomorphic",
    "KacExtensions",
    "delta_flag",
    "ext1_kac",
    "ext1_with_representative",
    "flag_multiplicities",
    "glue_extension",
    "projective_cover",
    "projective_cover_h",
    "tilting_module",
    "verify_kac_dual",
    "verify_projective_dual",
    "DecompositionMatrix",
    "blocks",
    "cartan_matrix_direct",
    "cartan_matrix_via_bgg",
    "char_mass",
    "char_mul",
    "decomposition_matrix",
    "dominant_weights_in_box",
    "even_character",
    "flag_matrix",
    "kac_character",
    "matrix_to_json_dict",
    "matrix_to_tsv",
    "reflected_window",
    "simple_character",
    "tilting_table",
    "verma_decomposition_truncated",
    "weyl_character",
    "window_from_box",
    "__version__",
]
