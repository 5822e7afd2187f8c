"""crsphere: construct and certify CR regular graph embeddings of odd spheres.

The library view of the toolkit:

* :mod:`crsphere.wirtinger` -- exact sparse polynomials in z and zbar with
  Gaussian-rational coefficients and formal Wirtinger derivatives;
* :mod:`crsphere.catalog` -- the Ahern-Rudin quartic, its block-sum
  extension, graph embeddings, negative controls, and the exact determinant
  identity;
* :mod:`crsphere.verifier` -- pointwise CR-regularity criteria (independence
  matrix rank, defining-function wedge, brute-force tangent count);
* :mod:`crsphere.certify` -- seeded sampling sweeps, multistart minimization
  of the degeneracy measure, and the 1-D oracle profile;
* :mod:`crsphere.cli` -- the ``crsphere`` command-line front end.
"""

__version__ = "0.1.0"

from .wirtinger import (
    GaussianRational,
    GR_I,
    GR_ONE,
    GR_ZERO,
    WPolynomial,
    eval_many,
    term_arrays,
    wirtinger_fd,
)
from .catalog import (
    ArIdentityResult,
    GraphEmbedding,
    NEGATIVE_CONTROL_KINDS,
    ar_embedding,
    block_sum_embedding,
    block_support_ok,
    catalog_embeddings,
    eval_embedding,
    make_ar_polynomial,
    make_block_sum,
    make_graph_embedding,
    make_negative_control,
    require_on_sphere,
    restrict_to_block,
    sphere_defect,
    verify_ar_identity,
)
from .verifier import (
    DEFAULT_RANK_TOL,
    EquivalenceResult,
    IndependenceEvaluator,
    IndependenceReport,
    OneForm,
    RankToleranceError,
    TwoForm,
    cr_dim_at,
    defining_functions,
    del_form,
    equivalence_check,
    equivalence_check_many,
    independence_matrix,
    two_form_identity_check,
    numerical_rank,
    point_report,
    wedge,
    wedge_nonzero,
)
from .certify import (
    CertificateReport,
    LocalMinimum,
    MinimizeOptions,
    OBJECTIVE_DET_SQ,
    OBJECTIVE_SIGMA_MIN_SQ,
    SweepConfig,
    VERDICT_ALL_REGULAR,
    VERDICT_FAILURE,
    VERDICT_MARGINAL,
    ar_det_sq_of_t,
    ar_determinant_profile,
    is_ar_embedding,
    local_minimize,
    multistart_minimize,
    sample_sphere,
    sigma_histogram,
    sweep,
    worker_count,
    write_histogram_csv,
)

__all__ = [
    "__version__",
    # wirtinger
    "GaussianRational", "GR_I", "GR_ONE", "GR_ZERO", "WPolynomial",
    "eval_many", "term_arrays", "wirtinger_fd",
    # catalog
    "ArIdentityResult", "GraphEmbedding", "NEGATIVE_CONTROL_KINDS",
    "ar_embedding", "block_sum_embedding", "block_support_ok",
    "catalog_embeddings", "eval_embedding", "make_ar_polynomial",
    "make_block_sum", "make_graph_embedding", "make_negative_control",
    "require_on_sphere", "restrict_to_block", "sphere_defect",
    "verify_ar_identity",
    # verifier
    "DEFAULT_RANK_TOL", "EquivalenceResult", "IndependenceEvaluator",
    "IndependenceReport", "OneForm", "RankToleranceError", "TwoForm",
    "cr_dim_at", "defining_functions", "del_form", "equivalence_check",
    "equivalence_check_many", "independence_matrix", "two_form_identity_check",
    "numerical_rank", "point_report", "wedge", "wedge_nonzero",
    # certify
    "CertificateReport", "LocalMinimum", "MinimizeOptions",
    "OBJECTIVE_DET_SQ", "OBJECTIVE_SIGMA_MIN_SQ", "SweepConfig",
    "VERDICT_ALL_REGULAR", "VERDICT_FAILURE", "VERDICT_MARGINAL",
    "ar_det_sq_of_t", "ar_determinant_profile", "is_ar_embedding",
    "local_minimize", "multistart_minimize", "sample_sphere",
    "sigma_histogram", "sweep", "worker_count", "write_histogram_csv",
]
