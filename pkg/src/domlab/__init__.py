"""Exact domination computations for direct products of complete graphs and
unitary Cayley graphs, with a Jacobsthal function engine."""

from .bounds import (
    BoundReport,
    all_reports,
    alon_spencer_upper,
    asymptotic_bound,
    best_bounds,
    di_bound,
    mekis_bound,
    naive_lower,
    product_upper,
)
from .certificates import Certificate, certificate_from_dict, certificate_to_dict
from .classify import GammaClass, check_reduction_hypotheses, classify_gamma, k2_reduce
from .constructions import (
    GapCertification,
    LiftRecipe,
    certify_mj_membership,
    diagonal_tplus1,
    lift_total_dominating,
    mekis_triple,
    prefix_total_dominating,
    tplus2_construction,
)
from .errors import (
    CapacityError,
    CertificateRejected,
    DomlabError,
    InvalidArgumentError,
    InvalidInstanceError,
    NotApplicableError,
    SchemaError,
    SolverTimeout,
)
from .exact import (
    SolveResult,
    brute_force_value,
    fibers,
    gamma_exact,
    gamma_t_exact,
    is_dominating,
    is_total_dominating,
    verify_certificate,
)
from .jacobsthal import (
    GapWitness,
    H_bounded,
    JacobsthalResult,
    crt_combine,
    g_of,
    h_of,
    radical_reduce,
    verify_run,
)
from .products import (
    ProductGraph,
    SquarefreeModulus,
    adjacent,
    closed_neighborhood_size,
    make_product,
    residue_adjacent,
    residue_to_vertex,
    ucg_graph,
    vertex_to_residue,
)

__version__ = "0.1.0"
