"""Exact-arithmetic stress spaces on simplicial polytopes.

Everything downstream of the embedding is rational: stress bases,
rigidity ranks, sign certificates, and reconstructions are computed
with no floating point anywhere.
"""

from .corpus import decode, default_corpus, encode, generate
from .detect import (
    Certificate,
    certificate_check,
    enumerate_missing_faces,
    find_certificate,
    missing_edge_stress,
    neighborly_certificate,
    probe_missing_faces,
    quotient_certificate,
    recover_stress1_from_stress2,
    sign_changes,
    sign_vector,
)
from .errors import (
    CompletionFailure,
    DegenerateEmbedding,
    ExpansionFailure,
    InvalidArgument,
    InvalidCertificate,
    NotAFace,
    NotAVertex,
    NotMissing,
    NotNeighborlyEnough,
    NotSimplicial,
    ParseError,
    PolystressError,
    ReconstructionFailure,
    RigidityFailure,
)
from .geometry import (
    Embedding,
    PolytopeInstance,
    brute_force_facets,
    quotient,
    separating_functional,
    validate,
    vertex_figure,
)
from .rat import Rat, rat_str
from .reconstruct import (
    DiffReport,
    ReconstructionReport,
    compare,
    complete_prime,
    reconstruct_skeleton,
    run_pipeline,
)
from .simplicial import SimplicialComplex, build_complex, link, skeleton, star
from .stress import (
    RigidityReport,
    StressVector,
    balancing_residual,
    cone_lift,
    expand_squarefree,
    is_infinitesimally_rigid,
    power_stress,
    rigidity_matrix,
    stress_basis,
    theta,
)
