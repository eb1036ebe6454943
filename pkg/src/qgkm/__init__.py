"""Exact computations on GKM graphs carrying quaternionic structures."""
from .classify import (
    Gr2,
    HPn,
    NotClassified,
    Reason,
    check_hypotheses,
    classify,
    probe_biangle_propagation,
    probe_quadrangle_rigidity,
)
from .cohomology import BettiReport, GradedDims, betti_numbers, graph_cohomology_dims
from .graph import (
    Connection,
    Dart,
    GkmGraph,
    NoConnection,
    SelfIntersectingPath,
    TwoFace,
    check_gkm_level,
    enumerate_faces,
    find_connection,
    validate_graph,
)
from .graphfile import ParseError, ValidationError, dumps, load, parse, save
from .lattice import UnsignedWeight, ZeroWeight, canonicalize, divides_linear, rank_over_q, unsigned_congruence
from .models import (
    DegenerateParams,
    Gr2Params,
    HpnParams,
    generate,
    generate_gr2,
    generate_hpn,
    random_params,
    standard_params,
)
from .quaternionic import (
    AmbiguousPartner,
    ClosureFailure,
    FaceClassification,
    FaceKind,
    InconsistentPair,
    LiftChart,
    NoPartner,
    NotComplexFace,
    QuaternionicStructure,
    SignedFaceStructure,
    classify_face,
    infer_pairs,
    lift_chart,
    sign_face,
    verify_structure,
)

__version__ = "0.1.0"
