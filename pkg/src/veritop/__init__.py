"""Verifiability as topology, on finite universes.

Semidecidable tests and their schedules live in ``observation`` and
``scheduler``; families of verifiable sets and the topologies they
generate in ``sets`` and ``topology``; maps seen through preimages in
``relationship``; spaces of continuous maps in ``function_space``.
"""

from .errors import (
    CapacityError,
    DivergenceError,
    ExtensionError,
    InvalidBasisError,
    NotContinuousError,
    ReconstructionError,
    SpecFormatError,
    VeritopError,
)
from .sets import Possibilities, SetOfPossibilities, canonical_sort, max_points
from .observation import (
    DovetailTest,
    ExperimentalTest,
    LazyStream,
    Observation,
    Script,
    ScriptedTest,
    SequentialTest,
    Statement,
    StepOutcome,
    VerifyOutcome,
    conjunction,
    disjunction,
    incompatible,
    is_contradiction,
    membership_observation,
    verify,
)
from .scheduler import RunReport, run_all, run_any
from .topology import (
    HausdorffVerdict,
    SubBasis,
    Topology,
    clopen_sets,
    closed_and_clopen_sets,
    closed_sets,
    discrete_topology,
    enumerate_topologies,
    generate_basis,
    generate_topology,
    indiscrete_topology,
    is_hausdorff,
    is_topology,
    minimal_basis,
    separating_pair,
    separation_verdict,
    topology_from_subbasis,
)
from .relationship import (
    BorelMap,
    ContinuityVerdict,
    MapValidationReport,
    MapViolation,
    ObservationMap,
    PointMap,
    borel_extend,
    is_continuous,
    preimage_map,
    reconstruct_function,
    validate_observation_map,
)
from .function_space import (
    BasisToBasisTopology,
    FunctionSpace,
    OpenOpenComparison,
    SurveyReport,
    compare_open_open,
    compare_with_open_open,
    enumerate_continuous,
    function_set,
    generate_b2b_topology,
    separating_generators,
    survey_open_open,
    vset,
)

__version__ = "0.1.0"
