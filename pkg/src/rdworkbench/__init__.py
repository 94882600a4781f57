"""Desk-scale workbench for the rapid decay property: Cayley-ball growth,
certified convolution operator-norm bounds, median-graph combinatorics and
centroid-map verification for explicit group families."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraVector,
    NormReport,
    adjoint,
    ball_indicator,
    convolve,
    generator_sum,
    norms,
    parse_function_spec,
    random_signs,
    sphere_indicator,
)
from .balls import BallIndex, GraphAction, action_length, enumerate_ball, growth_function
from .centroid import (
    ActionSpec,
    CentroidReport,
    GromovProductStrategy,
    MedianStrategy,
    centroid,
    equivariance_check,
    fit_condition_degrees,
    make_strategy,
    stabilizer_bound,
    verify_centroid_conditions,
)
from .errors import (
    CapacityError,
    CheckError,
    ConfigurationError,
    MedianViolationError,
    UsageError,
    WorkbenchError,
)
from .graphs import FiniteGraph, load_graph_file, named_graph
from .groups import (
    FreeAbelianGroup,
    FreeGroup,
    GroupHandle,
    HeisenbergGroup,
    LamplighterGroup,
    RightAngledArtinGroup,
    load_defining_graph,
    make_group,
)
from .median import (
    ChainCover,
    Hyperplane,
    HyperplanePoset,
    chain_cover,
    hyperplane_poset,
    hyperplanes,
    interval_coordinates,
    interval_growth_check,
    is_median,
    median,
    wall_distance_check,
)
from .opnorm import (
    OpNormEstimate,
    extrapolate_return_limit,
    kesten_gap,
    return_prob_norm,
    truncated_opnorm,
)
from .rdprofile import (
    RDProfile,
    coeff_decay_sum,
    convolution_algebra_check,
    fit_rd_degree,
    rd_profile,
)
