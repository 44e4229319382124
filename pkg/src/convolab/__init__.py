"""convolab: exact convolution algebra of probability measures on finite groups.

The package decides, with exact rational arithmetic, which measures have
generalized inverses under convolution, provides the action-matrix machinery
for involutive groups, and embeds measures into block-diagonal matrix algebras
through the non-commutative Fourier transform.
"""

from .config import ToolConfig, load_config
from .errors import (
    ClosureBudgetExceeded,
    CoefficientsInvalid,
    ConvolabError,
    DimensionMismatch,
    GroupMismatch,
    GroupNotInvolutive,
    NotAGeneralizedInverse,
    PreconditionViolated,
    RationalizationFailed,
    SpecOutOfRange,
    SupportNotClosed,
    TableInvalid,
    UnsupportedGroup,
)
from .groups import (
    ElementSet,
    FiniteGroup,
    Subgroup,
    as_subgroup,
    builtin_groups,
    closure_of,
    cyclic,
    dihedral,
    direct_product,
    element_order,
    element_set,
    elementary_abelian_2,
    enumerate_subgroups,
    from_table,
    group_spec,
    make_group,
    quaternion8,
    set_product,
    symmetric,
)
from .linalg import LPProblem, RationalMatrix, lp_feasible, solve_affine
from .measures import (
    ProbMeasure,
    convolution_power,
    convolve,
    dirac,
    haar_idempotents,
    haar_on,
    is_idempotent,
    measure,
    measure_from_json,
    measure_to_json,
    mix,
    support,
    uniform_on,
)
from .regularity import (
    Method,
    OmegaClosureReport,
    RegularityVerdict,
    classify_two_point_family,
    conv_operator_matrix,
    decide_regular,
    is_generalized_inverse,
    omega_closure,
    reflexive_inverse,
)
from .involutive import (
    ActionMatrix,
    ComposedSystemSolution,
    ObstructionReport,
    PermutationFamily,
    action_permutations,
    build_action_matrix,
    obstruction_check,
    solve_composed_system,
)
from .fourier import (
    CandidateVerdict,
    CompatibleFunction,
    FourierCandidate,
    Irrep,
    UnitaryDual,
    check_delta_regularity,
    dual_to_json,
    fourier_ginverse_candidate,
    fourier_transform,
    inverse_fourier,
    pseudo_inverse_blockwise,
    unitary_dual,
)

__version__ = "0.1.0"
