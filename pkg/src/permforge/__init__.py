"""Permutation pattern constraint engine."""

from .model import (
    Model,
    ModelError,
    ModelSyntaxError,
    ModelValidationError,
    PatternConstraint,
    PropertyConstraint,
    StatisticConstraint,
    load_model,
    parse_model,
    serialize_model,
)
from .oracle import LengthCapExceeded, brute_force_solve
from .patterns import (
    Mode,
    PatternSpec,
    avoids,
    bivincular,
    boxed,
    classic,
    classic_match_at,
    consecutive,
    contains,
    find_occurrences,
    mesh,
    to_mesh,
    vincular,
)
from .perm import (
    LengthMismatch,
    NotABijection,
    PaddedView,
    Permutation,
    inverse,
    new_permutation,
    order_isomorphic,
    parse_permutation,
)
from .properties import Interval, PropertyKind, check_property, proper_intervals
from .solver import (
    PartialAssignment,
    ResourceLimitExceeded,
    Solution,
    SolveConfig,
    SolveOutcome,
    prefix_feasible,
    solve,
    split_work,
)
from .statistics import (
    Comparator,
    MalformedPredicate,
    StatisticKind,
    StatisticPredicate,
    evaluate_predicate,
    statistic,
)

__version__ = "0.1.0"
