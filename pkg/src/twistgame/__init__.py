"""Engine for the Explorer-Director pursuit game on finite groups.

One player (the Explorer) names group elements trying to drag a shared
token across as much of the group as possible; the other (the Director)
chooses, each round, whether the named element or its inverse is applied.
This package computes the optimal visit count exactly for small groups,
predicts it structurally for large ones, and plays both sides.
"""

from .budget import Budget, default_seconds
from .catalog import CatalogEntry, build_entry, catalog_groups, default_catalog
from .census import (
    CensusRecord,
    CensusResult,
    census_record,
    find_nonsubgroup_twisted,
    records_to_jsonl,
    run_census,
    summary_table,
)
from .errors import (
    BudgetExceededError,
    EvenOrderError,
    InvalidSpecError,
    NotASubgroupError,
    NotNormalError,
    NotPowerOfTwoError,
    OrderTooLargeError,
    PreconditionError,
    TwistgameError,
    WrongPhaseError,
)
from .game import (
    DirectorMove,
    ExplorerMove,
    GameState,
    MatchResult,
    MoveRecord,
    apply_move,
    initial_state,
    play_match,
    replay,
)
from .groups import (
    GroupSpec,
    GroupTable,
    build,
    center,
    cyclic,
    dihedral,
    direct_product,
    enumerate_subgroups,
    from_table,
    gamma_subgroup,
    heisenberg,
    is_nilpotent,
    is_normal,
    is_subgroup,
    permutation_group,
    quaternion8,
    quotient,
    semidirect_cyclic,
    sqrt_odd,
    subgroup_closure,
    subgroup_table,
    two_power_elements,
)
from .sets import ElemSet
from .solver import (
    DEFAULT_SOLVER_CAP,
    HARD_SOLVER_CAP,
    SolveResult,
    enumerate_avoidable,
    find_protectable_coset,
    maximal_avoidable,
    solve_exact,
    solve_open_avoidable,
    tilde_f,
)
from .strategies import (
    AvoidSetDirector,
    CosetCompositeExplorer,
    GreedyExplorer,
    OptimalDirector,
    OptimalExplorer,
    RandomDirector,
    RandomExplorer,
    SweepChainExplorer,
    director_avoid_strategy,
    explorer_two_power_sweep,
    theoretical_director,
    theoretical_explorer,
)
from .theory import (
    Bounds,
    ConjectureFlags,
    TheoryMethod,
    TheoryReport,
    bounds,
    conjecture_checks,
    f_star,
    f_theoretical,
)
from .twisted import (
    TwistedCoset,
    TwistedSubgroup,
    between_odd,
    between_set,
    betweenness_closure,
    coset_decompose,
    enumerate_twisted_subgroups,
    is_betweenness_closed,
    is_twisted_subgroup,
    max_proper_twisted,
    theoretical_avoid_set,
    twisted_closure,
    twisted_sizes,
    verify_odd_twisted_divisibility,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
