"""Executable calculus for joins in the strong reducibility lattice on Cantor space.

Lazy bit streams, stage-indexed oracle functionals, monotone approximation
records with their evaluation functional, the lattice operations on
multivalued problems, explicit reduction witnesses for the lattice laws,
and a realizer-checking verification harness.
"""

from .bits import (
    BitStream,
    Diverged,
    EvalContext,
    EventuallyConstant,
    FiniteTable,
    Interleave,
    MalformedTag,
    ONES,
    OutOfFuel,
    Projected,
    Tagged,
    ZEROS,
    agree,
    chi,
    decode_triple,
    interleave,
    pair_nat,
    prefix,
    project,
    query,
    tag,
    triple_nat,
    unpair_nat,
    untag,
)
from .functionals import (
    Compose,
    Constant,
    Dispatch,
    Factor,
    Functional,
    IDENTITY,
    InconsistentTable,
    MachineFunctional,
    PairOf,
    PrefixDispatch,
    ProjectSide,
    TagWith,
    apply,
    compose,
    constant_functional,
    converged_at,
    from_prefix_table,
    identity_functional,
    normalize,
    scripted_rule,
    serialize_trace,
    stage_trace,
    trace_respects_discipline,
)
from .approx import (
    EVAL,
    ApproxOf,
    EncodedApprox,
    ScheduledApprox,
    Totality,
    VALID,
    Violation,
    approx_of,
    check_prefix_valid,
    dump_members,
    eval_search,
    eval_stream,
    make_total_approx,
    provenance,
    totality_by_descriptor,
)
from .problems import (
    CANTOR,
    COMPLETED_CANTOR,
    CheckResult,
    CompletedSpace,
    Decoded,
    DuplicateInstance,
    EmptyMassProblem,
    EmptySolutionSet,
    INFINITY,
    NotEnumerable,
    Problem,
    Realizer,
    RepresentedSpace,
    check_realizer,
    decode_completed,
    enumerate_realizers,
    finite_problem,
    medvedev_problem,
)
from .operations import (
    CoproductProblem,
    MeetProblem,
    StrongJoinProblem,
    coproduct,
    decode_candidate_pair,
    meet,
    strong_join,
)
from .witnesses import (
    KindMismatch,
    NotAMedvedevReduction,
    ReductionWitness,
    SW,
    SourceTargetMismatch,
    W,
    compose_witnesses,
    extract_mass_map,
    medvedev_embed,
    medvedev_join_iso,
    medvedev_meet_iso,
    sw_assoc,
    sw_assoc_reverse,
    sw_commute,
    sw_distrib_coproduct_meet,
    sw_distrib_meet_join,
    sw_join_injections,
    sw_join_le_coproduct,
    sw_join_presentation_iso,
    sw_join_universal,
    sw_meet_lower,
    sw_meet_universal,
    w_coproduct_injections,
    w_coproduct_universal,
)
from .harness import (
    BoundsTooLarge,
    ConfigError,
    Corpus,
    CriterionResult,
    EquivalenceReport,
    Report,
    SearchBounds,
    SearchOutcome,
    SuiteSummary,
    VerifyConfig,
    base_strong_witnesses,
    brute_force_search,
    corpus,
    run_suite,
    verify_equivalence,
    verify_witness,
)
from .exprs import ParseError, parse_functional, parse_stream
from .textio import (
    parse_problem_file,
    parse_witness_file,
    print_problem_file,
    print_witness_file,
    to_ec_spec,
)
