"""Sofic shifts as labeled graphs, with covers, sliding block codes,
and bounded decision procedures for synchronization properties."""

from .analysis import (
    AGREE_NEGATIVE,
    AGREE_POSITIVE,
    DISAGREE,
    INCONCLUSIVE,
    ClosingReport,
    DecoderCertificate,
    DegreeReport,
    FiberComponent,
    FiberProduct,
    HyperbolicCertificate,
    PairAutomaton,
    TheoremReport,
    check_theorem_3_3,
    check_theorem_3_4,
    check_theorem_4_2,
    degree,
    fiber_product,
    find_decoder_block,
    find_hyperbolic_certificate,
    is_finite_to_one,
    is_one_to_one_ae,
    right_closing_ae,
    verify_decoder_block,
)
from .codes import (
    BlockCode,
    FactorMap,
    apply_block,
    apply_code,
    certify_surjectivity,
    compose,
    higher_block,
    identity_factor_map,
    image_presentation,
    load_code,
    load_factor_map,
    parse_code,
    recode_to_one_block,
    recoding_code,
)
from .core import (
    EPSILON,
    Alphabet,
    LabeledGraph,
    Point,
    blocks_of_length,
    count_blocks,
    format_block,
    image_set,
    is_admissible,
    is_essential,
    is_irreducible,
    iter_admissible_blocks,
    load_graph,
    parse_block,
    parse_graph,
    point_symbol,
    point_window,
    same_denotation,
    shift,
    trim_to_essential,
)
from .covers import (
    HOLDS,
    NOT_SYNCHRONIZING,
    REFUTED,
    SYNCHRONIZING,
    HalfSyncVerdict,
    SyncVerdict,
    canonical_form,
    fischer_cover,
    find_synchronizing_word,
    follower_separation,
    is_half_synchronizing,
    is_right_resolving,
    is_synchronizing,
    isomorphic_minimal,
    languages_equal,
    subset_cover,
)
from .errors import (
    AlphabetMismatchError,
    BlockTooShortError,
    BudgetExceededError,
    CodomainMismatchError,
    InadmissibleBlockError,
    InadmissibleWindowError,
    NotEssentialError,
    NotFiniteToOneError,
    NotIrreducibleError,
    NotRightResolvingError,
    NotSurjectiveError,
    OracleKindError,
    ParseError,
    ShiftlabError,
    SynchronizingWordNotFoundError,
    WitnessNotFoundError,
)
from .oracle import (
    ShiftOracle,
    code_list_oracle,
    dyck_follower_signature,
    dyck_oracle,
    dyck_oracle_rank,
    load_oracle,
    oracle_admissible,
    oracle_blocks,
    oracle_follower_equal,
    parse_oracle,
    sofic_oracle,
)

__version__ = "0.1.0"
