"""Episturmian words, lexicographic extremal factors, and fine-word classification."""

from .words import (
    Alphabet,
    AlphabetError,
    CallbackStream,
    ConcatStream,
    LengthError,
    LexOrder,
    LiteralPeriodicStream,
    Ordering,
    Side,
    Word,
    WordStream,
    all_orders,
    compare,
    complexity,
    factor_sets_equal,
    factors,
    is_palindrome,
    prefix,
    reversal,
    special_factors,
)
from .morphisms import (
    EpistandardMorphism,
    GroupWord,
    MorphicImageStream,
    Permutation,
    PureEpistandardMorphism,
    apply_inverse,
    identity,
    is_separating,
    psi,
    reduce_word,
)
from .engine import (
    DirectiveStream,
    DirectiveWord,
    InternalConsistencyError,
    NothingToDecompose,
    ShiftChainRecord,
    StrictnessReport,
    as_directive,
    builder_word,
    decompose_nonstrict,
    exact_horizon,
    palindromic_closure,
    palindromic_prefixes,
    prefix_morphism,
    shift_chain,
    standard_word,
    strictness,
)
from .extremal import (
    Exactness,
    ExtremalResult,
    max_factor,
    max_stream,
    min_factor,
    min_stream,
    oracle_max,
    oracle_min,
)
from .fine import (
    Classification,
    FinenessVerdict,
    NotSkewForm,
    SkewSpec,
    SpecError,
    Witness,
    classify,
    common_s,
    construct_skew,
    is_fine_empirical,
    reconstruct_skew,
    verify_min_transfer,
)

__version__ = "0.1.0"
