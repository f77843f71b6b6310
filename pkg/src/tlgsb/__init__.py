"""Groebner-Shirshov bases for Temperley-Lieb algebras of types A, B and D."""
from .freealg import (
    DELTA,
    ONE,
    ZERO,
    MonomialOrder,
    ParamScalar,
    Polynomial,
    compare_words,
    exact_divide,
    leading_term,
)
from .presentations import (
    PresentationSpec,
    WordBuilder,
    build_candidate_gsb,
    build_defining,
    compact_notation,
    expand_word_notation,
    parse_presentation,
    serialize_presentation,
)
from .rewrite import (
    CompletionLimits,
    RewriteRule,
    RuleSet,
    complete,
    find_compositions,
    interreduce,
    is_closed,
    normal_form,
)
from .standard import (
    build_automaton,
    count_ballot_paths,
    count_standard,
    dimension_formula,
    enumerate_standard,
    generate_family,
)
from .structure import build_table, multiply_standard

__version__ = "0.1.0"
