"""lexgraph: latent structure of dictionaries as directed graphs.

A dictionary is a digraph with an arc from every defining word to the word
it defines. This package computes the structures latent in that graph
(Kernel, Core, Satellites, definitional-distance hierarchies, minimal
grounding sets), joins them with psycholinguistic norms, and runs an
interactive dictionary-game service whose mini-dictionaries feed the same
pipeline.
"""

from .graph import Condensation, DefGraph, build_graph, condense, scc, word_id
from .grounding import (
    UngroundedCircuitError,
    is_feedback_vertex_set,
    is_grounding_set,
    learnable_closure,
    learning_order,
    load_ground_set,
)
from .lexicon import (
    LexEntry,
    Lexicon,
    NoDefinedWordsError,
    Normalizer,
    ParseError,
    drop_undefined,
    parse_lexicon,
    resolve_token,
    run_pipeline,
    select_first_senses,
    strip_function_words,
)
from .minset import (
    BudgetExceededError,
    MinSetResult,
    Reduction,
    enumerate_minsets,
    greedy_fvs,
    pack_disjoint_circuits,
    reduce_graph,
    solve_minset,
    split_minset,
)
from .psychstats import (
    NormTable,
    StructureReport,
    WordRecord,
    aggregate_by_structure,
    cohens_d,
    gradient_by_level,
    join_norms,
    level_intersection,
    lg10wf,
    load_norms,
    minset_vs_random,
    pearson,
    pos_breakdown,
    residualize,
)
from .stoplist import DEFAULT_STOPLIST, load_stoplist
from .structure import (
    Hierarchy,
    StructureLabels,
    compute_kernel,
    hierarchy,
    label_structures,
    level_counts,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Condensation",
    "DEFAULT_STOPLIST",
    "DefGraph",
    "Hierarchy",
    "LexEntry",
    "Lexicon",
    "MinSetResult",
    "NoDefinedWordsError",
    "NormTable",
    "Normalizer",
    "ParseError",
    "Reduction",
    "StructureLabels",
    "StructureReport",
    "UngroundedCircuitError",
    "WordRecord",
    "aggregate_by_structure",
    "build_graph",
    "cohens_d",
    "compute_kernel",
    "condense",
    "drop_undefined",
    "enumerate_minsets",
    "gradient_by_level",
    "greedy_fvs",
    "hierarchy",
    "is_feedback_vertex_set",
    "is_grounding_set",
    "join_norms",
    "label_structures",
    "learnable_closure",
    "learning_order",
    "level_counts",
    "level_intersection",
    "lg10wf",
    "load_ground_set",
    "load_norms",
    "load_stoplist",
    "minset_vs_random",
    "pack_disjoint_circuits",
    "parse_lexicon",
    "pearson",
    "pos_breakdown",
    "reduce_graph",
    "resolve_token",
    "residualize",
    "run_pipeline",
    "scc",
    "select_first_senses",
    "solve_minset",
    "split_minset",
    "strip_function_words",
    "word_id",
]
