"""Lexical selection with information-theoretical networks.

Source and target f-structures are aligned slot by slot; every aligned pair
gives one association from the source heads to the target head. Counts of
those associations define a two-layer network per phrasal category whose
weights are pointwise mutual information and whose biases are log priors.
"""

from .errors import (
    CategoryMismatch,
    CorpusError,
    EmptyStructure,
    EmptyTable,
    EmptyVocabulary,
    FStructureError,
    IllegalCharacter,
    ItlexError,
    LambdaMismatch,
    ModelFormatError,
    NoHead,
    NotInVocabulary,
    SmoothingRequired,
    UnbalancedBrackets,
)
from .evalkit import (
    BaselineTable,
    EvalReport,
    SyntheticCorpus,
    SyntheticSpec,
    baseline_select,
    baseline_train,
    evaluate,
    evaluate_baseline,
    gen_synthetic,
    head_pairs,
)
from .extraction import (
    DEFAULT_CATEGORY_MAP,
    CategoryMap,
    SamplePair,
    align,
    extract_samples,
    input_heads,
    samples_from_corpus,
)
from .fstructure import FStructure, head_of, load_corpus, parse, read_corpus, serialize, write_corpus
from .itnet import (
    Activation,
    CountStore,
    Network,
    activate,
    bias,
    load_store,
    merge_counts,
    save_store,
    select,
    train,
    train_by_category,
    update_counts,
    weight,
)
from .oracle import oracle_ranking, posterior_oracle

__version__ = "0.1.0"
