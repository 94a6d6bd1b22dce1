"""termgraph: terminological variation networks for query refinement.

Pipeline: parse a POS-tagged corpus, chunk noun phrases, intern them into a
term inventory, link terms by variation relations, cluster the tight
relations into labelled components, then answer refinement queries over the
resulting network via library calls, a CLI or an HTTP service.
"""

from .corpus import (
    ComplexNpConfig,
    Document,
    NounPhraseSpan,
    ParseLimits,
    TaggedToken,
    chunk_complex,
    chunk_simplex,
    extract_spans,
    load_tag_map,
    parse_corpus,
)
from .errors import (
    CorruptPayload,
    EmptyAfterNormalization,
    EmptyCorpus,
    FormatVersionMismatch,
    MalformedLexiconLine,
    MalformedRecord,
    MalformedResourceLine,
    TermgraphError,
    UnknownTerm,
    UnsupportedFormat,
)
from .network import (
    BuildConfig,
    Component,
    TermNetwork,
    build_components,
    build_network,
    label_component,
    load_network,
    save_network,
    select_mwt_candidates,
)
from .refine import (
    Query,
    QueryMode,
    RefinementSuggestion,
    auto_refine,
    fetch_documents,
    rank_suggestions,
    refine,
    resolve,
    suggest_chain,
    suggest_lr_expansions,
    suggest_uniterm_combinations,
    suggest_variants,
)
from .relations import (
    RelationKind,
    SynonymLexicon,
    VariationEdge,
    detect_exp_l,
    detect_exp_r,
    detect_ins,
    detect_lr_exp,
    detect_orth,
    detect_sub_syn,
    find_all_edges,
    load_lexicon,
)
from .stats import (
    ComparisonReport,
    ExternalResource,
    build_report,
    load_resource,
    render_report,
)
from .terms import Term, TermInventory, intern, normalize, uniterms

__version__ = "0.1.0"
