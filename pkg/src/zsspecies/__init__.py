"""Zero-shot species recognition prompting toolkit.

Resolves species scientific names to common names, measures how often
either name form occurs in a caption corpus, builds class prompts under
the s-name / c-name / f-name strategies, and benchmarks zero-shot
classification over precomputed unit-norm embeddings.
"""

from zsspecies.taxonomy import (
    NameMapError,
    NameTable,
    SpeciesRecord,
    load_name_table,
    normalize_name,
    resolve_common,
    write_name_table,
)
from zsspecies.corpus_freq import (
    CoverageSummary,
    FrequencyTable,
    FrequencyTableError,
    MergeError,
    PatternError,
    PatternSet,
    build_pattern_set,
    count_corpus_file,
    count_occurrences,
    coverage_report,
    merge,
    read_frequency_table,
    write_frequency_table,
)
from zsspecies.prompts import (
    DEFAULT_PHOTO_TEMPLATE,
    DescriptionError,
    DescriptionStore,
    NameChoice,
    PromptError,
    PromptSet,
    Strategy,
    StrategyError,
    build_description_prompt,
    build_photo_prompt,
    build_prompt_set,
    read_prompt_sets,
    select_name,
    sentence_case,
    write_prompt_sets,
)
from zsspecies.embeddings import (
    EmbeddingFormatError,
    EmbeddingMatrix,
    l2_normalize,
    read_embeddings,
    write_embeddings,
)
from zsspecies.classifier import (
    ClassModel,
    DimensionMismatch,
    EvalReport,
    breakdown_by_type,
    evaluate,
    report_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "ClassModel",
    "CoverageSummary",
    "DEFAULT_PHOTO_TEMPLATE",
    "DescriptionError",
    "DescriptionStore",
    "DimensionMismatch",
    "EmbeddingFormatError",
    "EmbeddingMatrix",
    "EvalReport",
    "FrequencyTable",
    "FrequencyTableError",
    "MergeError",
    "NameChoice",
    "NameMapError",
    "NameTable",
    "PatternError",
    "PatternSet",
    "PromptError",
    "PromptSet",
    "SpeciesRecord",
    "Strategy",
    "StrategyError",
    "breakdown_by_type",
    "build_description_prompt",
    "build_pattern_set",
    "build_photo_prompt",
    "build_prompt_set",
    "count_corpus_file",
    "count_occurrences",
    "coverage_report",
    "evaluate",
    "l2_normalize",
    "load_name_table",
    "merge",
    "normalize_name",
    "read_embeddings",
    "read_frequency_table",
    "read_prompt_sets",
    "report_to_json",
    "resolve_common",
    "select_name",
    "sentence_case",
    "write_embeddings",
    "write_frequency_table",
    "write_name_table",
    "write_prompt_sets",
]
