"""Formatting-aware evaluation toolkit for sung-lyrics transcripts.

The pipeline: :func:`normalize` and :func:`tokenize` turn raw lyric text
into typed token sequences; :func:`align` computes a deterministic
minimum-edit script between a reference and a hypothesis;
:func:`evaluate_pair` derives the word error rate, the case error rate
and per-token-type precision/recall/F1 from those alignments; and
:func:`aggregate` pools songs into per-language and overall corpus rows.
:mod:`lyrics_eval.corpusio` loads corpora from disk and renders reports,
and :mod:`lyrics_eval.lint` checks lyric files against industry
formatting conventions.
"""

from ._version import __version__
from .align import EditCounts, EditOp, EditOpKind, EditScript, align, attribute
from .corpusio import (
    CorpusItem,
    Segment,
    evaluate_corpus,
    load_corpus,
    parse_segments_json,
    render_report,
    segments_to_text,
)
from .lint import LintDiagnostic, LintRule, autofix, lint_lyrics
from .metrics import (
    CaseResult,
    CorpusReport,
    GroupResult,
    PRF,
    ReportMetadata,
    SongReport,
    WerBreakdown,
    aggregate,
    case_error_rate,
    evaluate_pair,
    prf,
    word_error_rate,
)
from .textnorm import (
    CharClass,
    Token,
    TokenSequence,
    TokenType,
    classify_char_class,
    normalize,
    tokenize,
    words_only,
)

__all__ = [
    "__version__",
    "CaseResult",
    "CharClass",
    "CorpusItem",
    "CorpusReport",
    "EditCounts",
    "EditOp",
    "EditOpKind",
    "EditScript",
    "GroupResult",
    "LintDiagnostic",
    "LintRule",
    "PRF",
    "ReportMetadata",
    "Segment",
    "SongReport",
    "Token",
    "TokenSequence",
    "TokenType",
    "WerBreakdown",
    "aggregate",
    "align",
    "attribute",
    "autofix",
    "case_error_rate",
    "classify_char_class",
    "evaluate_corpus",
    "evaluate_pair",
    "lint_lyrics",
    "load_corpus",
    "normalize",
    "parse_segments_json",
    "prf",
    "render_report",
    "segments_to_text",
    "tokenize",
    "word_error_rate",
    "words_only",
]
