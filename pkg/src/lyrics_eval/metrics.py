"""Transcript quality metrics computed from token alignments.

Three families of numbers come out of this module:

* the case-insensitive word error rate, from an alignment of the word
  tokens alone;
* the case error rate, the fraction of reference words whose aligned hit
  differs only in letter case;
* precision/recall/F1 per token type, from an alignment of the full
  token sequence including punctuation and break tokens.

A metric whose denominator is zero is undefined and carried as None (it
renders as an em dash and serializes as null); undefined values are never
zero-filled into averages.  Corpus aggregation is a micro-average: raw
counts are pooled across songs first and the rates are computed from the
pooled counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Literal

from ._version import __version__
from .align import EditCounts, EditOpKind, EditScript, align, attribute
from .textnorm import TokenSequence, TokenType, normalize, tokenize, words_only

__all__ = [
    "CaseResult",
    "CorpusReport",
    "GroupResult",
    "PRF",
    "ReportMetadata",
    "SongReport",
    "WerBreakdown",
    "aggregate",
    "case_error_rate",
    "evaluate_pair",
    "prf",
    "word_error_rate",
]

SCORED_TYPES = (
    TokenType.PUNCTUATION,
    TokenType.PARENTHESIS,
    TokenType.LINE_BREAK,
    TokenType.SECTION_BREAK,
)


@dataclass(frozen=True)
class WerBreakdown:
    """Word-level alignment counts and the resulting error rate."""

    hits: int
    substitutions: int
    deletions: int
    insertions: int

    @property
    def reference_words(self) -> int:
        return self.hits + self.substitutions + self.deletions

    @property
    def wer(self) -> float | None:
        """(substitutions + deletions + insertions) / reference words.

        An empty reference scores 0.0 against an empty hypothesis; against
        a non-empty hypothesis the rate is undefined (None) while the
        insertion count still reports what was hypothesized.
        """
        n = self.reference_words
        if n == 0:
            return 0.0 if self.insertions == 0 else None
        return (self.substitutions + self.deletions + self.insertions) / n


@dataclass(frozen=True)
class CaseResult:
    """Letter-case disagreements among word hits."""

    case_errors: int
    reference_words: int

    @property
    def rate(self) -> float | None:
        if self.reference_words == 0:
            return None
        return self.case_errors / self.reference_words


@dataclass(frozen=True)
class PRF:
    """Precision, recall and F1 for one token type; None means undefined."""

    precision: float | None
    recall: float | None
    f1: float | None

    @classmethod
    def from_counts(
        cls, hits: int, substitutions: int, deletions: int, insertions: int
    ) -> "PRF":
        predicted = hits + substitutions + insertions
        expected = hits + substitutions + deletions
        precision = hits / predicted if predicted else None
        recall = hits / expected if expected else None
        if precision is None or recall is None or precision + recall == 0:
            f1 = None
        else:
            f1 = 2 * precision * recall / (precision + recall)
        return cls(precision, recall, f1)


@dataclass(frozen=True)
class SongReport:
    """All metrics for one (reference, hypothesis) pair."""

    song_id: str
    language: str
    words: WerBreakdown
    case: CaseResult
    token_counts: EditCounts
    token_metrics: dict[TokenType, PRF]


@dataclass(frozen=True)
class GroupResult:
    """Micro-averaged metrics for a set of songs (one language, or all)."""

    label: str
    num_songs: int
    words: WerBreakdown
    case_errors: int
    token_counts: EditCounts

    @property
    def wer(self) -> float | None:
        return self.words.wer

    @property
    def case_error_rate(self) -> float | None:
        n = self.words.reference_words
        if n == 0:
            return None
        return self.case_errors / n

    def token_metrics(self, token_type: TokenType) -> PRF:
        return prf(self.token_counts, token_type)


@dataclass(frozen=True)
class ReportMetadata:
    """Provenance carried on a corpus report.

    ``generated_at`` stays None unless a caller explicitly stamps it, so
    that rendering the same corpus twice yields byte-identical output.
    """

    tool: str = "lyrics-eval"
    version: str = __version__
    refs_root: str | None = None
    hyps_root: str | None = None
    generated_at: str | None = None


@dataclass(frozen=True)
class CorpusReport:
    """Per-group metric rows plus the per-song reports they pool."""

    rows: tuple[GroupResult, ...]
    songs: tuple[SongReport, ...]
    metadata: ReportMetadata = field(default_factory=ReportMetadata)


def word_error_rate(ref_words: TokenSequence, hyp_words: TokenSequence) -> WerBreakdown:
    """Word error rate between two word-only token sequences.

    Words compare by their lowercased matched form, so the rate is
    case-insensitive.  Pass sequences through
    :func:`lyrics_eval.textnorm.words_only` first.
    """
    return _script_breakdown(align(ref_words, hyp_words))


def case_error_rate(
    script: EditScript, ref: TokenSequence, hyp: TokenSequence
) -> CaseResult:
    """Count hits whose original forms differ, over reference word count.

    ``script`` must be the word-level alignment of ``ref`` and ``hyp``.
    With no hits there are no case errors, whatever the word error rate.
    """
    errors = sum(
        1
        for op in script.ops
        if op.kind is EditOpKind.HIT
        and ref[op.ref_index].original != hyp[op.hyp_index].original
    )
    return CaseResult(errors, len(ref))


def prf(counts: EditCounts, token_type: TokenType) -> PRF:
    """Precision/recall/F1 of one token type from attributed edit counts.

    Precision divides hits by all hypothesized tokens of the type (hits +
    substitutions + insertions), recall by all reference tokens of the
    type (hits + substitutions + deletions); F1 is their harmonic mean.
    """
    return PRF.from_counts(
        counts.hits[token_type],
        counts.substitutions[token_type],
        counts.deletions[token_type],
        counts.insertions[token_type],
    )


def evaluate_pair(
    ref_text: str,
    hyp_text: str,
    language: str = "other",
    song_id: str = "",
) -> SongReport:
    """Normalize, tokenize and score one hypothesis against its reference.

    The word error rate and case error rate come from an alignment of the
    word tokens alone; the per-type precision/recall/F1 come from an
    alignment of the full sequence with punctuation and break tokens kept
    in place.
    """
    ref_tokens = tokenize(normalize(ref_text, language), language)
    hyp_tokens = tokenize(normalize(hyp_text, language), language)

    ref_words = words_only(ref_tokens)
    hyp_words = words_only(hyp_tokens)
    word_script = align(ref_words, hyp_words)
    words = _script_breakdown(word_script)
    case = case_error_rate(word_script, ref_words, hyp_words)

    full_script = align(ref_tokens, hyp_tokens)
    token_counts = attribute(full_script, ref_tokens, hyp_tokens)
    token_metrics = {t: prf(token_counts, t) for t in TokenType}
    return SongReport(song_id, language, words, case, token_counts, token_metrics)


def aggregate(
    reports: Iterable[SongReport],
    grouping: Literal["per-language", "overall"] = "per-language",
) -> CorpusReport:
    """Pool song reports into corpus rows (micro-average).

    Raw counts are summed within each group and the rates recomputed from
    the sums.  "per-language" emits one row per language plus an "All"
    row; "overall" emits the "All" row only.  An empty input raises
    ValueError("no songs matched").
    """
    songs = tuple(sorted(reports, key=lambda r: (r.language, r.song_id)))
    if not songs:
        raise ValueError("no songs matched")
    if grouping not in ("per-language", "overall"):
        raise ValueError(f"unknown grouping: {grouping!r}")
    rows = [_pool("All", songs)]
    if grouping == "per-language":
        for language in sorted({r.language for r in songs}):
            rows.append(_pool(language, [r for r in songs if r.language == language]))
    return CorpusReport(tuple(rows), songs)


def _pool(label: str, group: Iterable[SongReport]) -> GroupResult:
    group = list(group)
    words = WerBreakdown(
        hits=sum(r.words.hits for r in group),
        substitutions=sum(r.words.substitutions for r in group),
        deletions=sum(r.words.deletions for r in group),
        insertions=sum(r.words.insertions for r in group),
    )
    case_errors = sum(r.case.case_errors for r in group)
    token_counts = EditCounts()
    for r in group:
        token_counts = token_counts + r.token_counts
    return GroupResult(label, len(group), words, case_errors, token_counts)


def _script_breakdown(script: EditScript) -> WerBreakdown:
    kinds = Counter(op.kind for op in script.ops)
    return WerBreakdown(
        hits=kinds[EditOpKind.HIT],
        substitutions=kinds[EditOpKind.SUBSTITUTION],
        deletions=kinds[EditOpKind.DELETION],
        insertions=kinds[EditOpKind.INSERTION],
    )
