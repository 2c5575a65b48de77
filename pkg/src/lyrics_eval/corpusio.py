"""Corpus loading, ASR segment adaptation, and report rendering.

A corpus on disk is a directory of UTF-8 ``.txt`` reference lyrics,
usually one subdirectory per language, plus a mirror directory of
hypothesis files (flat or per-language).  Files pair by stem.  A manifest
CSV with ``song_id,language`` columns overrides the directory-derived
language.

Reports render as JSON (fractions, null for undefined, round-trippable),
CSV (long format, one row per group and metric, percentages) or a
Markdown grid (percentages, em dash for undefined).
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .align import EditCounts
from .metrics import (
    SCORED_TYPES,
    CorpusReport,
    GroupResult,
    PRF,
    ReportMetadata,
    SongReport,
    aggregate,
    evaluate_pair,
)
from .textnorm import TokenType

__all__ = [
    "CorpusItem",
    "CorpusReport",
    "Segment",
    "evaluate_corpus",
    "load_corpus",
    "parse_segments_json",
    "render_report",
    "segments_to_text",
]

logger = logging.getLogger(__name__)

RENDER_FORMATS = ("json", "csv", "markdown")

UNDEFINED_MARK = "—"  # em dash, the conventional table filler


@dataclass(frozen=True)
class CorpusItem:
    """One song: its id (filename stem), language, and both texts."""

    song_id: str
    language: str
    ref_text: str
    hyp_text: str


@dataclass(frozen=True)
class Segment:
    """A timestamped piece of ASR output, in seconds."""

    text: str
    start_s: float
    end_s: float


def load_corpus(
    refs_root: Path | str,
    hyps_root: Path | str,
    manifest: Path | str | None = None,
) -> list[CorpusItem]:
    """Pair reference and hypothesis files by filename stem.

    The language of an item comes from the manifest when given, otherwise
    from the reference file's subdirectory, otherwise it falls back to
    "other" with a warning.  A reference without a matching hypothesis is
    kept with an empty hypothesis (it scores as all deletions) and logged.

    Raises FileNotFoundError when ``refs_root`` does not exist and
    ValueError on duplicate stems or a manifest row naming an unknown
    stem.  Traversal is sorted, so the result is deterministic for a
    given directory snapshot.
    """
    refs_root = Path(refs_root)
    hyps_root = Path(hyps_root)
    if not refs_root.is_dir():
        raise FileNotFoundError(f"reference directory not found: {refs_root}")
    if not hyps_root.is_dir():
        logger.warning("hypothesis directory not found: %s", hyps_root)

    stems: dict[str, Path] = {}
    languages: dict[str, str | None] = {}
    for path in sorted(refs_root.rglob("*.txt")):
        stem = path.stem
        if stem in stems:
            raise ValueError(
                f"duplicate song id {stem!r}: {stems[stem]} and {path}"
            )
        stems[stem] = path
        parts = path.relative_to(refs_root).parts
        languages[stem] = parts[0] if len(parts) > 1 else None

    if manifest is not None:
        for song_id, language in _read_manifest(Path(manifest)):
            if song_id not in stems:
                raise ValueError(f"manifest names unknown song id {song_id!r}")
            languages[song_id] = language

    items: list[CorpusItem] = []
    for stem, ref_path in stems.items():
        language = languages[stem]
        if not language:
            logger.warning("no language for %s; using 'other'", stem)
            language = "other"
        hyp_text = ""
        for candidate in (
            hyps_root / language / f"{stem}.txt",
            hyps_root / f"{stem}.txt",
        ):
            if candidate.is_file():
                hyp_text = candidate.read_text(encoding="utf-8")
                break
        else:
            logger.warning("no hypothesis for %s; scoring as empty", stem)
        items.append(
            CorpusItem(
                song_id=stem,
                language=language,
                ref_text=ref_path.read_text(encoding="utf-8"),
                hyp_text=hyp_text,
            )
        )
    items.sort(key=lambda item: (item.language, item.song_id))
    return items


def _read_manifest(path: Path) -> list[tuple[str, str]]:
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        if "song_id" not in fields or "language" not in fields:
            raise ValueError(
                f"manifest {path} must have 'song_id' and 'language' columns"
            )
        return [
            (row["song_id"].strip(), row["language"].strip())
            for row in reader
            if row.get("song_id")
        ]


def segments_to_text(segments: Sequence[Segment]) -> str:
    """Join timestamped segments into line-broken lyric text.

    Segment texts are trimmed, embedded newlines become spaces, empty
    segments are dropped, and the remainder joins with single LF so each
    segment becomes one lyric line.  Raises ValueError when segments are
    not sorted by start time.
    """
    previous = None
    lines: list[str] = []
    for segment in segments:
        if previous is not None and segment.start_s < previous:
            raise ValueError("segments are not sorted by start time")
        previous = segment.start_s
        text = segment.text.replace("\r", " ").replace("\n", " ").strip()
        if text:
            lines.append(text)
    return "\n".join(lines)


def parse_segments_json(data: str) -> list[Segment]:
    """Parse the segments file format: a JSON array of {text, start, end}."""
    raw = json.loads(data)
    if not isinstance(raw, list):
        raise ValueError("segments file must contain a JSON array")
    segments: list[Segment] = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ValueError(f"segment {i} is not an object")
        try:
            text = entry["text"]
            start = entry["start"]
            end = entry["end"]
        except KeyError as exc:
            raise ValueError(f"segment {i} is missing key {exc.args[0]!r}") from None
        if not isinstance(text, str):
            raise ValueError(f"segment {i} text is not a string")
        if not isinstance(start, (int, float)) or not isinstance(end, (int, float)):
            raise ValueError(f"segment {i} start/end are not numbers")
        if start < 0 or end < start:
            raise ValueError(f"segment {i} has an invalid time range")
        segments.append(Segment(text, float(start), float(end)))
    return segments


def evaluate_corpus(
    items: Iterable[CorpusItem],
    refs_root: Path | str | None = None,
    hyps_root: Path | str | None = None,
    grouping: str = "per-language",
) -> CorpusReport:
    """Score every corpus item and pool the results into a report."""
    reports = [
        evaluate_pair(item.ref_text, item.hyp_text, item.language, item.song_id)
        for item in items
    ]
    report = aggregate(reports, grouping)
    metadata = ReportMetadata(
        refs_root=str(refs_root) if refs_root is not None else None,
        hyps_root=str(hyps_root) if hyps_root is not None else None,
    )
    return dataclasses.replace(report, metadata=metadata)


def render_report(
    report: CorpusReport, format: str, include_songs: bool = False
) -> bytes:
    """Serialize a corpus report as UTF-8 bytes in the requested format.

    JSON keeps metrics as fractions in [0, 1] (null when undefined) and
    parses back to full precision.  CSV and Markdown show percentages to
    one decimal; Markdown marks undefined cells with an em dash, CSV
    leaves them empty.
    """
    if format == "json":
        return _render_json(report, include_songs)
    if format == "csv":
        return _render_csv(report, include_songs)
    if format == "markdown":
        return _render_markdown(report, include_songs)
    raise ValueError(f"unknown report format: {format!r}")


def _prf_payload(values: PRF) -> dict:
    return {
        "precision": values.precision,
        "recall": values.recall,
        "f1": values.f1,
    }


def _counts_payload(counts: EditCounts) -> dict:
    return {
        t.value: {
            "hits": counts.hits[t],
            "substitutions": counts.substitutions[t],
            "deletions": counts.deletions[t],
            "insertions": counts.insertions[t],
        }
        for t in TokenType
    }


def _group_payload(group: GroupResult) -> dict:
    metrics: dict = {
        "wer": group.wer,
        "case_error_rate": group.case_error_rate,
    }
    for t in TokenType:
        metrics[t.value] = _prf_payload(group.token_metrics(t))
    return {
        "label": group.label,
        "num_songs": group.num_songs,
        "word_counts": {
            "hits": group.words.hits,
            "substitutions": group.words.substitutions,
            "deletions": group.words.deletions,
            "insertions": group.words.insertions,
            "reference_words": group.words.reference_words,
            "case_errors": group.case_errors,
        },
        "metrics": metrics,
        "token_counts": _counts_payload(group.token_counts),
    }


def _song_payload(song: SongReport) -> dict:
    metrics: dict = {
        "wer": song.words.wer,
        "case_error_rate": song.case.rate,
    }
    for t in TokenType:
        metrics[t.value] = _prf_payload(song.token_metrics[t])
    return {
        "song_id": song.song_id,
        "language": song.language,
        "word_counts": {
            "hits": song.words.hits,
            "substitutions": song.words.substitutions,
            "deletions": song.words.deletions,
            "insertions": song.words.insertions,
            "reference_words": song.words.reference_words,
            "case_errors": song.case.case_errors,
        },
        "metrics": metrics,
        "token_counts": _counts_payload(song.token_counts),
    }


def _render_json(report: CorpusReport, include_songs: bool) -> bytes:
    payload: dict = {
        "metadata": {
            "tool": report.metadata.tool,
            "version": report.metadata.version,
            "refs_root": report.metadata.refs_root,
            "hyps_root": report.metadata.hyps_root,
            "generated_at": report.metadata.generated_at,
        },
        "groups": [_group_payload(g) for g in report.rows],
    }
    if include_songs:
        payload["songs"] = [_song_payload(s) for s in report.songs]
    return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _pct(value: float | None, undefined: str) -> str:
    if value is None:
        return undefined
    return f"{value * 100:.1f}"


def _metric_cells(wer, case_rate, prf_of) -> list[tuple[str, float | None]]:
    cells: list[tuple[str, float | None]] = [
        ("wer", wer),
        ("case_error_rate", case_rate),
    ]
    for t in SCORED_TYPES:
        values = prf_of(t)
        cells.append((f"precision_{t.value}", values.precision))
        cells.append((f"recall_{t.value}", values.recall))
        cells.append((f"f1_{t.value}", values.f1))
    return cells


def _render_csv(report: CorpusReport, include_songs: bool) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(["group", "metric", "value"])
    for group in report.rows:
        for name, value in _metric_cells(
            group.wer, group.case_error_rate, group.token_metrics
        ):
            writer.writerow([group.label, name, _pct(value, "")])
    if include_songs:
        for song in report.songs:
            for name, value in _metric_cells(
                song.words.wer, song.case.rate, song.token_metrics.__getitem__
            ):
                writer.writerow([f"song:{song.song_id}", name, _pct(value, "")])
    return buffer.getvalue().encode("utf-8")


_MD_METRIC_HEADERS = [
    "WER",
    "Case",
    "Punct P",
    "Punct R",
    "Punct F1",
    "Paren P",
    "Paren R",
    "Paren F1",
    "Line P",
    "Line R",
    "Line F1",
    "Sect P",
    "Sect R",
    "Sect F1",
]


def _md_row(label_cells: list[str], wer, case_rate, prf_of) -> str:
    cells = label_cells + [
        _pct(value, UNDEFINED_MARK)
        for _, value in _metric_cells(wer, case_rate, prf_of)
    ]
    return "| " + " | ".join(cells) + " |"


def _render_markdown(report: CorpusReport, include_songs: bool) -> bytes:
    header = ["Language", "Songs"] + _MD_METRIC_HEADERS
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join(["---"] * len(header)) + "|",
    ]
    for group in report.rows:
        lines.append(
            _md_row(
                [group.label, str(group.num_songs)],
                group.wer,
                group.case_error_rate,
                group.token_metrics,
            )
        )
    if include_songs:
        song_header = ["Song", "Language"] + _MD_METRIC_HEADERS
        lines.append("")
        lines.append("| " + " | ".join(song_header) + " |")
        lines.append("|" + "|".join(["---"] * len(song_header)) + "|")
        for song in report.songs:
            lines.append(
                _md_row(
                    [song.song_id, song.language],
                    song.words.wer,
                    song.case.rate,
                    song.token_metrics.__getitem__,
                )
            )
    return ("\n".join(lines) + "\n").encode("utf-8")
