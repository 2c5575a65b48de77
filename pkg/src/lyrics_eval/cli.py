"""Command-line entry point.

Subcommands:

* ``eval``: score a hypothesis directory against a reference directory
  and print or write a report;
* ``segments``: turn a JSON file of timestamped ASR segments into
  line-broken lyric text;
* ``lint``: check lyric files against the formatting rules, optionally
  rewriting them in place.

Exit codes: 0 on success, 1 on usage or IO errors, 2 when lint leaves
diagnostics standing.  Diagnostics and warnings go to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from ._version import __version__
from .corpusio import (
    RENDER_FORMATS,
    evaluate_corpus,
    load_corpus,
    parse_segments_json,
    render_report,
    segments_to_text,
)
from .lint import autofix, lint_lyrics

__all__ = ["build_parser", "cli_main", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lyrics-eval",
        description="Formatting-aware evaluation and linting of lyric transcripts.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    eval_parser = subparsers.add_parser(
        "eval", help="score a hypothesis directory against references"
    )
    eval_parser.add_argument("--refs", required=True, help="reference lyrics directory")
    eval_parser.add_argument("--hyps", required=True, help="hypothesis lyrics directory")
    eval_parser.add_argument("--manifest", help="CSV with song_id,language columns")
    eval_parser.add_argument(
        "--language",
        action="append",
        default=None,
        metavar="XX",
        help="restrict to this language (repeatable)",
    )
    eval_parser.add_argument(
        "--format", choices=RENDER_FORMATS, default="markdown", help="output format"
    )
    eval_parser.add_argument("--out", help="write the report here instead of stdout")
    eval_parser.add_argument(
        "--per-song", action="store_true", help="include per-song results"
    )
    eval_parser.set_defaults(func=_cmd_eval)

    segments_parser = subparsers.add_parser(
        "segments", help="convert timestamped ASR segments to lyric lines"
    )
    segments_parser.add_argument(
        "--in",
        dest="infile",
        required=True,
        help="JSON array of {text, start, end} objects",
    )
    segments_parser.add_argument("--out", help="write the text here instead of stdout")
    segments_parser.set_defaults(func=_cmd_segments)

    lint_parser = subparsers.add_parser("lint", help="check lyric formatting")
    lint_parser.add_argument("files", nargs="+", metavar="FILE")
    lint_parser.add_argument("--language", default="other", metavar="XX")
    lint_parser.add_argument(
        "--fix", action="store_true", help="rewrite files in place where possible"
    )
    lint_parser.set_defaults(func=_cmd_lint)

    return parser


def cli_main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


def _write_bytes(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _cmd_eval(args: argparse.Namespace) -> int:
    items = load_corpus(args.refs, args.hyps, args.manifest)
    if args.language:
        wanted = set(args.language)
        items = [item for item in items if item.language in wanted]
    report = evaluate_corpus(items, refs_root=args.refs, hyps_root=args.hyps)
    data = render_report(report, args.format, include_songs=args.per_song)
    _write_bytes(data, args.out)
    return 0


def _cmd_segments(args: argparse.Namespace) -> int:
    raw = Path(args.infile).read_text(encoding="utf-8")
    try:
        segments = parse_segments_json(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{args.infile}: {exc}") from None
    text = segments_to_text(segments)
    _write_bytes((text + "\n" if text else "").encode("utf-8"), args.out)
    return 0


def _cmd_lint(args: argparse.Namespace) -> int:
    any_remaining = False
    for name in args.files:
        path = Path(name)
        text = path.read_text(encoding="utf-8")
        diagnostics = lint_lyrics(text, args.language)
        if args.fix and diagnostics:
            fixed = autofix(text, diagnostics)
            if fixed != text:
                path.write_text(fixed, encoding="utf-8")
            remaining = lint_lyrics(fixed, args.language)
            fixed_count = len(diagnostics) - len(remaining)
            if fixed_count:
                print(f"{path}: fixed {fixed_count} issue(s)", file=sys.stderr)
            diagnostics = remaining
        for diag in diagnostics:
            print(
                f"{path}:{diag.line}: {diag.rule.value}: {diag.message}",
                file=sys.stderr,
            )
        any_remaining = any_remaining or bool(diagnostics)
    return 2 if any_remaining else 0


if __name__ == "__main__":
    main()
