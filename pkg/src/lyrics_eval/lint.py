"""Formatting lint for lyric text, following music-industry conventions.

Checked rules (everything mechanically decidable from the text alone):

* section-spacing: sections are separated by exactly one blank line, and
  the document neither starts nor ends with blank lines;
* line-capitalization: each line starts with a capital letter, where
  "starts" skips opening punctuation such as "(", quotes, or inverted
  question/exclamation marks;
* line-end-punctuation: a line never ends with a comma or a bare full
  stop (a trailing "..." ellipsis is fine, as are "?" and "!"); a single
  closing parenthesis after the offending character does not hide it;
* paren-balance: parentheses balance within each section (background
  vocal parentheticals may span lines but not sections);
* trailing-whitespace: no spaces or tabs at the end of a line.

Conventions that need the audio (what was actually sung, how often a
part repeats, whether a background vocal matters) or editorial judgment
(spelling standardization) are out of scope for a text-only linter.

A line whose first letter-or-digit character is a digit is not flagged
for capitalization; there is nothing to capitalize in "99 bottles".
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "LintDiagnostic",
    "LintRule",
    "autofix",
    "lint_lyrics",
]

_MAX_FIX_PASSES = 100


class LintRule(Enum):
    SECTION_SPACING = "section-spacing"
    LINE_CAPITALIZATION = "line-capitalization"
    LINE_END_PUNCTUATION = "line-end-punctuation"
    PAREN_BALANCE = "paren-balance"
    TRAILING_WHITESPACE = "trailing-whitespace"


@dataclass(frozen=True)
class LintDiagnostic:
    """One findable problem; ``line`` is 1-based into the linted text."""

    rule: LintRule
    line: int
    message: str
    fixable: bool


def lint_lyrics(text: str, language: str = "other") -> list[LintDiagnostic]:
    """Check lyric text against the formatting rules.

    Returns diagnostics sorted by line then rule.  ``language`` is
    accepted for symmetry with the rest of the pipeline; the checks are
    language independent.
    """
    lines = _split_lines(text)
    diagnostics: list[LintDiagnostic] = []
    diagnostics.extend(_check_section_spacing(lines))
    diagnostics.extend(_check_lines(lines))
    diagnostics.extend(_check_paren_balance(lines))
    diagnostics.sort(key=lambda d: (d.line, d.rule.value))
    return diagnostics


def autofix(text: str, diagnostics: list[LintDiagnostic]) -> str:
    """Rewrite ``text`` so no fixable diagnostic remains.

    ``diagnostics`` must come from :func:`lint_lyrics` on the same text.
    Fixes: capitalize the first letter, drop the offending trailing comma
    or full stop, collapse blank-line runs, strip trailing whitespace.
    Unbalanced parentheses are never touched.  Fixes may cascade (removing
    a comma can expose trailing whitespace), so the rewrite loops until
    the text is stable.
    """
    current = text
    diags = diagnostics
    for _ in range(_MAX_FIX_PASSES):
        fixed = _apply_fixes(current, diags)
        if fixed == current:
            break
        current = fixed
        diags = lint_lyrics(current)
    return current


def _split_lines(text: str) -> list[str]:
    lines = text.split("\n")
    # A final newline terminates the last line; it does not open an
    # empty one.
    if lines and lines[-1] == "" and text.endswith("\n"):
        lines.pop()
    return lines


def _is_blank(line: str) -> bool:
    return not line.strip()


def _check_section_spacing(lines: list[str]) -> list[LintDiagnostic]:
    out: list[LintDiagnostic] = []
    run_start = None
    any_content = False
    for i, line in enumerate(lines):
        if _is_blank(line):
            if run_start is None:
                run_start = i
            continue
        if run_start is not None:
            run_length = i - run_start
            if not any_content:
                out.append(_spacing(run_start, "document starts with blank lines"))
            elif run_length > 1:
                out.append(
                    _spacing(
                        run_start,
                        "sections must be separated by exactly one blank line",
                    )
                )
            run_start = None
        any_content = True
    if run_start is not None and any_content:
        out.append(_spacing(run_start, "document ends with blank lines"))
    elif run_start is not None and lines != [""]:
        # Nothing but blank lines.
        out.append(_spacing(run_start, "document contains only blank lines"))
    return out


def _spacing(index: int, message: str) -> LintDiagnostic:
    return LintDiagnostic(LintRule.SECTION_SPACING, index + 1, message, fixable=True)


def _check_lines(lines: list[str]) -> list[LintDiagnostic]:
    out: list[LintDiagnostic] = []
    for i, line in enumerate(lines):
        if line != line.rstrip():
            out.append(
                LintDiagnostic(
                    LintRule.TRAILING_WHITESPACE,
                    i + 1,
                    "trailing whitespace",
                    fixable=True,
                )
            )
        if _is_blank(line):
            continue
        first = _first_letter_or_digit(line)
        if first is not None and first.isalpha() and first.islower():
            out.append(
                LintDiagnostic(
                    LintRule.LINE_CAPITALIZATION,
                    i + 1,
                    "line should start with a capital letter",
                    fixable=True,
                )
            )
        offender = _terminal_punctuation(line)
        if offender is not None:
            out.append(
                LintDiagnostic(
                    LintRule.LINE_END_PUNCTUATION,
                    i + 1,
                    f"line must not end with {offender!r}",
                    fixable=True,
                )
            )
    return out


def _first_letter_or_digit(line: str) -> str | None:
    for ch in line:
        if unicodedata.category(ch)[0] in "LN":
            return ch
    return None


def _terminal_punctuation(line: str) -> str | None:
    """The forbidden trailing character, or None if the line is fine."""
    s = line.rstrip()
    if s.endswith(")"):
        s = s[:-1].rstrip()
    if s.endswith(","):
        return ","
    if s.endswith(".") and not s.endswith("..."):
        return "."
    return None


def _check_paren_balance(lines: list[str]) -> list[LintDiagnostic]:
    out: list[LintDiagnostic] = []
    depth = 0
    last_open_line = 0
    reported_negative = False

    def close_section() -> None:
        nonlocal depth, reported_negative
        if depth > 0:
            out.append(
                LintDiagnostic(
                    LintRule.PAREN_BALANCE,
                    last_open_line,
                    "unclosed parenthesis in section",
                    fixable=False,
                )
            )
        depth = 0
        reported_negative = False

    for i, line in enumerate(lines):
        if _is_blank(line):
            close_section()
            continue
        for ch in line:
            if ch == "(":
                depth += 1
                last_open_line = i + 1
            elif ch == ")":
                if depth == 0:
                    if not reported_negative:
                        out.append(
                            LintDiagnostic(
                                LintRule.PAREN_BALANCE,
                                i + 1,
                                "closing parenthesis without an opener",
                                fixable=False,
                            )
                        )
                        reported_negative = True
                else:
                    depth -= 1
    close_section()
    return out


def _apply_fixes(text: str, diagnostics: list[LintDiagnostic]) -> str:
    lines = _split_lines(text)
    rules_by_line: dict[int, set[LintRule]] = {}
    for diag in diagnostics:
        if diag.fixable:
            rules_by_line.setdefault(diag.line - 1, set()).add(diag.rule)

    for index, rules in rules_by_line.items():
        if index >= len(lines):
            continue
        line = lines[index]
        if LintRule.TRAILING_WHITESPACE in rules:
            line = line.rstrip()
        if LintRule.LINE_END_PUNCTUATION in rules:
            line = _strip_terminal_punctuation(line)
        if LintRule.LINE_CAPITALIZATION in rules:
            line = _capitalize_first_letter(line)
        lines[index] = line

    if any(LintRule.SECTION_SPACING in rules for rules in rules_by_line.values()):
        lines = _collapse_blank_runs(lines)

    fixed = "\n".join(lines)
    if text.endswith("\n") and fixed:
        fixed += "\n"
    return fixed


def _strip_terminal_punctuation(line: str) -> str:
    while _terminal_punctuation(line) is not None:
        s = line.rstrip()
        if s.endswith(")"):
            core = s[:-1].rstrip()
            line = core[:-1] + ")"
        else:
            line = s[:-1]
    return line


def _capitalize_first_letter(line: str) -> str:
    for i, ch in enumerate(line):
        if unicodedata.category(ch)[0] in "LN":
            if ch.isalpha() and ch.islower():
                return line[:i] + ch.upper() + line[i + 1 :]
            return line
    return line


def _collapse_blank_runs(lines: list[str]) -> list[str]:
    out: list[str] = []
    blank_pending = False
    for line in lines:
        if _is_blank(line):
            blank_pending = bool(out)
            continue
        if blank_pending:
            out.append("")
            blank_pending = False
        out.append(line)
    return out
