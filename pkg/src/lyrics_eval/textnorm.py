"""Lyric text normalization and typed tokenization.

Raw lyric files arrive with inconsistent Unicode punctuation, stray
whitespace and uneven blank-line spacing.  :func:`normalize` canonicalizes
the text while preserving its line structure, and :func:`tokenize` splits
the result into typed tokens (words, punctuation marks, parentheses, line
breaks and section breaks) that the aligner and the metric suite operate
on.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "CharClass",
    "Token",
    "TokenSequence",
    "TokenType",
    "classify_char_class",
    "normalize",
    "tokenize",
    "words_only",
]


class TokenType(Enum):
    """The five token classes scored by the metric suite."""

    WORD = "word"
    PUNCTUATION = "punctuation"
    PARENTHESIS = "parenthesis"
    LINE_BREAK = "line_break"
    SECTION_BREAK = "section_break"

    @property
    def is_break(self) -> bool:
        return self in (TokenType.LINE_BREAK, TokenType.SECTION_BREAK)


class CharClass(Enum):
    LETTER_OR_DIGIT = "letter_or_digit"
    PARENTHESIS = "parenthesis"
    PUNCTUATION = "punctuation"
    SPACE = "space"


@dataclass(frozen=True)
class Token:
    """A single classified text unit.

    ``original`` is the surface form as it appears in the normalized text;
    ``matched`` is the case-folded form used for equality during alignment
    (identical to ``original`` for punctuation and parentheses).  Break
    tokens carry empty strings for both.  ``line_index`` and ``char_offset``
    locate the token in the normalized text; a break token points at the
    start of the line that follows it.
    """

    type: TokenType
    original: str
    matched: str
    line_index: int = 0
    char_offset: int = 0


@dataclass(frozen=True)
class TokenSequence:
    """Ordered tokens for one lyric document.

    ``language`` is a lowercase ISO 639-1 code when known ("en", "es",
    "de", "fr") and "other" otherwise; it labels the sequence for grouping
    and does not change tokenization.
    """

    tokens: tuple[Token, ...]
    language: str = "other"

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, index: int) -> Token:
        return self.tokens[index]


# Quote-like characters folded to ASCII ' and ".
_SINGLE_QUOTE_LIKE = "‘’‚‛‹›`"
_DOUBLE_QUOTE_LIKE = "“”„‟«»"
# Dash-like characters folded to the ASCII hyphen.
_DASH_LIKE = "‐‑‒–—―"

_CHAR_MAP: dict[int, str] = {ord(ch): "'" for ch in _SINGLE_QUOTE_LIKE}
_CHAR_MAP.update({ord(ch): '"' for ch in _DOUBLE_QUOTE_LIKE})
_CHAR_MAP.update({ord(ch): "-" for ch in _DASH_LIKE})
_CHAR_MAP[0x2026] = "..."  # horizontal ellipsis

_CHUNK_RE = re.compile(r"\S+")


def normalize(raw: str, language: str = "other") -> str:
    """Return the canonical form of a raw lyric text.

    The following steps are applied, in order:

    * CR and CRLF line endings become LF;
    * Unicode canonical composition (NFC);
    * curly quotes and single guillemets become ASCII ' , double quotes
      and guillemets become ASCII " , dash variants become "-", and the
      horizontal ellipsis character becomes "...";
    * within each line, every Unicode whitespace character becomes an
      ASCII space, runs of spaces collapse to one, and leading/trailing
      spaces are stripped;
    * leading and trailing blank lines are dropped and interior runs of
      two or more blank lines collapse to exactly one blank line.

    Newlines are otherwise preserved.  The function is idempotent and an
    empty input yields an empty output.  ``language`` is accepted for
    symmetry with the rest of the pipeline; the rules are language
    independent.
    """
    if not raw:
        return ""
    text = raw.replace("\r\n", "\n").replace("\r", "\n")
    text = unicodedata.normalize("NFC", text)
    text = text.translate(_CHAR_MAP)
    out: list[str] = []
    blank_pending = False
    for line in text.split("\n"):
        line = " ".join(line.split())
        if not line:
            # Leading blanks are dropped outright; interior runs flush as
            # a single blank line once more content arrives.
            blank_pending = bool(out)
            continue
        if blank_pending:
            out.append("")
            blank_pending = False
        out.append(line)
    return "\n".join(out)


def classify_char_class(ch: str) -> CharClass:
    """Classify a single character for tokenization purposes.

    Round parentheses get their own class because they carry meaning
    (background vocals) that other brackets do not.
    """
    if ch == "(" or ch == ")":
        return CharClass.PARENTHESIS
    if ch.isspace():
        return CharClass.SPACE
    if unicodedata.category(ch)[0] in "LMN":
        return CharClass.LETTER_OR_DIGIT
    return CharClass.PUNCTUATION


def tokenize(normalized: str, language: str = "other") -> TokenSequence:
    """Split normalized lyric text into a typed token sequence.

    Each line is split on spaces.  Within a chunk, leading and trailing
    characters that are not letters or digits are peeled off as
    single-character punctuation tokens ("(" and ")" become parenthesis
    tokens); whatever remains is a single word token.  An apostrophe at a
    chunk edge stays inside the word when the adjacent character on at
    least one side is a letter, so contractions like "doin'", "'em" or
    "t'arrête" survive as single words.  Hyphens and any other characters
    in the interior of a chunk stay inside the word.

    One line-break token separates consecutive non-blank lines of a
    section; one section-break token stands in for the blank line(s)
    between sections.  Word tokens match case-insensitively: their
    ``matched`` form is the lowercased ``original``.

    A blank document yields an empty sequence.
    """
    tokens: list[Token] = []
    saw_content = False
    blank_since_content = False
    for line_index, line in enumerate(normalized.split("\n")):
        chunks = list(_CHUNK_RE.finditer(line))
        if not chunks:
            blank_since_content = saw_content
            continue
        if saw_content:
            kind = (
                TokenType.SECTION_BREAK
                if blank_since_content
                else TokenType.LINE_BREAK
            )
            tokens.append(Token(kind, "", "", line_index, 0))
        saw_content = True
        blank_since_content = False
        for match in chunks:
            tokens.extend(_split_chunk(match.group(), line_index, match.start()))
    return TokenSequence(tuple(tokens), language)


def words_only(seq: TokenSequence) -> TokenSequence:
    """Keep only the word tokens of ``seq``, preserving order."""
    return TokenSequence(
        tuple(t for t in seq if t.type is TokenType.WORD), seq.language
    )


def _split_chunk(chunk: str, line_index: int, offset: int) -> list[Token]:
    """Break one whitespace-delimited chunk into word and mark tokens."""
    left, right = 0, len(chunk)
    leading: list[Token] = []
    trailing: list[Token] = []
    while left < right and not _belongs_to_word(chunk, left):
        leading.append(_mark_token(chunk[left], line_index, offset + left))
        left += 1
    while right > left and not _belongs_to_word(chunk, right - 1):
        trailing.append(_mark_token(chunk[right - 1], line_index, offset + right - 1))
        right -= 1
    parts = leading
    if left < right:
        original = chunk[left:right]
        parts.append(
            Token(TokenType.WORD, original, original.lower(), line_index, offset + left)
        )
    parts.extend(reversed(trailing))
    return parts


def _belongs_to_word(chunk: str, i: int) -> bool:
    ch = chunk[i]
    if classify_char_class(ch) is CharClass.LETTER_OR_DIGIT:
        return True
    if ch == "'":
        before = i > 0 and chunk[i - 1].isalpha()
        after = i + 1 < len(chunk) and chunk[i + 1].isalpha()
        return before or after
    return False


def _mark_token(ch: str, line_index: int, offset: int) -> Token:
    kind = (
        TokenType.PARENTHESIS
        if classify_char_class(ch) is CharClass.PARENTHESIS
        else TokenType.PUNCTUATION
    )
    return Token(kind, ch, ch, line_index, offset)
