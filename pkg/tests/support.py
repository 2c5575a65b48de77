"""Independent reference implementations and small token builders.

The oracles here are deliberately written in a different style from the
library (plain top-down recursion, literal character walks) so that the
two sides cannot share a bug.  Expected values in the test files were
frozen from these oracles or computed by hand and cross-checked against
them.
"""

from __future__ import annotations

import unicodedata
from functools import lru_cache

from lyrics_eval import Token, TokenSequence, TokenType


# --- token builders -------------------------------------------------------

def w(text: str) -> Token:
    return Token(TokenType.WORD, text, text.lower())


def p(ch: str) -> Token:
    return Token(TokenType.PUNCTUATION, ch, ch)


def b(ch: str) -> Token:
    return Token(TokenType.PARENTHESIS, ch, ch)


def lb() -> Token:
    return Token(TokenType.LINE_BREAK, "", "")


def sb() -> Token:
    return Token(TokenType.SECTION_BREAK, "", "")


def seq(*tokens: Token, language: str = "en") -> TokenSequence:
    return TokenSequence(tuple(tokens), language)


def key(token: Token) -> tuple[TokenType, str]:
    return (token.type, token.matched)


# --- edit distance oracles ------------------------------------------------

def recursive_edit_distance(ref: TokenSequence, hyp: TokenSequence) -> int:
    """Top-down unit-cost edit distance, memoized recursion."""
    ref_keys = tuple(key(t) for t in ref)
    hyp_keys = tuple(key(t) for t in hyp)

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        step = 0 if ref_keys[i - 1] == hyp_keys[j - 1] else 1
        return min(go(i - 1, j - 1) + step, go(i - 1, j) + 1, go(i, j - 1) + 1)

    return go(len(ref_keys), len(hyp_keys))


def enumerate_min_scripts(ref: TokenSequence, hyp: TokenSequence):
    """Every minimum-cost script, as tuples of (kind, ref_i, hyp_i).

    Kinds are the strings "hit", "substitution", "deletion", "insertion".
    Exhaustive search; only use on short sequences.
    """
    ref_keys = [key(t) for t in ref]
    hyp_keys = [key(t) for t in hyp]
    m, n = len(ref_keys), len(hyp_keys)
    best = recursive_edit_distance(ref, hyp)
    scripts = []

    def walk(i, j, cost, ops):
        remaining = abs((m - i) - (n - j))
        if cost + remaining > best:
            return
        if i == m and j == n:
            if cost == best:
                scripts.append(tuple(ops))
            return
        if i < m and j < n:
            same = ref_keys[i] == hyp_keys[j]
            kind = "hit" if same else "substitution"
            ops.append((kind, i, j))
            walk(i + 1, j + 1, cost + (0 if same else 1), ops)
            ops.pop()
        if i < m:
            ops.append(("deletion", i, None))
            walk(i + 1, j, cost + 1, ops)
            ops.pop()
        if j < n:
            ops.append(("insertion", None, j))
            walk(i, j + 1, cost + 1, ops)
            ops.pop()

    walk(0, 0, 0, [])
    return scripts


# --- normalization reference ---------------------------------------------

_SINGLES = set("‘’‚‛‹›`")
_DOUBLES = set("“”„‟«»")
_DASHES = set("‐‑‒–—―")


def normalize_reference(raw: str) -> str:
    """Character-walk reimplementation of text normalization."""
    if raw == "":
        return ""
    chars = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch == "\r":
            chars.append("\n")
            if i + 1 < len(raw) and raw[i + 1] == "\n":
                i += 1
        else:
            chars.append(ch)
        i += 1
    text = unicodedata.normalize("NFC", "".join(chars))

    mapped = []
    for ch in text:
        if ch in _SINGLES:
            mapped.append("'")
        elif ch in _DOUBLES:
            mapped.append('"')
        elif ch in _DASHES:
            mapped.append("-")
        elif ch == "…":
            mapped.append("...")
        elif ch != "\n" and ch.isspace():
            mapped.append(" ")
        else:
            mapped.append(ch)
    text = "".join(mapped)

    cleaned_lines = []
    for line in text.split("\n"):
        words = []
        current = []
        for ch in line:
            if ch == " ":
                if current:
                    words.append("".join(current))
                    current = []
            else:
                current.append(ch)
        if current:
            words.append("".join(current))
        cleaned_lines.append(" ".join(words))

    # Two-pass blank handling: mark keepers, then join.
    keep = []
    previous_blank = True  # drops leading blanks
    for line in cleaned_lines:
        if line == "":
            if not previous_blank:
                keep.append("")
            previous_blank = True
        else:
            keep.append(line)
            previous_blank = False
    while keep and keep[-1] == "":
        keep.pop()
    return "\n".join(keep)


# --- tokenizer reference ---------------------------------------------------

def tokenize_reference(normalized: str) -> list[tuple[str, str]]:
    """Brute-force character-class scan; returns (type-code, text) pairs.

    Type codes: "W", "P", "B", "L", "S".  Word spans are computed from
    character classes directly: inside a space-delimited run, the word is
    the slice between the first and last character that is a letter,
    digit, mark, or a letter-adjacent apostrophe; everything outside that
    slice is emitted as one mark per character.
    """

    def is_core(run: str, k: int) -> bool:
        ch = run[k]
        if ch not in "()" and unicodedata.category(ch)[0] in "LMN":
            return True
        if ch == "'":
            left = k > 0 and unicodedata.category(run[k - 1])[0] == "L"
            right = k + 1 < len(run) and unicodedata.category(run[k + 1])[0] == "L"
            return left or right
        return False

    def mark(ch: str) -> tuple[str, str]:
        return ("B" if ch in "()" else "P", ch)

    out: list[tuple[str, str]] = []
    pending_break: str | None = None
    started = False
    for line in normalized.split("\n"):
        runs = line.split()
        if not runs:
            if started:
                pending_break = "S"
            continue
        if started:
            out.append((pending_break or "L", ""))
        pending_break = None
        started = True
        for run in runs:
            core = [k for k in range(len(run)) if is_core(run, k)]
            if not core:
                out.extend(mark(ch) for ch in run)
                continue
            lo, hi = core[0], core[-1]
            out.extend(mark(ch) for ch in run[:lo])
            out.append(("W", run[lo : hi + 1]))
            out.extend(mark(ch) for ch in run[hi + 1 :])
    return out


def token_codes(sequence: TokenSequence) -> list[tuple[str, str]]:
    """Project library tokens onto the reference scanner's output shape."""
    codes = {
        TokenType.WORD: "W",
        TokenType.PUNCTUATION: "P",
        TokenType.PARENTHESIS: "B",
        TokenType.LINE_BREAK: "L",
        TokenType.SECTION_BREAK: "S",
    }
    return [(codes[t.type], t.original) for t in sequence]


def check_sequence_invariants(sequence: TokenSequence) -> None:
    """Assert the structural rules every tokenizer output must satisfy."""
    tokens = list(sequence)
    for token in tokens:
        if token.type is TokenType.WORD:
            assert token.original, "empty word token"
            assert not any(ch.isspace() for ch in token.original)
            assert token.matched == token.original.lower()
        elif token.type in (TokenType.PUNCTUATION, TokenType.PARENTHESIS):
            assert token.original == token.matched
            assert len(token.original) >= 1
            if token.type is TokenType.PARENTHESIS:
                assert token.original in "()"
        else:
            assert token.original == "" and token.matched == ""
    if tokens:
        assert not tokens[0].type.is_break, "leading break token"
        assert not tokens[-1].type.is_break, "trailing break token"
    for left, right in zip(tokens, tokens[1:]):
        assert not (left.type.is_break and right.type.is_break), (
            "adjacent break tokens"
        )
