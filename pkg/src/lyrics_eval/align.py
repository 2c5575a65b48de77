"""Minimum-edit alignment between token sequences.

The aligner is a unit-cost Wagner-Fischer dynamic program with a fixed
backtrace policy, so co-optimal alignments always resolve the same way:
walking back from the end, a cost tie prefers the diagonal step (hit or
substitution) over a deletion, and a deletion over an insertion.  Two
tokens are equal when both their type and their ``matched`` form agree,
which makes word comparisons case-insensitive.

:func:`attribute` turns an edit script into per-token-type tallies.  A
substitution between tokens of different types is not a substitution of
either type; it counts as a deletion of the reference token's type plus
an insertion of the hypothesis token's type.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .textnorm import TokenSequence, TokenType

__all__ = [
    "EditCounts",
    "EditOp",
    "EditOpKind",
    "EditScript",
    "align",
    "attribute",
]


class EditOpKind(Enum):
    HIT = "hit"
    SUBSTITUTION = "substitution"
    DELETION = "deletion"
    INSERTION = "insertion"


@dataclass(frozen=True)
class EditOp:
    """One alignment step.

    Hits and substitutions carry both indices, deletions only
    ``ref_index``, insertions only ``hyp_index``.
    """

    kind: EditOpKind
    ref_index: int | None = None
    hyp_index: int | None = None


@dataclass(frozen=True)
class EditScript:
    """An ordered minimum-cost edit script and its total cost."""

    ops: tuple[EditOp, ...]
    cost: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))


@dataclass
class EditCounts:
    """Per-token-type tallies of hits, substitutions, deletions, insertions."""

    hits: Counter[TokenType] = field(default_factory=Counter)
    substitutions: Counter[TokenType] = field(default_factory=Counter)
    deletions: Counter[TokenType] = field(default_factory=Counter)
    insertions: Counter[TokenType] = field(default_factory=Counter)

    def reference_total(self) -> int:
        """Reference tokens accounted for: hits + substitutions + deletions."""
        return (
            sum(self.hits.values())
            + sum(self.substitutions.values())
            + sum(self.deletions.values())
        )

    def hypothesis_total(self) -> int:
        """Hypothesis tokens accounted for: hits + substitutions + insertions."""
        return (
            sum(self.hits.values())
            + sum(self.substitutions.values())
            + sum(self.insertions.values())
        )

    def __add__(self, other: "EditCounts") -> "EditCounts":
        return EditCounts(
            self.hits + other.hits,
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
        )


def align(ref: TokenSequence, hyp: TokenSequence) -> EditScript:
    """Compute the deterministic minimum-edit script turning ref into hyp.

    Substitutions, deletions and insertions cost 1, hits cost 0.  Either
    sequence may be empty.  The same pair of inputs always yields the
    identical script.
    """
    symbol_ids: dict[tuple[TokenType, str], int] = {}
    ref_ids = _encode(ref, symbol_ids)
    hyp_ids = _encode(hyp, symbol_ids)
    dist = _distance_matrix(ref_ids, hyp_ids)
    ops = _backtrace(dist, ref_ids, hyp_ids)
    return EditScript(tuple(ops), int(dist[len(ref_ids), len(hyp_ids)]))


def attribute(script: EditScript, ref: TokenSequence, hyp: TokenSequence) -> EditCounts:
    """Tally the edit script per token type.

    Raises ValueError when the script's indices do not enumerate both
    sequences exactly once in order, which signals it was produced for
    different inputs.
    """
    ref_positions = [op.ref_index for op in script.ops if op.ref_index is not None]
    hyp_positions = [op.hyp_index for op in script.ops if op.hyp_index is not None]
    if ref_positions != list(range(len(ref))) or hyp_positions != list(range(len(hyp))):
        raise ValueError("edit script does not tile the given token sequences")

    counts = EditCounts()
    for op in script.ops:
        if op.kind is EditOpKind.HIT:
            counts.hits[ref[op.ref_index].type] += 1
        elif op.kind is EditOpKind.SUBSTITUTION:
            ref_type = ref[op.ref_index].type
            hyp_type = hyp[op.hyp_index].type
            if ref_type is hyp_type:
                counts.substitutions[ref_type] += 1
            else:
                # Cross-type substitution: one deletion plus one insertion.
                counts.deletions[ref_type] += 1
                counts.insertions[hyp_type] += 1
        elif op.kind is EditOpKind.DELETION:
            counts.deletions[ref[op.ref_index].type] += 1
        else:
            counts.insertions[hyp[op.hyp_index].type] += 1
    return counts


def _encode(seq: TokenSequence, symbol_ids: dict[tuple[TokenType, str], int]) -> np.ndarray:
    out = np.empty(len(seq), dtype=np.int32)
    for i, token in enumerate(seq):
        out[i] = symbol_ids.setdefault((token.type, token.matched), len(symbol_ids))
    return out


def _distance_matrix(ref_ids: np.ndarray, hyp_ids: np.ndarray) -> np.ndarray:
    """Fill the full (len(ref)+1) x (len(hyp)+1) distance table row-major."""
    m, n = len(ref_ids), len(hyp_ids)
    dist = np.empty((m + 1, n + 1), dtype=np.int32)
    dist[0] = np.arange(n + 1, dtype=np.int32)
    if n == 0:
        dist[:, 0] = np.arange(m + 1, dtype=np.int32)
        return dist
    col = np.arange(n + 1, dtype=np.int32)
    row = np.empty(n + 1, dtype=np.int32)
    for i in range(1, m + 1):
        prev = dist[i - 1]
        row[0] = i
        # Best entry into each cell by a diagonal or vertical step.
        np.minimum(prev[:-1] + (hyp_ids != ref_ids[i - 1]), prev[1:] + 1, out=row[1:])
        # Horizontal (insertion) chains are a prefix minimum in skewed
        # coordinates: subtract the column index, scan, add it back.
        row -= col
        np.minimum.accumulate(row, out=row)
        row += col
        dist[i] = row
    return dist


def _backtrace(dist: np.ndarray, ref_ids: np.ndarray, hyp_ids: np.ndarray) -> list[EditOp]:
    i, j = len(ref_ids), len(hyp_ids)
    ops: list[EditOp] = []
    while i > 0 or j > 0:
        here = dist[i, j]
        if i > 0 and j > 0:
            same = ref_ids[i - 1] == hyp_ids[j - 1]
            if dist[i - 1, j - 1] + (0 if same else 1) == here:
                kind = EditOpKind.HIT if same else EditOpKind.SUBSTITUTION
                ops.append(EditOp(kind, i - 1, j - 1))
                i -= 1
                j -= 1
                continue
        if i > 0 and dist[i - 1, j] + 1 == here:
            ops.append(EditOp(EditOpKind.DELETION, ref_index=i - 1))
            i -= 1
            continue
        ops.append(EditOp(EditOpKind.INSERTION, hyp_index=j - 1))
        j -= 1
    ops.reverse()
    return ops
