"""Bracketed tensor words of irreducible labels.

A word is either an ``int`` label (a leaf) or a pair ``(left, right)`` of
words meaning ``left ⊗ right``.  The empty tuple ``()`` is the word with no
letters; it has a one-dimensional trivial underlying space.  Inside the
rigidity machinery the monoidal unit is always the leaf ``0``.
"""

from __future__ import annotations

from typing import Union

Word = Union[int, tuple]

UNIT = 0
EMPTY = ()


def is_leaf(w: Word) -> bool:
    return isinstance(w, (int,)) and not isinstance(w, bool)


def check_word(w: Word, rank: int) -> None:
    if w == EMPTY:
        return
    if is_leaf(w):
        if not 0 <= w < rank:
            raise ValueError(f"label {w} outside [0, {rank})")
        return
    if not (isinstance(w, tuple) and len(w) == 2):
        raise ValueError(f"malformed word {w!r}")
    check_word(w[0], rank)
    check_word(w[1], rank)


def letters(w: Word) -> list[int]:
    if w == EMPTY:
        return []
    if is_leaf(w):
        return [w]
    return letters(w[0]) + letters(w[1])


def conj_word(w: Word, conj) -> Word:
    """Conjugate word: letters hatted, bracketing mirrored."""
    if w == EMPTY:
        return EMPTY
    if is_leaf(w):
        return conj[w]
    return (conj_word(w[1], conj), conj_word(w[0], conj))


def left_comb(labels) -> Word:
    """``((l0 ⊗ l1) ⊗ l2) ⊗ ...``"""
    labels = list(labels)
    if not labels:
        return EMPTY
    w = labels[0]
    for x in labels[1:]:
        w = (w, x)
    return w


def fmt(w: Word, names=None) -> str:
    if w == EMPTY:
        return "()"
    if is_leaf(w):
        return names[w] if names else str(w)
    return f"({fmt(w[0], names)}⊗{fmt(w[1], names)})"
