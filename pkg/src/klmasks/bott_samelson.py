"""Combinatorial fixed-point data of the Bott-Samelson resolution.

A mask on a reduced word corresponds bijectively to a torus-fixed point:
position j holds the coordinate index set {w^{sigma[j]}(1..d_j)} where d_j
is the generator index.  These sets satisfy inclusion chains along the
heap's NW/NE predecessors, and forgetting all but the last occurrence of
each generator recovers the staircase sets of the masked subexpression.

Cells are tracked by dimension only: the +/- encoding of a mask has a '+'
exactly at zero-defects and plain-ones, and the number of +'s equals
l(value) + defect count, the dimension of the corresponding cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import masks, permutations as perms
from .laurent import Laurent
from .permutations import Perm, Word

Bits = tuple[int, ...]
IndexSet = tuple[int, ...]


def lpred(word: Sequence[int], j: int) -> int | None:
    """Greatest k < j with word[k] = word[j] - 1 (0-based positions); the
    heap entry directly NW of j."""
    for k in range(j - 1, -1, -1):
        if word[k] == word[j] - 1:
            return k
    return None


def rpred(word: Sequence[int], j: int) -> int | None:
    """Greatest k < j with word[k] = word[j] + 1; directly NE of j."""
    for k in range(j - 1, -1, -1):
        if word[k] == word[j] + 1:
            return k
    return None


def last_occurrence(word: Sequence[int], d: int) -> int | None:
    for k in range(len(word) - 1, -1, -1):
        if word[k] == d:
            return k
    return None


def fixed_point(n: int, word: Sequence[int], bits: Sequence[int]) -> tuple[IndexSet, ...]:
    """Per-position coordinate index sets {w^{sigma[j]}(1), ..., w^{sigma[j]}(d_j)}."""
    prefix = perms.identity(n)
    out = []
    for i, b in zip(word, bits):
        if b:
            prefix = perms.mult_gen_right(prefix, i)
        out.append(tuple(sorted(prefix[:i])))
    return tuple(out)


def check_inclusion_chain(
    n: int, word: Sequence[int], sets: Sequence[IndexSet]
) -> bool:
    """The defining conditions: set at lpred(j) inside set at j inside set
    at rpred(j), with the standard sets E_d substituted when a predecessor
    is missing."""
    for j, d in enumerate(word):
        here = set(sets[j])
        if len(here) != d:
            return False
        lp = lpred(word, j)
        left = set(sets[lp]) if lp is not None else set(range(1, d))
        rp = rpred(word, j)
        right = set(sets[rp]) if rp is not None else set(range(1, d + 2))
        if not (left <= here <= right):
            return False
    return True


def enumerate_fixed_point_data(n: int, word: Sequence[int]) -> list[tuple[IndexSet, ...]]:
    """All tuples of index sets satisfying the inclusion chains (tiny ranks
    only; used to check that every such datum comes from a mask)."""
    word = tuple(word)
    out: list[tuple[IndexSet, ...]] = []
    current: list[IndexSet] = []

    def rec(j: int) -> None:
        if j == len(word):
            out.append(tuple(current))
            return
        d = word[j]
        lp = lpred(word, j)
        left = set(current[lp]) if lp is not None else set(range(1, d))
        rp = rpred(word, j)
        right = set(current[rp]) if rp is not None else set(range(1, d + 2))
        for extra in sorted(right - left):
            candidate = tuple(sorted(left | {extra}))
            if len(candidate) == d:
                current.append(candidate)
                rec(j + 1)
                current.pop()

    rec(0)
    return out


def pi_image(n: int, word: Sequence[int], bits: Sequence[int]) -> tuple[IndexSet, ...]:
    """The flag index sets (positions last(1), ..., last(n-1), with E_d
    defaults); equals the staircase sets of the masked subexpression."""
    sets = fixed_point(n, word, bits)
    out = []
    for d in range(1, n):
        k = last_occurrence(word, d)
        out.append(sets[k] if k is not None else tuple(range(1, d + 1)))
    value = masks.subexpression(n, word, bits)
    staircase = tuple(tuple(sorted(value[:d])) for d in range(1, n))
    if tuple(out) != staircase:
        raise AssertionError("flag sets disagree with the staircase of the value")
    return tuple(out)


# -- the +/- encoding ---------------------------------------------------------


def encode_pm(n: int, word: Sequence[int], bits: Sequence[int]) -> str:
    """'+' at zero-defects and plain-ones, '-' at plain-zeros and one-defects."""
    out = []
    for st in masks.defect_statuses(n, word, bits):
        out.append("+" if st in (masks.ZERO_DEFECT, masks.PLAIN_ONE) else "-")
    return "".join(out)


def decode_pm(n: int, word: Sequence[int], encoding: str) -> Bits:
    """Invert encode_pm left to right; defect status at each position only
    depends on the bits before it."""
    if len(encoding) != len(word):
        raise ValueError("encoding length does not match word length")
    prefix = perms.identity(n)
    bits = []
    for ch, i in zip(encoding, word):
        if ch not in "+-":
            raise ValueError(f"bad encoding character {ch!r}")
        descent = prefix[i - 1] > prefix[i]
        plus = ch == "+"
        b = 1 if plus != descent else 0
        bits.append(b)
        if b:
            prefix = perms.mult_gen_right(prefix, i)
    return tuple(bits)


def cell_dimension(n: int, word: Sequence[int], bits: Sequence[int]) -> int:
    """Number of +'s; equals l(value) + d(sigma)."""
    return sum(1 for ch in encode_pm(n, word, bits) if ch == "+")


@dataclass(frozen=True)
class FiberProfile:
    poincare: Laurent  # sum over masks with the given value of q^{d(sigma)}
    fiber_dimension: int  # max defect count
    small_at_x: bool  # 2 d(sigma) < l(w) - l(x) for all these masks


def fiber_profile(n: int, word: Sequence[int], x: Perm) -> FiberProfile:
    """Fiber data over the cell of x: the generating function of all masks
    with value x by defects, the maximal defect count, and whether the
    smallness inequality holds at x.  Brute force with the usual length
    guard."""
    word = tuple(word)
    w = perms.word_to_perm(n, word)
    gap = perms.length(w) - perms.length(x)
    coeffs: dict[int, int] = {}
    max_d = 0
    small = True
    for bits in masks.all_masks(word):
        prof = masks.defect_profile(n, word, bits)
        if prof.value != x:
            continue
        coeffs[prof.d] = coeffs.get(prof.d, 0) + 1
        max_d = max(max_d, prof.d)
        if x != w and 2 * prof.d >= gap:
            small = False
    return FiberProfile(Laurent.from_q_poly(coeffs), max_d, small)


def smallness_verdict(n: int, word: Sequence[int]) -> bool:
    """Whether 2 d(sigma) < l(w) - l(value) holds for every mask with value
    below w (the combinatorial form of smallness for the full resolution)."""
    word = tuple(word)
    w = perms.word_to_perm(n, word)
    lw = perms.length(w)
    for bits in masks.all_masks(word):
        prof = masks.defect_profile(n, word, bits)
        if prof.value != w and 2 * prof.d >= lw - perms.length(prof.value):
            return False
    return True
