"""Heaps of reduced words, string diagrams and cograssmannian structure.

A heap is the labelled poset of a word in the generators s_1..s_{n-1},
embedded in the lattice: the entry for position j sits in column word[j]
(the generator index), with the left end of the word at the top of the
picture.  Levels are compacted so each entry sits one unit above the
highest conflicting entry below it; entries in adjacent columns then
differ by exactly one level in tight heaps.

String diagrams overlay n strands on the lattice.  With a mask, strands
cross at mask-value-1 entries and bounce everywhere else; the strand order
at the bottom is the one-line word of the masked subexpression.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import permutations as perms
from .permutations import Perm, Word


def _conflict(a: int, b: int) -> bool:
    return abs(a - b) <= 1


class Heap:
    """Lattice embedding of the heap of a word.

    Levels are computed by hanging entries from the top (each one unit
    below the lowest conflicting entry above it) unless explicit levels are
    provided; the cograssmannian structure passes its own rigid embedding.
    """

    def __init__(
        self,
        word: Sequence[int],
        n: int | None = None,
        levels: Sequence[int] | None = None,
    ):
        self.word: Word = tuple(word)
        if n is None:
            n = (max(self.word) + 1) if self.word else 1
        self.n = n
        if any(not 1 <= i <= n - 1 for i in self.word):
            raise ValueError(f"word {self.word} has generators outside 1..{n - 1}")
        p = len(self.word)
        if levels is None:
            out = [0] * p
            for j in range(p):
                above = [
                    out[k] for k in range(j) if _conflict(self.word[k], self.word[j])
                ]
                out[j] = (min(above) - 1) if above else 0
            levels = out
        else:
            levels = list(levels)
            for j in range(p):
                for k in range(j):
                    if _conflict(self.word[k], self.word[j]) and levels[k] <= levels[j]:
                        raise ValueError("levels do not respect the heap order")
        base = min(levels) if levels else 0
        self.levels: tuple[int, ...] = tuple(lv - base for lv in levels)
        self.entry_at: dict[tuple[int, int], int] = {
            (self.word[j], self.levels[j]): j for j in range(p)
        }
        if len(self.entry_at) != p:
            raise AssertionError("level assignment collided")
        self.columns: dict[int, list[int]] = {}
        for j in range(p):
            self.columns.setdefault(self.word[j], []).append(j)
        for col in self.columns:
            self.columns[col].sort(key=lambda j: self.levels[j])

    def __len__(self) -> int:
        return len(self.word)

    def coords(self, j: int) -> tuple[int, int]:
        return (self.word[j], self.levels[j])

    def covers(self) -> set[tuple[int, int]]:
        """Pairs (upper, lower) of positions forming covering relations."""
        out = set()
        p = len(self.word)
        for a in range(p):
            ca, ya = self.coords(a)
            for b in range(p):
                cb, yb = self.coords(b)
                if abs(ca - cb) == 1 and ya > yb:
                    blocked = any(
                        (c, y) in self.entry_at
                        for c in (ca, cb)
                        for y in range(yb + 1, ya)
                    )
                    if not blocked:
                        out.add((a, b))
        return out

    def up_set(self, positions: Iterable[int]) -> set[int]:
        """All entries weakly above the given ones in the heap order.

        Position i is above position j when i precedes j in the word and
        they are linked by a chain of conflicting generators.
        """
        todo = list(positions)
        seen = set(todo)
        while todo:
            j = todo.pop()
            for i in range(j - 1, -1, -1):
                if i not in seen and _conflict(self.word[i], self.word[j]):
                    seen.add(i)
                    todo.append(i)
        return seen

    def below_set(self, positions: Iterable[int]) -> set[int]:
        todo = list(positions)
        seen = set(todo)
        p = len(self.word)
        while todo:
            j = todo.pop()
            for i in range(j + 1, p):
                if i not in seen and _conflict(self.word[i], self.word[j]):
                    seen.add(i)
                    todo.append(i)
        return seen

    def is_isomorphic(self, other: "Heap") -> bool:
        """Labelled-poset isomorphism; lattice coordinates are canonical, so
        coordinate sets must agree."""
        return set(self.entry_at) == set(other.entry_at)

    def min_level(self) -> int:
        return min(self.levels) if self.word else 0

    def max_level(self) -> int:
        return max(self.levels) if self.word else 0


@dataclass(frozen=True)
class StringDiagram:
    """Strand data for a mask overlaid on a heap.

    ``meets[j] = (nw, ne)`` are the labels of the two strands arriving at
    entry j (from the northwest and northeast); they cross there exactly
    when the mask bit is 1.  ``bottom`` is the strand order below the heap,
    i.e. the one-line word of the masked subexpression.
    """

    word: Word
    bits: tuple[int, ...]
    meets: tuple[tuple[int, int], ...]
    bottom: Perm


def strings(heap: Heap, bits: Sequence[int] | None = None) -> StringDiagram:
    """Trace the n strands through the heap under the given mask.

    All-ones mask by default; the bottom order then equals the word's
    product."""
    p = len(heap.word)
    if bits is None:
        bits = (1,) * p
    bits = tuple(bits)
    if len(bits) != p:
        raise ValueError(f"mask length {len(bits)} != word length {p}")
    slots = list(range(1, heap.n + 1))
    meets = []
    for j in range(p):
        c = heap.word[j]
        meets.append((slots[c - 1], slots[c]))
        if bits[j]:
            slots[c - 1], slots[c] = slots[c], slots[c - 1]
    return StringDiagram(heap.word, bits, tuple(meets), tuple(slots))


# -- cograssmannian structure ------------------------------------------------


def canonical_linearization(heap: Heap) -> Word:
    """Read levels top to bottom, entries left to right within a level."""
    order = sorted(range(len(heap.word)), key=lambda j: (-heap.levels[j], heap.word[j]))
    return tuple(heap.word[j] for j in order)


def w0j_word(z: int, n: int) -> Word:
    """The fixed reduced word for the longest element of the parabolic
    missing s_z: (s_1...s_{z-1})(s_1...s_{z-2})...(s_1) followed by
    (s_{n-1}...s_{z+1})(s_{n-1}...s_{z+2})...(s_{n-1})."""
    word: list[int] = []
    for k in range(z - 1, 0, -1):
        word.extend(range(1, k + 1))
    for k in range(n - 1 - z, 0, -1):
        word.extend(range(n - 1, n - 1 - k, -1))
    return tuple(word)


@dataclass(frozen=True)
class Valley:
    """A '()' pair of the ridgeline: its column and capacity (the number of
    grassmannian-part heap entries in that column)."""

    column: int
    capacity: int


class CogStructure:
    """Canonical heap data for a cograssmannian permutation.

    Fixes the reduced word ``v_word + w0j_word``, where v is the minimal
    coset representative and the v part is linearized level by level.
    Carries the ridgeline, valleys, peaks and lattice lookups used by the
    tree and mask constructions.
    """

    def __init__(self, w: Perm):
        w = perms.check_perm(w)
        if not perms.is_cograssmannian(w):
            raise ValueError(f"{w} is not cograssmannian")
        self.w = w
        self.n = len(w)
        z = perms.unique_right_ascent(w)
        self.z = self.n if z is None else z
        J = set(range(1, self.n)) - {self.z}
        self.v, self.u = perms.parabolic_decompose(w, J)

        # The grassmannian part is a partition inside the z x (n-z) box,
        # drawn Russian style with row 1 at the bottom: box (i, j) occupies
        # column z - i + j at level (i - 1) + (j - 1).  The two staircase
        # tails hang rigidly below: column c of the left (right) tail has
        # its top entry at level z - c - 2 (c - z - 2) and steps of 2.
        self.partition = tuple(
            self.v[self.z - 1 - i] - (self.z - i) for i in range(self.z)
        )
        if any(a < b for a, b in zip(self.partition, self.partition[1:])):
            raise AssertionError("grassmannian part did not yield a partition")
        v_entries = []
        for i, lam_i in enumerate(self.partition, start=1):
            for j in range(1, lam_i + 1):
                v_entries.append((self.z - i + j, (i - 1) + (j - 1)))
        v_entries.sort(key=lambda cl: (-cl[1], cl[0]))
        self.v_word = tuple(c for c, _ in v_entries)
        levels = [lv for _, lv in v_entries]
        tail: list[int] = []
        for k in range(1, self.z):
            for c in range(1, self.z - k + 1):
                tail.append(c)
                levels.append(self.z - c - 2 - 2 * (k - 1))
        for k in range(1, self.n - self.z):
            for c in range(self.n - 1, self.z + k - 1, -1):
                tail.append(c)
                levels.append(c - self.z - 2 - 2 * (k - 1))
        self.tail_word = tuple(tail)
        if self.tail_word != w0j_word(self.z, self.n):
            raise AssertionError("tail word disagrees with the parabolic word")
        self.word: Word = self.v_word + self.tail_word
        if perms.word_to_perm(self.n, self.word) != w:
            raise AssertionError("canonical word does not multiply to w")
        if len(self.word) != perms.length(w):
            raise AssertionError("canonical word is not reduced")
        self.heap = Heap(self.word, self.n, levels=levels)
        self.v_size = len(self.v_word)

        # Column tops over the v part, the ridgeline and its features.
        self.v_columns: dict[int, list[int]] = {}
        for j in range(self.v_size):
            self.v_columns.setdefault(self.word[j], []).append(j)
        for col in self.v_columns:
            self.v_columns[col].sort(key=lambda j: self.heap.levels[j])
        cols = sorted(self.v_columns)
        self.v_col_range = cols
        self.top_level: dict[int, int] = {
            c: self.heap.levels[self.v_columns[c][-1]] for c in cols
        }
        parens = []
        for a, b in zip(cols, cols[1:]):
            if b != a + 1:
                raise AssertionError("grassmannian part occupies a gapped column range")
            step = self.top_level[b] - self.top_level[a]
            if abs(step) != 1:
                raise AssertionError("ridgeline steps must be unit steps")
            parens.append("(" if step < 0 else ")")
        self.ridgeline = "".join(parens)

        self.valleys: list[Valley] = []
        for i in range(len(parens) - 1):
            if parens[i] == "(" and parens[i + 1] == ")":
                col = cols[i + 1]
                self.valleys.append(Valley(col, len(self.v_columns[col])))

        self.peak_columns: list[int] = []
        for i, c in enumerate(cols):
            left_up = i == 0 or parens[i - 1] == ")"
            right_down = i == len(cols) - 1 or parens[i] == "("
            if left_up and right_down:
                self.peak_columns.append(c)

    # -- helpers ---------------------------------------------------------

    def entry(self, col: int, level: int) -> int | None:
        return self.heap.entry_at.get((col, level))

    def is_v_position(self, j: int) -> bool:
        return j < self.v_size

    def next_peak_right(self, col: int) -> int:
        for c in self.peak_columns:
            if c > col:
                return c
        raise ValueError(f"no peak right of column {col}")

    def describe(self) -> dict:
        return {
            "w": list(self.w),
            "z": self.z,
            "v": list(self.v),
            "word": list(self.word),
            "ridgeline": self.ridgeline,
            "valleys": [
                {"column": v.column, "capacity": v.capacity} for v in self.valleys
            ],
            "peaks": self.peak_columns,
        }


@lru_cache(maxsize=None)
def cog_structure(w: Perm) -> CogStructure:
    return CogStructure(w)


def canonical_cog_word(w: Perm) -> Word:
    """The fixed reduced word v-part then parabolic tail for cograssmannian w."""
    return cog_structure(tuple(w)).word


def ridgeline(w: Perm) -> str:
    return cog_structure(tuple(w)).ridgeline


def valleys(w: Perm) -> list[Valley]:
    return cog_structure(tuple(w)).valleys
