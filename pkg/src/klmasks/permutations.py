"""Permutations of {1..n} as tuples in one-line notation.

Conventions:

- A permutation w is the tuple ``(w(1), ..., w(n))`` with values 1..n.
- Products compose as functions: ``(u*v)(i) = u(v(i))``.
- Right multiplication by the adjacent transposition s_i swaps the entries
  in positions i, i+1 of the one-line word; left multiplication swaps the
  values i, i+1.
- Generator indices are 1-based: s_i for 1 <= i <= n-1.

Exact integer arithmetic throughout; ranks up to n = 12 are fine.  The
enumeration-heavy functions (reduced_words, bruhat_interval over all of S_n)
are practical up to about n = 7.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Word = tuple[int, ...]


def check_perm(w: Sequence[int]) -> Perm:
    """Validate one-line notation and return it as a tuple.

    >>> check_perm([2, 1, 3])
    (2, 1, 3)
    """
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a permutation of 1..{len(w)}: {w}")
    return w


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_identity(w: Perm) -> bool:
    return all(w[i] == i + 1 for i in range(len(w)))


def longest_element(n: int) -> Perm:
    """The order-reversing permutation [n, n-1, ..., 1]."""
    return tuple(range(n, 0, -1))


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, v in enumerate(w):
        inv[v - 1] = i + 1
    return tuple(inv)


def multiply(a: Perm, b: Perm) -> Perm:
    """Compose as functions: (a*b)(i) = a(b(i)).

    >>> multiply((1, 3, 2, 4), (2, 1, 3, 4))
    (3, 1, 2, 4)
    """
    if len(a) != len(b):
        raise ValueError(f"rank mismatch: {len(a)} vs {len(b)}")
    return tuple(a[b[i] - 1] for i in range(len(a)))


def mult_gen_right(w: Perm, i: int) -> Perm:
    """w * s_i: swap positions i, i+1 (1-based) of the one-line word."""
    if not 1 <= i <= len(w) - 1:
        raise ValueError(f"generator s_{i} out of range for n={len(w)}")
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def mult_gen_left(w: Perm, i: int) -> Perm:
    """s_i * w: swap the values i, i+1 in the one-line word."""
    if not 1 <= i <= len(w) - 1:
        raise ValueError(f"generator s_{i} out of range for n={len(w)}")
    lst = [i + 1 if v == i else i if v == i + 1 else v for v in w]
    return tuple(lst)


def gen(n: int, i: int) -> Perm:
    """The adjacent transposition s_i in S_n."""
    return mult_gen_right(identity(n), i)


def length(w: Perm) -> int:
    """Coxeter length = number of inversions.

    >>> length((3, 4, 1, 2))
    4
    """
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def right_descents(w: Perm) -> set[int]:
    """{i : w(i) > w(i+1)} -- the i with l(w s_i) < l(w).

    >>> sorted(right_descents((4, 2, 3, 1)))
    [1, 3]
    """
    return {i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]}


def left_descents(w: Perm) -> set[int]:
    return right_descents(inverse(w))


def right_ascents(w: Perm) -> set[int]:
    return {i + 1 for i in range(len(w) - 1) if w[i] < w[i + 1]}


def descents(w: Perm, side: str = "right") -> set[int]:
    if side == "right":
        return right_descents(w)
    if side == "left":
        return left_descents(w)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def word_to_perm(n: int, word: Iterable[int]) -> Perm:
    """Multiply out a generator word s_{i1} s_{i2} ... left to right."""
    w = identity(n)
    for i in word:
        w = mult_gen_right(w, i)
    return w


def is_reduced(n: int, word: Sequence[int]) -> bool:
    return length(word_to_perm(n, word)) == len(word)


def first_reduced_word(w: Perm) -> Word:
    """One reduced word, by repeatedly stripping the smallest right descent."""
    word: list[int] = []
    x = w
    while True:
        ds = right_descents(x)
        if not ds:
            break
        i = min(ds)
        x = mult_gen_right(x, i)
        word.append(i)
    return tuple(reversed(word))


def reduced_words(w: Perm) -> list[Word]:
    """All reduced words for w, lexicographically sorted.

    Enumerates by descending recursion on right descents.

    >>> reduced_words((3, 4, 1, 2))
    [(2, 1, 3, 2), (2, 3, 1, 2)]
    """
    if is_identity(w):
        return [()]
    out: list[Word] = []
    for i in sorted(right_descents(w)):
        for prefix in reduced_words(mult_gen_right(w, i)):
            out.append(prefix + (i,))
    out.sort()
    return out


def rank_matrix(w: Perm) -> tuple[tuple[int, ...], ...]:
    """r[i][j] = #{k <= j : w(k) <= i}, 1-based in both arguments."""
    n = len(w)
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r[i][j] = r[i][j - 1] + (1 if w[j - 1] <= i else 0)
    return tuple(tuple(row) for row in r)


def bruhat_leq(x: Perm, w: Perm) -> bool:
    """Bruhat order via rank matrices: x <= w iff r_ij(x) >= r_ij(w) for all i, j.

    >>> bruhat_leq((1, 2, 3, 4), (3, 4, 1, 2))
    True
    >>> bruhat_leq((3, 2, 1), (3, 1, 2))
    False
    """
    if len(x) != len(w):
        raise ValueError(f"rank mismatch: {len(x)} vs {len(w)}")
    n = len(w)
    # r_ij(x) >= r_ij(w) for all i, j; build counts incrementally.
    rx = [0] * (n + 1)
    rw = [0] * (n + 1)
    for j in range(n):
        for i in range(x[j], n + 1):
            rx[i] += 1
        for i in range(w[j], n + 1):
            rw[i] += 1
        if any(rx[i] < rw[i] for i in range(1, n + 1)):
            return False
    return True


def lifting_check(x: Perm, w: Perm, i: int) -> bool:
    """Lifting property: if x < w, s_i a right descent of w and a right
    ascent of x, then x s_i <= w and x <= w s_i.  Raises on a violated
    precondition; returns the (always true) conclusion otherwise."""
    if not (bruhat_leq(x, w) and x != w):
        raise ValueError("need x < w")
    if i not in right_descents(w):
        raise ValueError(f"s_{i} is not a right descent of {w}")
    if i in right_descents(x):
        raise ValueError(f"s_{i} is not a right ascent of {x}")
    return bruhat_leq(mult_gen_right(x, i), w) and bruhat_leq(x, mult_gen_right(w, i))


def parabolic_longest(J: Iterable[int], n: int) -> Perm:
    """The longest element w_0^J of the parabolic subgroup W_J <= S_n.

    >>> parabolic_longest({1, 3}, 4)
    (2, 1, 4, 3)
    """
    J = set(J)
    w = identity(n)
    changed = True
    while changed:
        changed = False
        for i in sorted(J):
            if i not in right_descents(w):
                w = mult_gen_right(w, i)
                changed = True
    return w


def parabolic_decompose(w: Perm, J: Iterable[int]) -> tuple[Perm, Perm]:
    """Write w = v * u with u in W_J and v a minimal coset representative.

    v has no right descent in J and l(w) = l(v) + l(u).

    >>> parabolic_decompose((4, 2, 3, 1), {1, 3})
    ((2, 4, 1, 3), (2, 1, 4, 3))
    """
    J = set(J)
    n = len(w)
    u = identity(n)
    v = w
    while True:
        ds = right_descents(v) & J
        if not ds:
            break
        i = min(ds)
        v = mult_gen_right(v, i)
        u = mult_gen_left(u, i)
    return v, u


def is_cograssmannian(w: Perm) -> bool:
    """At most one right ascent.

    >>> is_cograssmannian((4, 2, 3, 1))
    True
    """
    return len(right_ascents(w)) <= 1


def is_grassmannian(w: Perm) -> bool:
    """At most one right descent."""
    return len(right_descents(w)) <= 1


def is_covexillary(w: Perm) -> bool:
    """No indices i1<i2<i3<i4 with w(i3) < w(i4) < w(i1) < w(i2)."""
    n = len(w)
    for i1, i2, i3, i4 in itertools.combinations(range(n), 4):
        if w[i3] < w[i4] < w[i1] < w[i2]:
            return False
    return True


def unique_right_ascent(w: Perm) -> int | None:
    """The unique right ascent of a cograssmannian w, or None if w has no
    ascent (w is the longest element)."""
    asc = right_ascents(w)
    if len(asc) > 1:
        raise ValueError(f"{w} is not cograssmannian")
    return min(asc) if asc else None


def elements(n: int) -> Iterator[Perm]:
    """All of S_n in one-line lexicographic order."""
    return itertools.permutations(range(1, n + 1))


def cograssmannian_elements(n: int) -> list[Perm]:
    return [w for w in elements(n) if is_cograssmannian(w)]


_INTERVAL_CACHE: dict[Perm, tuple[Perm, ...]] = {}
_BY_LENGTH_CACHE: dict[int, list[tuple[int, Perm]]] = {}


def _elements_by_length(n: int) -> list[tuple[int, Perm]]:
    cached = _BY_LENGTH_CACHE.get(n)
    if cached is None:
        cached = sorted((length(w), w) for w in elements(n))
        _BY_LENGTH_CACHE[n] = cached
    return cached


def bruhat_interval(w: Perm) -> tuple[Perm, ...]:
    """All x <= w, sorted by (length, one-line word).  Cached per w."""
    cached = _INTERVAL_CACHE.get(w)
    if cached is None:
        lw = length(w)
        below = []
        for lx, x in _elements_by_length(len(w)):
            if lx > lw:
                break
            if bruhat_leq(x, w):
                below.append(x)
        cached = tuple(below)
        _INTERVAL_CACHE[w] = cached
    return cached


def seed_interval_cache(x: Perm, candidates: Iterable[Perm]) -> tuple[Perm, ...]:
    """Fill the interval cache for x by filtering a known superset of
    [1, x] (typically the interval of some w >= x)."""
    cached = _INTERVAL_CACHE.get(x)
    if cached is None:
        below = [y for y in candidates if bruhat_leq(y, x)]
        below.sort(key=lambda y: (length(y), y))
        cached = tuple(below)
        _INTERVAL_CACHE[x] = cached
    return cached


def bruhat_maximal(values: Iterable[Perm]) -> list[Perm]:
    """Bruhat-maximal elements of a finite set, sorted."""
    vals = sorted(set(values))
    out = []
    for x in vals:
        if not any(y != x and bruhat_leq(x, y) for y in vals):
            out.append(x)
    return out


def mirror(w: Perm) -> Perm:
    """Conjugation-by-w_0 composed with inversion symmetry used for
    left-right reflected constructions: w*(i) = n+1 - w(n+1-i).

    This is the Dynkin diagram flip s_i -> s_{n-i}; it preserves length,
    Bruhat order and (co)grassmannian-ness while mirroring heaps.
    """
    n = len(w)
    return tuple(n + 1 - w[n - 1 - i] for i in range(n))
