"""Deodhar's mask model: defects, prototypes, boundedness and admissibility.

A mask on a fixed reduced word w_1...w_p is a 0/1 vector sigma; the masked
subexpression multiplies the letters with bit 1.  Position j (1-based,
j >= 2) is a defect when the prefix value drops on right multiplication by
w_j; defect status never depends on sigma_j itself.

Mask positions and defect sets are 1-based throughout, matching the
convention j in {2..p}.  Bit vectors are ordinary tuples (indexed from 0
like any Python sequence).

Brute-force enumerations refuse words longer than MAX_BRUTE_LENGTH so the
2^p blow-up fails loudly instead of hanging.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import hecke, permutations as perms
from .heaps import Heap, strings
from .laurent import Laurent
from .permutations import Perm, Word

Bits = tuple[int, ...]

MAX_BRUTE_LENGTH = 22

PLAIN_ZERO = "plain-zero"
PLAIN_ONE = "plain-one"
ZERO_DEFECT = "zero-defect"
ONE_DEFECT = "one-defect"


def subexpression(n: int, word: Sequence[int], bits: Sequence[int]) -> Perm:
    """The group element of the masked subexpression."""
    w = perms.identity(n)
    for i, b in zip(word, bits):
        if b:
            w = perms.mult_gen_right(w, i)
    return w


def defect_statuses(n: int, word: Sequence[int], bits: Sequence[int]) -> list[str]:
    """Per-position classification among the four defect/plain statuses."""
    if len(word) != len(bits):
        raise ValueError("mask length does not match word length")
    out = []
    prefix = perms.identity(n)
    for i, b in zip(word, bits):
        descent = prefix[i - 1] > prefix[i]
        if descent:
            out.append(ONE_DEFECT if b else ZERO_DEFECT)
        else:
            out.append(PLAIN_ONE if b else PLAIN_ZERO)
        if b:
            prefix = perms.mult_gen_right(prefix, i)
    return out


def defect_set(n: int, word: Sequence[int], bits: Sequence[int]) -> frozenset[int]:
    """1-based positions that are defects."""
    return frozenset(
        j + 1
        for j, st in enumerate(defect_statuses(n, word, bits))
        if st in (ZERO_DEFECT, ONE_DEFECT)
    )


def defect_count(n: int, word: Sequence[int], bits: Sequence[int]) -> int:
    statuses = defect_statuses(n, word, bits)
    return sum(1 for st in statuses if st in (ZERO_DEFECT, ONE_DEFECT))


@dataclass(frozen=True)
class DefectProfile:
    bits: Bits
    statuses: tuple[str, ...]
    defects: frozenset[int]
    value: Perm

    @property
    def d(self) -> int:
        return len(self.defects)


def defect_profile(n: int, word: Sequence[int], bits: Sequence[int]) -> DefectProfile:
    statuses = tuple(defect_statuses(n, word, bits))
    return DefectProfile(
        bits=tuple(bits),
        statuses=statuses,
        defects=frozenset(
            j + 1 for j, st in enumerate(statuses) if st in (ZERO_DEFECT, ONE_DEFECT)
        ),
        value=subexpression(n, word, bits),
    )


def all_masks(word: Sequence[int]) -> Iterable[Bits]:
    """All 2^p masks, guarded against runaway lengths."""
    p = len(word)
    if p > MAX_BRUTE_LENGTH:
        raise ValueError(
            f"refusing to enumerate 2^{p} masks (limit 2^{MAX_BRUTE_LENGTH})"
        )
    return itertools.product((0, 1), repeat=p)


def prototype(
    n: int, word: Sequence[int], masks: Iterable[Sequence[int]]
) -> tuple[dict[Perm, Laurent], hecke.HeckeElement]:
    """Generating functions of a mask set: the polynomials
    P_x = sum_{sigma: value=x} q^{d(sigma)} and the Hecke element
    h = q^{-l(w)/2} sum_sigma q^{d(sigma)} T_{value(sigma)}."""
    word = tuple(word)
    polys: dict[Perm, dict[int, int]] = {}
    for bits in masks:
        prof = defect_profile(n, word, bits)
        polys.setdefault(prof.value, {})
        polys[prof.value][prof.d] = polys[prof.value].get(prof.d, 0) + 1
    p_by_value = {x: Laurent.from_q_poly(c) for x, c in polys.items()}
    shift = Laurent.v_power(-len(word))
    h = hecke.HeckeElement(
        n, {x: c * shift for x, c in p_by_value.items()}
    )
    return p_by_value, h


def flip_last(bits: Sequence[int]) -> Bits:
    if not bits:
        return ()
    return tuple(bits[:-1]) + (1 - bits[-1],)


def is_admissible(n: int, word: Sequence[int], masks: Iterable[Sequence[int]]) -> bool:
    """Deodhar admissibility: contains the all-ones mask, closed under
    flipping the last bit, and h(E) is invariant under the bar involution
    (checked exactly in the Hecke algebra)."""
    word = tuple(word)
    mask_set = {tuple(b) for b in masks}
    if (1,) * len(word) not in mask_set:
        return False
    if any(flip_last(b) not in mask_set for b in mask_set):
        return False
    _, h = prototype(n, word, mask_set)
    return h.bar() == h


def is_bounded(n: int, word: Sequence[int], masks: Iterable[Sequence[int]]) -> bool:
    """deg P_x(E) <= (l(w) - l(x) - 1)/2 for every value x below w."""
    word = tuple(word)
    w = perms.word_to_perm(n, word)
    lw = perms.length(w)
    p_by_value, _ = prototype(n, word, masks)
    for x, poly in p_by_value.items():
        if x == w:
            continue
        if poly and poly.max_exp() > lw - perms.length(x) - 1:
            return False
    return True


@dataclass(frozen=True)
class DeodharReport:
    ok: bool
    precondition_ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def deodhar_check(
    n: int, word: Sequence[int], masks: Iterable[Sequence[int]]
) -> DeodharReport:
    """Verify that a bounded admissible set computes the KL data:
    P_x(E) = P_{x,w} for every x and h(E) = C'_w.

    Precondition failures (not bounded / not admissible) are reported
    distinctly from equality failures."""
    word = tuple(word)
    mask_set = {tuple(b) for b in masks}
    if not is_bounded(n, word, mask_set):
        return DeodharReport(False, False, "mask set is not bounded")
    if not is_admissible(n, word, mask_set):
        return DeodharReport(False, False, "mask set is not admissible")
    w = perms.word_to_perm(n, word)
    p_by_value, h = prototype(n, word, mask_set)
    for x in perms.bruhat_interval(w):
        expected = hecke.kl_polynomial(x, w)
        got = p_by_value.get(x, Laurent.zero())
        if got != expected:
            return DeodharReport(
                False, True, f"P_x(E) != P_(x,w) at x={x}: {got} vs {expected}"
            )
    extra = set(p_by_value) - set(perms.bruhat_interval(w))
    if extra:
        return DeodharReport(False, True, f"values outside [1,w]: {sorted(extra)}")
    if h != hecke.cprime(w):
        return DeodharReport(False, True, "h(E) != C'_w")
    return DeodharReport(True, True)


# -- masks with prescribed defect positions -----------------------------------


def fwp_mask(
    n: int, word: Sequence[int], P: Iterable[int], x: Perm
) -> Bits | None:
    """The unique mask on the word with defect set exactly P and value x,
    or None when no such mask exists.

    Backward recursion: with r_{p+1} = x, assign bit 0 at position i when
    (i not in P and w_i ascends r_{i+1}) or (i in P and w_i descends
    r_{i+1}), keeping r; otherwise assign bit 1 and fold w_i into r.  The
    recursion succeeds iff r_1 is the identity.
    """
    word = tuple(word)
    p = len(word)
    P = frozenset(P)
    if not P <= set(range(2, p + 1)):
        raise ValueError(f"defect positions must lie in 2..{p}: {sorted(P)}")
    bits = [0] * p
    r = x
    for i in range(p, 0, -1):
        d = word[i - 1]
        descent = r[d - 1] > r[d]
        if (i in P) == descent:
            bits[i - 1] = 0
        else:
            bits[i - 1] = 1
            r = perms.mult_gen_right(r, d)
    if not perms.is_identity(r):
        return None
    out = tuple(bits)
    # The recursion is the only candidate; sanity-check its profile.
    prof = defect_profile(n, word, out)
    if prof.value != x or prof.defects != P:
        raise AssertionError("prescribed-defect recursion produced a bad mask")
    return out


def fwp_ideal(n: int, word: Sequence[int], P: Iterable[int]) -> dict[Perm, Bits]:
    """All masks with defect set exactly P, keyed by their values.

    The value set is a Bruhat lower order ideal and each element occurs at
    most once."""
    word = tuple(word)
    P = frozenset(P)
    w = perms.word_to_perm(n, word)
    out: dict[Perm, Bits] = {}
    for x in perms.bruhat_interval(w):
        bits = fwp_mask(n, word, P, x)
        if bits is not None:
            out[x] = bits
    return out


def fwp_ideal_brute(n: int, word: Sequence[int], P: Iterable[int]) -> dict[Perm, list[Bits]]:
    """Brute-force oracle over all 2^p masks (tests only)."""
    word = tuple(word)
    P = frozenset(P)
    out: dict[Perm, list[Bits]] = {}
    for bits in all_masks(word):
        prof = defect_profile(n, word, bits)
        if prof.defects == P:
            out.setdefault(prof.value, []).append(bits)
    return out


# -- string moves (test oracle for value preservation) ------------------------


def string_move(heap: Heap, bits: Sequence[int], j: int, k: int) -> Bits:
    """Flip the mask bits at entries j and k (0-based), which must be met by
    the same pair of strands.  Such a move preserves the masked
    subexpression's value."""
    diagram = strings(heap, bits)
    if set(diagram.meets[j]) != set(diagram.meets[k]):
        raise ValueError(
            f"entries {j} and {k} are met by different strand pairs: "
            f"{diagram.meets[j]} vs {diagram.meets[k]}"
        )
    out = list(bits)
    out[j] = 1 - out[j]
    out[k] = 1 - out[k]
    return tuple(out)


def mask_set_to_json(word: Sequence[int], masks: Iterable[Sequence[int]]) -> dict:
    return {
        "word": list(word),
        "masks": sorted("".join(str(b) for b in bits) for bits in masks),
    }


def mask_set_from_json(data: dict) -> tuple[Word, set[Bits]]:
    word = tuple(int(i) for i in data["word"])
    masks = {tuple(int(ch) for ch in s) for s in data["masks"]}
    if any(len(b) != len(word) for b in masks):
        raise ValueError("mask length does not match word length")
    return word, masks
