"""Zelevinsky resolution combinatorics and the geometric mask construction.

The peaks of the grassmannian part's heap, listed in some order P, cut the
heap into diagonally aligned rectangles R_1, ..., R_p.  Fixed points of
the associated small resolution are indexed by tuples tau of partitions
(one inside each rectangle) together with a block permutation x_tau; the
cell dimension is sum |tau^{(j)}| + l(x_tau).  For neat orderings the
resolution is small and Kazhdan-Lusztig polynomials are computed by
counting cells over each element.

The geometric mask sigma(tau) is built rectangle by rectangle: each NE-SW
diagonal is a sorting step that routes one chosen string (the g-rule) out
to the southwest, placing '+' and '-' so that the number of +'s in R_j is
|tau^{(j)}|; the parabolic tail then realizes x_tau with l(x_tau) more
+'s, one inversion per symbol.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import masks, permutations as perms
from .bott_samelson import fixed_point, last_occurrence
from .heaps import CogStructure, cog_structure
from .laurent import Laurent
from .permutations import Perm

Bits = tuple[int, ...]
Partition = tuple[int, ...]
IndexSet = tuple[int, ...]


@dataclass
class Rectangle:
    """One block R_j of the peak decomposition.

    Entries are laid out on a grid: ``grid[(a, b)]`` is the word position a
    steps southeast and b steps southwest of the peak; diagonal a runs from
    its top entry (a, 0) to (a, beta-1)."""

    j: int  # 1-based position in the ordering
    peak: int  # word position of P_j
    bottom: int  # word position of b_j
    d: int  # column of b_j
    alpha: int  # number of NE-SW diagonals
    beta: int  # entries per diagonal
    grid: dict[tuple[int, int], int] = field(default_factory=dict)
    lpred: int | None = None
    rpred: int | None = None
    ldim: int = 0
    rdim: int = 0


class PeakOrdering:
    """An ordered list of the peaks with its rectangle decomposition."""

    def __init__(self, structure: CogStructure, peak_positions: Sequence[int]):
        self.structure = structure
        self.peaks = tuple(peak_positions)
        heap = structure.heap
        v_positions = set(range(structure.v_size))
        expected_peaks = {
            j
            for j in v_positions
            if not any(
                k in v_positions and k != j for k in heap.up_set([j])
            )
        }
        if set(self.peaks) != expected_peaks:
            raise ValueError("peak list must order the peaks of the heap")
        self.p = len(self.peaks)

        # heights: longest chain from the unique lowest element of the
        # grassmannian part
        self.heights: dict[int, int] = {}
        if v_positions:
            by_level = sorted(v_positions, key=lambda j: heap.levels[j])
            bottom = by_level[0]
            if sum(1 for j in v_positions if heap.levels[j] == heap.levels[bottom]) != 1:
                raise AssertionError("grassmannian heap must have a unique minimum")
            h: dict[int, int] = {bottom: 0}
            for j in by_level:
                if j == bottom:
                    continue
                c, y = heap.coords(j)
                below = [
                    heap.entry_at.get((c - 1, y - 1)),
                    heap.entry_at.get((c + 1, y - 1)),
                ]
                feed = [h[b] for b in below if b is not None and b in h]
                h[j] = max(feed) + 1 if feed else 0
            self.heights = h

        # rectangles: entries below P_j but not below any later peak
        below = {
            j: heap.below_set([pk]) & v_positions for j, pk in enumerate(self.peaks)
        }
        self.rectangles: list[Rectangle] = []
        for idx, pk in enumerate(self.peaks):
            entries = set(below[idx])
            for later in range(idx + 1, self.p):
                entries -= below[later]
            c_p, y_p = heap.coords(pk)
            grid: dict[tuple[int, int], int] = {}
            for e in entries:
                c, y = heap.coords(e)
                a2, b2 = (c - c_p) + (y_p - y), (c_p - c) + (y_p - y)
                if a2 % 2 or b2 % 2 or a2 < 0 or b2 < 0:
                    raise AssertionError("rectangle entries are not grid aligned")
                grid[(a2 // 2, b2 // 2)] = e
            alpha = 1 + max(a for a, _ in grid)
            beta = 1 + max(b for _, b in grid)
            if len(grid) != alpha * beta:
                raise AssertionError("peak block is not a full rectangle")
            rect = Rectangle(
                j=idx + 1,
                peak=pk,
                bottom=grid[(alpha - 1, beta - 1)],
                d=heap.coords(grid[(alpha - 1, beta - 1)])[0],
                alpha=alpha,
                beta=beta,
                grid=grid,
            )
            self.rectangles.append(rect)

        bottoms = {rect.bottom: rect.j for rect in self.rectangles}
        for rect in self.rectangles:
            # west corner (0, beta-1): its NW neighbour is b_k or a valley edge
            c_w, y_w = heap.coords(rect.grid[(0, rect.beta - 1)])
            nw = heap.entry_at.get((c_w - 1, y_w + 1))
            if nw is not None and nw in bottoms and bottoms[nw] < rect.j:
                rect.lpred = bottoms[nw]
                rect.ldim = heap.coords(nw)[0]
            else:
                rect.ldim = c_w - 1
            # east corner (alpha-1, 0)
            c_e, y_e = heap.coords(rect.grid[(rect.alpha - 1, 0)])
            ne = heap.entry_at.get((c_e + 1, y_e + 1))
            if ne is not None and ne in bottoms and bottoms[ne] < rect.j:
                rect.rpred = bottoms[ne]
                rect.rdim = heap.coords(ne)[0]
            else:
                rect.rdim = c_e + 1
            if rect.alpha != rect.d - rect.ldim or rect.beta != rect.rdim - rect.d:
                raise AssertionError("rectangle dimensions disagree with dims")
        if self.p:
            z_last = last_occurrence(structure.word, structure.z)
            if self.rectangles[-1].bottom != z_last:
                raise AssertionError("b_p must be the last occurrence of s_z")

    def is_neat(self) -> bool:
        """Heights weakly dominate both predecessors."""
        for rect in self.rectangles:
            h = self.heights[self.peaks[rect.j - 1]]
            for pred in (rect.lpred, rect.rpred):
                if pred is not None and h < self.heights[self.peaks[pred - 1]]:
                    return False
        return True

    def columns(self) -> tuple[int, ...]:
        return tuple(
            self.structure.heap.coords(pk)[0] for pk in self.peaks
        )

    def describe(self) -> dict:
        return {
            "peaks": list(self.columns()),
            "neat": self.is_neat(),
            "rectangles": [
                {
                    "alpha": r.alpha,
                    "beta": r.beta,
                    "d": r.d,
                    "ldim": r.ldim,
                    "rdim": r.rdim,
                    "lpred": r.lpred,
                    "rpred": r.rpred,
                }
                for r in self.rectangles
            ],
        }


def enumerate_orderings(w: Perm) -> list[PeakOrdering]:
    """All total orders of the peaks, lexicographic in the column sequence."""
    structure = cog_structure(tuple(w))
    heap = structure.heap
    v_positions = set(range(structure.v_size))
    peaks = [
        j
        for j in sorted(v_positions)
        if not any(k in v_positions and k != j for k in heap.up_set([j]))
    ]
    orderings = [
        PeakOrdering(structure, perm)
        for perm in itertools.permutations(peaks)
    ]
    orderings.sort(key=lambda o: o.columns())
    return orderings


def neat_orderings(w: Perm) -> list[PeakOrdering]:
    return [o for o in enumerate_orderings(w) if o.is_neat()]


def default_ordering(w: Perm) -> PeakOrdering:
    """The lexicographically least neat ordering."""
    neat = neat_orderings(w)
    if not neat:
        raise AssertionError("every cograssmannian heap admits a neat ordering")
    return neat[0]


# -- tau data ----------------------------------------------------------------


@dataclass(frozen=True)
class TauDatum:
    partitions: tuple[Partition, ...]  # one per rectangle
    x_tau: Perm  # in the block group S_z x S_{n-z}

    def to_json(self) -> dict:
        return {
            "partitions": [list(p) for p in self.partitions],
            "x_tau": list(self.x_tau),
        }


@dataclass(frozen=True)
class ZelFixedPoint:
    """Coordinate index sets of a torus fixed point, with the per-rectangle
    bookkeeping sets A, T, D."""

    W: tuple[IndexSet, ...]  # W_1..W_p (W_p equals F_z)
    F: tuple[IndexSet, ...]  # F_1..F_{n-1}
    A: tuple[IndexSet, ...]
    T: tuple[IndexSet, ...]
    D: tuple[IndexSet, ...]
    u: Perm


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    """All partitions with at most ``rows`` parts, each at most ``cols``."""
    out: list[Partition] = []

    def rec(prefix: list[int], remaining: int, bound: int) -> None:
        out.append(tuple(x for x in prefix if x))
        if remaining == 0:
            return
        for part in range(1, bound + 1):
            prefix.append(part)
            rec(prefix, remaining - 1, part)
            prefix.pop()

    rec([], rows, cols)
    return sorted(set(out))


def block_permutations(z: int, n: int) -> list[Perm]:
    """S_z x S_{n-z} inside S_n, in one-line lexicographic order."""
    out = []
    for left in itertools.permutations(range(1, z + 1)):
        for right in itertools.permutations(range(z + 1, n + 1)):
            out.append(left + right)
    return out


def enumerate_tau(ordering: PeakOrdering) -> list[TauDatum]:
    structure = ordering.structure
    boxes = [
        partitions_in_box(r.alpha, r.beta) for r in ordering.rectangles
    ]
    out = []
    for combo in itertools.product(*boxes) if boxes else [()]:
        for x in block_permutations(structure.z, structure.n):
            out.append(TauDatum(tuple(combo), x))
    return out


def tau_fixed_point(ordering: PeakOrdering, tau: TauDatum) -> ZelFixedPoint:
    """Recover the coordinate subspaces from the partition data: the chain
    of W_j is rebuilt left to right, reading T(j) from A(j) by the partition
    offsets, and the flags are the staircases of u x_tau."""
    structure = ordering.structure
    n = structure.n
    W: list[IndexSet] = []
    A_list, T_list, D_list = [], [], []
    for rect in ordering.rectangles:
        left = (
            set(W[rect.lpred - 1])
            if rect.lpred is not None
            else set(range(1, rect.ldim + 1))
        )
        right = (
            set(W[rect.rpred - 1])
            if rect.rpred is not None
            else set(range(1, rect.rdim + 1))
        )
        A = sorted(right - left, reverse=True)
        if len(A) != rect.rdim - rect.ldim:
            raise AssertionError("A(j) has the wrong size")
        parts = list(tau.partitions[rect.j - 1]) + [0] * rect.alpha
        T = []
        for k in range(1, rect.alpha + 1):
            T.append(A[k - 1 + (rect.rdim - rect.d - parts[k - 1])])
        W.append(tuple(sorted(left | set(T))))
        A_list.append(tuple(A))
        T_list.append(tuple(sorted(T, reverse=True)))
        D_list.append(tuple(sorted(set(A) - set(T))))
    if ordering.rectangles:
        fz = set(W[-1])
    else:
        fz = set(range(1, structure.z + 1))
    u = tuple(sorted(fz)) + tuple(sorted(set(range(1, n + 1)) - fz))
    x = perms.multiply(u, tau.x_tau)
    F = tuple(tuple(sorted(x[:d])) for d in range(1, n))
    return ZelFixedPoint(tuple(W), F, tuple(A_list), tuple(T_list), tuple(D_list), u)


def tau_from_fixed_point(ordering: PeakOrdering, fp: ZelFixedPoint) -> TauDatum:
    """The inverse map: tau^{(j)}_k = #{m in D(j) : m < T(j)_k}."""
    partitions = []
    for rect in ordering.rectangles:
        T = fp.T[rect.j - 1]
        D = fp.D[rect.j - 1]
        parts = tuple(sum(1 for m in D if m < t) for t in T)
        partitions.append(tuple(x for x in parts if x))
    u_inv = perms.inverse(fp.u)
    x_full = list(range(1, ordering.structure.n + 1))
    # F determines u x_tau; peel off u
    prev: set[int] = set()
    for d, fd in enumerate(fp.F, start=1):
        (new,) = set(fd) - prev
        x_full[d - 1] = new
        prev = set(fd)
    x_full[-1] = (set(range(1, ordering.structure.n + 1)) - prev).pop()
    x_tau = perms.multiply(u_inv, tuple(x_full))
    return TauDatum(tuple(partitions), x_tau)


def tau_dimension(tau: TauDatum) -> int:
    return sum(sum(p) for p in tau.partitions) + perms.length(tau.x_tau)


def zelevinsky_kl_table(ordering: PeakOrdering) -> dict[Perm, Laurent]:
    """All P_{x,w} at once: cells grouped by u_tau x_tau, graded by
    dim(C_tau) - l(x).  Requires a neat ordering."""
    if not ordering.is_neat():
        raise ValueError("cell counting computes P_{x,w} only for neat orderings")
    table: dict[Perm, dict[int, int]] = {}
    for tau in enumerate_tau(ordering):
        fp = tau_fixed_point(ordering, tau)
        x = perms.multiply(fp.u, tau.x_tau)
        e = tau_dimension(tau) - perms.length(x)
        row = table.setdefault(x, {})
        row[e] = row.get(e, 0) + 1
    return {x: Laurent.from_q_poly(row) for x, row in table.items()}


def zelevinsky_kl(x: Perm, w: Perm, ordering: PeakOrdering | None = None) -> Laurent:
    """P_{x,w}(q) by cell counting over a neat ordering: the sum over tau
    with u_tau x_tau = x of q^{dim(C_tau) - l(x)}."""
    w = tuple(w)
    x = tuple(x)
    if ordering is None:
        ordering = default_ordering(w)
    if not ordering.is_neat():
        raise ValueError("cell counting computes P_{x,w} only for neat orderings")
    coeffs: dict[int, int] = {}
    lx = perms.length(x)
    for tau in enumerate_tau(ordering):
        fp = tau_fixed_point(ordering, tau)
        if perms.multiply(fp.u, tau.x_tau) == x:
            e = tau_dimension(tau) - lx
            coeffs[e] = coeffs.get(e, 0) + 1
    return Laurent.from_q_poly(coeffs)


# -- the geometric mask -------------------------------------------------------


def choose_exit(A: Sequence[int], D: Iterable[int], C: Iterable[int]) -> int:
    """The string that exits the current diagonal southwest: the first k in
    A (ascending) with g(k) = 0 and g(next) = 1, where g counts strings in C
    below k minus strings in D below k."""
    A = sorted(A)
    D = set(D)
    C = set(C)

    def g(m: int) -> int:
        return sum(1 for c in C if c < m) - sum(1 for d in D if d < m)

    # g walks from 0 at the smallest element to |C| - |D| = 1 past the
    # largest, so a 0 -> 1 step always exists.
    values = [g(m) for m in A] + [len(C) - len(D)]
    for i in range(len(A)):
        if values[i] == 0 and values[i + 1] == 1:
            k = A[i]
            if k in D or k not in C:
                raise AssertionError("exit choice fell outside C minus D")
            return k
    raise AssertionError("no admissible exit string")


def _ladder(
    nw: list[int], ne_first: int, k: int, orientation: str
) -> tuple[list[int], int, list[bool]]:
    """Run one diagonal: strings in ``nw`` arrive on the long side, the
    descending string enters at the top.  Returns the off-side outputs, the
    string that descended out of the far end (must be k) and the +/- choices.

    ``orientation`` is 'sw' when the descent runs northeast to southwest
    (rectangles and the right tail: + puts the larger arrival onto the
    descent) and 'se' for the left tail (the descent is the southeast
    direction, so + ejects the larger arrival)."""
    d = ne_first
    outs: list[bool] = []
    off = []
    for s in nw:
        if s == k:
            plus = (d < k) if orientation == "sw" else (d > k)
        else:
            plus = (s < k) if orientation == "sw" else (s > k)
        keep_larger = plus if orientation == "sw" else not plus
        if keep_larger:
            descend, out = max(d, s), min(d, s)
        else:
            descend, out = min(d, s), max(d, s)
        outs.append(plus)
        off.append(out)
        d = descend
    return off, d, outs


def sigma_of_tau(ordering: PeakOrdering, tau: TauDatum) -> Bits:
    """The mask sigma(tau) on the canonical word.

    Rectangles are processed in the peak order; the strings entering each
    one are read off an auxiliary strand simulation (they are determined by
    the already-filled blocks), each NE-SW diagonal routes its g-rule
    choice southwest, and the two parabolic tails sort the blocks into
    u_tau x_tau, spending one '+' per inversion."""
    structure = ordering.structure
    n = structure.n
    word = structure.word
    fp = tau_fixed_point(ordering, tau)
    x = perms.multiply(fp.u, tau.x_tau)

    pm: dict[int, bool] = {}  # word position -> '+'?

    def aux_arrivals(positions: dict[int, str]) -> dict[int, tuple[int, int]]:
        """Strand arrivals (nw, ne) at the requested positions, simulating
        with the bits decided so far (undecided entries bounce; the reads
        requested are never downstream of an undecided entry)."""
        slots = list(range(1, n + 1))
        reads: dict[int, tuple[int, int]] = {}
        for j, c in enumerate(word):
            nw, ne = slots[c - 1], slots[c]
            if j in positions:
                reads[j] = (nw, ne)
            plus = pm.get(j)
            bit = 0 if plus is None else (plus != (nw > ne))
            if bit:
                slots[c - 1], slots[c] = ne, nw
        return reads

    for rect in ordering.rectangles:
        jj = rect.j - 1
        A, T, D = fp.A[jj], set(fp.T[jj]), set(fp.D[jj])
        edge = {rect.grid[(0, b)]: "nw" for b in range(rect.beta)}
        tops = {rect.grid[(a, 0)]: "ne" for a in range(rect.alpha)}
        reads = aux_arrivals({**edge, **tops})
        nw_strings = [reads[rect.grid[(0, b)]][0] for b in range(rect.beta)]
        ne_strings = [reads[rect.grid[(a, 0)]][1] for a in range(rect.alpha)]
        if set(nw_strings) | set(ne_strings) != set(A):
            raise AssertionError("strings entering the rectangle are not A(j)")
        current = nw_strings
        exits = []
        plus_in_rect = 0
        for a in range(rect.alpha):
            C = set(current) | {ne_strings[a]}
            k = choose_exit(A, D, C)
            off, descended, pluses = _ladder(current, ne_strings[a], k, "sw")
            if descended != k:
                raise AssertionError("chosen string failed to exit southwest")
            for b, plus in enumerate(pluses):
                pm[rect.grid[(a, b)]] = plus
                plus_in_rect += plus
            current = off
            exits.append(k)
        if set(exits) != T or set(current) != D:
            raise AssertionError("rectangle routing missed its targets")
        if plus_in_rect != sum(tau.partitions[jj]):
            raise AssertionError("rectangle +'s differ from |tau^{(j)}|")

    # tails: every position is decided on the fly against the slot stream
    bits: list[int] = []
    slots = list(range(1, n + 1))
    z = structure.z
    left_targets: dict[int, int] = {}
    pos = structure.v_size
    for k_seg in range(1, z):
        for c in range(1, z - k_seg + 1):
            left_targets[pos] = x[z - k_seg]  # exits to slot z - k_seg + 1
            pos += 1
    right_targets: dict[int, int] = {}
    for k_seg in range(1, n - z):
        for c in range(n - 1, z + k_seg - 1, -1):
            right_targets[pos] = x[z + k_seg - 1]  # exits to slot z + k_seg
            pos += 1

    for j, c in enumerate(word):
        nw, ne = slots[c - 1], slots[c]
        if j in pm:
            plus = pm[j]
        elif j in left_targets:
            k = left_targets[j]
            plus = (ne > k) if ne != k else (nw > k)
        elif j in right_targets:
            k = right_targets[j]
            plus = (nw < k) if nw != k else (ne < k)
        else:
            raise AssertionError(f"position {j} belongs to no block")
        bit = 1 if plus != (nw > ne) else 0
        bits.append(bit)
        if bit:
            slots[c - 1], slots[c] = ne, nw
    if tuple(slots) != x:
        raise AssertionError("mask does not encode u_tau x_tau")
    from .bott_samelson import encode_pm

    if encode_pm(n, word, bits).count("+") != tau_dimension(tau):
        raise AssertionError("number of +'s differs from the cell dimension")
    return tuple(bits)


def rho_image(
    ordering: PeakOrdering, bits: Sequence[int]
) -> tuple[tuple[IndexSet, ...], tuple[IndexSet, ...]]:
    """Forget a Bott-Samelson fixed point down to the Zelevinsky one: the
    index sets at b_1..b_{p-1} and at the last occurrence of each
    generator."""
    structure = ordering.structure
    n = structure.n
    sets = fixed_point(n, structure.word, bits)
    Ws = tuple(
        sets[rect.bottom] for rect in ordering.rectangles[:-1]
    )
    Fs = []
    for d in range(1, n):
        k = last_occurrence(structure.word, d)
        Fs.append(sets[k] if k is not None else tuple(range(1, d + 1)))
    return Ws, tuple(Fs)


def fixed_point_key(fp: ZelFixedPoint) -> tuple:
    return (fp.W[:-1] if fp.W else (), fp.F)


@dataclass(frozen=True)
class GeometricReport:
    geometric: bool
    collisions: tuple[tuple, ...] = ()
    unmatched_cells: int = 0
    dimension_mismatches: tuple[tuple, ...] = ()

    def __bool__(self) -> bool:
        return self.geometric


def is_geometric(
    ordering: PeakOrdering, mask_set: Iterable[Sequence[int]]
) -> GeometricReport:
    """Whether the masks' fixed points biject onto the resolution's cells
    with matching dimensions under the forgetful map."""
    from .bott_samelson import cell_dimension

    structure = ordering.structure
    n = structure.n
    targets: dict[tuple, int] = {}
    for tau in enumerate_tau(ordering):
        fp = tau_fixed_point(ordering, tau)
        targets[fixed_point_key(fp)] = tau_dimension(tau)
    seen: dict[tuple, Bits] = {}
    collisions = []
    mismatches = []
    for bits in sorted(tuple(b) for b in mask_set):
        Ws, Fs = rho_image(ordering, bits)
        key = (Ws, Fs)
        if key in seen:
            collisions.append((seen[key], bits))
            continue
        seen[key] = bits
        if key not in targets:
            mismatches.append((bits, None))
        elif targets[key] != cell_dimension(n, structure.word, bits):
            mismatches.append((bits, targets[key]))
    unmatched = len(set(targets) - set(seen))
    ok = not collisions and not mismatches and unmatched == 0
    return GeometricReport(ok, tuple(collisions), unmatched, tuple(mismatches))


@dataclass(frozen=True)
class Construction2Result:
    w: Perm
    word: tuple[int, ...]
    ordering_columns: tuple[int, ...]
    neat: bool
    taus: tuple[TauDatum, ...]
    sigmas: tuple[Bits, ...]
    mask_set: frozenset[Bits]


def construction2_set(
    ordering: PeakOrdering, variant: str = "ne-sw"
) -> Construction2Result:
    """The geometric mask set {sigma(tau)}.  For a neat ordering it is
    bounded and admissible; non-neat orderings still produce the masks.

    ``variant='nw-se'`` runs the mirrored construction (filling rectangles
    by NW-SE diagonals) and transports the masks back."""
    if variant == "nw-se":
        return _mirrored_construction2(ordering)
    if variant != "ne-sw":
        raise ValueError(f"unknown variant {variant!r}")
    structure = ordering.structure
    taus = tuple(enumerate_tau(ordering))
    sigmas = []
    for tau in taus:
        bits = sigma_of_tau(ordering, tau)
        WsFs = rho_image(ordering, bits)
        fp = tau_fixed_point(ordering, tau)
        if WsFs != fixed_point_key(fp):
            raise AssertionError("rho does not send sigma(tau) to p_tau")
        sigmas.append(bits)
    mask_set = frozenset(sigmas)
    if len(mask_set) != len(sigmas):
        raise AssertionError("constructed masks are not pairwise distinct")
    return Construction2Result(
        structure.w,
        structure.word,
        ordering.columns(),
        ordering.is_neat(),
        taus,
        tuple(sigmas),
        mask_set,
    )


def _mirrored_construction2(ordering: PeakOrdering) -> Construction2Result:
    structure = ordering.structure
    n = structure.n
    if not ordering.rectangles:
        return construction2_set(ordering, "ne-sw")
    wm = perms.mirror(structure.w)
    structure_m = cog_structure(wm)
    heap, heap_m = structure.heap, structure_m.heap
    # peak order transports through the column flip
    peak_map = {}
    for pk in ordering.peaks:
        c, y = heap.coords(pk)
        target = structure_m.entry(n - c, y)
        if target is None:
            raise AssertionError("mirrored heaps do not align")
        peak_map[pk] = target
    ordering_m = PeakOrdering(structure_m, [peak_map[pk] for pk in ordering.peaks])
    res_m = construction2_set(ordering_m, "ne-sw")
    position_map = []
    for j in range(len(structure_m.word)):
        c, y = heap_m.coords(j)
        target = structure.entry(n - c, y)
        if target is None:
            raise AssertionError("mirrored heaps do not align")
        position_map.append(target)

    def transport(bits: Bits) -> Bits:
        out = [0] * len(bits)
        for j, b in enumerate(bits):
            out[position_map[j]] = b
        return tuple(out)

    sigmas = tuple(transport(b) for b in res_m.sigmas)
    return Construction2Result(
        structure.w,
        structure.word,
        ordering.columns(),
        ordering.is_neat(),
        res_m.taus,
        sigmas,
        frozenset(sigmas),
    )


def compare_constructions(n_max: int) -> list[dict]:
    """For every cograssmannian w up to rank n_max and every neat ordering:
    whether the tree construction's mask set is geometric for that
    ordering.  Deterministic row order."""
    from .construction1 import construction1_set

    rows = []
    for n in range(2, n_max + 1):
        for w in perms.cograssmannian_elements(n):
            res1 = construction1_set(w)
            for ordering in neat_orderings(w):
                report = is_geometric(ordering, res1.mask_set)
                rows.append(
                    {
                        "n": n,
                        "w": list(w),
                        "ordering": list(ordering.columns()),
                        "geometric": report.geometric,
                        "collisions": len(report.collisions),
                        "unmatched_cells": report.unmatched_cells,
                        "dimension_mismatches": len(report.dimension_mismatches),
                    }
                )
    return rows
