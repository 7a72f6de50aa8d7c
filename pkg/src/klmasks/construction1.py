"""The tree-labeling mask construction for cograssmannian permutations.

Each edge labeling t of the capacity tree yields one mask sigma(t) on the
canonical reduced word, built segment by segment from the valleys of the
ridgeline.  The defect positions P(t) of sigma(t) then generate the block
{sigma in F^{P(t)} : value <= x(t)}, and the union over all labelings is a
bounded admissible set computing the Kazhdan-Lusztig data of w.

Per valley the insertion is driven by the partition lambda(v,t) of the
edge labels on the up-steps out of the valley and its derived partitions

    lambda' = positive parts of lambda - (1, 2, 3, ...)
    nu      = positive parts of lambda^T - (0, 1, 2, ...)
    eta     = positive parts of nu - (r, r, r, ...),

placed into the three regions of the valley's segment: lambda' as columns
of zero-defects in region 1, nu as plain-one rows in region 1 and as
defects down the valley diagonals, eta as one-defect rows (with matching
feasible plain-one rows defining the usable part of region 3).  The
remaining nu_i - eta_i zero-defects sit at cross-diagonal entries found by
tracing strings southeast from the region-1 border until they bounce, then
southwest across the lower diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import masks, permutations as perms
from .heaps import CogStructure, cog_structure
from .lstree import LSTree, Labeling, gamma_bits, label_sum, ls_tree
from .permutations import Perm

Bits = tuple[int, ...]


def transpose_partition(lam: tuple[int, ...]) -> tuple[int, ...]:
    lam = tuple(x for x in lam if x > 0)
    if not lam:
        return ()
    return tuple(
        sum(1 for part in lam if part >= i) for i in range(1, max(lam) + 1)
    )


def _positive_parts(values: list[int]) -> tuple[int, ...]:
    return tuple(x for x in values if x > 0)


@dataclass(frozen=True)
class PartitionQuad:
    lam: tuple[int, ...]
    lam_prime: tuple[int, ...]
    nu: tuple[int, ...]
    eta: tuple[int, ...]


def derived_partitions(lam: tuple[int, ...], r: int) -> PartitionQuad:
    """lambda', nu and eta from lambda and the free-diagonal count r."""
    lam_prime = _positive_parts([lam[i] - (i + 1) for i in range(len(lam))])
    conj = transpose_partition(lam)
    nu = _positive_parts([conj[i] - i for i in range(len(conj))])
    eta = _positive_parts([nu[i] - r for i in range(len(nu))])
    for name, part in (("lambda'", lam_prime), ("nu", nu), ("eta", eta)):
        if any(part[i] <= part[i + 1] for i in range(len(part) - 1)):
            raise AssertionError(f"{name} must have distinct nonzero parts: {part}")
    return PartitionQuad(lam, lam_prime, nu, eta)


@dataclass
class ValleySegment:
    """Geometry and statistics of one valley under a fixed labeling.

    Diagonal i is the NW-SE lattice line two units above diagonal i-1;
    diagonals 1..p start at the valley entries (lowest first) and higher
    indices continue as lines through the segment below region 1.  The
    count r is the not-zeroed prefix: diagonals whose first entry below
    region 1 still carries mask value 1 in gamma(t)."""

    column: int
    p: int  # mask-value-0 entries of gamma(t) in the valley column
    q: int  # up-steps from the valley to the next peak on its right
    r: int  # leading diagonals that are not zeroed out
    valley_entries: list[int] = field(default_factory=list)  # lowest first
    diagonals: list[list[int]] = field(default_factory=list)  # SE rays, per entry
    quad: PartitionQuad | None = None


def valley_edge_labels(
    structure: CogStructure, tree: LSTree, labeling: Labeling, column: int
) -> tuple[int, ...]:
    """lambda(v, t): the labels on the up-steps from the valley to the next
    peak, leaf edge first.  Up-steps closing no matched pair contribute 0."""
    peak = structure.next_peak_right(column)
    q = peak - column
    cols = structure.v_col_range
    base = cols.index(column) - 1  # ridgeline index of the '(' into the valley
    lam = []
    for s in range(q):
        close_pos = base + 1 + s
        node = tree.node_of_close.get(close_pos)
        lam.append(labeling[node] if node is not None else 0)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise AssertionError(f"edge labels out of a valley must weakly decrease: {lam}")
    return tuple(lam)


def _diagonal_ray(structure: CogStructure, col: int, level: int) -> list[int]:
    """Heap entries on the southeast ray from (col, level)."""
    out = []
    while True:
        idx = structure.entry(col, level)
        if idx is None:
            break
        out.append(idx)
        col += 1
        level -= 1
    return out


def _diagonal_below_start(
    structure: CogStructure, column: int, p: int, q: int, i: int
) -> tuple[int, int]:
    """Lattice point where diagonal i first leaves region 1 (southeast of
    the region's lower border)."""
    s = min(i, q + 1)
    top = structure.top_level[column]
    return column + s, top - 2 * (p - i) - s


def build_segment(
    structure: CogStructure,
    gamma: Bits,
    lam: tuple[int, ...],
    column: int,
) -> ValleySegment:
    heap = structure.heap
    entries = structure.v_columns[column]
    p = sum(1 for j in entries if not gamma[j])
    q = structure.next_peak_right(column) - column
    seg = ValleySegment(column=column, p=p, q=q, r=0)
    if p:
        seg.valley_entries = entries[len(entries) - p :]
        seg.diagonals = [
            _diagonal_ray(structure, column, heap.levels[j]) for j in seg.valley_entries
        ]

        def free(i: int) -> bool | None:
            col, level = _diagonal_below_start(structure, column, p, q, i)
            idx = structure.entry(col, level)
            if idx is None:
                return None  # diagonal leaves the heap immediately
            return gamma[idx] == 1

        r = 0
        while free(r + 1):
            r += 1
        seg.r = r
        # the remaining real diagonals must all be zeroed (or vacuous)
        for i in range(r + 1, p + 1):
            if free(i):
                raise AssertionError("zeroed-out diagonals must form the upper tail")
    seg.quad = derived_partitions(lam, seg.r)
    return seg


def valley_stats(w: Perm, labeling: Labeling, column: int) -> tuple[int, int, int]:
    """(p, q, r) for the given valley column under the labeling."""
    structure = cog_structure(tuple(w))
    tree = LSTree(structure)
    if column not in [v.column for v in structure.valleys]:
        raise ValueError(f"{column} is not a valley column of {w}")
    gamma = gamma_bits(structure, tree.leaf_labels(labeling))
    lam = valley_edge_labels(structure, tree, labeling, column)
    seg = build_segment(structure, gamma, lam, column)
    return seg.p, seg.q, seg.r


def edge_label_partition(w: Perm, labeling: Labeling, column: int) -> PartitionQuad:
    structure = cog_structure(tuple(w))
    tree = LSTree(structure)
    gamma = gamma_bits(structure, tree.leaf_labels(labeling))
    lam = valley_edge_labels(structure, tree, labeling, column)
    seg = build_segment(structure, gamma, lam, column)
    return seg.quad


def _depth_entry(structure: CogStructure, col: int, depth: int) -> int:
    """The depth-th entry from the top of a heap column (1-based)."""
    entries = structure.heap.columns[col]
    if depth < 1 or depth > len(entries):
        raise AssertionError(f"column {col} has no entry at depth {depth}")
    return entries[len(entries) - depth]


def _trace_cross_entries(
    structure: CogStructure,
    bits: list[int],
    seg: ValleySegment,
    entry_diag: dict[int, int],
) -> dict[int, list[int]]:
    """Billiard paths from the region-1 border: southeast through mask-1
    entries, reflecting at mask-0 entries and empty lattice points; their
    southwest crossings of the valley diagonals are the cross-diagonal
    entries."""
    heap = structure.heap
    min_level = heap.min_level()
    eta_rows = len(seg.quad.eta)
    crossings: dict[int, list[int]] = {}
    top = structure.top_level[seg.column]
    for m in range(1, seg.r + eta_rows + 2):
        s = min(m, seg.q + 1)
        col = seg.column + s
        level = top - 2 * (seg.p - m) - s
        direction = 1  # southeast
        while level >= min_level and 0 < col < structure.n + 1:
            idx = structure.entry(col, level)
            if idx is not None and bits[idx] == 1:
                if direction == -1 and idx in entry_diag:
                    crossings.setdefault(entry_diag[idx], []).append(idx)
            else:
                direction = -direction
            col += direction
            level -= 1
    return crossings


def build_sigma(
    w: Perm, labeling: Labeling, tree: LSTree | None = None
) -> tuple[Bits, Perm, dict[int, str]]:
    """The mask sigma(t): bits, its value x(t) and the expected status of
    every position (checked against the actual defect profile)."""
    structure = cog_structure(tuple(w))
    if tree is None:
        tree = LSTree(structure)
    leaf = tree.leaf_labels(labeling)
    gamma = gamma_bits(structure, leaf)
    x_t = masks.subexpression(structure.n, structure.word, gamma)
    bits = list(gamma)
    expected = {
        j: (masks.PLAIN_ONE if gamma[j] else masks.PLAIN_ZERO)
        for j in range(len(gamma))
    }

    for valley in structure.valleys:
        vcol = valley.column
        lam = valley_edge_labels(structure, tree, labeling, vcol)
        if not any(lam):
            continue
        seg = build_segment(structure, gamma, lam, vcol)
        quad = seg.quad
        p, q, r = seg.p, seg.q, seg.r
        conj = transpose_partition(lam)

        # Region 1: lambda'_k zero-defects at the bottom of column v+k.
        for k, parts in enumerate(quad.lam_prime, start=1):
            col_entries = structure.heap.columns[vcol + k]
            region1 = col_entries[len(col_entries) - p :]
            for j in region1[:parts]:
                if bits[j] != 0:
                    raise AssertionError("region-1 zero-defect site not masked 0")
                expected[j] = masks.ZERO_DEFECT

        # Region 1: row i of nu as plain-ones at constant depth p - lambda'_i.
        for i, nu_i in enumerate(quad.nu, start=1):
            lam_prime_i = quad.lam_prime[i - 1] if i - 1 < len(quad.lam_prime) else 0
            depth = p - lam_prime_i
            for col in range(vcol + i, vcol + i + nu_i):
                j = _depth_entry(structure, col, depth)
                bits[j] = 1
                expected[j] = masks.PLAIN_ONE

        def diagonal_below(i: int, count: int) -> list[int]:
            """The first ``count`` entries of diagonal i below region 1."""
            col, level = _diagonal_below_start(structure, vcol, p, q, i)
            out = []
            for _ in range(count):
                idx = structure.entry(col, level)
                if idx is None:
                    raise AssertionError(
                        f"diagonal {i} of valley {vcol} is too short"
                    )
                out.append(idx)
                col += 1
                level -= 1
            return out

        # Feasible subregion: row i of eta as plain-ones on diagonal r+i.
        for i, eta_i in enumerate(quad.eta, start=1):
            for idx in diagonal_below(r + i, eta_i):
                bits[idx] = 1
                expected[idx] = masks.PLAIN_ONE

        # One-defect rows: row i of eta at the top of diagonal i below region 1.
        for i, eta_i in enumerate(quad.eta, start=1):
            for idx in diagonal_below(i, eta_i):
                bits[idx] = 1
                expected[idx] = masks.ONE_DEFECT

        # Cross-diagonal zero-defects: nu_i - eta_i lowest crossings on diag i.
        entry_diag = {
            idx: i
            for i, ray in enumerate(seg.diagonals, start=1)
            for idx in ray
        }
        crossings = _trace_cross_entries(structure, bits, seg, entry_diag)
        for i, nu_i in enumerate(quad.nu, start=1):
            eta_i = quad.eta[i - 1] if i - 1 < len(quad.eta) else 0
            need = nu_i - eta_i
            if need <= 0:
                continue
            sites = sorted(
                set(crossings.get(i, ())), key=lambda j: structure.heap.levels[j]
            )
            if len(sites) < need:
                raise AssertionError(
                    f"valley {vcol}: diagonal {i} lacks cross-diagonal entries "
                    f"({len(sites)} < {need})"
                )
            for idx in sites[:need]:
                if bits[idx] != 1:
                    raise AssertionError("cross-diagonal site was not masked 1")
                bits[idx] = 0
                expected[idx] = masks.ZERO_DEFECT

        # Bookkeeping: diagonal i receives exactly lambda^T_i defects.
        for i in range(1, p + 1):
            conj_i = conj[i - 1] if i - 1 < len(conj) else 0
            placed = min(conj_i, i - 1)
            nu_i = quad.nu[i - 1] if i - 1 < len(quad.nu) else 0
            if placed + nu_i != conj_i:
                raise AssertionError("per-diagonal defect budget violated")

    return tuple(bits), x_t, expected


def build_sigma_t(w: Perm, labeling: Labeling, tree: LSTree | None = None) -> Bits:
    """sigma(t), verified: value x(t), defect count |t| and per-position
    statuses all match the construction's claims."""
    structure = cog_structure(tuple(w))
    if tree is None:
        tree = LSTree(structure)
    bits, x_t, expected = build_sigma(w, labeling, tree)
    prof = masks.defect_profile(structure.n, structure.word, bits)
    if prof.value != x_t:
        raise AssertionError(f"sigma(t) encodes {prof.value}, expected {x_t}")
    if prof.d != label_sum(labeling):
        raise AssertionError(
            f"sigma(t) has {prof.d} defects, expected |t| = {label_sum(labeling)}"
        )
    for j, status in enumerate(prof.statuses):
        if expected[j] != status:
            raise AssertionError(
                f"position {j} has status {status}, construction claimed {expected[j]}"
            )
    return bits


@dataclass(frozen=True)
class Construction1Term:
    labeling: Labeling
    x_t: Perm
    sigma: Bits
    defect_positions: frozenset[int]


@dataclass(frozen=True)
class Construction1Result:
    w: Perm
    word: tuple[int, ...]
    terms: tuple[Construction1Term, ...]
    mask_set: frozenset[Bits]


def construction1_set(w: Perm, variant: str = "up-steps") -> Construction1Result:
    """The bounded admissible mask set E_w: the union over labelings t of
    the masks with defect set P(t) and value at most x(t).

    ``variant='down-steps'`` runs the mirrored construction (down-steps as
    edge representatives) and transports the masks back through the
    diagram flip; it satisfies the same postconditions but generally
    differs from the up-step set.
    """
    w = tuple(w)
    if variant == "down-steps":
        return _mirrored_construction(w)
    if variant != "up-steps":
        raise ValueError(f"unknown variant {variant!r}")
    structure = cog_structure(w)
    tree = LSTree(structure)
    n = structure.n
    terms = []
    mask_set: set[Bits] = set()
    seen_defect_sets: dict[frozenset[int], Labeling] = {}
    for labeling in tree.enumerate_labelings():
        sigma = build_sigma_t(w, labeling, tree)
        prof = masks.defect_profile(n, structure.word, sigma)
        P = prof.defects
        if P in seen_defect_sets:
            raise AssertionError(
                f"defect sets collide: {labeling} vs {seen_defect_sets[P]}"
            )
        seen_defect_sets[P] = labeling
        terms.append(Construction1Term(labeling, prof.value, sigma, P))
        for y in perms.bruhat_interval(prof.value):
            bits = masks.fwp_mask(n, structure.word, P, y)
            if bits is None:
                raise AssertionError(
                    f"missing mask for {y} with defect set {sorted(P)}"
                )
            mask_set.add(bits)
    return Construction1Result(w, structure.word, tuple(terms), frozenset(mask_set))


def _mirrored_construction(w: Perm) -> Construction1Result:
    n = len(w)
    structure = cog_structure(w)
    if not structure.valleys:
        # trivial tree: both variants are the defect-free interval
        return construction1_set(w, "up-steps")
    wm = perms.mirror(w)
    mirrored = construction1_set(wm, "up-steps")
    structure_m = cog_structure(wm)

    # Transport masks through the coordinate flip (c, y) -> (n - c, y); the
    # two canonical words are commutation-equivalent linearizations of
    # mirrored heaps, so values, defects and statuses all transport.
    position_map = []
    for j in range(len(structure_m.word)):
        c, y = structure_m.heap.coords(j)
        target = structure.entry(n - c, y)
        if target is None:
            raise AssertionError("mirrored heaps do not align")
        position_map.append(target)

    def transport(bits: Bits) -> Bits:
        out = [0] * len(bits)
        for j, b in enumerate(bits):
            out[position_map[j]] = b
        return tuple(out)

    terms = []
    for term in mirrored.terms:
        sigma = transport(term.sigma)
        prof = masks.defect_profile(n, structure.word, sigma)
        if prof.value != perms.mirror(term.x_t):
            raise AssertionError("mirror transport changed the encoded element")
        terms.append(
            Construction1Term(term.labeling, prof.value, sigma, prof.defects)
        )
    mask_set = frozenset(transport(bits) for bits in mirrored.mask_set)
    return Construction1Result(w, structure.word, tuple(terms), mask_set)


# -- recovering the labeling from a defect set --------------------------------


def _run_from_depth_two(structure: CogStructure, P: frozenset[int], col: int) -> int:
    """Length of the defect run in the given column starting just below the
    ridgeline (depth 2)."""
    entries = structure.heap.columns.get(col, [])
    k = 0
    depth = 2
    while depth <= len(entries):
        j = entries[len(entries) - depth]
        if (j + 1) in P:
            k += 1
            depth += 1
        else:
            break
    return k


def _line_has_defect_below(
    structure: CogStructure, P: frozenset[int], col: int, level: int
) -> bool:
    """Defects strictly southeast of (col, level) on its NW-SE line."""
    col += 1
    level -= 1
    while True:
        idx = structure.entry(col, level)
        if idx is None:
            return False
        if (idx + 1) in P:
            return True
        col += 1
        level -= 1


def _leaf_label_candidates(
    structure: CogStructure, P: frozenset[int]
) -> list[tuple[int, list[int]]]:
    """Per valley: candidate leaf labels, the primary discriminator first.

    For a primitive valley with a depth-2 defect run of length k in the
    column right of it, the label is k when no defects lie on the diagonal
    southeast of the entry below the run, and k+1 otherwise."""
    out = []
    for valley in structure.valleys:
        col = valley.column + 1
        entries = structure.heap.columns.get(col, [])
        k = _run_from_depth_two(structure, P, col)
        candidates: list[int]
        if k + 2 <= len(entries):
            below = entries[len(entries) - (k + 2)]
            c_col, c_level = structure.heap.coords(below)
            hit = _line_has_defect_below(structure, P, c_col, c_level)
            primary = k + 1 if hit else k
        else:
            primary = k
        candidates = [primary]
        for alt in (k, k + 1):
            if alt != primary:
                candidates.append(alt)
        candidates = [e for e in candidates if 0 <= e <= valley.capacity]
        out.append((valley.column, candidates))
    return out


def recover_labeling(w: Perm, P: frozenset[int] | set[int]) -> Labeling | None:
    """Invert t -> P(t): identify primitive valleys, recover gamma(t), read
    the per-diagonal defect counts to rebuild the edge labels, and validate
    by rebuilding sigma.  Returns None when P is not in the image.
    """
    w = tuple(w)
    P = frozenset(P)
    structure = cog_structure(w)
    tree = LSTree(structure)

    candidate_lists = _leaf_label_candidates(structure, P)

    def try_leaf_labels(leaf_labels: dict[int, int]) -> Labeling | None:
        try:
            gamma = gamma_bits(structure, leaf_labels)
        except ValueError:
            return None
        labels = [0] * tree.size()
        for valley in structure.valleys:
            try:
                seg = build_segment(structure, gamma, (), valley.column)
            except AssertionError:
                return None
            # Count defects per diagonal to recover lambda^T.  A zeroed-out
            # diagonal only hosts defects inside the segment's columns; its
            # deeper lattice line may carry another valley's cross-diagonal
            # defects, which must not be counted.
            conj = []
            for i, ray in enumerate(seg.diagonals, start=1):
                count = 0
                for idx in ray:
                    if i > seg.r and structure.heap.coords(idx)[0] > valley.column + seg.q:
                        break
                    if (idx + 1) in P:
                        count += 1
                conj.append(count)
            lam = transpose_partition(tuple(conj))
            lam = lam + (0,) * (seg.q - len(lam))
            if len(lam) > seg.q:
                return None
            cols = structure.v_col_range
            base = cols.index(valley.column) - 1
            for s in range(seg.q):
                node = tree.node_of_close.get(base + 1 + s)
                if node is None:
                    if lam[s]:
                        return None
                    continue
                labels[node] = lam[s]
        labeling = tuple(labels)
        # validate: proper labeling whose mask reproduces P
        for node in tree.nodes[1:]:
            if node.parent and labeling[node.index] < labeling[node.parent]:
                return None
            if tree.is_leaf(node.index) and labeling[node.index] > node.capacity:
                return None
        try:
            sigma = build_sigma_t(w, labeling, tree)
        except AssertionError:
            return None
        prof = masks.defect_profile(structure.n, structure.word, sigma)
        return labeling if prof.defects == P else None

    # primary pass, then bounded fallback over the per-valley alternatives
    def search(i: int, chosen: dict[int, int]) -> Labeling | None:
        if i == len(candidate_lists):
            return try_leaf_labels(dict(chosen))
        col, cands = candidate_lists[i]
        for e in cands:
            chosen[col] = e
            res = search(i + 1, chosen)
            if res is not None:
                return res
        chosen.pop(col, None)
        return None

    return search(0, {})
