"""Rooted capacity trees from the ridgeline, edge labelings and the
tree-counting formula for cograssmannian Kazhdan-Lusztig polynomials.

The ridgeline's matched parenthesis pairs are the tree vertices; a vertex
descends from another exactly when its pair is enclosed, and an artificial
root is attached above all maximal pairs.  The leaves are the valleys and
carry capacities.  Valid edge labelings have nonnegative labels weakly
increasing along root-to-leaf paths, with leaf-edge labels bounded by the
leaf capacity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import hecke, masks, permutations as perms
from .heaps import CogStructure, cog_structure
from .laurent import Laurent
from .permutations import Perm

Labeling = tuple[int, ...]  # labels[i] = edge label above vertex i; labels[0] unused


@dataclass
class TreeNode:
    index: int
    parent: int | None
    children: list[int] = field(default_factory=list)
    open_pos: int | None = None  # position of '(' in the ridgeline
    close_pos: int | None = None
    valley_column: int | None = None  # set on leaves
    capacity: int | None = None


class LSTree:
    """The rooted tree of matched ridgeline parentheses plus a root."""

    def __init__(self, structure: CogStructure):
        self.structure = structure
        parens = structure.ridgeline
        # Match parentheses; unmatched ones bound no vertex.
        pairs: list[tuple[int, int]] = []
        stack: list[int] = []
        for pos, ch in enumerate(parens):
            if ch == "(":
                stack.append(pos)
            elif stack:
                pairs.append((stack.pop(), pos))
        pairs.sort()
        self.nodes: list[TreeNode] = [TreeNode(0, None)]
        pair_of_close: dict[int, int] = {}
        for a, b in pairs:
            node = TreeNode(len(self.nodes), None, open_pos=a, close_pos=b)
            pair_of_close[b] = node.index
            self.nodes.append(node)
        # parent = tightest enclosing matched pair, else the root
        for node in self.nodes[1:]:
            best = 0
            for other in self.nodes[1:]:
                if other.index == node.index:
                    continue
                if other.open_pos < node.open_pos and other.close_pos > node.close_pos:
                    if best == 0 or (
                        other.open_pos > self.nodes[best].open_pos
                    ):
                        best = other.index
            node.parent = best
        for node in self.nodes[1:]:
            self.nodes[node.parent].children.append(node.index)
        for node in self.nodes:
            node.children.sort(key=lambda i: self.nodes[i].open_pos)
        # leaves are the consecutive '()' pairs, i.e. the valleys in order
        leaf_nodes = [
            node
            for node in self.nodes[1:]
            if node.close_pos == node.open_pos + 1
        ]
        leaf_nodes.sort(key=lambda node: node.open_pos)
        if len(leaf_nodes) != len(structure.valleys):
            raise AssertionError("leaf/valley mismatch")
        for node, valley in zip(leaf_nodes, structure.valleys):
            node.valley_column = valley.column
            node.capacity = valley.capacity
        for node in self.nodes[1:]:
            if node.valley_column is None and not node.children:
                raise AssertionError("non-valley leaf in tree")
        self.leaf_indices = [node.index for node in leaf_nodes]
        # vertex owning each ')' position: used to map edge labels to the
        # up-steps of the ridgeline
        self.node_of_close = pair_of_close

    def size(self) -> int:
        return len(self.nodes)

    def is_leaf(self, i: int) -> bool:
        return self.nodes[i].valley_column is not None

    def descendant_leaf_capacity(self, i: int, caps: dict[int, int]) -> int:
        """Min capacity over leaves weakly below vertex i."""
        node = self.nodes[i]
        if self.is_leaf(i):
            return caps[node.valley_column]
        return min(self.descendant_leaf_capacity(c, caps) for c in node.children)

    def enumerate_labelings(
        self, capacities: dict[int, int] | None = None
    ) -> list[Labeling]:
        """All valid labelings, in ascending preorder-lexicographic order.

        ``capacities`` overrides the leaf capacities (keyed by valley
        column); this is how the cut-down labeling sets for elements below
        w are produced.
        """
        caps = capacities
        if caps is None:
            caps = {
                self.nodes[i].valley_column: self.nodes[i].capacity
                for i in self.leaf_indices
            }
        preorder: list[int] = []

        def visit(i: int) -> None:
            if i:
                preorder.append(i)
            for c in self.nodes[i].children:
                visit(c)

        visit(0)

        out: list[Labeling] = []
        labels = [0] * len(self.nodes)

        def rec(k: int) -> None:
            if k == len(preorder):
                out.append(tuple(labels))
                return
            i = preorder[k]
            node = self.nodes[i]
            lo = labels[node.parent] if node.parent else 0
            hi = self.descendant_leaf_capacity(i, caps)
            for value in range(lo, hi + 1):
                labels[i] = value
                rec(k + 1)
            labels[i] = 0

        rec(0)
        return out

    def leaf_labels(self, labeling: Labeling) -> dict[int, int]:
        """Valley column -> leaf edge label."""
        return {
            self.nodes[i].valley_column: labeling[i] for i in self.leaf_indices
        }

    def to_json(self) -> dict:
        def node_json(i: int) -> dict:
            node = self.nodes[i]
            data: dict = {"children": [node_json(c) for c in node.children]}
            if self.is_leaf(i):
                data["capacity"] = node.capacity
                data["valley_column"] = node.valley_column
            return data

        return node_json(0)


def ls_tree(w: Perm) -> LSTree:
    return LSTree(cog_structure(tuple(w)))


def label_sum(labeling: Labeling) -> int:
    return sum(labeling)


def gamma_bits(structure: CogStructure, leaf_labels: dict[int, int]) -> tuple[int, ...]:
    """The constant mask: zero the top m entries of each valley column and
    everything above them in the heap."""
    zeroed: set[int] = set()
    seeds: list[int] = []
    for col, m in leaf_labels.items():
        if m:
            entries = structure.v_columns[col]
            if m > len(entries):
                raise ValueError(f"label {m} exceeds capacity of column {col}")
            seeds.extend(entries[len(entries) - m:])
    if seeds:
        zeroed = structure.heap.up_set(seeds)
    return tuple(0 if j in zeroed else 1 for j in range(len(structure.word)))


def gamma_and_x(w: Perm, labeling: Labeling, tree: LSTree | None = None):
    """The constant mask gamma(t) on the canonical word and x(t) = w^gamma."""
    structure = cog_structure(tuple(w))
    if tree is None:
        tree = LSTree(structure)
    bits = gamma_bits(structure, tree.leaf_labels(labeling))
    x = masks.subexpression(structure.n, structure.word, bits)
    prof = masks.defect_profile(structure.n, structure.word, bits)
    if prof.d != 0:
        raise AssertionError("gamma(t) must be a constant (defect-free) mask")
    return bits, x


def constant_mask_zero_counts(structure: CogStructure, x: Perm) -> dict[int, int]:
    """Zeros of the unique constant mask for x, counted per valley column."""
    bits = masks.fwp_mask(structure.n, structure.word, frozenset(), x)
    if bits is None:
        raise ValueError(f"{x} has no constant mask on the canonical word")
    counts = {}
    for valley in structure.valleys:
        entries = structure.v_columns[valley.column]
        counts[valley.column] = sum(1 for j in entries if not bits[j])
    return counts


def cograssmannianization(x: Perm, z: int, n: int) -> Perm:
    """x~ = v w_0^J for the parabolic decomposition x = v u missing s_z."""
    J = set(range(1, n)) - ({z} if z < n else set())
    v, _ = perms.parabolic_decompose(x, J)
    return perms.multiply(v, perms.parabolic_longest(J, n))


_LS_KL_CACHE: dict[tuple[Perm, Perm], Laurent] = {}


def ls_kl(x: Perm, w: Perm) -> Laurent:
    """P_{x,w}(q) for cograssmannian w by counting edge labelings: the sum of
    q^{|t|} over labelings whose leaf labels respect the capacities cut down
    by the constant mask of the cograssmannianization of x.

    Elements sharing a cograssmannianization share the polynomial, so the
    count is cached per (x~, w)."""
    w = tuple(w)
    x = tuple(x)
    structure = cog_structure(w)
    if not perms.bruhat_leq(x, w):
        return Laurent.zero()
    xt = cograssmannianization(x, structure.z, structure.n)
    cached = _LS_KL_CACHE.get((xt, w))
    if cached is not None:
        return cached
    caps = constant_mask_zero_counts(structure, xt)
    tree = LSTree(structure)
    coeffs: dict[int, int] = {}
    for labeling in tree.enumerate_labelings(capacities=caps):
        s = label_sum(labeling)
        coeffs[s] = coeffs.get(s, 0) + 1
    result = Laurent.from_q_poly(coeffs)
    _LS_KL_CACHE[(xt, w)] = result
    return result


def principal_ideal_of_labeling(
    structure: CogStructure, tree: LSTree, labeling: Labeling
) -> list[Perm]:
    """I(t): elements x <= w whose constant-mask zero counts dominate the
    leaf labels in every valley column (brute force; small n only)."""
    leaf = tree.leaf_labels(labeling)
    out = []
    for x in perms.bruhat_interval(structure.w):
        counts = constant_mask_zero_counts(structure, x)
        if all(counts[col] >= m for col, m in leaf.items()):
            out.append(x)
    return out


def cog_bprime_expansion(
    w: Perm, check_ideals: bool = False
) -> list[tuple[Labeling, Perm, int, int]]:
    """The expansion data of C'_w over the lower-ideal basis: one term per
    labeling t, as (t, x(t), |t|, l(x(t))).  The identity

        C'_w = q^{-l(w)/2} * sum_t q^{|t| + l(x(t))/2} B'_{x(t)}

    is verified exactly in the Hecke algebra; a failure raises.

    With ``check_ideals`` the Bruhat-maximality of x(t) in I(t) is also
    verified by brute force (use only for small ranks).
    """
    w = tuple(w)
    structure = cog_structure(w)
    tree = LSTree(structure)
    n = structure.n
    lw = perms.length(w)
    terms = []
    total = hecke.HeckeElement.zero(n)
    big_interval = perms.bruhat_interval(w)
    for labeling in tree.enumerate_labelings():
        _, x = gamma_and_x(w, labeling, tree)
        s = label_sum(labeling)
        lx = perms.length(x)
        terms.append((labeling, x, s, lx))
        perms.seed_interval_cache(x, big_interval)
        total = total + hecke.bprime(x).scale(Laurent.v_power(2 * s + lx - lw))
        if check_ideals:
            ideal = principal_ideal_of_labeling(structure, tree, labeling)
            maximal = perms.bruhat_maximal(ideal)
            if maximal != [x]:
                raise AssertionError(
                    f"I(t) for {labeling} is not the principal ideal of {x}"
                )
    if total != hecke.cprime(w):
        raise AssertionError(f"tree expansion of C'_w failed for w={w}")
    return terms
