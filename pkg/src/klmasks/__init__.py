"""Exact combinatorics of Deodhar mask sets for cograssmannian permutations.

Subpackages cover the supporting stack: symmetric group combinatorics
(:mod:`klmasks.permutations`), exact Hecke algebra arithmetic over
Z[q^{1/2}, q^{-1/2}] (:mod:`klmasks.hecke`), heaps and string diagrams
(:mod:`klmasks.heaps`), Deodhar's mask model (:mod:`klmasks.masks`),
Lascoux-Schutzenberger trees (:mod:`klmasks.lstree`), the tree-driven mask
construction (:mod:`klmasks.construction1`), Bott-Samelson fixed point
combinatorics (:mod:`klmasks.bott_samelson`) and Zelevinsky resolution
combinatorics with the geometric mask construction
(:mod:`klmasks.zelevinsky`).
"""

__version__ = "0.1.0"
