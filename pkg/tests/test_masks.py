import random

import pytest

from klmasks import hecke, permutations as P
from klmasks import masks as M
from klmasks.heaps import Heap, strings
from klmasks.laurent import Laurent


class TestDefectProfile:
    def test_mask_100_on_s1s2s1(self):
        prof = M.defect_profile(3, (1, 2, 1), (1, 0, 0))
        assert prof.statuses == (M.PLAIN_ONE, M.PLAIN_ZERO, M.ZERO_DEFECT)
        assert prof.defects == {3}
        assert prof.d == 1
        assert prof.value == (2, 1, 3)

    def test_all_ones_no_defects(self):
        for w in P.elements(4):
            for word in P.reduced_words(w):
                prof = M.defect_profile(4, word, (1,) * len(word))
                assert prof.d == 0
                assert prof.value == w

    def test_mask_101_on_s1s2s1(self):
        prof = M.defect_profile(3, (1, 2, 1), (1, 0, 1))
        assert prof.d == 1
        assert prof.value == (1, 2, 3)
        assert prof.statuses[2] == M.ONE_DEFECT


class TestPrototype:
    def test_all_ones_only(self):
        word = (1, 2, 1)
        p, h = M.prototype(3, word, [(1, 1, 1)])
        assert p == {(3, 2, 1): Laurent.one()}

    def test_full_mask_set_on_s1s2s1(self):
        word = (1, 2, 1)
        p, h = M.prototype(3, word, M.all_masks(word))
        assert p[(1, 2, 3)] == Laurent.from_q_poly({0: 1, 1: 1})
        # h(E) equals the product C'_{s1} C'_{s2} C'_{s1}
        assert h == hecke.cprime_product(3, word)

    def test_product_formula_exhaustive(self):
        # sum over ALL masks of q^{d} T_{value}, scaled, equals the C' product
        for w in P.elements(4):
            for word in P.reduced_words(w):
                _, h = M.prototype(4, word, M.all_masks(word))
                assert h == hecke.cprime_product(4, word)

    def test_product_formula_length_eight(self):
        for w in [(4, 5, 3, 1, 2), (3, 5, 4, 2, 1), (5, 4, 1, 3, 2)]:
            assert P.length(w) == 8
            word = P.reduced_words(w)[0]
            _, h = M.prototype(5, word, M.all_masks(word))
            assert h == hecke.cprime_product(5, word)


class TestBoundedAdmissible:
    def test_full_set_admissible_not_bounded(self):
        word = (1, 2, 1)
        mask_set = list(M.all_masks(word))
        assert M.is_admissible(3, word, mask_set)
        assert not M.is_bounded(3, word, mask_set)

    def test_tiny_set_on_s1(self):
        word = (1,)
        mask_set = [(1,), (0,)]
        assert M.is_admissible(2, word, mask_set)
        assert M.is_bounded(2, word, mask_set)
        assert M.deodhar_check(2, word, mask_set).ok

    def test_defect_free_masks_smooth_case(self):
        # for rationally smooth w the defect-free masks are bounded admissible
        word = (1, 2, 1)
        ideal = M.fwp_ideal(3, word, frozenset())
        mask_set = list(ideal.values())
        report = M.deodhar_check(3, word, mask_set)
        assert report.ok

    def test_deodhar_precondition_reported(self):
        word = (1, 2, 1)
        report = M.deodhar_check(3, word, M.all_masks(word))
        assert not report.ok
        assert not report.precondition_ok


class TestFwp:
    def test_worked_example(self):
        # word s2 s1 s3 s2 s3, P = {5}, x = s2 s1 -> mask 11101
        n, word = 4, (2, 1, 3, 2, 3)
        x = P.word_to_perm(n, (2, 1))
        bits = M.fwp_mask(n, word, {5}, x)
        assert bits == (1, 1, 1, 0, 1)

    def test_worked_example_maximal_elements(self):
        n, word = 4, (2, 1, 3, 2, 3)
        ideal = M.fwp_ideal(n, word, {5})
        maximal = P.bruhat_maximal(ideal.keys())
        expected = {P.word_to_perm(n, (2, 3, 2)), P.word_to_perm(n, (2, 1, 3))}
        assert set(maximal) == expected

    def test_empty_defects_all_ones_for_w(self):
        n, word = 4, (2, 1, 3, 2, 3)
        w = P.word_to_perm(n, word)
        assert M.fwp_mask(n, word, frozenset(), w) == (1,) * 5

    def test_w_with_nonempty_defects_absent(self):
        n, word = 4, (2, 1, 3, 2, 3)
        w = P.word_to_perm(n, word)
        assert M.fwp_mask(n, word, {5}, w) is None

    def test_empty_defects_gives_full_interval(self):
        n, word = 4, (2, 1, 3, 2, 3)
        w = P.word_to_perm(n, word)
        ideal = M.fwp_ideal(n, word, frozenset())
        assert set(ideal) == set(P.bruhat_interval(w))

    def test_against_brute_force_random_P(self):
        rng = random.Random(11)
        for w in P.elements(4):
            lw = P.length(w)
            if lw < 2:
                continue
            word = P.reduced_words(w)[0]
            for _ in range(8):
                k = rng.randint(0, lw - 1)
                Pset = frozenset(rng.sample(range(2, lw + 1), k))
                brute = M.fwp_ideal_brute(4, word, Pset)
                fast = M.fwp_ideal(4, word, Pset)
                assert set(fast) == set(brute)
                for x, bitlist in brute.items():
                    assert len(bitlist) == 1
                    assert fast[x] == bitlist[0]

    def test_lower_ideal_property(self):
        rng = random.Random(3)
        for w in [(4, 2, 3, 1), (3, 4, 1, 2), (4, 3, 2, 1)]:
            word = P.reduced_words(w)[0]
            lw = len(word)
            for _ in range(10):
                k = rng.randint(0, lw - 1)
                Pset = frozenset(rng.sample(range(2, lw + 1), k))
                values = set(M.fwp_ideal(4, word, Pset))
                for x in values:
                    for y in P.bruhat_interval(x):
                        assert y in values

    def test_position_validation(self):
        with pytest.raises(ValueError):
            M.fwp_mask(3, (1, 2, 1), {1}, (1, 2, 3))


class TestGuards:
    def test_brute_force_guard(self):
        with pytest.raises(ValueError):
            list(M.all_masks((1,) * 23))


class TestStringMove:
    def test_preserves_value_on_random_instances(self):
        rng = random.Random(5)
        checked = 0
        for w in [(3, 2, 1, 4), (4, 2, 3, 1), (3, 4, 1, 2)]:
            word = P.reduced_words(w)[0]
            h = Heap(word, 4)
            for _ in range(60):
                bits = tuple(rng.randint(0, 1) for _ in word)
                diag = strings(h, bits)
                pairs = {}
                for j, meet in enumerate(diag.meets):
                    pairs.setdefault(frozenset(meet), []).append(j)
                for meet, positions in pairs.items():
                    if len(positions) >= 2:
                        j, k = positions[0], positions[1]
                        moved = M.string_move(h, bits, j, k)
                        assert M.subexpression(4, word, moved) == M.subexpression(
                            4, word, bits
                        )
                        checked += 1
        assert checked > 10

    def test_rejects_mismatched_pairs(self):
        h = Heap((1, 2), 3)
        with pytest.raises(ValueError):
            M.string_move(h, (1, 1), 0, 1)


def test_mask_set_json_roundtrip():
    word = (1, 2, 1)
    masks = {(1, 1, 1), (1, 1, 0)}
    data = M.mask_set_to_json(word, masks)
    assert data["masks"] == ["110", "111"]
    word2, masks2 = M.mask_set_from_json(data)
    assert word2 == word and masks2 == masks
