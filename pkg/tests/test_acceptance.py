"""Acceptance suite: every criterion at its stated rank and tolerance.

Each test prints one pass/fail line (run pytest with -s to watch them
live).  All checks are exact; the rank bounds are the documented targets:

  1. golden worked examples (under 5 s)
  2. oracle concordance, both formulas, cograssmannian S_n for n <= 6
  3. Hecke-exact tree expansion of C'_w, n <= 6
  4. tree mask sets bounded + admissible + KL-correct, n <= 6
  5. geometric mask sets for every neat ordering, n <= 5
  6. #+'s = l(value) + d(sigma): exhaustive S_5 and 10^5 samples in S_6
  7. prescribed-defect recursion vs brute force, words of length <= 8
  8. labeling-to-defect-set injectivity and recovery, n <= 6
  9. combinatorial smallness bound for neat orderings, n <= 5
 10. construction comparison probe completes deterministically, n <= 6
"""

import time

import pytest

from klmasks import verify


def _run(name, func, kwargs):
    start = time.time()
    ok, detail = func(**kwargs)
    elapsed = time.time() - start
    print(f"[{'PASS' if ok else 'FAIL'}] {name} ({elapsed:.1f}s): {detail}")
    return ok, detail, elapsed


def test_criterion_01_paper_examples():
    ok, detail, elapsed = _run("paper-examples", verify.check_paper_examples, {})
    assert ok, detail
    assert elapsed < 5.0, f"golden examples took {elapsed:.1f}s (limit 5s)"


def test_criterion_02_oracle_concordance():
    start = time.time()
    ok, detail, _ = _run(
        "oracle-concordance", verify.check_oracle_concordance, {"n_max": 6}
    )
    assert ok, detail
    assert time.time() - start < 600, "concordance exceeded the 10 minute target"


def test_criterion_03_tree_expansion():
    ok, detail, _ = _run("tree-expansion", verify.check_tree_expansion, {"n_max": 6})
    assert ok, detail


def test_criterion_04_construction1():
    ok, detail, _ = _run(
        "construction1-deodhar",
        verify.check_construction1,
        {"n_max": 6, "hecke_n_max": 6},
    )
    assert ok, detail


def test_criterion_05_construction2():
    ok, detail, _ = _run(
        "construction2-geometric", verify.check_construction2, {"n_max": 5}
    )
    assert ok, detail


def test_criterion_06_plus_count():
    ok, detail, _ = _run(
        "plus-count",
        verify.check_plus_count,
        {"exhaustive_n": 5, "random_n": 6, "samples": 100_000},
    )
    assert ok, detail


def test_criterion_07_prescribed_defects():
    ok, detail, _ = _run(
        "prescribed-defects",
        verify.check_fwp,
        {"l_max": 8, "samples_per_word": 100},
    )
    assert ok, detail


def test_criterion_08_injectivity_recovery():
    ok, detail, _ = _run(
        "injectivity-recovery", verify.check_injectivity, {"n_max": 6}
    )
    assert ok, detail


def test_criterion_09_smallness():
    ok, detail, _ = _run("smallness", verify.check_smallness, {"n_max": 5})
    assert ok, detail


def test_criterion_10_compare_constructions():
    ok, detail, _ = _run(
        "compare-constructions",
        verify.check_compare_constructions,
        {"n_max": 6},
    )
    assert ok, detail
