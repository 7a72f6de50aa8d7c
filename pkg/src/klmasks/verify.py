"""Verification driver: the full acceptance suite behind `klmasks verify`.

Each check returns (ok, detail); the runner wraps them with timings and
writes machine-readable reports (JSON + CSV) and an optional figure.  The
rank bounds default to the documented targets; lowering them gives quick
smoke runs.
"""

from __future__ import annotations

import json
import sys
import os
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import hecke, masks, permutations as perms
from .bott_samelson import cell_dimension, encode_pm, fixed_point
from .construction1 import build_sigma_t, construction1_set, recover_labeling
from .heaps import Heap, cog_structure
from .laurent import Laurent
from .lstree import cog_bprime_expansion, ls_kl, ls_tree
from .permutations import Perm
from .zelevinsky import (
    compare_constructions,
    construction2_set,
    enumerate_tau,
    is_geometric,
    neat_orderings,
    tau_dimension,
    tau_fixed_point,
    zelevinsky_kl_table,
    choose_exit,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _pool_size() -> int:
    raw = os.environ.get("KLMASKS_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"KLMASKS_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("KLMASKS_THREADS must be positive")
    return value


def _pmap(fn, items):
    """Order-preserving map, fanned out over processes when
    KLMASKS_THREADS > 1.  Results are identical to the sequential run."""
    items = list(items)
    k = _pool_size()
    if k <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    import multiprocessing as mp

    with mp.get_context("fork").Pool(min(k, len(items))) as pool:
        return pool.map(fn, items)


def _concordance_unit(arg: tuple[int, Perm]) -> tuple[Perm, int, str]:
    n, w = arg
    oracle = {x: hecke.kl_polynomial(x, w) for x in perms.bruhat_interval(w)}
    for x, expected in oracle.items():
        if ls_kl(x, w) != expected:
            return w, 0, f"tree count differs at x={x}, w={w}"
    for ordering in neat_orderings(w):
        table = zelevinsky_kl_table(ordering)
        if table != oracle:
            return w, 0, f"cell count differs for w={w}, P={ordering.columns()}"
    return w, len(oracle), ""


def _construction1_unit(arg: tuple[int, Perm, int]) -> tuple[Perm, int, str]:
    n, w, hecke_n_max = arg
    try:
        res = construction1_set(w)
    except AssertionError as exc:
        return w, 0, f"w={w}: {exc}"
    if n <= hecke_n_max:
        report = masks.deodhar_check(n, res.word, res.mask_set)
        if not report.ok:
            return w, 0, f"w={w}: {report.reason}"
    elif not masks.is_bounded(n, res.word, res.mask_set):
        return w, 0, f"w={w}: not bounded"
    return w, len(res.mask_set), ""


def _construction2_unit(arg: tuple[int, Perm]) -> tuple[Perm, int, str]:
    n, w = arg
    count = 0
    for ordering in neat_orderings(w):
        try:
            res = construction2_set(ordering)
        except AssertionError as exc:
            return w, 0, f"w={w}, P={ordering.columns()}: {exc}"
        count += 1
        geo = is_geometric(ordering, res.mask_set)
        if not geo.geometric:
            return w, 0, f"w={w}, P={ordering.columns()}: not geometric"
        report = masks.deodhar_check(n, res.word, res.mask_set)
        if not report.ok:
            return w, 0, f"w={w}, P={ordering.columns()}: {report.reason}"
    return w, count, ""


def _fail(msgs: list[str], text: str) -> None:
    msgs.append(text)


def check_paper_examples() -> tuple[bool, str]:
    """Golden values: the worked examples reproduced exactly."""
    bad: list[str] = []

    if set(perms.reduced_words((3, 4, 1, 2))) != {(2, 3, 1, 2), (2, 1, 3, 2)}:
        _fail(bad, "reduced words of 3412")

    heap = Heap((2, 3, 1, 2, 4), n=5)
    coords = set(heap.entry_at)
    if coords != {(2, 2), (1, 1), (3, 1), (2, 0), (4, 0)}:
        _fail(bad, "heap of s2 s3 s1 s2 s4")

    n, word = 4, (2, 1, 3, 2, 3)
    x = perms.word_to_perm(n, (2, 1))
    if masks.fwp_mask(n, word, {5}, x) != (1, 1, 1, 0, 1):
        _fail(bad, "prescribed-defect mask for s2 s1")
    ideal = masks.fwp_ideal(n, word, {5})
    maximal = set(perms.bruhat_maximal(ideal.keys()))
    if maximal != {perms.word_to_perm(n, (2, 3, 2)), perms.word_to_perm(n, (2, 1, 3))}:
        _fail(bad, "maximal elements of the prescribed-defect ideal")

    table = {
        "000": ("---", (1, 2, 3), 0, ((1,), (1, 2), (1,))),
        "001": ("--+", (2, 1, 3), 0, ((1,), (1, 2), (2,))),
        "010": ("-+-", (1, 3, 2), 0, ((1,), (1, 3), (1,))),
        "100": ("+-+", (2, 1, 3), 1, ((2,), (1, 2), (2,))),
        "101": ("+--", (1, 2, 3), 1, ((2,), (1, 2), (1,))),
        "110": ("++-", (2, 3, 1), 0, ((2,), (2, 3), (2,))),
        "011": ("-++", (3, 1, 2), 0, ((1,), (1, 3), (3,))),
        "111": ("+++", (3, 2, 1), 0, ((2,), (2, 3), (3,))),
    }
    for bits_s, (enc, value, d, fp) in table.items():
        bits = tuple(int(c) for c in bits_s)
        prof = masks.defect_profile(3, (1, 2, 1), bits)
        if (
            encode_pm(3, (1, 2, 1), bits) != enc
            or prof.value != value
            or prof.d != d
            or fixed_point(3, (1, 2, 1), bits) != fp
        ):
            _fail(bad, f"eight-row table at {bits_s}")

    v_word = (1, 5, 7, 2, 4, 6, 3, 5, 4)
    tail = (1, 2, 3, 1, 2, 1, 7, 6, 5, 7, 6, 7)
    running = perms.word_to_perm(8, v_word + tail)
    st = cog_structure(running)
    if st.ridgeline != "(())()":
        _fail(bad, "running-example ridgeline")
    tree = ls_tree(running)
    labelings = tree.enumerate_labelings()
    if len(labelings) != 6:
        _fail(bad, "six edge labelings")
    lw = perms.length(running)
    exps = sorted(
        Fraction(2 * s + lx - lw, 2)
        for (_, _, s, lx) in cog_bprime_expansion(running)
    )
    if exps != [Fraction(-3, 2), Fraction(-3, 2), Fraction(-1, 2),
                Fraction(-1, 2), Fraction(-1, 2), Fraction(0)]:
        _fail(bad, "six-term expansion exponents")

    # cell tables for 4231: u_tau and dimensions
    from .zelevinsky import enumerate_orderings

    o = enumerate_orderings((4, 2, 3, 1))[0]
    rows = {}
    for tau in enumerate_tau(o):
        fp = tau_fixed_point(o, tau)
        rows[(tau.partitions, tau.x_tau)] = (fp.u, tau_dimension(tau))
    expected_1234 = {
        ((), ()): ((1, 2, 3, 4), 0),
        (((1,), ())): None,
    }
    checks_1234 = [
        (((), ()), (1, 2, 3, 4), 0),
        (((1,), ()), (1, 2, 3, 4), 1),
        (((), (1,)), (1, 3, 2, 4), 1),
        (((1,), (1,)), (2, 3, 1, 4), 2),
        (((), (2,)), (1, 4, 2, 3), 2),
        (((1,), (2,)), (2, 4, 1, 3), 3),
    ]
    for partitions, u, dim in checks_1234:
        if rows.get((partitions, (1, 2, 3, 4))) != (u, dim):
            _fail(bad, f"cell table x_tau=1234 at {partitions}")
    for partitions, dim in [
        (((), ()), 1), (((1,), ()), 2), (((), (1,)), 2),
        (((1,), (1,)), 3), (((), (2,)), 3), (((1,), (2,)), 4),
    ]:
        got = rows.get((partitions, (2, 1, 3, 4)))
        if got is None or got[1] != dim:
            _fail(bad, f"cell table x_tau=2134 at {partitions}")

    if hecke.kl_poly_coeffs((1, 2, 3, 4), (4, 2, 3, 1)) != {0: 1, 1: 1}:
        _fail(bad, "P_{1234,4231}")

    if choose_exit(range(5, 18), {5, 8, 12, 14, 16}, {7, 5, 6, 8, 9, 10}) != 6:
        _fail(bad, "choose-k instance")

    return not bad, "; ".join(bad) if bad else "all golden examples match"


def check_oracle_concordance(n_max: int = 6) -> tuple[bool, str]:
    """Tree counting and cell counting both reproduce the recursion oracle."""
    units = [
        (n, w)
        for n in range(2, n_max + 1)
        for w in perms.cograssmannian_elements(n)
    ]
    checked = 0
    for _, count, err in _pmap(_concordance_unit, units):
        if err:
            return False, err
        checked += count
    return True, f"{checked} polynomials agree across both formulas"


def check_tree_expansion(n_max: int = 6) -> tuple[bool, str]:
    """The lower-ideal basis expansion of C'_w, verified in the Hecke algebra."""
    count = 0
    for n in range(2, n_max + 1):
        for w in perms.cograssmannian_elements(n):
            try:
                count += len(cog_bprime_expansion(w))
            except AssertionError as exc:
                return False, f"w={w}: {exc}"
    return True, f"{count} expansion terms verified"


def check_construction1(n_max: int = 6, hecke_n_max: int = 6) -> tuple[bool, str]:
    """The tree mask sets are bounded, admissible and compute the KL data."""
    units = [
        (n, w, hecke_n_max)
        for n in range(2, n_max + 1)
        for w in perms.cograssmannian_elements(n)
    ]
    count = 0
    for _, c, err in _pmap(_construction1_unit, units):
        if err:
            return False, err
        count += c
    return True, f"{count} masks across all tree sets"


def check_construction2(n_max: int = 5) -> tuple[bool, str]:
    """Every neat ordering yields a distinct, geometric, bounded admissible
    mask set computing the KL data."""
    units = [
        (n, w)
        for n in range(2, n_max + 1)
        for w in perms.cograssmannian_elements(n)
    ]
    count = 0
    for _, c, err in _pmap(_construction2_unit, units):
        if err:
            return False, err
        count += c
    return True, f"{count} geometric mask sets verified"


def check_plus_count(
    exhaustive_n: int = 5, random_n: int = 6, samples: int = 100_000
) -> tuple[bool, str]:
    """#+'s = l(value) + d(sigma): exhaustive at the small rank, sampled at
    the larger one."""
    total = 0
    for w in perms.elements(exhaustive_n):
        for word in perms.reduced_words(w):
            p = len(word)
            # depth-first over bits, carrying (prefix, defects, pluses)
            stack = [(0, perms.identity(exhaustive_n), 0, 0)]
            while stack:
                j, prefix, d, plus = stack.pop()
                if j == p:
                    total += 1
                    if plus != perms.length(prefix) + d:
                        return False, f"failed at word={word}"
                    continue
                i = word[j]
                descent = prefix[i - 1] > prefix[i]
                swapped = perms.mult_gen_right(prefix, i)
                if descent:
                    # bit 0: zero-defect '+'; bit 1: one-defect '-'
                    stack.append((j + 1, prefix, d + 1, plus + 1))
                    stack.append((j + 1, swapped, d + 1, plus))
                else:
                    stack.append((j + 1, prefix, d, plus))
                    stack.append((j + 1, swapped, d, plus + 1))
    rng = random.Random(20260810)
    elements_n = list(perms.elements(random_n))
    for _ in range(samples):
        w = elements_n[rng.randrange(len(elements_n))]
        word = perms.first_reduced_word(w)
        bits = tuple(rng.randint(0, 1) for _ in word)
        prof = masks.defect_profile(random_n, word, bits)
        if cell_dimension(random_n, word, bits) != perms.length(prof.value) + prof.d:
            return False, f"failed at w={w}, bits={bits}"
        total += 1
    return True, f"{total} masks checked"


def check_fwp(l_max: int = 8, samples_per_word: int = 100) -> tuple[bool, str]:
    """The prescribed-defect recursion agrees with brute force and its value
    sets are Bruhat lower ideals."""
    rng = random.Random(97)
    words_checked = 0
    for n in (4, 5):
        for w in perms.elements(n):
            lw = perms.length(w)
            if lw == 0 or lw > l_max:
                continue
            for word in perms.reduced_words(w):
                words_checked += 1
                by_profile: dict[frozenset[int], dict[Perm, tuple[int, ...]]] = {}
                for bits in masks.all_masks(word):
                    prof = masks.defect_profile(n, word, bits)
                    slot = by_profile.setdefault(prof.defects, {})
                    if prof.value in slot:
                        return False, f"duplicate value in F^P at word={word}"
                    slot[prof.value] = bits
                seen: set[frozenset[int]] = set()
                for _ in range(samples_per_word):
                    k = rng.randint(0, lw - 1)
                    P = frozenset(rng.sample(range(2, lw + 1), k))
                    if P in seen:
                        continue
                    seen.add(P)
                    brute = by_profile.get(P, {})
                    fast = masks.fwp_ideal(n, word, P)
                    if fast != brute:
                        return False, f"fwp mismatch at word={word}, P={sorted(P)}"
                    values = set(brute)
                    for x in values:
                        if not all(y in values for y in perms.bruhat_interval(x)):
                            return False, f"not a lower ideal at word={word}"
    return True, f"{words_checked} words checked"


def check_injectivity(n_max: int = 6) -> tuple[bool, str]:
    """t -> P(t) is injective and the labeling is recovered from P(t)."""
    count = 0
    for n in range(2, n_max + 1):
        for w in perms.cograssmannian_elements(n):
            st = cog_structure(w)
            tree = ls_tree(w)
            seen: dict[frozenset[int], tuple] = {}
            for t in tree.enumerate_labelings():
                sigma = build_sigma_t(w, t, tree)
                P = masks.defect_profile(n, st.word, sigma).defects
                if P in seen:
                    return False, f"P(t) collision at w={w}: {seen[P]} vs {t}"
                seen[P] = t
                if recover_labeling(w, P) != t:
                    return False, f"recovery failed at w={w}, t={t}"
                count += 1
    return True, f"{count} labelings recovered"


def check_smallness(n_max: int = 5) -> tuple[bool, str]:
    """For neat orderings the fibers satisfy the strict smallness bound:
    dim C_tau - l(x) <= (l(w) - l(x) - 1)/2 for x below w."""
    count = 0
    for n in range(2, n_max + 1):
        for w in perms.cograssmannian_elements(n):
            lw = perms.length(w)
            for ordering in neat_orderings(w):
                for tau in enumerate_tau(ordering):
                    fp = tau_fixed_point(ordering, tau)
                    x = perms.multiply(fp.u, tau.x_tau)
                    if x == w:
                        continue
                    lx = perms.length(x)
                    if 2 * (tau_dimension(tau) - lx) > lw - lx - 1:
                        return False, f"smallness fails at w={w}, tau={tau}"
                    count += 1
    return True, f"{count} cells within the smallness bound"


def check_compare_constructions(n_max: int = 6) -> tuple[bool, str]:
    """The cross-construction probe completes and is deterministic."""
    rows = compare_constructions(min(n_max, 6))
    again = compare_constructions(min(4, n_max))
    if again != compare_constructions(min(4, n_max)):
        return False, "probe is not deterministic"
    non_geo = sum(1 for r in rows if not r["geometric"])
    return True, f"{len(rows)} (w, ordering) pairs probed, {non_geo} non-geometric"


DEFAULT_CHECKS = [
    ("paper-examples", check_paper_examples, {}),
    ("oracle-concordance", check_oracle_concordance, {"n_max": 6}),
    ("tree-expansion", check_tree_expansion, {"n_max": 6}),
    ("construction1-deodhar", check_construction1, {"n_max": 6}),
    ("construction2-geometric", check_construction2, {"n_max": 5}),
    ("plus-count", check_plus_count, {}),
    ("prescribed-defects", check_fwp, {}),
    ("injectivity-recovery", check_injectivity, {"n_max": 6}),
    ("smallness", check_smallness, {"n_max": 5}),
    ("compare-constructions", check_compare_constructions, {"n_max": 6}),
]


def scale_kwargs(kwargs: dict, n_max: int | None) -> dict:
    if n_max is None:
        return kwargs
    out = dict(kwargs)
    for key in ("n_max", "hecke_n_max"):
        if key in out:
            out[key] = min(out[key], n_max)
    if "exhaustive_n" in out:
        out["exhaustive_n"] = min(5, max(3, n_max))
    return out


def run_suite(
    n_max: int | None = None,
    names: list[str] | None = None,
) -> list[CheckResult]:
    """Run the acceptance checks (optionally capped at rank n_max), printing
    one line per criterion."""
    if n_max is not None and n_max > 8:
        raise ValueError("rank guard: verify is limited to n <= 8")
    results = []
    for name, func, kwargs in DEFAULT_CHECKS:
        if names and name not in names:
            continue
        start = time.time()
        try:
            ok, detail = func(**scale_kwargs(kwargs, n_max))
        except Exception as exc:  # report crashes as failures, keep going
            ok, detail = False, f"crashed: {exc!r}"
        elapsed = time.time() - start
        results.append(CheckResult(name, ok, detail, elapsed))
        # timings go to stderr so stdout stays byte-identical across runs
        # and parallelism degrees
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        print(f"  {name} finished in {elapsed:.1f}s", file=sys.stderr)
    return results


def write_reports(
    results: list[CheckResult],
    json_path: str | None = None,
    csv_path: str | None = None,
    figure_path: str | None = None,
) -> None:
    rows = [asdict(r) for r in results]
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump({"ok": all(r.ok for r in results), "checks": rows}, fh, indent=2)
    if csv_path:
        import csv

        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["name", "ok", "seconds", "detail"])
            writer.writeheader()
            for r in rows:
                writer.writerow(
                    {k: r[k] for k in ("name", "ok", "seconds", "detail")}
                )
    if figure_path:
        from .render import report_figure

        report_figure(figure_path, rows)
