"""Command-line interface.

All subcommands print JSON by default; `render` also supports ascii, svg
and png (png goes through matplotlib).  Exit status is 0 on success, 1
when a verification-style command finds a failure, 2 on usage errors.
Words are comma-separated generator indices, permutations comma-separated
one-line notation, and mask bits a string like 0101; defect positions are
1-based.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import hecke, masks, permutations as perms
from .bott_samelson import fiber_profile, fixed_point, pi_image
from .construction1 import build_sigma_t, construction1_set, recover_labeling
from .heaps import Heap, cog_structure
from .laurent import Laurent
from .lstree import LSTree, gamma_and_x, label_sum, ls_kl, ls_tree
from .render import ascii_heap, png_diagram, svg_diagram
from .verify import run_suite, write_reports
from .zelevinsky import (
    compare_constructions,
    construction2_set,
    default_ordering,
    enumerate_orderings,
    enumerate_tau,
    is_geometric,
    neat_orderings,
    rho_image,
    sigma_of_tau,
    tau_dimension,
    tau_fixed_point,
    zelevinsky_kl,
)


def parse_perm(text: str) -> tuple[int, ...]:
    try:
        return perms.check_perm([int(t) for t in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_word(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_bits(text: str) -> tuple[int, ...]:
    if set(text) - {"0", "1"}:
        raise argparse.ArgumentTypeError("mask must be a string of 0s and 1s")
    return tuple(int(c) for c in text)


def parse_positions(text: str) -> frozenset[int]:
    if not text:
        return frozenset()
    return frozenset(int(t) for t in text.split(","))


def thread_count() -> int:
    raw = os.environ.get("KLMASKS_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"KLMASKS_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise SystemExit("KLMASKS_THREADS must be positive")
    return value


def emit(data) -> None:
    json.dump(data, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def word_rank(word: tuple[int, ...], explicit: int | None) -> int:
    inferred = (max(word) + 1) if word else 1
    if explicit is None:
        return inferred
    if explicit < inferred:
        raise SystemExit(f"rank {explicit} too small for word {word}")
    return explicit


def pick_ordering(w, index: int | None):
    if index is None:
        return default_ordering(w)
    orderings = enumerate_orderings(w)
    if not 0 <= index < len(orderings):
        raise SystemExit(
            f"--ordering must be in 0..{len(orderings) - 1} for this permutation"
        )
    return orderings[index]


def cmd_kl(args) -> int:
    x, w = args.x, args.w
    if len(x) != len(w):
        raise SystemExit("x and w must have the same rank")
    if args.method == "oracle":
        poly = hecke.kl_polynomial(x, w)
    elif args.method == "tree":
        poly = ls_kl(x, w)
    else:
        poly = zelevinsky_kl(x, w, pick_ordering(w, args.ordering))
    emit({"x": list(x), "w": list(w), "method": args.method, "poly": str(poly)})
    return 0


def cmd_masks_enumerate(args) -> int:
    n = word_rank(args.word, args.rank)
    if not perms.is_reduced(n, args.word):
        raise SystemExit(f"word {list(args.word)} is not reduced")
    ideal = masks.fwp_ideal(n, args.word, args.defects)
    data = masks.mask_set_to_json(args.word, ideal.values())
    data["defects"] = sorted(args.defects)
    data["values"] = {
        "".join(str(b) for b in bits): list(x) for x, bits in sorted(ideal.items())
    }
    data["maximal_values"] = [list(x) for x in perms.bruhat_maximal(ideal.keys())]
    emit(data)
    return 0


def cmd_masks_check(args) -> int:
    with open(args.set, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    word, mask_set = masks.mask_set_from_json(payload)
    n = word_rank(word, args.rank)
    report = masks.deodhar_check(n, word, mask_set)
    p_by_value, _ = masks.prototype(n, word, mask_set)
    emit(
        {
            "word": list(word),
            "masks": len(mask_set),
            "bounded": masks.is_bounded(n, word, mask_set),
            "admissible": masks.is_admissible(n, word, mask_set),
            "deodhar": report.ok,
            "reason": report.reason,
            "polynomials": {
                "".join(map(str, x)): str(poly)
                for x, poly in sorted(p_by_value.items())
            },
        }
    )
    return 0 if report.ok else 1


def cmd_ls(args) -> int:
    w = args.perm
    tree = ls_tree(w)
    st = cog_structure(w)
    if args.ls_command == "tree":
        emit(
            {
                "w": list(w),
                "ridgeline": st.ridgeline,
                "valleys": [
                    {"column": v.column, "capacity": v.capacity} for v in st.valleys
                ],
                "tree": tree.to_json(),
            }
        )
    elif args.ls_command == "labelings":
        labelings = tree.enumerate_labelings()
        emit(
            {
                "w": list(w),
                "count": len(labelings),
                "labelings": [
                    {
                        "labels": list(t[1:]),
                        "weight": label_sum(t),
                        "x": list(gamma_and_x(w, t, tree)[1]),
                    }
                    for t in labelings
                ],
            }
        )
    else:  # kl
        poly = ls_kl(args.x, w)
        emit({"x": list(args.x), "w": list(w), "poly": str(poly)})
    return 0


def cmd_construct1(args) -> int:
    res = construction1_set(args.perm, variant=args.variant)
    n = len(args.perm)
    data = masks.mask_set_to_json(res.word, res.mask_set)
    data["w"] = list(args.perm)
    data["variant"] = args.variant
    data["terms"] = [
        {
            "labels": list(term.labeling[1:]),
            "x_t": list(term.x_t),
            "defect_positions": sorted(term.defect_positions),
            "sigma": "".join(str(b) for b in term.sigma),
        }
        for term in res.terms
    ]
    if args.check:
        report = masks.deodhar_check(n, res.word, res.mask_set)
        data["deodhar"] = report.ok
        emit(data)
        return 0 if report.ok else 1
    emit(data)
    return 0


def cmd_bs(args) -> int:
    n = word_rank(args.word, args.rank)
    if args.bs_command == "fixed-point":
        bits = args.mask
        if len(bits) != len(args.word):
            raise SystemExit("mask length must match word length")
        sets = fixed_point(n, args.word, bits)
        prof = masks.defect_profile(n, args.word, bits)
        from .bott_samelson import cell_dimension, encode_pm

        emit(
            {
                "word": list(args.word),
                "mask": "".join(map(str, bits)),
                "fixed_point": [list(s) for s in sets],
                "flags": [list(s) for s in pi_image(n, args.word, bits)],
                "value": list(prof.value),
                "defects": sorted(prof.defects),
                "encoding": encode_pm(n, args.word, bits),
                "cell_dimension": cell_dimension(n, args.word, bits),
            }
        )
    else:  # fiber
        prof = fiber_profile(n, args.word, args.x)
        emit(
            {
                "word": list(args.word),
                "x": list(args.x),
                "poincare": str(prof.poincare),
                "fiber_dimension": prof.fiber_dimension,
                "small_at_x": prof.small_at_x,
            }
        )
    return 0


def cmd_zel(args) -> int:
    w = args.perm
    if args.zel_command == "orderings":
        emit(
            {
                "w": list(w),
                "orderings": [o.describe() for o in enumerate_orderings(w)],
            }
        )
        return 0
    ordering = pick_ordering(w, args.ordering)
    if args.zel_command == "tau":
        taus = enumerate_tau(ordering)
        emit(
            {
                "w": list(w),
                "ordering": list(ordering.columns()),
                "count": len(taus),
                "tau": [
                    {
                        **tau.to_json(),
                        "u": list(tau_fixed_point(ordering, tau).u),
                        "dimension": tau_dimension(tau),
                    }
                    for tau in taus
                ],
            }
        )
        return 0
    if args.zel_command == "kl":
        poly = zelevinsky_kl(args.x, w, ordering)
        emit(
            {
                "x": list(args.x),
                "w": list(w),
                "ordering": list(ordering.columns()),
                "poly": str(poly),
            }
        )
        return 0
    if args.zel_command == "construct2":
        res = construction2_set(ordering, variant=args.variant)
        data = masks.mask_set_to_json(res.word, res.mask_set)
        data["w"] = list(w)
        data["ordering"] = list(ordering.columns())
        data["neat"] = res.neat
        data["variant"] = args.variant
        if args.check:
            report = masks.deodhar_check(len(w), res.word, res.mask_set)
            data["deodhar"] = report.ok
            emit(data)
            return 0 if report.ok else 1
        emit(data)
        return 0
    # geometric
    with open(args.set, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    word, mask_set = masks.mask_set_from_json(payload)
    if word != cog_structure(w).word:
        raise SystemExit("mask set is not on the canonical word of w")
    report = is_geometric(ordering, mask_set)
    emit(
        {
            "w": list(w),
            "ordering": list(ordering.columns()),
            "geometric": report.geometric,
            "collisions": [
                ["".join(map(str, a)), "".join(map(str, b))]
                for a, b in report.collisions
            ],
            "unmatched_cells": report.unmatched_cells,
            "dimension_mismatches": len(report.dimension_mismatches),
        }
    )
    return 0 if report.geometric else 1


def cmd_compare(args) -> int:
    rows = compare_constructions(args.n)
    if args.csv:
        import csv

        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(
                fh,
                fieldnames=[
                    "n", "w", "ordering", "geometric", "collisions",
                    "unmatched_cells", "dimension_mismatches",
                ],
            )
            writer.writeheader()
            for row in rows:
                writer.writerow(
                    {
                        **row,
                        "w": "".join(map(str, row["w"])),
                        "ordering": ",".join(map(str, row["ordering"])),
                    }
                )
    if args.figure:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        by_n: dict[int, list[int]] = {}
        for row in rows:
            by_n.setdefault(row["n"], []).append(1 if row["geometric"] else 0)
        fig, ax = plt.subplots(figsize=(6, 4))
        ns = sorted(by_n)
        geo = [sum(by_n[n]) for n in ns]
        non = [len(by_n[n]) - sum(by_n[n]) for n in ns]
        ax.bar(ns, geo, label="geometric")
        ax.bar(ns, non, bottom=geo, label="non-geometric")
        ax.set_xlabel("rank n")
        ax.set_ylabel("(w, neat ordering) pairs")
        ax.set_title("tree construction vs cell structure")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.figure, dpi=150)
        plt.close(fig)
    emit(
        {
            "rows": rows,
            "total": len(rows),
            "non_geometric": sum(1 for r in rows if not r["geometric"]),
        }
    )
    return 0


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else None
    try:
        results = run_suite(n_max=args.n, names=names)
    except ValueError as exc:
        raise SystemExit(2 if "guard" in str(exc) else str(exc))
    outdir = Path(args.report_dir) if args.report_dir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
        write_reports(
            results,
            json_path=str(outdir / "report.json"),
            csv_path=str(outdir / "report.csv"),
            figure_path=str(outdir / "report.png"),
        )
    return 0 if all(r.ok for r in results) else 1


def cmd_render(args) -> int:
    if args.what == "segments":
        st = cog_structure(args.perm)
        tree = ls_tree(args.perm)
        labeling = tuple([0] + list(args.labels)) if args.labels else (0,) * tree.size()
        if len(labeling) != tree.size():
            raise SystemExit(f"expected {tree.size() - 1} edge labels")
        sigma = build_sigma_t(args.perm, labeling, tree)
        heap, bits = st.heap, sigma
    else:
        n = word_rank(args.word, args.rank)
        heap = Heap(args.word, n)
        bits = None
        if args.what == "mask":
            if args.mask is None:
                raise SystemExit("render mask needs --mask")
            bits = args.mask
            if len(bits) != len(args.word):
                raise SystemExit("mask length must match word length")

    if args.format == "ascii":
        out = ascii_heap(heap, bits)
        if args.output:
            Path(args.output).write_text(out + "\n", encoding="utf-8")
        else:
            print(out)
    elif args.format == "svg":
        out = svg_diagram(heap, bits)
        if args.output:
            Path(args.output).write_text(out, encoding="utf-8")
        else:
            print(out)
    elif args.format == "png":
        if not args.output:
            raise SystemExit("png rendering needs --output")
        png_diagram(args.output, heap, bits)
    else:  # json
        data = {
            "word": list(heap.word),
            "entries": [
                {"position": j, "column": heap.word[j], "level": heap.levels[j]}
                for j in range(len(heap.word))
            ],
        }
        if bits is not None:
            data["mask"] = "".join(map(str, bits))
            data["statuses"] = masks.defect_statuses(heap.n, heap.word, bits)
        emit(data)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klmasks",
        description="Deodhar mask sets for cograssmannian Kazhdan-Lusztig polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kl", help="a Kazhdan-Lusztig polynomial")
    p.add_argument("--x", type=parse_perm, required=True)
    p.add_argument("--w", type=parse_perm, required=True)
    p.add_argument(
        "--method", choices=["oracle", "tree", "cells"], default="oracle"
    )
    p.add_argument("--ordering", type=int, default=None)
    p.set_defaults(func=cmd_kl)

    p = sub.add_parser("masks", help="masks with prescribed defect positions")
    msub = p.add_subparsers(dest="masks_command", required=True)
    pe = msub.add_parser("enumerate")
    pe.add_argument("--word", type=parse_word, required=True)
    pe.add_argument("--defects", type=parse_positions, default=frozenset())
    pe.add_argument("--rank", "-n", type=int, default=None)
    pe.set_defaults(func=cmd_masks_enumerate)
    pc = msub.add_parser("check")
    pc.add_argument("--set", required=True, help="mask-set JSON file")
    pc.add_argument("--rank", "-n", type=int, default=None)
    pc.set_defaults(func=cmd_masks_check)

    p = sub.add_parser("ls", help="capacity trees and tree-counted polynomials")
    lsub = p.add_subparsers(dest="ls_command", required=True)
    for name in ("tree", "labelings"):
        pp = lsub.add_parser(name)
        pp.add_argument("--perm", type=parse_perm, required=True)
        pp.set_defaults(func=cmd_ls)
    pp = lsub.add_parser("kl")
    pp.add_argument("--x", type=parse_perm, required=True)
    pp.add_argument("--perm", "--w", dest="perm", type=parse_perm, required=True)
    pp.set_defaults(func=cmd_ls)

    p = sub.add_parser("construct1", help="the tree mask set")
    p.add_argument("--perm", type=parse_perm, required=True)
    p.add_argument("--variant", choices=["up-steps", "down-steps"], default="up-steps")
    p.add_argument("--check", action="store_true", help="also run the KL check")
    p.set_defaults(func=cmd_construct1)

    p = sub.add_parser("bs", help="Bott-Samelson fixed points and fibers")
    bsub = p.add_subparsers(dest="bs_command", required=True)
    pf = bsub.add_parser("fixed-point")
    pf.add_argument("--word", type=parse_word, required=True)
    pf.add_argument("--mask", type=parse_bits, required=True)
    pf.add_argument("--rank", "-n", type=int, default=None)
    pf.set_defaults(func=cmd_bs)
    pf = bsub.add_parser("fiber")
    pf.add_argument("--word", type=parse_word, required=True)
    pf.add_argument("--x", type=parse_perm, required=True)
    pf.add_argument("--rank", "-n", type=int, default=None)
    pf.set_defaults(func=cmd_bs)

    p = sub.add_parser("zel", help="cell combinatorics of the small resolution")
    zsub = p.add_subparsers(dest="zel_command", required=True)
    for name in ("orderings", "tau", "kl", "construct2", "geometric"):
        pp = zsub.add_parser(name)
        pp.add_argument("--perm", type=parse_perm, required=True)
        if name != "orderings":
            pp.add_argument("--ordering", type=int, default=None)
        if name == "kl":
            pp.add_argument("--x", type=parse_perm, required=True)
        if name == "construct2":
            pp.add_argument(
                "--variant", choices=["ne-sw", "nw-se"], default="ne-sw"
            )
            pp.add_argument("--check", action="store_true")
        if name == "geometric":
            pp.add_argument("--set", required=True)
        pp.set_defaults(func=cmd_zel)

    p = sub.add_parser(
        "compare-constructions",
        help="probe whether tree mask sets are geometric",
    )
    p.add_argument("-n", type=int, default=5)
    p.add_argument("--csv", default=None)
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("-n", type=int, default=None, help="cap the rank bounds")
    p.add_argument("--suite", default=None, help="run a single named check")
    p.add_argument("--report-dir", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw heaps, masks and segments")
    p.add_argument("what", choices=["heap", "mask", "segments"])
    p.add_argument("--word", type=parse_word, default=None)
    p.add_argument("--mask", type=parse_bits, default=None)
    p.add_argument("--perm", type=parse_perm, default=None)
    p.add_argument("--labels", type=parse_word, default=None)
    p.add_argument("--rank", "-n", type=int, default=None)
    p.add_argument(
        "--format", choices=["ascii", "svg", "png", "json"], default="ascii"
    )
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    thread_count()  # validate the parallelism override early
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "render":
        if args.what in ("heap", "mask") and args.word is None:
            parser.error(f"render {args.what} needs --word")
        if args.what == "segments" and args.perm is None:
            parser.error("render segments needs --perm")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
