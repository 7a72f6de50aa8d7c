"""ASCII, SVG and matplotlib rendering of heaps, masks and string diagrams.

ASCII uses one character per lattice point with columns separated by
spaces: '*' for a bare heap entry, and under a mask '1' plain-one, '0'
plain-zero, 'D' zero-defect, 'd' one-defect, '.' for empty lattice points.
"""

from __future__ import annotations

from typing import Sequence

from . import masks
from .heaps import Heap

STATUS_CHARS = {
    masks.PLAIN_ONE: "1",
    masks.PLAIN_ZERO: "0",
    masks.ZERO_DEFECT: "D",
    masks.ONE_DEFECT: "d",
}


def ascii_heap(heap: Heap, bits: Sequence[int] | None = None) -> str:
    """Rows run from the top level down; '.' marks empty lattice points."""
    chars: dict[int, str] = {}
    if bits is None:
        chars = {j: "*" for j in range(len(heap.word))}
    else:
        statuses = masks.defect_statuses(heap.n, heap.word, bits)
        chars = {j: STATUS_CHARS[st] for j, st in enumerate(statuses)}
    if not heap.word:
        return ""
    rows = []
    for level in range(heap.max_level(), heap.min_level() - 1, -1):
        row = []
        for col in range(1, heap.n):
            j = heap.entry_at.get((col, level))
            row.append(chars[j] if j is not None else ".")
        rows.append(" ".join(row).rstrip())
    return "\n".join(rows)


def _strand_paths(heap: Heap, bits: Sequence[int] | None):
    """Piecewise-linear strand trajectories on the lattice.

    Strand k starts in slot k; slots c and c+1 swap at each mask-1 entry in
    column c.  Points are (x, y) with slot k drawn at x = k - 1/2."""
    if bits is None:
        bits = (1,) * len(heap.word)
    n = heap.n
    top = heap.max_level() + 1 if heap.word else 1
    bottom = heap.min_level() - 1 if heap.word else -1
    slots = list(range(1, n + 1))
    paths: dict[int, list[tuple[float, float]]] = {
        k: [(i + 0.5, top)] for i, k in enumerate(slots)
    }
    by_level: dict[int, list[int]] = {}
    for j, level in enumerate(heap.levels):
        by_level.setdefault(level, []).append(j)
    for level in range(top - 1, bottom, -1):
        for j in by_level.get(level, ()):
            c = heap.word[j]
            a, b = slots[c - 1], slots[c]
            paths[a].append((c, level))
            paths[b].append((c, level))
            if bits[j]:
                slots[c - 1], slots[c] = b, a
    for i, k in enumerate(slots):
        paths[k].append((i + 0.5, bottom))
    return paths


def svg_diagram(heap: Heap, bits: Sequence[int] | None = None, scale: int = 28) -> str:
    """Dots at heap entries and strand polylines, mirroring the usual
    pictures (left of the word at the top)."""
    n = heap.n
    top = heap.max_level() + 1 if heap.word else 1
    bottom = heap.min_level() - 1 if heap.word else -1
    width = (n + 1) * scale
    height = (top - bottom + 1) * scale

    def X(x: float) -> float:
        return (x + 0.5) * scale

    def Y(y: float) -> float:
        return (top - y + 0.5) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    palette = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
               "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    for k, pts in _strand_paths(heap, bits).items():
        coords = " ".join(f"{X(x):.1f},{Y(y):.1f}" for x, y in pts)
        color = palette[(k - 1) % len(palette)]
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"><title>strand {k}</title></polyline>'
        )
    statuses = (
        masks.defect_statuses(heap.n, heap.word, bits) if bits is not None else None
    )
    for j in range(len(heap.word)):
        c, y = heap.coords(j)
        fill = "#000000"
        label = f"s{heap.word[j]}"
        if statuses is not None:
            st = statuses[j]
            fill = {
                masks.PLAIN_ONE: "#000000",
                masks.PLAIN_ZERO: "#ffffff",
                masks.ZERO_DEFECT: "#d62728",
                masks.ONE_DEFECT: "#ff7f0e",
            }[st]
            label += f" {STATUS_CHARS[st]}"
        parts.append(
            f'<circle cx="{X(c):.1f}" cy="{Y(y):.1f}" r="5" fill="{fill}" '
            f'stroke="#000000"><title>{label}</title></circle>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def png_diagram(
    path: str, heap: Heap, bits: Sequence[int] | None = None
) -> None:
    """The same picture rendered through matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(max(3, heap.n * 0.6), max(3, heap.n * 0.5)))
    for k, pts in _strand_paths(heap, bits).items():
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        ax.plot(xs, ys, lw=1.4)
    statuses = (
        masks.defect_statuses(heap.n, heap.word, bits) if bits is not None else None
    )
    face = {
        masks.PLAIN_ONE: "black",
        masks.PLAIN_ZERO: "white",
        masks.ZERO_DEFECT: "tab:red",
        masks.ONE_DEFECT: "tab:orange",
    }
    for j in range(len(heap.word)):
        c, y = heap.coords(j)
        color = "black" if statuses is None else face[statuses[j]]
        ax.scatter([c], [y], s=90, zorder=3, facecolor=color, edgecolor="black")
    ax.set_xticks(range(1, heap.n))
    ax.set_xlabel("generator column")
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def report_figure(path: str, rows: list[dict]) -> None:
    """Pass/fail bar chart for a verification report."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [row["name"] for row in rows]
    values = [1 if row["ok"] else 0 for row in rows]
    colors = ["tab:green" if v else "tab:red" for v in values]
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.4 * len(rows))))
    ax.barh(range(len(rows)), [1] * len(rows), color=colors)
    for i, row in enumerate(rows):
        ax.text(
            0.01,
            i,
            f"{row['name']}: {'pass' if row['ok'] else 'FAIL'} "
            f"({row['seconds']:.1f}s)",
            va="center",
            fontsize=8,
            color="white",
        )
    ax.set_yticks([])
    ax.set_xticks([])
    ax.set_title("verification report")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
