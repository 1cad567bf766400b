"""Static drawings: Tutte barycentric layout, SVG and DOT export.

The outer cycle is pinned to a regular polygon and every internal vertex sits
at the average of its neighbours; for a 2-connected plane graph this is a
single sparse linear solve.  The pictures are for inspection only.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .canvas import Canvas
from .plane_graph import is_two_connected


class DrawError(ValueError):
    pass


def tutte_layout(t: Canvas, radius: float = 1.0) -> dict[int, tuple[float, float]]:
    if not is_two_connected(t.graph):
        raise DrawError("graph is not 2-connected; the barycentric layout needs a 2-connected graph")
    k = len(t.outer)
    pos = {}
    for i, v in enumerate(t.outer):
        a = math.pi / 2 + 2 * math.pi * i / k
        pos[v] = (radius * math.cos(a), radius * math.sin(a))
    inner = list(t.internal_vertices)
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        m = len(inner)
        A = np.zeros((m, m))
        b = np.zeros((m, 2))
        for v in inner:
            i = idx[v]
            A[i, i] = t.graph.degree(v)
            for w in t.graph.neighbors(v):
                if w in idx:
                    A[i, idx[w]] -= 1
                else:
                    b[i] += pos[w]
        xy = np.linalg.solve(A, b)
        for v in inner:
            pos[v] = (float(xy[idx[v], 0]), float(xy[idx[v], 1]))
    return pos


def _label(t: Canvas, v: int) -> str:
    cs = ",".join(map(str, sorted(t.lists.get(v, ()))))
    return f"{v}: {{{cs}}}"


def to_svg(t: Canvas, size: int = 400) -> str:
    pos = tutte_layout(t)
    margin = 40
    scale = (size - 2 * margin) / 2

    def xy(v):
        x, y = pos[v]
        return margin + (x + 1) * scale, margin + (1 - y) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if t.name:
        out.append(f"<title>{escape(t.name)}</title>")
    on_c = t.outer_edges
    for a, b in t.graph.edges:
        (x1, y1), (x2, y2) = xy(a), xy(b)
        width = 2.5 if (a, b) in on_c else 1.2
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black" stroke-width="{width}"/>')
    outer = set(t.outer)
    for v in t.graph.vertices:
        x, y = xy(v)
        fill = "#d0d0ff" if v in outer else "#ffd0a0"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="6" fill="{fill}" stroke="black"/>')
        out.append(f'<text x="{x + 8:.2f}" y="{y - 8:.2f}" font-size="11" font-family="sans-serif">{escape(_label(t, v))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def to_dot(t: Canvas) -> str:
    pos = tutte_layout(t)
    name = (t.name or "canvas").replace('"', "'")
    out = [f'graph "{name}" {{', "  node [shape=circle];"]
    outer = set(t.outer)
    for v in t.graph.vertices:
        x, y = pos[v]
        style = ",style=filled,fillcolor=lightblue" if v in outer else ""
        out.append(f'  {v} [label="{_label(t, v)}",pos="{x * 3:.4f},{y * 3:.4f}!"{style}];')
    on_c = t.outer_edges
    for a, b in t.graph.edges:
        attr = " [penwidth=2]" if (a, b) in on_c else ""
        out.append(f"  {a} -- {b}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"
