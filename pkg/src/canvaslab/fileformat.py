"""Canvas files: a compact JSON document with a canonical byte form.

Layout (keys in this order, no whitespace, one trailing newline)::

    {"n":6,"rotation":[[1,5,4],...],"outer":[0,1,2,3,4],"lists":[[0],...],"name":"w5"}

Vertices are ``0..n-1``.  ``rotation[i]`` is the counterclockwise neighbour
cycle of vertex ``i``; an empty rotation together with an empty list marks a
label that is not part of the graph (this happens when a subgraph keeps the
labels of its parent).  ``name`` is optional.
"""

from __future__ import annotations

import json
from collections.abc import Iterable

from .canvas import Canvas, make_lists
from .plane_graph import PlaneGraph

KEYS = ("n", "rotation", "outer", "lists", "name")


class CanvasFileError(ValueError):
    """Malformed canvas document; ``position`` is ``(line, column)`` when known."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        if position is not None:
            message = f"line {position[0]} column {position[1]}: {message}"
        super().__init__(message)
        self.position = position


def _int_array(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise CanvasFileError(f"{what} must be an array of integers")
    return value


def to_document(t: Canvas) -> dict:
    present = set(t.graph.vertices)
    n = max(present | set(t.outer)) + 1 if present else 0
    rotation = [list(t.graph.neighbors(v)) if v in present else [] for v in range(n)]
    lists = [sorted(t.lists.get(v, ())) if v in present else [] for v in range(n)]
    doc = {"n": n, "rotation": rotation, "outer": list(t.outer), "lists": lists}
    if t.name is not None:
        doc["name"] = t.name
    return doc


def dumps(t: Canvas) -> str:
    return json.dumps(to_document(t), separators=(",", ":"), ensure_ascii=False) + "\n"


def from_document(doc) -> Canvas:
    if not isinstance(doc, dict):
        raise CanvasFileError("top level must be an object")
    unknown = set(doc) - set(KEYS)
    if unknown:
        raise CanvasFileError(f"unknown keys: {sorted(unknown)}")
    missing = [k for k in KEYS[:4] if k not in doc]
    if missing:
        raise CanvasFileError(f"missing keys: {missing}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise CanvasFileError("n must be a non-negative integer")
    rotation, lists = doc["rotation"], doc["lists"]
    if not isinstance(rotation, list) or len(rotation) != n:
        raise CanvasFileError(f"rotation must have {n} entries")
    if not isinstance(lists, list) or len(lists) != n:
        raise CanvasFileError(f"lists must have {n} entries")
    rot = {}
    for v, nbrs in enumerate(rotation):
        _int_array(nbrs, f"rotation[{v}]")
        if any(not 0 <= w < n for w in nbrs):
            raise CanvasFileError(f"rotation[{v}] names a vertex outside 0..{n - 1}")
        if nbrs:
            rot[v] = nbrs
    outer = _int_array(doc["outer"], "outer")
    if len(outer) < 3:
        raise CanvasFileError("outer must list at least three vertices")
    if any(v not in rot for v in outer):
        raise CanvasFileError("outer names a vertex with an empty rotation")
    for v, cs in enumerate(lists):
        _int_array(cs, f"lists[{v}]")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise CanvasFileError("name must be a string")
    g = PlaneGraph(rot, (outer[0], outer[1]))
    return Canvas(g, tuple(outer), make_lists({v: lists[v] for v in rot}), name)


def loads(text: str | bytes) -> Canvas:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CanvasFileError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CanvasFileError(exc.msg, (exc.lineno, exc.colno)) from None
    return from_document(doc)


def load(path) -> Canvas:
    with open(path, "rb") as fh:
        return loads(fh.read())


def dump(t: Canvas, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(t))


def subgraph_canvas(parent: Canvas, g: PlaneGraph, name: str | None = None) -> Canvas:
    """``g`` (a subgraph keeping the parent's labels) with the parent's cycle and lists."""
    return Canvas(g, parent.outer, make_lists({v: parent.lists[v] for v in g.vertices}), name)


def coloring_line(coloring: dict[int, int] | Iterable[tuple[int, int]]) -> str:
    items = sorted(dict(coloring).items())
    return " ".join(f"{v}={c}" for v, c in items)
