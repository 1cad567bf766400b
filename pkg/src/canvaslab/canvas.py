"""Canvases: a 2-connected plane graph, its outer cycle and list assignment."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .plane_graph import (
    CycleRef,
    FaceWalk,
    NotACycleError,
    PlaneGraph,
    check_embedding,
    disk_subgraph,
    edge_key,
    is_two_connected,
    outer_cycle,
)

ListAssignment = Mapping[int, frozenset[int]]


def make_lists(lists: Mapping[int, Iterable[int]] | Iterable[Iterable[int]]) -> ListAssignment:
    """Freeze a list assignment given as a mapping or as a per-vertex sequence."""
    items = lists.items() if isinstance(lists, Mapping) else enumerate(lists)
    return MappingProxyType({int(v): frozenset(int(c) for c in cs) for v, cs in items})


class CanvasError(ValueError):
    pass


@dataclass(frozen=True)
class Finding:
    tag: str
    vertex: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class CanvasValidation:
    violations: tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def tags(self) -> set[str]:
        return {f.tag for f in self.violations}


@dataclass(frozen=True, eq=False)
class Canvas:
    graph: PlaneGraph
    outer: CycleRef
    lists: ListAssignment
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "outer", tuple(self.outer))
        if not isinstance(self.lists, MappingProxyType):
            object.__setattr__(self, "lists", make_lists(self.lists))

    def __reduce__(self):
        # mapping proxies do not pickle; rebuild from a plain dict
        return (Canvas, (self.graph, self.outer, dict(self.lists), self.name))

    @classmethod
    def from_graph(cls, graph: PlaneGraph, lists, name: str | None = None) -> Canvas:
        return cls(graph, outer_cycle(graph), lists, name)

    @property
    def internal_vertices(self) -> tuple[int, ...]:
        c = set(self.outer)
        return tuple(v for v in self.graph.vertices if v not in c)

    @property
    def outer_edges(self) -> frozenset[tuple[int, int]]:
        k = len(self.outer)
        return frozenset(edge_key(self.outer[i], self.outer[(i + 1) % k]) for i in range(k))

    def restricted_lists(self) -> ListAssignment:
        return make_lists({v: self.lists[v] for v in self.graph.vertices if v in self.lists})

    def same_as(self, other: Canvas) -> bool:
        return (
            self.graph == other.graph
            and self.outer == other.outer
            and self.restricted_lists() == other.restricted_lists()
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Canvas):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self) -> int:
        return hash((self.graph, self.outer, tuple(sorted((v, tuple(sorted(c))) for v, c in self.restricted_lists().items()))))

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"Canvas({label}|V|={self.graph.n}, |C|={len(self.outer)}, v={len(self.internal_vertices)})"


def cycle_colorable(cycle: tuple[int, ...], lists: ListAssignment) -> bool:
    """Whether the cycle has a proper coloring from its lists."""
    k = len(cycle)
    first = cycle[0]
    for c0 in sorted(lists.get(first, ())):
        # path DP: reachable colors for the last vertex given first = c0
        reach = {c0}
        for i in range(1, k):
            options = lists.get(cycle[i], frozenset())
            reach = {c for c in options if reach - {c}}
            if not reach:
                break
        if reach - {c0}:
            return True
    return False


def validate_canvas(g: PlaneGraph, c: Iterable[int], lists: ListAssignment) -> CanvasValidation:
    found: list[Finding] = []
    emb = check_embedding(g)
    if not emb.ok:
        found.extend(Finding("bad-embedding", detail=msg) for msg in emb.violations)
        return CanvasValidation(tuple(found))
    if not is_two_connected(g):
        found.append(Finding("not-2-connected"))
    cycle = tuple(c)
    try:
        walk = outer_cycle(g)
    except NotACycleError:
        found.append(Finding("outer-not-cycle"))
        walk = None
    if walk is not None and walk != cycle:
        found.append(Finding("outer-not-cycle", detail=f"{cycle} differs from outer walk {walk}"))
    for v in g.vertices:
        if v not in lists or not lists[v]:
            found.append(Finding("missing-list", v))
    on_c = set(cycle)
    for v in g.vertices:
        if v not in on_c and v in lists and len(lists[v]) < 5:
            found.append(Finding("short-internal-list", v, f"|L({v})| = {len(lists[v])}"))
    if cycle and all(v in lists for v in cycle) and len(cycle) >= 3 and not cycle_colorable(cycle, lists):
        found.append(Finding("boundary-uncolorable"))
    return CanvasValidation(tuple(found))


def validate(t: Canvas) -> CanvasValidation:
    return validate_canvas(t.graph, t.outer, t.lists)


def subcanvas_by_cycle(t: Canvas, c: Iterable[int], auxiliary: Iterable[tuple[int, int]] = (), graph: PlaneGraph | None = None) -> Canvas:
    """The canvas on everything inside ``c``.

    ``graph`` may be an augmented version of ``t.graph`` (edges added inside
    internal faces, listed in ``auxiliary``) when ``c`` uses such edges.
    """
    host = t.graph if graph is None else graph
    sub = disk_subgraph(host, tuple(c), auxiliary)
    return Canvas(sub, outer_cycle(sub), t.lists)


def subcanvas_by_face(t: Canvas, f: FaceWalk) -> Canvas:
    if f.id == t.graph.outer_face_id:
        raise CanvasError("the outer face does not bound a subcanvas")
    if not f.is_cycle():
        raise CanvasError(f"face {f.id} is not bounded by a cycle")
    return subcanvas_by_cycle(t, f.vertices)


def induced_subcanvas(t: Canvas, g2: PlaneGraph) -> Canvas:
    """The subcanvas ``(g2, C, L)``; ``g2`` must sit inside ``t.graph``."""
    problems = []
    if not set(g2.vertices) <= set(t.graph.vertices):
        problems.append("vertices outside the host graph")
    if not g2.edge_set <= t.graph.edge_set:
        problems.append("edges outside the host graph")
    if not t.outer_edges <= g2.edge_set:
        missing = sorted(t.outer_edges - g2.edge_set)
        problems.append(f"outer cycle edges missing: {missing}")
    if not problems and not is_two_connected(g2):
        problems.append("subgraph not 2-connected")
    if problems:
        raise CanvasError("; ".join(problems))
    sub = g2.with_outer(t.graph.outer_dart)
    return Canvas(sub, outer_cycle(sub), t.lists)


# -- fixtures ---------------------------------------------------------------


def wheel(k: int = 5, hub_list: Iterable[int] | None = None) -> Canvas:
    """Rim ``0..k-1`` with singleton lists ``{i}`` and a hub ``k``."""
    rot = {i: ((i + 1) % k, k, (i - 1) % k) for i in range(k)}
    rot[k] = tuple(range(k))
    lists = {i: {i} for i in range(k)}
    lists[k] = set(range(5)) if hub_list is None else set(hub_list)
    return Canvas.from_graph(PlaneGraph(rot, (0, 1)), lists, f"W{k}")


def fix_w5() -> Canvas:
    return wheel(5)


def fix_c4e(lists=None) -> Canvas:
    """C4 with the chord 0-2; all lists ``{1,2}`` unless given."""
    rot = {0: (1, 2, 3), 1: (2, 0), 2: (3, 0, 1), 3: (0, 2)}
    if lists is None:
        lists = {v: {1, 2} for v in range(4)}
    return Canvas.from_graph(PlaneGraph(rot, (0, 1)), lists, "C4e")


def fix_k4(center_list: Iterable[int] = (1, 2, 3, 4)) -> Canvas:
    """Outer triangle with singletons 1,2,3 and a centre vertex 3."""
    rot = {0: (1, 3, 2), 1: (2, 3, 0), 2: (0, 3, 1), 3: (0, 1, 2)}
    lists = {0: {1}, 1: {2}, 2: {3}, 3: set(center_list)}
    return Canvas.from_graph(PlaneGraph(rot, (0, 1)), lists, "K4")


def cycle_graph(k: int) -> PlaneGraph:
    return PlaneGraph({i: ((i + 1) % k, (i - 1) % k) for i in range(k)}, (0, 1))


def double_wheel() -> Canvas:
    """C5 with adjacent hubs a=5 (spokes 0,1,2) and b=6 (spokes 2,3,4,0)."""
    rot = {
        0: (1, 5, 6, 4),
        1: (2, 5, 0),
        2: (3, 6, 5, 1),
        3: (4, 6, 2),
        4: (0, 6, 3),
        5: (0, 1, 2, 6),
        6: (5, 2, 3, 4, 0),
    }
    lists = {i: {i} for i in range(5)}
    lists[5] = set(range(5))
    lists[6] = set(range(5))
    return Canvas.from_graph(PlaneGraph(rot, (0, 1)), lists, "double-wheel")


def icosahedron_minus_triangle() -> Canvas:
    """The icosahedron drawn with outer triangle 0,1,2 (9 internal vertices)."""
    # layers: outer triangle, hexagon of 6 vertices, inner triangle
    outer = [0, 1, 2]
    hexagon = [3, 4, 5, 6, 7, 8]
    inner = [9, 10, 11]
    edges = set()
    for ring in (outer, hexagon, inner):
        for i in range(len(ring)):
            edges.add(edge_key(ring[i], ring[(i + 1) % len(ring)]))
    for i, o in enumerate(outer):
        for h in (hexagon[(2 * i - 1) % 6], hexagon[2 * i], hexagon[2 * i + 1]):
            edges.add(edge_key(o, h))
    for i, c in enumerate(inner):
        for h in (hexagon[2 * i], hexagon[2 * i + 1], hexagon[(2 * i + 2) % 6]):
            edges.add(edge_key(c, h))
    g = _embed_by_angles(edges, _icosa_positions())
    return Canvas.from_graph(g, {v: ({v} if v < 3 else set(range(5))) for v in range(12)}, "icosahedron")


def _icosa_positions() -> dict[int, tuple[float, float]]:
    import math

    pos = {}
    for i in range(3):
        a = math.pi / 2 + 2 * math.pi * i / 3
        pos[i] = (10 * math.cos(a), 10 * math.sin(a))
    for j in range(6):
        a = math.pi / 2 + 2 * math.pi * (j + 0.5) / 6 - 2 * math.pi / 6
        pos[3 + j] = (5 * math.cos(a), 5 * math.sin(a))
    for i in range(3):
        a = math.pi / 2 + 2 * math.pi * (i + 0.25) / 3
        pos[9 + i] = (2 * math.cos(a), 2 * math.sin(a))
    return pos


def _embed_by_angles(edges, pos) -> PlaneGraph:
    """Rotation system from a straight-line drawing (counterclockwise)."""
    import math

    adj: dict[int, list[int]] = {v: [] for v in pos}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    rot = {}
    for v, nbrs in adj.items():
        x, y = pos[v]
        rot[v] = tuple(sorted(nbrs, key=lambda w: math.atan2(pos[w][1] - y, pos[w][0] - x)))
    # outer dart: follow the convex hull counterclockwise from the lowest point
    g = PlaneGraph(rot)
    lowest = min(pos, key=lambda v: (pos[v][1], pos[v][0]))
    for w in rot[lowest]:
        cand = g.with_outer((lowest, w))
        face = cand.outer_face
        if face is not None and _signed_area([pos[u] for u in face.vertices]) > 0 and all(
            _inside_or_on(pos[u], [pos[x] for x in face.vertices]) for u in pos
        ):
            return cand
    raise ValueError("could not locate the outer face")


def _signed_area(pts) -> float:
    return sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1])) / 2


def _inside_or_on(p, poly) -> bool:
    # winding test; boundary points count as inside
    x, y = p
    inside = False
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (x1, y1) == (x, y):
            return True
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if abs(xi - x) < 1e-9:
                return True
            if xi > x:
                inside = not inside
    return inside


FIXTURES = {
    "W5": fix_w5,
    "C4e": fix_c4e,
    "K4": fix_k4,
    "double-wheel": double_wheel,
    "icosahedron": icosahedron_minus_triangle,
}

