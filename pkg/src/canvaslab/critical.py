"""Criticality predicates, critical subcanvases and minimal extenders.

``G`` is T-critical when every proper subgraph containing ``T`` admits a
coloring of ``T`` that extends to it but not to ``G``.  Extension is monotone
under taking subgraphs, so it suffices to test the maximal proper subgraphs:
``G - e`` for each edge ``e`` outside ``T`` and ``G - v`` for each isolated
vertex ``v`` outside ``T``.  Any other proper subgraph containing ``T`` lies
inside one of those, and a coloring extending to the larger graph extends to
the smaller one.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .canvas import Canvas, ListAssignment
from .colorer import (
    Coloring,
    ColoringError,
    ExtensionCache,
    enumerate_boundary_colorings,
    enumerate_colorings,
    extends,
    precoloring_conflicts,
)
from .plane_graph import Edge, PlaneGraph, edge_key, is_two_connected


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset[int]
    edges: frozenset[Edge]

    @classmethod
    def of(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> Subgraph:
        es = frozenset(edge_key(*e) for e in edges)
        return cls(frozenset(vertices) | {x for e in es for x in e}, es)

    @classmethod
    def cycle(cls, cycle: Iterable[int]) -> Subgraph:
        c = tuple(cycle)
        return cls.of(c, [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))])


@dataclass(frozen=True)
class CriticalityCertificate:
    """Verdict plus one witness coloring of ``T`` per edge outside ``T``.

    ``witnesses[e]`` extends to ``G - e`` but not to ``G``; it is ``None``
    when no such coloring exists.  ``blockers`` names isolated vertices
    outside ``T`` (each makes the verdict false on its own).
    """

    verdict: bool
    witnesses: Mapping[Edge, Coloring | None] = field(default_factory=dict)
    blockers: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict

    def failing_edges(self) -> list[Edge]:
        return [e for e, w in self.witnesses.items() if w is None]


def _adj_without(adj: Mapping[int, frozenset[int]], e: Edge) -> dict[int, frozenset[int]]:
    u, v = e
    out = dict(adj)
    out[u] = adj[u] - {v}
    out[v] = adj[v] - {u}
    return out


def _check_inside(g: PlaneGraph, T: Subgraph) -> None:
    if not T.vertices <= set(g.vertices) or not T.edges <= g.edge_set:
        raise ValueError("T is not a subgraph of G")


def is_T_critical(
    g: PlaneGraph,
    T: Subgraph,
    lists: ListAssignment,
    cache: ExtensionCache | None = None,
) -> CriticalityCertificate:
    _check_inside(g, T)
    if T.vertices == set(g.vertices) and T.edges == g.edge_set:
        raise ValueError("G = T; criticality requires G != T")
    adj = g.adjacency
    blockers = tuple(v for v in g.vertices if not adj[v] and v not in T.vertices)
    stuck = [phi for phi in enumerate_colorings(T.vertices, T.edges, lists) if not extends(adj, lists, phi, cache)]
    witnesses: dict[Edge, Coloring | None] = {}
    for e in g.edges:
        if e in T.edges:
            continue
        reduced = _adj_without(adj, e)
        witnesses[e] = next((phi for phi in stuck if extends(reduced, lists, phi, cache)), None)
    verdict = not blockers and all(w is not None for w in witnesses.values())
    if verdict:
        reason = ""
    elif blockers:
        reason = f"isolated vertices outside T: {list(blockers)}"
    elif not stuck:
        reason = "every coloring of T extends to G"
    else:
        reason = f"no witness for edges {[e for e, w in witnesses.items() if w is None]}"
    return CriticalityCertificate(verdict, witnesses, blockers, reason)


def is_phi_critical(g: PlaneGraph, T: Subgraph, lists: ListAssignment, phi: Mapping[int, int], cache: ExtensionCache | None = None) -> bool:
    _check_inside(g, T)
    if set(phi) != set(T.vertices):
        raise ColoringError("phi must color exactly the vertices of T")
    t_adj = {v: frozenset(w for w in g.adjacency[v] if edge_key(v, w) in T.edges) for v in T.vertices}
    problems = precoloring_conflicts(t_adj, lists, phi)
    if problems:
        raise ColoringError("; ".join(problems))
    adj = g.adjacency
    if any(not adj[v] for v in g.vertices if v not in T.vertices):
        return False
    if extends(adj, lists, phi, cache):
        return False
    return all(extends(_adj_without(adj, e), lists, phi, cache) for e in g.edges if e not in T.edges)


def is_critical_canvas(t: Canvas, cache: ExtensionCache | None = None) -> CriticalityCertificate:
    T = Subgraph.cycle(t.outer)
    if t.graph.edge_set == T.edges and set(t.graph.vertices) == T.vertices:
        return CriticalityCertificate(False, {}, (), "G = C")
    return is_T_critical(t.graph, T, t.lists, cache)


def verify_certificate(g: PlaneGraph, T: Subgraph, lists: ListAssignment, cert: CriticalityCertificate) -> bool:
    """Re-check every witness in both directions; True when the certificate holds up."""
    adj = g.adjacency
    outside = [e for e in g.edges if e not in T.edges]
    if cert.verdict:
        if set(cert.witnesses) != set(outside):
            return False
        for e, phi in cert.witnesses.items():
            if phi is None or set(phi) != set(T.vertices):
                return False
            if extends(adj, lists, phi) or not extends(_adj_without(adj, e), lists, phi):
                return False
        return True
    return not is_T_critical(g, T, lists).verdict


def find_critical_subcanvas(t: Canvas, phi: Mapping[int, int], cache: ExtensionCache | None = None) -> Canvas:
    """A C-critical subcanvas on which ``phi`` still fails to extend.

    Edges outside ``C`` are deleted greedily in ascending order while ``phi``
    keeps failing; vertices left isolated are dropped.  The result is
    phi-critical, hence C-critical.
    """
    adj = t.graph.adjacency
    if extends(adj, t.lists, phi, cache):
        raise ValueError("phi extends to the whole canvas")
    c_edges = t.outer_edges
    current = dict(adj)
    changed = True
    while changed:
        changed = False
        for e in sorted({edge_key(v, w) for v in current for w in current[v]} - c_edges):
            trial = _adj_without(current, e)
            if not extends(trial, t.lists, phi, cache):
                current = trial
                changed = True
    on_c = set(t.outer)
    keep_v = [v for v in current if current[v] or v in on_c]
    keep_e = {edge_key(v, w) for v in keep_v for w in current[v]}
    sub = t.graph.restrict(keep_v, keep_e).with_outer(t.graph.outer_dart)
    result = Canvas(sub, t.outer, t.lists)
    if sub.edge_set != c_edges:
        assert is_critical_canvas(result, cache).verdict, "greedy reduction did not give a critical subcanvas"
    return result


@dataclass(frozen=True)
class ExtenderResult:
    graph: PlaneGraph
    deletions_checked: int
    critical: bool


def extract_minimal_extender(g: PlaneGraph, C: tuple[int, ...], lists: ListAssignment, cache: ExtensionCache | None = None) -> PlaneGraph:
    """Minimal H between C and G such that colorings of C extending to H extend to G.

    Boundary colorings that fail on ``G`` are computed once; ``P(H)`` holds
    exactly when none of them extends to ``H``.  Edges off ``C`` are tried for
    deletion in ascending order until a fixed point, then isolated vertices off
    ``C`` are dropped.  The result is C-critical or equal to ``C``.
    """
    return extract_minimal_extender_full(g, C, lists, cache).graph


def extract_minimal_extender_full(g: PlaneGraph, C: tuple[int, ...], lists: ListAssignment, cache: ExtensionCache | None = None) -> ExtenderResult:
    T = Subgraph.cycle(C)
    adj = g.adjacency
    stuck = [phi for phi in enumerate_colorings(T.vertices, T.edges, lists) if not extends(adj, lists, phi, cache)]

    def holds(a) -> bool:
        return not any(extends(a, lists, phi, cache) for phi in stuck)

    current = dict(adj)
    checked = 0
    changed = True
    while changed:
        changed = False
        for e in sorted({edge_key(v, w) for v in current for w in current[v]} - T.edges):
            checked += 1
            trial = _adj_without(current, e)
            if holds(trial):
                current = trial
                changed = True
    keep_v = [v for v in current if current[v] or v in T.vertices]
    keep_e = {edge_key(v, w) for v in keep_v for w in current[v]}
    h = g.restrict(keep_v, keep_e).with_outer(g.outer_dart)
    is_c = h.edge_set == T.edges and set(h.vertices) == T.vertices
    critical = False
    if not is_c:
        critical = is_T_critical(h, T, lists, cache).verdict
        assert critical, "minimal extender is neither C nor C-critical"
        assert is_two_connected(h)
    return ExtenderResult(h, checked, critical)


def extender_property(g: PlaneGraph, h_adj: Mapping[int, Iterable[int]], C: tuple[int, ...], lists: ListAssignment, cache: ExtensionCache | None = None) -> bool:
    """P(H): every coloring of C that extends to H also extends to G."""
    T = Subgraph.cycle(C)
    adj = {v: frozenset(n) for v, n in h_adj.items()}
    for phi in enumerate_colorings(T.vertices, T.edges, lists):
        if extends(adj, lists, phi, cache) and not extends(g.adjacency, lists, phi, cache):
            return False
    return True


def extender_is_minimal(g: PlaneGraph, h: PlaneGraph, C: tuple[int, ...], lists: ListAssignment, cache: ExtensionCache | None = None) -> bool:
    """P(H) fails after deleting any single edge or isolated vertex of H off C."""
    T = Subgraph.cycle(C)
    adj = h.adjacency
    for e in h.edges:
        if e in T.edges:
            continue
        if extender_property(g, _adj_without(adj, e), C, lists, cache):
            return False
    for v in h.vertices:
        if v not in T.vertices and not adj[v]:
            reduced = {x: n for x, n in adj.items() if x != v}
            if extender_property(g, reduced, C, lists, cache):
                return False
    return True


def boundary_colorings_failing(t: Canvas, cache: ExtensionCache | None = None) -> list[Coloring]:
    return [phi for phi in enumerate_boundary_colorings(t) if not extends(t.graph.adjacency, t.lists, phi, cache)]
