"""List coloring: exact extension search, boundary enumeration, Thomassen's colorer."""

from __future__ import annotations

import hashlib
import json
import os
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from pathlib import Path

from .canvas import Canvas, ListAssignment
from .plane_graph import (
    Dart,
    PlaneGraph,
    components,
    cut_vertices,
    disk_subgraph,
    edge_key,
    insert_edge,
)

Coloring = dict[int, int]
Adjacency = Mapping[int, Iterable[int]]


class ColoringError(ValueError):
    """A precoloring is improper or leaves a list."""


class HypothesisError(ValueError):
    """Inputs do not satisfy the hypotheses of Thomassen's theorem."""


def _adjacency(g: PlaneGraph | Adjacency) -> Mapping[int, frozenset[int]]:
    if isinstance(g, PlaneGraph):
        return g.adjacency
    return {v: frozenset(n) for v, n in g.items()}


def is_proper(adj: Adjacency, coloring: Mapping[int, int], lists: ListAssignment | None = None) -> bool:
    for v, c in coloring.items():
        if lists is not None and c not in lists[v]:
            return False
        if any(coloring.get(w) == c for w in adj[v]):
            return False
    return True


def precoloring_conflicts(g: PlaneGraph | Adjacency, lists: ListAssignment, phi: Mapping[int, int]) -> list[str]:
    adj = _adjacency(g)
    found = []
    for v, c in sorted(phi.items()):
        if v not in adj:
            found.append(f"vertex {v} not in graph")
        elif c not in lists.get(v, ()):
            found.append(f"color {c} not in L({v})")
        else:
            found.extend(f"edge {edge_key(v, w)} monochromatic" for w in adj[v] if w > v and phi.get(w) == c)
    return found


class ExtensionCache:
    """Memo of extension verdicts keyed by the exact query.

    With ``directory`` set, verdicts are also stored on disk as
    content-addressed files (one per query hash); the directory may be deleted
    at any time.
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        self._memo: dict[tuple, bool] = {}
        self.directory = Path(directory) if directory else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(adj: Mapping[int, frozenset[int]], lists: ListAssignment, phi: Mapping[int, int]) -> tuple:
        edges = tuple(sorted(edge_key(v, w) for v in adj for w in adj[v] if v < w))
        ls = tuple((v, tuple(sorted(lists[v]))) for v in sorted(adj))
        return edges, ls, tuple(sorted(phi.items()))

    def _path(self, key: tuple) -> Path:
        digest = hashlib.sha256(json.dumps(key).encode()).hexdigest()
        return self.directory / digest[:2] / digest

    def get(self, key: tuple) -> bool | None:
        if key in self._memo:
            return self._memo[key]
        if self.directory is not None:
            p = self._path(key)
            if p.exists():
                value = p.read_text() == "1"
                self._memo[key] = value
                return value
        return None

    def put(self, key: tuple, value: bool) -> None:
        self._memo[key] = value
        if self.directory is not None:
            p = self._path(key)
            p.parent.mkdir(exist_ok=True)
            p.write_text("1" if value else "0")

    def __len__(self) -> int:
        return len(self._memo)


def cache_from_env() -> ExtensionCache:
    return ExtensionCache(os.environ.get("CANVASLAB_CACHE_DIR") or None)


def _search(adj: Mapping[int, frozenset[int]], domains: dict[int, set[int]], colored: dict[int, int]) -> Coloring | None:
    if not domains:
        return dict(colored)
    # fewest remaining colors first, ties by smallest id
    v = min(domains, key=lambda x: (len(domains[x]), x))
    options = sorted(domains.pop(v))
    for c in options:
        pruned = []
        dead = False
        for w in adj[v]:
            dom = domains.get(w)
            if dom is not None and c in dom:
                dom.discard(c)
                pruned.append(w)
                if not dom:
                    dead = True
                    break
        if not dead:
            colored[v] = c
            found = _search(adj, domains, colored)
            if found is not None:
                return found
            del colored[v]
        for w in pruned:
            domains[w].add(c)
    domains[v] = set(options)
    return None


def find_extension(g: PlaneGraph | Adjacency, lists: ListAssignment, phi: Mapping[int, int]) -> Coloring | None:
    """Like :func:`extend`, but an improper ``phi`` simply has no extension."""
    adj = _adjacency(g)
    if precoloring_conflicts(adj, lists, phi):
        return None
    domains = {}
    for v in adj:
        if v in phi:
            continue
        dom = set(lists[v]) - {phi[w] for w in adj[v] if w in phi}
        if not dom:
            return None
        domains[v] = dom
    found = _search(adj, domains, dict(phi))
    if found is not None:
        assert is_proper(adj, found, lists), "extension search returned an improper coloring"
    return found


def extends(
    g: PlaneGraph | Adjacency,
    lists: ListAssignment,
    phi: Mapping[int, int],
    cache: ExtensionCache | None = None,
) -> bool:
    adj = _adjacency(g)
    if cache is None:
        return find_extension(adj, lists, phi) is not None
    key = cache.key(adj, lists, phi)
    hit = cache.get(key)
    if hit is None:
        hit = find_extension(adj, lists, phi) is not None
        cache.put(key, hit)
    return hit


def extend(g: PlaneGraph | Adjacency, lists: ListAssignment, phi: Mapping[int, int]) -> Coloring | None:
    """Extend the precoloring ``phi`` to a full L-coloring, or return ``None``.

    The search is complete and deterministic: the uncolored vertex with the
    fewest remaining colors (smallest id on ties) is tried with its colors in
    ascending order.  Raises :class:`ColoringError` if ``phi`` is not a proper,
    list-respecting coloring of its domain.
    """
    problems = precoloring_conflicts(g, lists, phi)
    if problems:
        raise ColoringError("; ".join(problems))
    return find_extension(g, lists, phi)


def enumerate_colorings(vertices: Iterable[int], edges: Iterable[tuple[int, int]], lists: ListAssignment) -> Iterator[Coloring]:
    """Proper list colorings of a graph, in lexicographic vertex-then-color order."""
    order = sorted(set(vertices))
    adj: dict[int, set[int]] = {v: set() for v in order}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[w for w in adj[v] if pos[w] < i] for i, v in enumerate(order)]
    options = [sorted(lists[v]) for v in order]
    n = len(order)
    chosen: list[int] = []

    def rec(i: int) -> Iterator[Coloring]:
        if i == n:
            yield dict(zip(order, chosen))
            return
        for c in options[i]:
            if all(chosen[pos[w]] != c for w in earlier[i]):
                chosen.append(c)
                yield from rec(i + 1)
                chosen.pop()

    yield from rec(0)


def enumerate_boundary_colorings(t: Canvas) -> Iterator[Coloring]:
    return enumerate_colorings(t.outer, t.outer_edges, t.lists)


@dataclass(frozen=True)
class ResidualLists:
    sets: Mapping[int, frozenset[int]]
    # |S(v)| minus (5 - |N(v) ∩ V(C)|); zero when the lists are "tight"
    excess: Mapping[int, int]


def residual_lists(t: Canvas, phi: Mapping[int, int]) -> ResidualLists:
    on_c = set(t.outer)
    sets, excess = {}, {}
    for v in t.internal_vertices:
        boundary_nbrs = [u for u in t.graph.neighbors(v) if u in on_c]
        s = frozenset(t.lists[v] - {phi[u] for u in boundary_nbrs})
        sets[v] = s
        excess[v] = len(s) - (5 - len(boundary_nbrs))
    return ResidualLists(sets, excess)


# -- Thomassen's constructive colorer ---------------------------------------


def thomassen_color(
    g: PlaneGraph,
    Z: Iterable[int] | None,
    S: Iterable[int],
    lists: ListAssignment,
) -> Coloring:
    """Color ``g`` by the inductive proof of Thomassen's theorem.

    ``Z`` lists vertices of the outer face allowed to carry 3-lists (defaults
    to the whole outer face), ``S`` holds at most two precolored vertices with
    singleton lists.  No search is performed: chords split the disk, and
    otherwise an outer vertex next to the precolored pair is removed after
    reserving two of its colors.  Internal faces are triangulated first, which
    only adds constraints.
    """
    S = sorted(set(S))
    lists = {v: frozenset(lists[v]) for v in g.vertices}
    outer_vs = _outer_vertices(g)
    Z = set(outer_vs) if Z is None else set(Z)
    _check_hypotheses(g, Z, S, lists, outer_vs)
    coloring: Coloring = {v: next(iter(lists[v])) for v in S}
    _color_general(g, lists, coloring, frozenset(S))
    if set(coloring) != set(g.vertices) or not is_proper(g.adjacency, coloring, lists):
        raise AssertionError("Thomassen colorer produced an invalid coloring")
    return coloring


def _outer_vertices(g: PlaneGraph) -> set[int]:
    face = g.outer_face
    isolated = {v for v in g.vertices if not g.neighbors(v)}
    if face is None:
        return set(g.vertices)
    # every component contributes its own outer walk when nothing is nested
    found = set(face.vertices) | isolated
    comp_of = {v: i for i, comp in enumerate(components(g)) for v in comp}
    covered = {comp_of[v] for v in found}
    for f in g.faces:
        c = comp_of[f.vertices[0]]
        if c not in covered:
            found |= set(f.vertices)
            covered.add(c)
    return found


def _check_hypotheses(g, Z, S, lists, outer_vs) -> None:
    problems = []
    if not Z <= outer_vs:
        problems.append(f"Z contains vertices off the outer face: {sorted(Z - outer_vs)}")
    if len(S) > 2:
        problems.append("|S| > 2")
    if not set(S) <= Z:
        problems.append("S must be a subset of Z")
    for v in S:
        if len(lists[v]) != 1:
            problems.append(f"precolored vertex {v} needs a singleton list")
    if len(S) == 2:
        a, b = S
        if not g.has_edge(a, b):
            problems.append("the two precolored vertices must be adjacent")
        elif lists[a] & lists[b]:
            problems.append("the two precolored vertices need disjoint lists")
    for v in g.vertices:
        if v in S:
            continue
        need = 3 if v in Z else 5
        if len(lists[v]) < need:
            problems.append(f"|L({v})| = {len(lists[v])} < {need}")
    if problems:
        raise HypothesisError("; ".join(problems))


def _color_general(g: PlaneGraph, lists, coloring: Coloring, S: frozenset[int]) -> None:
    """Handle disconnected graphs and cutvertices, then 2-connected pieces."""
    adj = g.adjacency
    comps = components(adj)
    if len(comps) > 1:
        for comp in comps:
            sub = g.restrict(comp)
            sub = sub.with_outer(_piece_outer(g, sub, S & comp))
            _color_general(sub, lists, coloring, S & comp)
        return
    verts = g.vertices
    if len(verts) == 1:
        v = verts[0]
        coloring.setdefault(v, min(lists[v]))
        return
    if len(verts) == 2:
        a, b = verts
        if a not in coloring:
            a, b = b, a
        if a not in coloring:
            coloring[a] = min(lists[a])
        if b not in coloring:
            coloring[b] = min(lists[b] - {coloring[a]})
        return
    cuts = cut_vertices(adj)
    if not cuts:
        _color_block(g, lists, coloring, S)
        return
    x = min(cuts)
    rest = g.without_vertices([x])
    pieces = [comp | {x} for comp in components(rest)]
    # the piece holding S (if S reaches past x) goes first
    pieces.sort(key=lambda p: (not (S - {x}) <= p, min(p)))
    for i, piece in enumerate(pieces):
        pre = S & piece if i == 0 else frozenset({x})
        sub = g.restrict(piece)
        sub = sub.with_outer(_piece_outer(g, sub, pre))
        _color_general(sub, lists, coloring, pre)


def _piece_outer(g: PlaneGraph, sub: PlaneGraph, pre: frozenset[int]) -> Dart | None:
    """Pick the face of ``sub`` that contains the unbounded region of ``g``."""
    if not sub.edges:
        return None
    outer_darts = set(g.outer_face.boundary) if g.outer_face is not None else set()
    best = None
    for f in sub.faces:
        shared = len(outer_darts & set(f.boundary))
        score = (shared, len(pre & set(f.vertices)), -len(f.boundary))
        if best is None or score > best[0]:
            best = (score, f.id)
    return best[1]


def _triangulate(g: PlaneGraph) -> PlaneGraph:
    """Add chords inside internal faces until every internal face is a triangle."""
    changed = True
    while changed:
        changed = False
        for f in g.internal_faces:
            if f.length <= 3:
                continue
            vs = f.vertices
            k = len(vs)
            for i in range(k):
                for j in range(i + 2, k):
                    if (i, j) == (0, k - 1) or g.has_edge(vs[i], vs[j]):
                        continue
                    g = insert_edge(g, vs[i], vs[j], f)
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break
            raise AssertionError(f"face {f.id} cannot be triangulated")
    return g


def _color_block(g: PlaneGraph, lists, coloring: Coloring, S: frozenset[int]) -> None:
    g = _triangulate(g)
    cycle = list(g.outer_face.vertices)
    k = len(cycle)
    S = set(S)
    if not S:
        a = cycle[0]
        coloring[a] = min(lists[a])
        S = {a}
    if len(S) == 1:
        (a,) = S
        i = cycle.index(a)
        b = cycle[(i + 1) % k]
        coloring[b] = min(lists[b] - {coloring[a]})
        S = {a, b}
    a, b = sorted(S)
    local = {v: (frozenset({coloring[v]}) if v in coloring else lists[v]) for v in g.vertices}
    result = _near_triangulation(g, local, a, b)
    coloring.update(result)


def _near_triangulation(g: PlaneGraph, lists, p1: int, p2: int) -> Coloring:
    """Core induction on a near-triangulation with precolored edge ``p1p2``."""
    if g.n == 2:
        return {p1: next(iter(lists[p1])), p2: next(iter(lists[p2]))}
    cycle = list(g.outer_face.vertices)
    k = len(cycle)
    on_c = set(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    for u, v in g.edges:
        if u in on_c and v in on_c and (pos[u] - pos[v]) % k not in (1, k - 1):
            return _split_on_chord(g, lists, p1, p2, u, v)
    # orient so that p1, p2 are consecutive in walk order
    i = pos[p1]
    if cycle[(i + 1) % k] != p2:
        p1, p2 = p2, p1
        i = pos[p1]
    # walk order: p1, p2, ..., last; ``last`` is p1's other outer neighbour
    last = cycle[(i - 1) % k]
    before_last = cycle[(i - 2) % k]
    reserve = sorted(lists[last] - lists[p1])[:2]
    if len(reserve) < 2:
        raise AssertionError(f"vertex {last} has fewer than three colors")
    inner = [w for w in g.neighbors(last) if w not in on_c]
    rest = g.without_vertices([last])
    rest = rest.with_outer(_surviving_outer(g, p1, p2))
    sub_lists = dict(lists)
    for w in inner:
        sub_lists[w] = lists[w] - set(reserve)
    result = _near_triangulation(rest, sub_lists, p1, p2)
    result[last] = reserve[0] if reserve[0] != result[before_last] else reserve[1]
    return result


def _surviving_outer(g: PlaneGraph, p1: int, p2: int) -> Dart:
    face = g.outer_face
    return (p1, p2) if (p1, p2) in face.boundary else (p2, p1)


def _split_on_chord(g: PlaneGraph, lists, p1, p2, u, v) -> Coloring:
    cycle = list(g.outer_face.vertices)
    i, j = sorted((cycle.index(u), cycle.index(v)))
    side_a = cycle[i : j + 1]
    side_b = cycle[j:] + cycle[: i + 1]
    first, second = (side_a, side_b) if {p1, p2} <= set(side_a) else (side_b, side_a)
    g1 = disk_subgraph(g, first)
    result = _near_triangulation(g1, lists, p1, p2)
    g2 = disk_subgraph(g, second)
    lists2 = dict(lists)
    lists2[u] = frozenset({result[u]})
    lists2[v] = frozenset({result[v]})
    result.update(_near_triangulation(g2, lists2, u, v))
    return result
