"""Combinatorial plane graphs given by rotation systems.

A plane graph is stored as a mapping from vertex id to the counterclockwise
cyclic order of its neighbours, together with one directed edge that lies on
the designated outer face.  Faces are traced with the rule: arriving at ``v``
along ``(u, v)``, leave along the neighbour immediately after ``u`` in the
rotation of ``v``.  With that rule the outer face of a counterclockwise
drawing is walked counterclockwise and internal faces clockwise.

Vertex ids are arbitrary non-negative integers and are preserved by every
subgraph operation, so certificates can always refer to original vertices.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

Edge = tuple[int, int]
Dart = tuple[int, int]
CycleRef = tuple[int, ...]


class EmbeddingError(ValueError):
    """The rotation system does not describe a simple plane embedding."""

    def __init__(self, message: str, edge: Edge | None = None):
        super().__init__(message)
        self.edge = edge


class NotACycleError(ValueError):
    """A vertex sequence (or a face boundary) is not a cycle of the graph."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def cycle_edges(cycle: Sequence[int]) -> frozenset[Edge]:
    k = len(cycle)
    return frozenset(edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k))


@dataclass(frozen=True)
class FaceWalk:
    """A face as the closed walk of darts traced around it.

    ``id`` is the lexicographically least dart of the walk and ``boundary``
    starts at it.
    """

    id: Dart
    boundary: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.boundary)

    def is_cycle(self) -> bool:
        vs = self.vertices
        return len(vs) >= 3 and len(set(vs)) == len(vs)

    def edges(self) -> frozenset[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.boundary)


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


class PlaneGraph:
    """Immutable rotation-system embedding with a designated outer face.

    ``outer`` may be any dart on the outer face; ``outer_face_id`` is the
    normalised face identifier.  Graphs without edges have no outer dart.
    Construction does not validate the rotation system, so that broken inputs
    can still be reported by :func:`check_embedding`.
    """

    def __init__(self, rotation: Mapping[int, Iterable[int]], outer: Dart | None = None):
        self._rot: dict[int, tuple[int, ...]] = {
            int(v): tuple(int(w) for w in nbrs) for v, nbrs in sorted(rotation.items())
        }
        self._outer = None if outer is None else (int(outer[0]), int(outer[1]))

    def __reduce__(self):
        # cached views hold mapping proxies; pickle just the defining data
        return (PlaneGraph, (self._rot, self._outer))

    # -- basic accessors -------------------------------------------------

    @property
    def rotation(self) -> Mapping[int, tuple[int, ...]]:
        return MappingProxyType(self._rot)

    @property
    def outer_dart(self) -> Dart | None:
        return self._outer

    @property
    def n(self) -> int:
        return len(self._rot)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rot)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, v) for u, nbrs in self._rot.items() for v in nbrs}))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return MappingProxyType({v: frozenset(nbrs) for v, nbrs in self._rot.items()})

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._rot and v in self.adjacency[u]

    def __contains__(self, v: object) -> bool:
        return v in self._rot

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self._rot == other._rot and self.outer_face_id == other.outer_face_id

    def __hash__(self) -> int:
        return hash((tuple(self._rot.items()), self.outer_face_id))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={len(self.edges)}, outer={self.outer_face_id})"

    # -- faces -----------------------------------------------------------

    @cached_property
    def _successor(self) -> dict[Dart, int]:
        succ: dict[Dart, int] = {}
        for v, nbrs in self._rot.items():
            d = len(nbrs)
            for i, u in enumerate(nbrs):
                # arriving at v from u continues to the next neighbour
                succ[(u, v)] = nbrs[(i + 1) % d]
        return succ

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        try:
            return (v, self._successor[(u, v)])
        except KeyError:
            raise EmbeddingError(f"asymmetric rotation at edge {edge_key(u, v)}", edge_key(u, v)) from None

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        return tuple(_trace(self))

    @cached_property
    def _face_index(self) -> dict[Dart, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.boundary}

    def face_of(self, dart: Dart) -> FaceWalk:
        return self.faces[self._face_index[dart]]

    @cached_property
    def outer_face(self) -> FaceWalk | None:
        if self._outer is None:
            return None
        return self.face_of(self._outer)

    @cached_property
    def outer_face_id(self) -> Dart | None:
        face = self.outer_face
        return None if face is None else face.id

    @cached_property
    def internal_faces(self) -> tuple[FaceWalk, ...]:
        return tuple(f for f in self.faces if f.id != self.outer_face_id)

    # -- derived graphs --------------------------------------------------

    def restrict(self, vertices: Iterable[int] | None = None, edges: Iterable[Edge] | None = None) -> PlaneGraph:
        """Sub-embedding on the given vertices and edges.

        With ``edges`` omitted the induced subgraph on ``vertices`` is taken.
        The outer dart is kept when it survives; otherwise the caller should
        designate a new one with :meth:`with_outer`.
        """
        keep_v = set(self._rot) if vertices is None else set(vertices)
        if edges is None:
            keep_e = {e for e in self.edges if e[0] in keep_v and e[1] in keep_v}
        else:
            keep_e = {edge_key(*e) for e in edges}
            keep_v |= {x for e in keep_e for x in e}
        rot = {
            v: tuple(w for w in self._rot[v] if edge_key(v, w) in keep_e)
            for v in self._rot
            if v in keep_v
        }
        outer = self._outer
        if outer is not None and edge_key(*outer) not in keep_e:
            outer = None
        return PlaneGraph(rot, outer)

    def with_outer(self, dart: Dart | None) -> PlaneGraph:
        return PlaneGraph(self._rot, dart)

    def without_edges(self, edges: Iterable[Edge]) -> PlaneGraph:
        drop = {edge_key(*e) for e in edges}
        return self.restrict(self._rot, [e for e in self.edges if e not in drop])

    def without_vertices(self, vertices: Iterable[int]) -> PlaneGraph:
        drop = set(vertices)
        return self.restrict([v for v in self._rot if v not in drop])

    def reflected(self) -> PlaneGraph:
        """Mirror image: every rotation reversed, outer dart reversed."""
        rot = {v: tuple(reversed(nbrs)) for v, nbrs in self._rot.items()}
        outer = None if self._outer is None else (self._outer[1], self._outer[0])
        return PlaneGraph(rot, outer)

    def relabeled(self, mapping: Mapping[int, int]) -> PlaneGraph:
        rot = {mapping[v]: tuple(mapping[w] for w in nbrs) for v, nbrs in self._rot.items()}
        outer = None if self._outer is None else (mapping[self._outer[0]], mapping[self._outer[1]])
        return PlaneGraph(rot, outer)


def _trace(g: PlaneGraph) -> Iterator[FaceWalk]:
    seen: set[Dart] = set()
    darts = sorted((u, v) for u, nbrs in g.rotation.items() for v in nbrs)
    for u, v in darts:
        if u == v:
            raise EmbeddingError(f"self-loop at vertex {u}", (u, v))
    for start in darts:
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = g.next_dart(d)
        if d != start:
            raise EmbeddingError(f"face walk from {start} does not close", edge_key(*start))
        # start is the least unseen dart, and every dart of the walk was unseen
        yield FaceWalk(id=start, boundary=tuple(walk))


def trace_faces(g: PlaneGraph) -> tuple[FaceWalk, ...]:
    """All faces of ``g``, sorted by id.  Raises :class:`EmbeddingError`."""
    return g.faces


def components(g: PlaneGraph | Mapping[int, Iterable[int]]) -> list[set[int]]:
    adj = g.adjacency if isinstance(g, PlaneGraph) else g
    seen: set[int] = set()
    comps = []
    for s in adj:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def check_embedding(g: PlaneGraph) -> EmbeddingReport:
    """Validate simplicity, symmetry, Euler's formula and the outer face."""
    problems: list[str] = []
    for v, nbrs in g.rotation.items():
        if v < 0:
            problems.append(f"negative vertex id {v}")
        if v in nbrs:
            problems.append(f"self-loop at {v}")
        if len(set(nbrs)) != len(nbrs):
            problems.append(f"repeated neighbour in rotation of {v}")
        for w in nbrs:
            if w not in g.rotation:
                problems.append(f"unknown vertex {w} in rotation of {v}")
            elif v not in g.rotation[w]:
                problems.append(f"asymmetric edge ({v},{w}): {w} omits {v}")
    if problems:
        return EmbeddingReport(False, tuple(problems))
    try:
        faces = g.faces
    except EmbeddingError as exc:
        return EmbeddingReport(False, (str(exc),))
    face_of = {d: f.id for f in faces for d in f.boundary}
    for comp in components(g):
        nv = len(comp)
        ne = sum(len(g.rotation[v]) for v in comp) // 2
        nf = len({face_of[(v, w)] for v in comp for w in g.rotation[v]}) if ne else 1
        if nv - ne + nf != 2:
            problems.append(f"Euler's formula fails on component {min(comp)}: V-E+F = {nv - ne + nf}")
    if g.outer_dart is not None and g.outer_dart not in face_of:
        problems.append(f"outer dart {g.outer_dart} is not an edge")
    elif g.outer_dart is None and g.edges:
        problems.append("no outer face designated")
    return EmbeddingReport(not problems, tuple(problems))


def is_two_connected(g: PlaneGraph | Mapping[int, Iterable[int]]) -> bool:
    """At least three vertices, connected, no cutvertex."""
    adj = g.adjacency if isinstance(g, PlaneGraph) else {v: set(n) for v, n in g.items()}
    if len(adj) < 3 or len(components(adj)) != 1:
        return False
    return not cut_vertices(adj)


def cut_vertices(adj: Mapping[int, Iterable[int]]) -> set[int]:
    """Articulation points via the standard low-point DFS (iterative)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    counter = 0
    for root in adj:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        children = 0
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(sorted(adj[w]))))
                    if v == root:
                        children += 1
                    break
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cuts.add(p)
        if children > 1:
            cuts.add(root)
    return cuts


def outer_cycle(g: PlaneGraph) -> CycleRef:
    """Vertices of the outer face in walk order; raises if not a cycle."""
    face = g.outer_face
    if face is None or not face.is_cycle():
        raise NotACycleError("outer face boundary is not a cycle")
    return face.vertices


def cofacial(g: PlaneGraph, u: int, v: int) -> bool:
    return any(u in f.vertices and v in f.vertices for f in g.faces)


def _check_cycle(g: PlaneGraph, cycle: Sequence[int]) -> tuple[int, ...]:
    c = tuple(cycle)
    if len(c) < 3 or len(set(c)) != len(c):
        raise NotACycleError(f"{c} is not a cycle (needs >= 3 distinct vertices)")
    for i, u in enumerate(c):
        w = c[(i + 1) % len(c)]
        if not g.has_edge(u, w):
            raise NotACycleError(f"{c} is not a cycle: missing edge {edge_key(u, w)}")
    return c


def oriented(g: PlaneGraph, cycle: Sequence[int]) -> CycleRef:
    """Rotate and orient ``cycle`` to follow the outer face walk of ``g``."""
    c = tuple(cycle)
    face = g.outer_face
    if face is None:
        raise NotACycleError("graph has no outer face")
    walk = face.vertices
    if set(walk) != set(c) or len(walk) != len(c):
        raise NotACycleError(f"{c} is not the outer cycle")
    return walk


def disk_subgraph(g: PlaneGraph, cycle: Sequence[int], auxiliary: Iterable[Edge] = ()) -> PlaneGraph:
    """Everything drawn in the closed disk bounded by ``cycle``.

    The disk is the side of the cycle that does not contain the outer face.
    ``g`` may be an augmented embedding; edges listed in ``auxiliary`` are
    dropped from the result unless they lie on the cycle.  The result has the
    cycle as its outer face and keeps the original vertex ids.
    """
    c = _check_cycle(g, cycle)
    k = len(c)
    on_cycle = cycle_edges(c)
    faces = g.faces
    index = g._face_index
    fwd = {index[(c[i], c[(i + 1) % k])] for i in range(k)}
    bwd = {index[(c[(i + 1) % k], c[i])] for i in range(k)}

    def flood(seeds: set[int]) -> set[int]:
        side = set(seeds)
        stack = list(seeds)
        while stack:
            fi = stack.pop()
            for u, v in faces[fi].boundary:
                if edge_key(u, v) in on_cycle:
                    continue
                nxt = index[(v, u)]
                if nxt not in side:
                    side.add(nxt)
                    stack.append(nxt)
        return side

    side_f, side_b = flood(fwd), flood(bwd)
    if side_f & side_b:
        raise EmbeddingError(f"cycle {c} does not separate the embedding")
    outer_idx = index[g.outer_dart] if g.outer_dart is not None else None
    if outer_idx in side_f:
        disk, outer = side_b, (c[0], c[1])
    else:
        disk, outer = side_f, (c[1], c[0])
    aux = {edge_key(*e) for e in auxiliary} - on_cycle
    keep = set(on_cycle)
    for fi in disk:
        keep |= faces[fi].edges()
    keep -= aux
    return g.restrict(c, keep).with_outer(outer)


def insert_edge(g: PlaneGraph, u: int, v: int, face: FaceWalk) -> PlaneGraph:
    """Add the edge ``uv`` drawn inside ``face`` (both ends on its boundary)."""
    return insert_path(g, u, v, face, ())


def insert_path(g: PlaneGraph, u: int, v: int, face: FaceWalk, inner: Sequence[int]) -> PlaneGraph:
    """Add a path ``u - inner... - v`` drawn inside ``face``.

    New inner vertices must not already exist.  With ``inner`` empty this adds
    a single edge, which must not already be present.
    """
    if u == v:
        raise ValueError("path ends must differ")
    if not inner and g.has_edge(u, v):
        raise ValueError(f"edge {edge_key(u, v)} already present")
    into: dict[int, int] = {}
    for a, b in face.boundary:
        # dart (a, b) then (b, succ): the face's angle at b sits right after a
        if b in (u, v):
            if b in into:
                raise ValueError(f"vertex {b} appears twice on face {face.id}")
            into[b] = a
    if u not in into or v not in into:
        raise ValueError(f"{u} and {v} must both lie on face {face.id}")
    path = [u, *inner, v]
    rot = {x: list(nbrs) for x, nbrs in g.rotation.items()}
    for end, nxt in ((u, path[1]), (v, path[-2])):
        nbrs = rot[end]
        nbrs.insert(nbrs.index(into[end]) + 1, nxt)
    for i in range(1, len(path) - 1):
        if path[i] in rot:
            raise ValueError(f"vertex {path[i]} already exists")
        rot[path[i]] = [path[i - 1], path[i + 1]]
    return PlaneGraph(rot, g.outer_dart)


def simple_cycles(g: PlaneGraph | Mapping[int, Iterable[int]], max_length: int | None = None) -> Iterator[CycleRef]:
    """Every simple cycle once, starting at its least vertex.

    Of the two directions the one whose second vertex is smaller is kept.
    """
    adj = g.adjacency if isinstance(g, PlaneGraph) else g
    limit = max_length if max_length is not None else len(adj)
    for s in sorted(adj):
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in adj[s] if w > s))]
        while stack:
            for w in stack[-1]:
                if w in on_path:
                    continue
                if len(path) >= 2 and s in adj[w] and len(path) + 1 >= 3 and path[1] < w:
                    yield (*path, w)
                if len(path) < limit - 1:
                    path.append(w)
                    on_path.add(w)
                    stack.append(iter(sorted(x for x in adj[w] if x > s)))
                    break
            else:
                stack.pop()
                on_path.discard(path.pop())
