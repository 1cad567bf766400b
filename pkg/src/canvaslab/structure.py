"""Chords, tripods/quadpods, dividing vertices and relaxations.

All detectors here look at the embedding only; lists are carried along but
never inspected.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .canvas import Canvas, subcanvas_by_cycle
from .critical import CriticalityCertificate, is_critical_canvas
from .plane_graph import (
    CycleRef,
    Dart,
    Edge,
    FaceWalk,
    NotACycleError,
    PlaneGraph,
    edge_key,
    insert_edge,
)


class StructureError(ValueError):
    pass


def chords(t: Canvas) -> list[Edge]:
    on_c = set(t.outer)
    return sorted(e for e in t.graph.edges if e[0] in on_c and e[1] in on_c and e not in t.outer_edges)


def boundary_neighbors(t: Canvas, v: int) -> list[int]:
    """Neighbours of ``v`` on C, in order of appearance along C."""
    nbrs = set(t.graph.neighbors(v))
    return [u for u in t.outer if u in nbrs]


def boundary_tripod_candidates(t: Canvas) -> set[int]:
    return {v for v in t.internal_vertices if len(boundary_neighbors(t, v)) >= 3}


def material_faces(g: PlaneGraph, sub_vertices: Iterable[int]) -> tuple[PlaneGraph, dict[Dart, bool]]:
    """Faces of ``g[sub_vertices]`` and whether each contains a vertex or edge of ``g``.

    A face holds material exactly when some edge of ``g`` outside the induced
    subgraph leaves one of its boundary vertices into that face's angle
    (``g`` is connected, so any stray vertex hangs off such an edge).
    """
    keep = set(sub_vertices)
    sub = g.restrict(keep)
    sub_edges = sub.edge_set
    sub = sub.with_outer(g.outer_dart if g.outer_dart and edge_key(*g.outer_dart) in sub_edges else None)
    has: dict[Dart, bool] = {f.id: False for f in sub.faces}
    for x in keep:
        full = g.neighbors(x)
        inside = [w for w in full if edge_key(x, w) in sub_edges]
        if not inside:
            continue
        for i, w in enumerate(full):
            if edge_key(x, w) in sub_edges:
                continue
            # the next sub-neighbour counterclockwise after w bounds the angle
            j = (i + 1) % len(full)
            while edge_key(x, full[j]) not in sub_edges:
                j = (j + 1) % len(full)
            has[sub.face_of((x, full[j])).id] = True
    return sub, has


@dataclass(frozen=True)
class PodClassification:
    vertex: int
    kind: str  # "tripod", "quadpod" or "none"
    regular: bool
    standard_order: tuple[int, ...] | None
    pod_cycle: CycleRef | None
    material_face_count: int = 0


def classify_pod(t: Canvas, v: int) -> PodClassification:
    us = boundary_neighbors(t, v)
    if v in t.outer or len(us) < 3:
        raise StructureError(f"vertex {v} is not internal with >= 3 neighbours on C")
    sub, has = material_faces(t.graph, set(t.outer) | {v})
    outer_id = sub.outer_face_id
    busy = [sub.faces[i] for i, f in enumerate(sub.faces) if has[f.id] and f.id != outer_id]
    k = len(us)
    if len(busy) > 1:
        return PodClassification(v, "none", False, None, None, len(busy))
    kind = "tripod" if k == 3 else "quadpod"
    if not busy:
        return PodClassification(v, kind, False, None, None, 0)
    face = busy[0]
    on_face = set(face.vertices)
    for r in range(k):
        order = tuple(us[r:] + us[:r])
        if order[0] in on_face and order[-1] in on_face:
            if not face.is_cycle():
                break
            return PodClassification(v, kind, True, order, face.vertices, 1)
    return PodClassification(v, "none", False, None, None, 1)


@dataclass(frozen=True)
class DividingClassification:
    vertex: int
    dividing: bool
    strong: bool
    true_dividing: bool
    faces: tuple[Dart, Dart] | None = None
    contacts: tuple[int, int] | None = None
    cycles: tuple[CycleRef, CycleRef] | None = None


def _split_cycles(outer: CycleRef, u1: int, v: int, u2: int) -> tuple[CycleRef, CycleRef]:
    k = len(outer)
    i, j = outer.index(u1), outer.index(u2)
    path_a = [outer[(i + s) % k] for s in range((j - i) % k + 1)]  # u1 .. u2
    path_b = [outer[(j + s) % k] for s in range((i - j) % k + 1)]  # u2 .. u1
    return tuple(path_a + [v]), tuple(path_b + [v])


def _augment(g: PlaneGraph, pairs: list[tuple[int, int, FaceWalk]]) -> tuple[PlaneGraph, list[Edge]]:
    added = []
    for a, b, face in pairs:
        if g.has_edge(a, b):
            continue
        # locate the face again in the current graph by one of its darts
        cur = next(f for f in g.faces if set(face.boundary) & set(f.boundary))
        g = insert_edge(g, a, b, cur)
        added.append(edge_key(a, b))
    return g, added


def split_at_vertex(t: Canvas, v: int, u1: int, u2: int, f1: FaceWalk | None = None, f2: FaceWalk | None = None) -> tuple[Canvas, Canvas, list[Edge], PlaneGraph]:
    """The two sides of the split through ``u1 v u2``.

    Missing edges ``u1v``/``u2v`` are drawn inside ``f1``/``f2`` on a scratch
    copy of the embedding; they are never stored in ``t``.
    Returns both subcanvases, the virtual edges and the scratch graph.
    """
    pairs = []
    for u, f in ((u1, f1), (u2, f2)):
        if not t.graph.has_edge(u, v):
            if f is None:
                raise StructureError(f"edge {edge_key(u, v)} absent and no face given")
            pairs.append((u, v, f))
    g, added = _augment(t.graph, pairs)
    c1, c2 = _split_cycles(t.outer, u1, v, u2)
    side1 = subcanvas_by_cycle(t, c1, added, graph=g)
    side2 = subcanvas_by_cycle(t, c2, added, graph=g)
    return side1, side2, added, g


def classify_dividing(t: Canvas, v: int) -> DividingClassification:
    if v in t.outer:
        raise StructureError(f"vertex {v} is on the outer cycle")
    on_c = set(t.outer)
    incident = [f for f in t.graph.internal_faces if v in f.vertices]
    candidates = []
    for a in range(len(incident)):
        for b in range(len(incident)):
            if a == b:
                continue
            f1, f2 = incident[a], incident[b]
            for u1 in sorted(set(f1.vertices) & on_c):
                for u2 in sorted(set(f2.vertices) & on_c):
                    if u1 != u2:
                        candidates.append((f1.id, f2.id, u1, u2, f1, f2))
    if not candidates:
        raise StructureError(f"vertex {v} has no qualifying face pair")
    best = None
    flags_any = [False, False, False]
    for f1id, f2id, u1, u2, f1, f2 in sorted(candidates, key=lambda x: x[:4]):
        try:
            s1, s2, added, _ = split_at_vertex(t, v, u1, u2, f1, f2)
        except ValueError:
            # both virtual edges would need the same face slot; not a valid split
            continue
        extra = [len(s.graph.edge_set - s.outer_edges) for s in (s1, s2)]
        inner = [len(s.internal_vertices) for s in (s1, s2)]
        dividing = min(extra) >= 2
        strong = dividing and min(inner) >= 1
        true_d = dividing and not added
        flags = (dividing, strong, true_d)
        for i, f in enumerate(flags):
            flags_any[i] |= f
        score = sum(flags)
        if best is None or score > best[0]:
            best = (score, (f1id, f2id), (u1, u2), (s1.outer, s2.outer))
    if best is None:
        raise StructureError(f"vertex {v} has no qualifying face pair")
    _, faces, contacts, cycles = best
    return DividingClassification(v, flags_any[0], flags_any[1], flags_any[2], faces, contacts, cycles)


@dataclass(frozen=True)
class PodCycle:
    cycle: CycleRef
    multiple: bool


def pod_cycle_for_set(t: Canvas, X: Iterable[int]) -> PodCycle:
    """Boundary of the face of ``G[V(C) ∪ X]`` that still holds material.

    When several faces qualify the least one (by face id) is returned and
    ``multiple`` is set.
    """
    X = set(X)
    sub, has = material_faces(t.graph, set(t.outer) | X)
    outer_id = sub.outer_face_id
    busy = [f for f in sub.faces if has[f.id] and f.id != outer_id]
    if not busy:
        raise StructureError("no face of G[V(C) ∪ X] contains further material")
    face = busy[0]
    if not face.is_cycle():
        raise NotACycleError(f"face {face.id} is not bounded by a cycle")
    return PodCycle(face.vertices, len(busy) > 1)


def relax(t: Canvas, v: int) -> Canvas:
    """One relaxation step: pass to the pod cycle of a regular tripod."""
    if v in t.outer or len(boundary_neighbors(t, v)) < 3:
        raise StructureError(f"vertex {v} is not a tripod")
    pod = classify_pod(t, v)
    if pod.kind != "tripod" or not pod.regular:
        raise StructureError(f"vertex {v} is not a regular tripod ({pod.kind}, regular={pod.regular})")
    return subcanvas_by_cycle(t, pod.pod_cycle)


@dataclass(frozen=True)
class StructureWitness:
    kind: str  # "chord", "pod" or "violation"
    chord: Edge | None = None
    vertex: int | None = None


def chord_or_tripod_witness(t: Canvas, certificate: CriticalityCertificate | None = None) -> StructureWitness:
    """A chord of C, or an internal vertex with >= 3 neighbours on C whose
    pod faces hold material in at most one place.

    A ``violation`` witness is returned if neither exists.
    """
    cert = certificate if certificate is not None else is_critical_canvas(t)
    if not cert.verdict:
        raise StructureError("canvas is not certified critical")
    cs = chords(t)
    if cs:
        return StructureWitness("chord", chord=cs[0])
    for v in sorted(boundary_tripod_candidates(t)):
        sub, has = material_faces(t.graph, set(t.outer) | {v})
        outer_id = sub.outer_face_id
        if sum(1 for fid, busy in has.items() if busy and fid != outer_id) <= 1:
            return StructureWitness("pod", vertex=v)
    return StructureWitness("violation")
