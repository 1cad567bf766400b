"""Instance generation: plane graphs with a fixed outer cycle, and list assignments.

Graphs are grown from the bare cycle by drawing ears inside internal faces: a
chord between two non-adjacent face vertices, or a path through ``j >= 1``
new vertices between two distinct face vertices.  Every 2-connected plane
graph with outer cycle C has an ear decomposition starting at C in which
each ear lies in a face of the graph built so far, so the closure under these
moves is exhaustive.  Isomorphic embeddings are merged by :func:`canonical_key`.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .canvas import Canvas, ListAssignment, cycle_colorable, cycle_graph, make_lists
from .plane_graph import Dart, NotACycleError, PlaneGraph, insert_path

CanonicalKey = bytes


class GenSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """Bounds for one enumeration shard.

    ``boundary_list_mode`` is ``"singleton"``, ``"pairs"`` or ``"mixed"``;
    in mixed mode ``mixed_sizes`` gives the allowed boundary list sizes.
    ``list_samples`` switches list assignment from exhaustive enumeration to
    that many seeded random draws per graph.
    """

    outer_len: int
    max_internal: int = 0
    max_edges: int | None = None
    boundary_list_mode: str = "singleton"
    mixed_sizes: tuple[int, ...] = (1, 2)
    universe: int = 5
    seed: int = 0
    symmetry_reduction: bool = True
    list_samples: int | None = None

    def __post_init__(self):
        if self.outer_len < 3:
            raise GenSpecError("outer_len must be at least 3")
        if self.max_internal < 0:
            raise GenSpecError("max_internal must be non-negative")
        if self.max_internal > 0 and self.universe < 5:
            raise GenSpecError("universe must have at least 5 colors when internal vertices exist")
        if self.boundary_list_mode not in ("singleton", "pairs", "mixed"):
            raise GenSpecError(f"unknown boundary list mode {self.boundary_list_mode!r}")
        if not 0 <= self.seed < 2**64:
            raise GenSpecError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        return {
            "outer_len": self.outer_len,
            "max_internal": self.max_internal,
            "max_edges": self.max_edges,
            "boundary_list_mode": self.boundary_list_mode,
            "mixed_sizes": list(self.mixed_sizes),
            "universe": self.universe,
            "seed": self.seed,
            "symmetry_reduction": self.symmetry_reduction,
            "list_samples": self.list_samples,
        }

    @classmethod
    def from_dict(cls, d: dict) -> GenSpec:
        d = dict(d)
        d["mixed_sizes"] = tuple(d.get("mixed_sizes", (1, 2)))
        return cls(**d)


# -- canonical form -----------------------------------------------------------


def _code(g: PlaneGraph, start: Dart) -> tuple[tuple[int, ...], dict[int, int]]:
    label = {start[0]: 0}
    ref = {start[0]: start[1]}
    order = [start[0]]
    out: list[int] = []
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        rot = g.neighbors(x)
        s = rot.index(ref[x])
        out.append(len(rot))
        for w in rot[s:] + rot[:s]:
            if w not in label:
                label[w] = len(order)
                ref[w] = x
                order.append(w)
            out.append(label[w])
    return tuple(out), label


def _canonical(g: PlaneGraph) -> tuple[tuple[int, ...], PlaneGraph, Dart]:
    if g.outer_face is None or not g.outer_face.is_cycle():
        raise NotACycleError("canonical form needs an outer cycle")
    best = None
    for h in (g, g.reflected()):
        for dart in h.outer_face.boundary:
            code, label = _code(h, dart)
            if best is None or code < best[0]:
                best = (code, h, dart, label)
    return best[0], best[1], best[2]


def canonical_key(g: PlaneGraph) -> CanonicalKey:
    """Key equal for two graphs iff they are isomorphic plane graphs with
    distinguished outer cycle (up to rotation and reflection)."""
    code, _, _ = _canonical(g)
    return ",".join(map(str, code)).encode()


def canonical_form(g: PlaneGraph) -> PlaneGraph:
    """Relabel: outer cycle 0..k-1 in walk order, internal vertices by the canonical traversal."""
    _, h, dart = _canonical(g)
    face = h.face_of(dart)
    walk = [d[0] for d in face.boundary]
    s = walk.index(dart[0])
    walk = walk[s:] + walk[:s]
    mapping = {v: i for i, v in enumerate(walk)}
    _, label = _code(h, dart)
    for v in sorted(h.vertices, key=label.__getitem__):
        if v not in mapping:
            mapping[v] = len(mapping)
    return h.relabeled(mapping).with_outer((0, 1))


# -- graph enumeration --------------------------------------------------------


def _ears(g: PlaneGraph, room: int, next_id: int) -> Iterator[PlaneGraph]:
    for f in g.internal_faces:
        vs = f.vertices
        for i, j in itertools.combinations(range(len(vs)), 2):
            a, b = vs[i], vs[j]
            if not g.has_edge(a, b):
                yield insert_path(g, a, b, f, ())
            for size in range(1, room + 1):
                yield insert_path(g, a, b, f, tuple(range(next_id, next_id + size)))


def _internal_count(g: PlaneGraph) -> int:
    return g.n - len(g.outer_face.vertices)


def enumerate_plane_graphs(spec: GenSpec) -> list[PlaneGraph]:
    """All 2-connected plane graphs with outer cycle length k and at most m
    internal vertices, one canonical representative per class.

    Ordered by (internal vertices, edges, canonical key).
    """
    return list(_enumerate(spec.outer_len, spec.max_internal, spec.max_edges))


@lru_cache(maxsize=32)
def _enumerate(k: int, m: int, max_edges: int | None) -> tuple[PlaneGraph, ...]:
    start = cycle_graph(k)
    seen = {canonical_key(start): start}
    frontier = [start]
    while frontier:
        grown = []
        for g in frontier:
            room = m - _internal_count(g)
            for h in _ears(g, room, max(g.vertices) + 1):
                if max_edges is not None and len(h.edges) > max_edges:
                    continue
                key = canonical_key(h)
                if key not in seen:
                    seen[key] = h
                    grown.append(h)
        frontier = grown
    reps = [(_internal_count(g), len(g.edges), key, canonical_form(g)) for key, g in seen.items()]
    reps.sort(key=lambda r: r[:3])
    return tuple(r[3] for r in reps)


# -- list assignments -------------------------------------------------------------


def _boundary_options(spec: GenSpec) -> list[tuple[int, ...]]:
    colors = range(spec.universe)
    if spec.boundary_list_mode == "singleton":
        sizes = (1,)
    elif spec.boundary_list_mode == "pairs":
        sizes = (2,)
    else:
        sizes = tuple(spec.mixed_sizes)
    return [c for s in sizes for c in itertools.combinations(colors, s)]


def _canonical_under_permutation(assignment: tuple[tuple[int, ...], ...], perms) -> bool:
    for p in perms:
        image = tuple(tuple(sorted(p[c] for c in cs)) for cs in assignment)
        if image < assignment:
            return False
    return True


@lru_cache(maxsize=64)
def _assignments(k: int, internal: int, spec: GenSpec) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per-position color lists for a cycle 0..k-1 plus ``internal`` inner vertices."""
    bopts = _boundary_options(spec)
    iopts = list(itertools.combinations(range(spec.universe), 5)) if internal else [()]
    perms = list(itertools.permutations(range(spec.universe)))[1:] if spec.symmetry_reduction else []
    out = []
    cyc = tuple(range(k))
    for boundary in itertools.product(bopts, repeat=k):
        if not cycle_colorable(cyc, dict(enumerate(map(frozenset, boundary)))):
            continue
        for inner in itertools.product(iopts, repeat=internal):
            a = boundary + inner
            if perms and not _canonical_under_permutation(a, perms):
                continue
            out.append(a)
    return tuple(out)


def _positions(g: PlaneGraph) -> list[int]:
    outer = list(g.outer_face.vertices)
    return outer + sorted(v for v in g.vertices if v not in set(outer))


def assign_lists(g: PlaneGraph, spec: GenSpec) -> Iterator[ListAssignment]:
    """List assignments for ``g``: 5-subsets of the universe inside, boundary lists per mode.

    Only assignments with a proper coloring of the outer cycle are emitted.
    With ``symmetry_reduction`` one representative per color-permutation orbit
    is kept (the lexicographically least image).
    """
    if spec.max_internal > 0 or g.n > spec.outer_len:
        if spec.universe < 5:
            raise GenSpecError("universe too small for 5-lists")
    pos = _positions(g)
    k = len(g.outer_face.vertices)
    internal = len(pos) - k
    if spec.list_samples is not None:
        yield from _sample(g, spec, pos, k)
        return
    for a in _assignments(k, internal, _assignment_key(spec)):
        yield make_lists(dict(zip(pos, a)))


def _assignment_key(spec: GenSpec) -> GenSpec:
    # graph bounds and seed do not influence the exhaustive list stream
    return replace(spec, outer_len=3, max_internal=0, max_edges=None, seed=0, list_samples=None)


def _sample(g: PlaneGraph, spec: GenSpec, pos: list[int], k: int) -> Iterator[ListAssignment]:
    rng = random.Random(f"{spec.seed}:{','.join(map(str, g.edges))}")
    bopts = _boundary_options(spec)
    emitted = 0
    attempts = 0
    cyc = tuple(pos[:k])
    while emitted < spec.list_samples and attempts < 1000 * spec.list_samples:
        attempts += 1
        lists = {v: frozenset(rng.choice(bopts)) for v in pos[:k]}
        for v in pos[k:]:
            lists[v] = frozenset(rng.sample(range(spec.universe), 5))
        if cycle_colorable(cyc, lists):
            emitted += 1
            yield make_lists(lists)


@dataclass(frozen=True)
class Instance:
    index: int
    graph_index: int
    list_index: int
    canvas: Canvas
    key: CanonicalKey = field(repr=False, default=b"")


def generate_instances(specs: GenSpec | Sequence[GenSpec]) -> Iterator[Instance]:
    """The deterministic (graph, lists) stream behind a scan."""
    if isinstance(specs, GenSpec):
        specs = [specs]
    index = 0
    gi = 0
    for spec in specs:
        for g in enumerate_plane_graphs(spec):
            key = canonical_key(g)
            for li, lists in enumerate(assign_lists(g, spec)):
                name = f"k{spec.outer_len}-g{gi}-l{li}"
                yield Instance(index, gi, li, Canvas.from_graph(g, lists, name), key)
                index += 1
            gi += 1
