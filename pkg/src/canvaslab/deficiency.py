"""Deficiency and the surplus/potential quantities, in exact arithmetic.

Rationals are :class:`fractions.Fraction`; nothing in this module touches
floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .canvas import Canvas, induced_subcanvas, subcanvas_by_cycle
from .plane_graph import Edge, PlaneGraph, edge_key, is_two_connected
from .structure import split_at_vertex

Rational = Fraction


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    """Weights for internal vertices (epsilon), boundary terms (alpha) and the slack gamma."""

    epsilon: Fraction
    alpha: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("epsilon", "alpha", "gamma"):
            value = Fraction(getattr(self, name))
            if value <= 0:
                raise ParamsError(f"{name} must be positive")
            object.__setattr__(self, name, value)
        e, a, g = self.epsilon, self.alpha, self.gamma
        if not 3 * e <= 2 * a:
            raise ParamsError("I1 violated: 3ε ≤ 2α")
        if not 6 * a + 3 * e <= g:
            raise ParamsError("I2 violated: 6α+3ε ≤ γ")
        if not 2 * a + 3 * e + g <= 1:
            raise ParamsError("I3 violated: 2α+3ε+γ ≤ 1")

    @classmethod
    def parse(cls, text: str) -> Params:
        parts = [Fraction(p.strip()) for p in text.split(",")]
        if len(parts) != 3:
            raise ParamsError("expected three comma-separated values: epsilon,alpha,gamma")
        return cls(*parts)

    def __str__(self) -> str:
        return f"{self.epsilon},{self.alpha},{self.gamma}"


PAPER_PARAMS = Params(Fraction(1, 18), Fraction(1, 12), Fraction(2, 3))


def internal_count(t: Canvas) -> int:
    return len(t.internal_vertices)


def non_cycle_edges(t: Canvas) -> int:
    return len(t.graph.edge_set - t.outer_edges)


def deficiency(t: Canvas) -> int:
    return non_cycle_edges(t) - 3 * internal_count(t)


def face_terms(t: Canvas) -> list[int]:
    terms = []
    for f in t.graph.internal_faces:
        if not f.is_cycle():
            raise ValueError(f"face {f.id} is not bounded by a cycle")
        terms.append(f.length - 3)
    return terms


def deficiency_via_faces(t: Canvas) -> int:
    return len(t.outer) - 3 - sum(face_terms(t))


def boundary_sets(t: Canvas) -> tuple[frozenset[int], frozenset[int]]:
    """(B, Q): internal vertices adjacent to C, and internal vertices cofacial with C."""
    on_c = set(t.outer)
    internal = set(t.internal_vertices)
    B = frozenset(v for v in internal if on_c & set(t.graph.neighbors(v)))
    Q = set()
    for f in t.graph.faces:
        vs = set(f.vertices)
        if vs & on_c:
            Q |= vs & internal
    Q = frozenset(Q)
    assert B <= Q
    return B, Q


def s_value(t: Canvas, p: Params = PAPER_PARAMS) -> Fraction:
    B, Q = boundary_sets(t)
    return p.epsilon * internal_count(t) + p.alpha * (len(B) + len(Q))


def d_value(t: Canvas, p: Params = PAPER_PARAMS) -> Fraction:
    return deficiency(t) - s_value(t, p)


@dataclass(frozen=True)
class DeficiencyReport:
    v: int
    defi: int
    b: int
    q: int
    s: Fraction
    d: Fraction
    face_terms: tuple[int, ...]
    via_faces: int

    @property
    def consistent(self) -> bool:
        return self.defi == self.via_faces


def report(t: Canvas, p: Params = PAPER_PARAMS) -> DeficiencyReport:
    B, Q = boundary_sets(t)
    terms = tuple(face_terms(t))
    return DeficiencyReport(
        v=internal_count(t),
        defi=deficiency(t),
        b=len(B),
        q=len(Q),
        s=s_value(t, p),
        d=d_value(t, p),
        face_terms=terms,
        via_faces=len(t.outer) - 3 - sum(terms),
    )


@dataclass(frozen=True)
class Comparison:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "==", "<=", ">="

    @property
    def holds(self) -> bool:
        if self.relation == "==":
            return self.lhs == self.rhs
        if self.relation == "<=":
            return self.lhs <= self.rhs
        return self.lhs >= self.rhs

    @property
    def slack(self) -> Fraction:
        return abs(Fraction(self.lhs) - Fraction(self.rhs)) if self.holds else -abs(Fraction(self.lhs) - Fraction(self.rhs))


@dataclass(frozen=True)
class CheckReport:
    comparisons: tuple[Comparison, ...]
    applicable: bool = True
    note: str = ""

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.comparisons)

    def __getitem__(self, name: str) -> Comparison:
        return next(c for c in self.comparisons if c.name == name)


def decomposition_check(t: Canvas, g2: PlaneGraph, p: Params = PAPER_PARAMS) -> CheckReport:
    """Compare ``G`` against ``G'`` plus the disks of the internal faces of ``G'``."""
    base = induced_subcanvas(t, g2)
    parts = [subcanvas_by_cycle(t, f.vertices) for f in base.graph.internal_faces]
    pieces = [base, *parts]
    r = report(t, p)
    reps = [report(x, p) for x in pieces]
    comps = (
        Comparison("def", r.defi, sum(x.defi for x in reps), "=="),
        Comparison("v", r.v, sum(x.v for x in reps), "=="),
        Comparison("b", r.b, sum(x.b for x in reps), "<="),
        Comparison("q", r.q, sum(x.q for x in reps), "<="),
        Comparison("s", r.s, sum((x.s for x in reps), Fraction(0)), "<="),
        Comparison("d", r.d, sum((x.d for x in reps), Fraction(0)), ">="),
    )
    return CheckReport(comps)


def split_bounds_check(t: Canvas, split: Edge | tuple[int, int, int], p: Params = PAPER_PARAMS) -> CheckReport:
    """Evaluate the chord split or the two-neighbour vertex split.

    ``split`` is a chord ``(a, b)`` or a triple ``(u1, v, u2)``.  In the vertex
    case missing edges ``u1v``/``u2v`` are added virtually inside a face shared
    by the pair, and the inequality is evaluated on that augmented graph.
    """
    if len(split) == 2:
        a, b = split
        e = edge_key(a, b)
        on_c = set(t.outer)
        if not (a in on_c and b in on_c and t.graph.has_edge(a, b) and e not in t.outer_edges):
            raise ValueError(f"{split} is not a chord")
        k = len(t.outer)
        i, j = sorted((t.outer.index(a), t.outer.index(b)))
        c1 = t.outer[i : j + 1]
        c2 = t.outer[j:] + t.outer[: i + 1]
        s1, s2 = subcanvas_by_cycle(t, c1), subcanvas_by_cycle(t, c2)
        rhs = d_value(s1, p) + d_value(s2, p) + 1
        return CheckReport((Comparison("d", d_value(t, p), rhs, ">="),))
    u1, v, u2 = split
    if v in t.outer or u1 not in t.outer or u2 not in t.outer or u1 == u2:
        raise ValueError(f"{split} is not a vertex split")
    faces = {}
    for u in (u1, u2):
        if not t.graph.has_edge(u, v):
            shared = [f for f in t.graph.internal_faces if u in f.vertices and v in f.vertices]
            if not shared:
                raise ValueError(f"{u} and {v} are not cofacial")
            faces[u] = shared[0]
    s1, s2, added, g = split_at_vertex(t, v, u1, u2, faces.get(u1), faces.get(u2))
    host = Canvas(g, t.outer, t.lists) if added else t
    rhs = d_value(s1, p) + d_value(s2, p) - 1 - (2 * p.alpha + p.epsilon)
    note = f"evaluated on augmented graph (+{added})" if added else ""
    return CheckReport((Comparison("d", d_value(host, p), rhs, ">="),), note=note)


def defbound_check(t: Canvas) -> CheckReport:
    """def >= 2v - |E(G - V(C))| when every internal vertex has degree >= 5.

    Counting edges at internal vertices gives the exact slack
    ``def - (2v - |E(G - V(C))|) = #chords + sum(deg(v) - 5)``, so equality
    holds iff every internal vertex has degree five *and* C has no chord.
    Both the internal-degree and the all-vertex reading of the equality clause
    are compared against that; ``note`` records where they disagree.
    """
    internal = t.internal_vertices
    degrees = {v: t.graph.degree(v) for v in internal}
    if any(d < 5 for d in degrees.values()):
        return CheckReport((), applicable=False, note="an internal vertex has degree < 5")
    on_c = set(t.outer)
    inner_edges = sum(1 for a, b in t.graph.edges if a not in on_c and b not in on_c)
    n_chords = sum(1 for a, b in t.graph.edges if a in on_c and b in on_c) - len(t.outer)
    lhs, rhs = deficiency(t), 2 * len(internal) - inner_edges
    slack = n_chords + sum(d - 5 for d in degrees.values())
    all_five = all(d == 5 for d in degrees.values())
    all_vertices_five = all(t.graph.degree(v) == 5 for v in t.graph.vertices)
    equal = lhs == rhs
    notes = []
    if equal != all_five:
        notes.append("internal-degree reading of the equality clause fails")
    if equal != all_vertices_five:
        notes.append("all-vertex reading of the equality clause fails")
    comps = (
        Comparison("defbound", lhs, rhs, ">="),
        Comparison("slack", lhs - rhs, slack, "=="),
        Comparison("equality-iff-five-and-chordless", int(equal), int(all_five and n_chords == 0), "=="),
    )
    return CheckReport(comps, note="; ".join(notes))


def random_two_connected_subgraph(t: Canvas, rng: random.Random) -> PlaneGraph:
    """A random 2-connected subgraph containing C (edges dropped one at a time)."""
    g = t.graph
    order = [e for e in g.edges if e not in t.outer_edges]
    rng.shuffle(order)
    for e in order:
        if rng.random() < 0.5:
            continue
        trial = g.without_edges([e])
        trial = trial.restrict([v for v in trial.vertices if trial.neighbors(v)])
        trial = trial.with_outer(t.graph.outer_dart)
        if is_two_connected(trial):
            g = trial
    return g


def induced_closure(t: Canvas, g2: PlaneGraph) -> PlaneGraph:
    """``G[V(g2)]``: put back every edge of ``G`` between vertices of ``g2``.

    The boundary inequality of the surplus decomposition needs this; for a
    non-induced ``g2`` an internal vertex can lose all its edges to C while
    staying in ``g2``, and then it is counted on neither side.
    """
    return t.graph.restrict(g2.vertices).with_outer(t.graph.outer_dart)


def theorem_6_1_terms(t: Canvas) -> tuple[Fraction, int]:
    """(v/18 + Σ(|f|-3), |C|-4)."""
    return Fraction(internal_count(t), 18) + sum(face_terms(t)), len(t.outer) - 4


def prop_4_5_expected(t: Canvas, p: Params = PAPER_PARAMS) -> Fraction | None:
    v = internal_count(t)
    if v == 0:
        return Fraction(non_cycle_edges(t))
    if v == 1:
        return non_cycle_edges(t) - 3 - (2 * p.alpha + p.epsilon)
    return None

