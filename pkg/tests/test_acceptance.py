"""Acceptance criteria 1-8.

Each test records one PASS/FAIL line that is printed in the terminal summary.
The face-length corollary in criterion 1 is false as stated for canvases
without internal vertices; that part stays red (strict xfail).
"""

import random
from fractions import Fraction

import pytest

from canvaslab.canvas import Canvas, fix_c4e, fix_k4, fix_w5, make_lists
from canvaslab.colorer import find_extension, is_proper, thomassen_color
from canvaslab.critical import extract_minimal_extender_full, is_critical_canvas
from canvaslab.deficiency import (
    PAPER_PARAMS,
    Params,
    decomposition_check,
    deficiency,
    deficiency_via_faces,
    induced_closure,
    random_two_connected_subgraph,
    report,
)
from canvaslab.genlab import GenSpec, assign_lists, enumerate_plane_graphs, generate_instances
from canvaslab.verifier import check_instance, scan

from conftest import ACCEPTANCE
from oracles import naive_extends
from strategies import thomassen_instance

SCAN = [GenSpec(k, max_internal=2) for k in (3, 4, 5)]
CRIT1 = ("THM-3.4", "THM-2.8", "PROP-2.10-1", "PROP-2.10-2", "THM-6.3")


def record(key: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[key] = ("PASS" if ok else "FAIL", detail)


@pytest.fixture(scope="module")
def acceptance_scan():
    assert Params.parse("1/18,1/12,2/3") == PAPER_PARAMS
    return scan(SCAN, PAPER_PARAMS, jobs=1)


def _fails(rep, theorem):
    return rep.counts[theorem]["fail"]


def test_criterion_1(acceptance_scan):
    rep = acceptance_scan
    fails = {t: _fails(rep, t) for t in CRIT1}
    evaluated = {t: rep.counts[t]["pass"] + rep.counts[t]["fail"] for t in CRIT1}
    ok = not any(fails.values()) and all(n == rep.footer["critical"] for n in evaluated.values())
    record(
        "1",
        ok,
        f"{rep.footer['instances']} instances, {rep.footer['critical']} critical; "
        + ", ".join(f"{t} {fails[t]} fail" for t in CRIT1),
    )
    assert rep.footer["instances"] == 3991
    assert rep.footer["critical"] > 0
    assert ok, fails


@pytest.mark.xfail(strict=True, reason="|f| < |C|-1 fails on critical canvases with no internal vertex (see ledger)")
def test_criterion_1_face_corollary(acceptance_scan):
    n = _fails(acceptance_scan, "COR-6.2")
    record("1 (COR-6.2)", n == 0, f"{n} violations; all on chorded cycles with v=0, where only |f| <= |C|-1 holds")
    for v in acceptance_scan.violations:
        assert v["certificate"]["theorem"] == "COR-6.2"
        assert "v=0" in v["certificate"]["detail"]
    assert n == 0


def test_criterion_2(acceptance_scan):
    rep = acceptance_scan
    c46, c61 = rep.counts["THM-4.6"], rep.counts["THM-6.1"]
    # v >= 2 needs |C| >= 6 on a critical canvas, so THM-4.6 never applies
    # here; the two instances of the k=6, m=2 stream where it does apply
    # are checked as well
    spec = GenSpec(6, max_internal=2)
    extra = []
    for g in enumerate_plane_graphs(spec):
        outer = set(g.outer_face.vertices)
        inner = [v for v in g.vertices if v not in outer]
        if len(inner) == 2 and all(g.degree(v) >= 5 for v in inner):
            for lists in assign_lists(g, spec):
                r = check_instance(Canvas.from_graph(g, lists), suite="THM-4.6")["THM-4.6"]
                if r.status != "skip":
                    extra.append(r)
    ok = c46["fail"] == 0 and c61["fail"] == 0 and c61["pass"] > 0 and len(extra) == 2 and all(r.status == "pass" for r in extra)
    record(
        "2",
        ok,
        f"THM-6.1 {c61['pass']} pass {c61['fail']} fail; THM-4.6 {c46['fail']} fail "
        f"({c46['pass']} applicable in the scan, {len(extra)} more at k=6: {extra[0].detail if extra else '-'})",
    )
    assert ok


def test_criterion_3():
    rng = random.Random(3)
    specs = SCAN + [GenSpec(6, max_internal=2, list_samples=6, seed=1)]
    n = failures = 0
    for inst in generate_instances(specs):
        t = inst.canvas
        n += 1
        if deficiency(t) != deficiency_via_faces(t):
            failures += 1
        g2 = random_two_connected_subgraph(t, rng)
        dec = decomposition_check(t, g2)
        if not (dec["def"].holds and dec["v"].holds):
            failures += 1
        if not decomposition_check(t, induced_closure(t, g2)).holds:
            failures += 1
    record("3", n >= 10**4 and failures == 0, f"{n} canvases, {failures} failures")
    assert n >= 10**4 and failures == 0


def test_criterion_4():
    rng = random.Random(4)
    graphs = [g for s in SCAN for g in enumerate_plane_graphs(s)]
    checks = disagreements = extendable = 0
    for g in graphs:
        assert g.n <= 10
        outer = g.outer_face.vertices
        for _ in range(200):
            lists = make_lists(
                {v: rng.sample(range(5), rng.randint(1, 3)) if v in outer else rng.sample(range(7), 5) for v in g.vertices}
            )
            phi = {v: rng.choice(sorted(lists[v])) for v in outer} if rng.random() < 0.5 else {}
            got = find_extension(g.adjacency, lists, phi)
            want = naive_extends(g.adjacency, lists, phi)
            checks += 1
            extendable += want
            if (got is not None) != want or (got is not None and not is_proper(g.adjacency, got, lists)):
                disagreements += 1
    record("4", disagreements == 0, f"{len(graphs)} graphs, {checks} checks ({extendable} extendable), {disagreements} disagreements")
    assert 0 < extendable < checks
    assert disagreements == 0


def test_criterion_5():
    rng = random.Random(5)
    good = 0
    for i in range(1000):
        g, Z, S, lists = thomassen_instance(rng, max_vertices=30, blocks=1 + i % 3)
        col = thomassen_color(g, Z, S, lists)
        # independent check: every vertex colored from its list, no edge monochromatic
        if set(col) == set(g.vertices) and all(col[v] in lists[v] for v in g.vertices) and all(col[a] != col[b] for a, b in g.edges):
            good += 1
    record("5", good == 1000, f"{good}/1000 proper colorings")
    assert good == 1000


def test_criterion_6(acceptance_scan):
    c = acceptance_scan.counts["THM-1.1"]
    n = acceptance_scan.footer["instances"]
    ok = c["pass"] == n and c["fail"] == 0
    record("6", ok, f"extractor contract held on {c['pass']}/{n} instances")
    assert ok


def test_criterion_7():
    w5, c4e, k4 = fix_w5(), fix_c4e(), fix_k4()
    rw = report(w5, PAPER_PARAMS)
    h = extract_minimal_extender_full(k4.graph, k4.outer, k4.lists).graph
    checks = {
        "W5 critical": is_critical_canvas(w5).verdict,
        "W5 def=2": rw.defi == 2,
        "W5 d=16/9": rw.d == Fraction(16, 9),
        "C4e critical": is_critical_canvas(c4e).verdict,
        "C4e def=1": deficiency(c4e) == 1,
        "K4 |L(3)|=4": len(k4.lists[3]) == 4,
        "K4 not critical": not is_critical_canvas(k4).verdict,
        "K4 H=C": h.edge_set == k4.outer_edges and set(h.vertices) == set(k4.outer),
    }
    bad = [k for k, v in checks.items() if not v]
    record("7", not bad, "all fixture values exact" if not bad else f"wrong: {bad}")
    assert not bad


def test_criterion_8(acceptance_scan, tmp_path):
    base = acceptance_scan.text()
    parallel = scan(SCAN, PAPER_PARAMS, jobs=4).text()
    ck = tmp_path / "ck.json"
    first = scan(SCAN, PAPER_PARAMS, checkpoint=ck, checkpoint_every=500, stop_after=1500)
    resumed = scan(SCAN, PAPER_PARAMS, checkpoint=ck, checkpoint_every=500).text()
    ok = first is None and base == parallel == resumed
    record("8", ok, f"jobs 1 vs 4 identical: {base == parallel}; checkpoint/resume identical: {base == resumed}")
    assert ok
