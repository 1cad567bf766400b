"""Theorem scan harness.

:func:`check_instance` evaluates every selected statement on one canvas;
:func:`scan` folds it over a generated stream and writes a line-delimited JSON
report.  Statements that assume criticality run only after
:func:`~canvaslab.critical.is_critical_canvas` certifies the instance, and
the certificate travels with the result.

Report records (one JSON object per line, keys sorted):

* ``header``: specs, params, suite and flags (the seeds are inside the specs);
* ``instance``: one per instance, only when verbose;
* ``violation``: a self-contained certificate for each failed check;
* ``footer``: counters.

Nothing time-dependent is written to the report, so reports are byte-identical
across worker counts and across checkpoint/resume.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import multiprocessing
import os
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .canvas import Canvas, subcanvas_by_cycle, validate
from .colorer import ExtensionCache
from .critical import (
    CriticalityCertificate,
    Subgraph,
    extender_is_minimal,
    extender_property,
    extract_minimal_extender_full,
    is_critical_canvas,
    verify_certificate,
)
from .deficiency import (
    PAPER_PARAMS,
    Params,
    decomposition_check,
    defbound_check,
    deficiency,
    deficiency_via_faces,
    induced_closure,
    d_value,
    internal_count,
    prop_4_5_expected,
    random_two_connected_subgraph,
    split_bounds_check,
    theorem_6_1_terms,
)
from .fileformat import CanvasFileError, from_document, to_document
from .genlab import GenSpec, generate_instances
from .plane_graph import disk_subgraph, is_two_connected, simple_cycles
from .structure import (
    boundary_neighbors,
    chord_or_tripod_witness,
    chords,
    classify_dividing,
    classify_pod,
)

THEOREMS = (
    "THM-2.8",
    "PROP-2.10-1",
    "PROP-2.10-2",
    "THM-3.4",
    "LEM-3.2",
    "LEM-3.3",
    "LEM-3.5",
    "PROP-4.3",
    "COR-4.4",
    "PROP-4.5",
    "THM-4.6",
    "THM-6.1",
    "COR-6.2",
    "THM-6.3",
    "COR-2.7",
    "LEM-2.4",
    "THM-1.1",
)

# conclusions of intermediate steps of the main induction, run behind a flag
REPLICATIONS = (
    "REP-TRUE-DIVIDING",
    "REP-STRONG-DIVIDING",
    "REP-TRIPOD-OR-DIVIDING",
    "REP-TRIPOD-REGULAR",
)

CRITICAL_ONLY = frozenset(
    {"THM-2.8", "PROP-2.10-1", "PROP-2.10-2", "THM-3.4", "THM-4.6", "THM-6.1", "COR-6.2", "THM-6.3", "COR-2.7", "LEM-2.4", *REPLICATIONS}
)

PASS, FAIL, SKIP = "pass", "fail", "skip"


class ReplayError(ValueError):
    """Malformed certificate."""


@dataclass(frozen=True)
class CheckResult:
    theorem: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class InstanceResult:
    critical: bool
    certificate: CriticalityCertificate
    results: tuple[CheckResult, ...]

    def __getitem__(self, theorem: str) -> CheckResult:
        for r in self.results:
            if r.theorem == theorem:
                return r
        raise KeyError(theorem)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]


def parse_suite(text: str | Iterable[str] | None) -> tuple[str, ...]:
    if text is None:
        return THEOREMS
    names = [s.strip() for s in text.split(",")] if isinstance(text, str) else list(text)
    known = set(THEOREMS) | set(REPLICATIONS)
    bad = [s for s in names if s not in known]
    if bad:
        raise ValueError(f"unknown theorem ids: {bad}")
    order = {t: i for i, t in enumerate(THEOREMS + REPLICATIONS)}
    return tuple(sorted(set(names), key=order.__getitem__))


def _verdict(ok: bool, detail: str) -> CheckResult:
    return CheckResult("", PASS if ok else FAIL, detail)


def _fmt(x) -> str:
    return str(Fraction(x))


def _instance_rng(t: Canvas, seed: int) -> random.Random:
    digest = hashlib.sha256(json.dumps(to_document(t), sort_keys=True).encode()).digest()
    return random.Random(digest + seed.to_bytes(8, "little"))


# -- individual checks ---------------------------------------------------------


def _lem_3_2(t, p, ctx):
    a, b = deficiency(t), deficiency_via_faces(t)
    return _verdict(a == b, f"def={a} via_faces={b}")


def _subgraph(t, ctx):
    if "subgraph" not in ctx:
        ctx["subgraph"] = random_two_connected_subgraph(t, ctx["rng"])
    return ctx["subgraph"]


def _lem_3_3(t, p, ctx):
    rep = decomposition_check(t, _subgraph(t, ctx), p)
    comps = [rep["def"], rep["v"]]
    return _verdict(all(c.holds for c in comps), " ".join(f"{c.name}:{_fmt(c.lhs)}{c.relation}{_fmt(c.rhs)}" for c in comps))


def _prop_4_3(t, p, ctx):
    # evaluated on G[V(G')]; see induced_closure for why not on G' itself
    rep = decomposition_check(t, induced_closure(t, _subgraph(t, ctx)), p)
    comps = [rep[n] for n in ("v", "b", "q", "s", "d")]
    return _verdict(all(c.holds for c in comps), " ".join(f"{c.name}:{_fmt(c.lhs)}{c.relation}{_fmt(c.rhs)}" for c in comps))


def _lem_3_5(t, p, ctx):
    rep = defbound_check(t)
    if not rep.applicable:
        return CheckResult("", SKIP, rep.note)
    c, s = rep["defbound"], rep["slack"]
    note = f" ({rep.note})" if rep.note else ""
    return _verdict(rep.holds, f"def={c.lhs} bound={c.rhs} slack={s.rhs}{note}")


def _cor_4_4(t, p, ctx):
    splits: list = list(chords(t))
    for v in t.internal_vertices:
        us = boundary_neighbors(t, v)
        splits.extend((u1, v, u2) for i, u1 in enumerate(us) for u2 in us[i + 1 :])
    if not splits:
        return CheckResult("", SKIP, "no chord and no internal vertex with two neighbours on C")
    for s in splits:
        rep = split_bounds_check(t, s, p)
        if not rep.holds:
            c = rep["d"]
            return _verdict(False, f"split {list(s)}: d={_fmt(c.lhs)} < {_fmt(c.rhs)}")
    return _verdict(True, f"{len(splits)} splits")


def _prop_4_5(t, p, ctx):
    expected = prop_4_5_expected(t, p)
    if expected is None:
        return CheckResult("", SKIP, f"v={internal_count(t)} not in {{0,1}}")
    d = d_value(t, p)
    return _verdict(d == expected, f"d={_fmt(d)} expected={_fmt(expected)}")


def _lem_2_4(t, p, ctx):
    return _verdict(is_two_connected(t.graph), "")


def _thm_2_8(t, p, ctx):
    w = chord_or_tripod_witness(t, ctx["certificate"])
    if w.kind == "chord":
        return _verdict(True, f"chord {list(w.chord)}")
    if w.kind == "pod":
        return _verdict(True, f"vertex {w.vertex}")
    return _verdict(False, "no chord and no vertex with three neighbours on C and at most one busy face")


def _prop_2_10_1(t, p, ctx):
    outer = set(t.outer)
    for c in simple_cycles(t.graph, 4):
        if set(c) == outer and len(c) == len(t.outer):
            sub = t.graph
        else:
            sub = disk_subgraph(t.graph, c)
        if set(sub.vertices) != set(c):
            return _verdict(False, f"cycle {list(c)} has {sub.n - len(c)} vertices inside")
    return _verdict(True, "")


def _prop_2_10_2(t, p, ctx):
    low = [v for v in t.internal_vertices if t.graph.degree(v) < 5]
    return _verdict(not low, f"low-degree internal vertices {low}" if low else "")


def _thm_3_4(t, p, ctx):
    d = deficiency(t)
    return _verdict(d >= 1, f"def={d}")


def _thm_4_6(t, p, ctx):
    v = internal_count(t)
    if v < 2:
        return CheckResult("", SKIP, f"v={v} < 2")
    d = d_value(t, p)
    return _verdict(d >= 3 - p.gamma, f"d={_fmt(d)} bound={_fmt(3 - p.gamma)}")


def _thm_6_1(t, p, ctx):
    lhs, rhs = theorem_6_1_terms(t)
    return _verdict(lhs <= rhs, f"lhs={_fmt(lhs)} rhs={rhs}")


def _cor_6_2(t, p, ctx):
    # literal statement |f| < |C| - 1; the strong linear bound only yields
    # |f| <= |C| - 1, which is tight for chord-only canvases (v = 0)
    big = max((f.length for f in t.graph.internal_faces), default=0)
    k = len(t.outer)
    weak = "holds" if big <= k - 1 else "fails"
    return _verdict(big < k - 1, f"largest face {big}, |C|={k}, v={internal_count(t)}, |f|<=|C|-1 {weak}")


def _thm_6_3(t, p, ctx):
    return _verdict(t.graph.n <= 19 * len(t.outer), f"{t.graph.n} <= {19 * len(t.outer)}")


def _cor_2_7(t, p, ctx):
    outer = set(t.outer)
    count = 0
    for c in simple_cycles(t.graph):
        if set(c) == outer and len(c) == len(t.outer):
            continue
        sub = subcanvas_by_cycle(t, c)
        if sub.graph.edge_set == Subgraph.cycle(c).edges and sub.graph.n == len(c):
            continue
        count += 1
        if not is_critical_canvas(sub, ctx["cache"]).verdict:
            return _verdict(False, f"subcanvas on {list(c)} not critical")
    return _verdict(True, f"{count} subcycles")


def _thm_1_1(t, p, ctx):
    res = extract_minimal_extender_full(t.graph, t.outer, t.lists, ctx["cache"])
    h = res.graph
    k = len(t.outer)
    is_c = h.n == k and h.edge_set == t.outer_edges
    ok = (
        extender_property(t.graph, h.adjacency, t.outer, t.lists, ctx["cache"])
        and extender_is_minimal(t.graph, h, t.outer, t.lists, ctx["cache"])
        and (is_c or res.critical)
        and h.n <= 19 * k
    )
    return _verdict(ok, f"|V(H)|={h.n} {'H=C' if is_c else 'critical'}")


def _dividing(t, ctx):
    if "dividing" not in ctx:
        out = {}
        for v in t.internal_vertices:
            try:
                out[v] = classify_dividing(t, v)
            except ValueError:
                pass
        ctx["dividing"] = out
    return ctx["dividing"]


def _rep_true_dividing(t, p, ctx):
    v = internal_count(t)
    true = [x for x, c in _dividing(t, ctx).items() if c.true_dividing]
    if v < 2 or not true:
        return CheckResult("", SKIP, "needs v >= 2 and a true dividing vertex")
    d = d_value(t, p)
    bound = 3 - 2 * (2 * p.alpha + p.epsilon)
    if v >= 3:
        bound = max(bound, 4 - 2 * p.alpha - p.epsilon - p.gamma)
    return _verdict(d >= bound, f"d={_fmt(d)} bound={_fmt(bound)}")


def _rep_strong_dividing(t, p, ctx):
    strong = [x for x, c in _dividing(t, ctx).items() if c.strong]
    if not strong:
        return CheckResult("", SKIP, "no strong dividing vertex")
    d = d_value(t, p)
    return _verdict(d >= 4 - 2 * p.gamma, f"d={_fmt(d)} bound={_fmt(4 - 2 * p.gamma)}")


def _rep_tripod_or_dividing(t, p, ctx):
    if internal_count(t) < 2:
        return CheckResult("", SKIP, "v < 2")
    div = _dividing(t, ctx)
    bad = []
    for v in t.internal_vertices:
        if len(boundary_neighbors(t, v)) < 3:
            continue
        pod = classify_pod(t, v)
        if not (pod.kind == "tripod" and pod.regular) and not (v in div and div[v].true_dividing):
            bad.append(v)
    return _verdict(not bad, f"neither regular tripod nor true dividing: {bad}" if bad else "")


def _rep_tripod_regular(t, p, ctx):
    bad = []
    for v in t.internal_vertices:
        if len(boundary_neighbors(t, v)) == 3:
            pod = classify_pod(t, v)
            if pod.kind == "tripod" and not pod.regular:
                bad.append(v)
    return _verdict(not bad, f"irregular tripods {bad}" if bad else "")


CHECKS = {
    "THM-2.8": _thm_2_8,
    "PROP-2.10-1": _prop_2_10_1,
    "PROP-2.10-2": _prop_2_10_2,
    "THM-3.4": _thm_3_4,
    "LEM-3.2": _lem_3_2,
    "LEM-3.3": _lem_3_3,
    "LEM-3.5": _lem_3_5,
    "PROP-4.3": _prop_4_3,
    "COR-4.4": _cor_4_4,
    "PROP-4.5": _prop_4_5,
    "THM-4.6": _thm_4_6,
    "THM-6.1": _thm_6_1,
    "COR-6.2": _cor_6_2,
    "THM-6.3": _thm_6_3,
    "COR-2.7": _cor_2_7,
    "LEM-2.4": _lem_2_4,
    "THM-1.1": _thm_1_1,
    "REP-TRUE-DIVIDING": _rep_true_dividing,
    "REP-STRONG-DIVIDING": _rep_strong_dividing,
    "REP-TRIPOD-OR-DIVIDING": _rep_tripod_or_dividing,
    "REP-TRIPOD-REGULAR": _rep_tripod_regular,
}


def check_instance(
    t: Canvas,
    p: Params = PAPER_PARAMS,
    suite: Iterable[str] | None = None,
    cache: ExtensionCache | None = None,
    replicate: bool = False,
    seed: int = 0,
) -> InstanceResult:
    """Evaluate the selected statements on ``t``.

    Checks that assume a critical canvas are skipped with a reason when the
    criticality certificate is negative.  ``replicate`` adds the
    proof-replication diagnostics to the suite.
    """
    names = parse_suite(suite)
    if replicate:
        names = parse_suite(set(names) | set(REPLICATIONS))
    tags = validate(t).tags()
    if tags - {"short-internal-list"}:
        raise ValueError(f"invalid canvas: {sorted(tags)}")
    cert = is_critical_canvas(t, cache)
    gate = "not critical" if not cert.verdict else "internal list shorter than 5" if tags else ""
    ctx = {"certificate": cert, "cache": cache, "rng": _instance_rng(t, seed)}
    results = []
    for name in names:
        if name in CRITICAL_ONLY and gate:
            results.append(CheckResult(name, SKIP, gate))
            continue
        r = CHECKS[name](t, p, ctx)
        results.append(CheckResult(name, r.status, r.detail))
    return InstanceResult(cert.verdict and not gate, cert, tuple(results))


# -- certificates ------------------------------------------------------------------


def criticality_certificate(t: Canvas, cert: CriticalityCertificate | None = None) -> bytes:
    cert = cert if cert is not None else is_critical_canvas(t)
    doc = {
        "kind": "criticality",
        "canvas": to_document(t),
        "verdict": cert.verdict,
        "witnesses": [[list(e), None if w is None else sorted([v, c] for v, c in w.items())] for e, w in sorted(cert.witnesses.items())],
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def check_certificate(t: Canvas, theorem: str, p: Params, status: str, detail: str, seed: int = 0) -> dict:
    return {
        "kind": "check",
        "canvas": to_document(t),
        "theorem": theorem,
        "params": str(p),
        "seed": seed,
        "status": status,
        "detail": detail,
    }


@dataclass(frozen=True)
class ReplayResult:
    kind: str
    recorded: object
    recomputed: object
    matches: bool
    detail: str = ""


def _require(doc: dict, keys: Sequence[str]) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ReplayError(f"certificate lacks {missing}")


def replay_certificate(data: bytes | str) -> ReplayResult:
    """Re-run the check a certificate describes, from its embedded data alone."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ReplayError(f"malformed certificate: {exc}") from None
    if isinstance(doc, dict) and doc.get("type") == "violation":
        doc = doc.get("certificate")
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ReplayError("malformed certificate: no kind")
    _require(doc, ("kind", "canvas"))
    try:
        t = from_document(doc["canvas"])
    except CanvasFileError as exc:
        raise ReplayError(f"malformed canvas: {exc}") from None
    if doc["kind"] == "criticality":
        _require(doc, ("verdict", "witnesses"))
        try:
            witnesses = {tuple(e): None if w is None else {v: c for v, c in w} for e, w in doc["witnesses"]}
        except (TypeError, ValueError):
            raise ReplayError("malformed witnesses") from None
        recorded = CriticalityCertificate(bool(doc["verdict"]), witnesses)
        T = Subgraph.cycle(t.outer)
        if not validate(t).ok:
            return ReplayResult("criticality", recorded.verdict, None, False, "embedded canvas is not valid")
        fresh = is_critical_canvas(t)
        holds = verify_certificate(t.graph, T, t.lists, recorded)
        ok = holds and fresh.verdict == recorded.verdict
        return ReplayResult("criticality", recorded.verdict, fresh.verdict, ok, "" if holds else "witnesses do not re-verify")
    if doc["kind"] == "check":
        _require(doc, ("theorem", "params", "status"))
        if not validate(t).ok:
            return ReplayResult("check", doc["status"], None, False, "embedded canvas is not valid")
        p = Params.parse(doc["params"])
        res = check_instance(t, p, [doc["theorem"]], seed=int(doc.get("seed", 0)))
        r = res[doc["theorem"]]
        return ReplayResult("check", doc["status"], r.status, r.status == doc["status"], r.detail)
    raise ReplayError(f"unknown certificate kind {doc['kind']!r}")


# -- scanning ------------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


@dataclass
class ScanState:
    """Order-independent counters plus the ordered record lines."""

    instances: int = 0
    critical: int = 0
    counts: dict = field(default_factory=dict)
    violations: int = 0

    def add(self, res: InstanceResult) -> None:
        self.instances += 1
        self.critical += int(res.critical)
        for r in res.results:
            bucket = self.counts.setdefault(r.theorem, {PASS: 0, FAIL: 0, SKIP: 0})
            bucket[r.status] += 1
        self.violations += len(res.failures)

    def to_dict(self) -> dict:
        return {"instances": self.instances, "critical": self.critical, "counts": self.counts, "violations": self.violations}

    @classmethod
    def from_dict(cls, d: dict) -> ScanState:
        return cls(d["instances"], d["critical"], d["counts"], d["violations"])


@dataclass(frozen=True)
class ScanReport:
    header: dict
    footer: dict
    lines: tuple[str, ...]

    @property
    def violations(self) -> list[dict]:
        return [json.loads(x) for x in self.lines if x.startswith('{"certificate"')]

    @property
    def counts(self) -> dict:
        return self.footer["counts"]

    def text(self) -> str:
        return "".join(self.lines)


def _work(args) -> InstanceResult:
    t, p, suite, replicate, seed, cache_dir = args
    cache = ExtensionCache(cache_dir) if cache_dir else None
    return check_instance(t, p, suite, cache, replicate, seed)


def _records(inst, res: InstanceResult, p: Params, seed: int, verbose: bool) -> list[str]:
    out = []
    if verbose:
        out.append(
            _dump(
                {
                    "type": "instance",
                    "index": inst.index,
                    "name": inst.canvas.name,
                    "critical": res.critical,
                    "results": {r.theorem: [r.status, r.detail] for r in res.results},
                }
            )
        )
    for r in res.failures:
        cert = check_certificate(inst.canvas, r.theorem, p, r.status, r.detail, seed)
        out.append(_dump({"certificate": cert, "index": inst.index, "type": "violation"}))
    return out


def scan(
    specs: GenSpec | Sequence[GenSpec],
    p: Params = PAPER_PARAMS,
    suite: Iterable[str] | None = None,
    *,
    jobs: int = 1,
    replicate: bool = False,
    verbose: bool = False,
    report_path: str | os.PathLike | None = None,
    checkpoint: str | os.PathLike | None = None,
    checkpoint_every: int = 250,
    stop_after: int | None = None,
    cache_dir: str | None = None,
    progress=None,
) -> ScanReport | None:
    """Check every generated instance; returns the report (``None`` if stopped early).

    With ``checkpoint`` the cursor, counters and report prefix are saved every
    ``checkpoint_every`` instances, and an existing checkpoint for the same
    header is resumed.  ``stop_after`` interrupts the run after that many
    instances in this call (used to exercise resumption).
    """
    specs = [specs] if isinstance(specs, GenSpec) else list(specs)
    names = parse_suite(suite)
    if replicate:
        names = parse_suite(set(names) | set(REPLICATIONS))
    seed = specs[0].seed if specs else 0
    header = {
        "type": "header",
        "specs": [s.to_dict() for s in specs],
        "params": str(p),
        "suite": list(names),
        "replicate": replicate,
        "verbose": verbose,
    }
    state = ScanState()
    lines = [_dump(header)]
    cursor = 0
    if checkpoint is not None and os.path.exists(checkpoint):
        with open(checkpoint, encoding="utf-8") as fh:
            saved = json.load(fh)
        if saved.get("header") != header:
            raise ValueError("checkpoint belongs to a different scan")
        cursor = saved["cursor"]
        state = ScanState.from_dict(saved["state"])
        lines = saved["lines"]

    def save(next_index: int) -> None:
        if checkpoint is None:
            return
        tmp = f"{checkpoint}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"header": header, "cursor": next_index, "state": state.to_dict(), "lines": lines}, fh)
        os.replace(tmp, checkpoint)

    pending = (i for i in generate_instances(specs) if i.index >= cursor)
    if stop_after is not None:
        pending = itertools.islice(pending, stop_after)
    done_here = 0
    pool = multiprocessing.get_context("fork").Pool(jobs) if jobs > 1 else None
    try:
        while True:
            batch = list(itertools.islice(pending, checkpoint_every))
            if not batch:
                break
            args = [(inst.canvas, p, names, replicate, seed, cache_dir) for inst in batch]
            results = pool.map(_work, args, chunksize=max(1, len(args) // (4 * jobs))) if pool else list(map(_work, args))
            for inst, res in zip(batch, results):
                state.add(res)
                lines.extend(_records(inst, res, p, seed, verbose))
                if progress is not None:
                    progress(state)
            cursor = batch[-1].index + 1
            done_here += len(batch)
            save(cursor)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    if stop_after is not None and done_here == stop_after:
        # possibly more to do; the caller resumes from the checkpoint
        remaining = next((True for i in generate_instances(specs) if i.index >= cursor), False)
        if remaining:
            return None
    footer = {"type": "footer", **state.to_dict()}
    lines.append(_dump(footer))
    report = ScanReport(header, footer, tuple(lines))
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.text())
    if checkpoint is not None and os.path.exists(checkpoint):
        os.remove(checkpoint)
    return report
