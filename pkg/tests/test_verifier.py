import json

import pytest

from canvaslab.canvas import fix_c4e, fix_k4, fix_w5
from canvaslab.deficiency import Params
from canvaslab.genlab import GenSpec, generate_instances
from canvaslab.structure import chords
from canvaslab.verifier import (
    REPLICATIONS,
    THEOREMS,
    ReplayError,
    check_certificate,
    check_instance,
    criticality_certificate,
    parse_suite,
    replay_certificate,
    scan,
)

SMALL = [GenSpec(3, max_internal=1), GenSpec(4, max_internal=1)]


def test_w5_passes_everything_applicable():
    res = check_instance(fix_w5(), replicate=True)
    assert res.critical and not res.failures
    assert res["THM-4.6"].status == "skip"
    assert res["THM-6.3"].status == "pass" and res["THM-6.3"].detail == "6 <= 95"


def test_c4e_fails_only_the_face_corollary():
    res = check_instance(fix_c4e())
    assert res.critical
    assert [r.theorem for r in res.failures] == ["COR-6.2"]
    assert res["THM-2.8"].status == "pass"


def test_k4_short_list_skips_critical_checks():
    res = check_instance(fix_k4())
    assert not res.critical
    assert res["THM-2.8"].status == "skip"
    assert res["THM-2.8"].detail == "not critical"
    assert res["LEM-3.2"].status == "pass"
    assert res["THM-1.1"].status == "pass"


def test_short_internal_list_gate_on_a_critical_canvas():
    # K4 whose centre has only the three outer colours: critical, but the
    # statements that assume 5-lists are not evaluated
    t = fix_k4(center_list=(1, 2, 3))
    res = check_instance(t)
    assert res.certificate.verdict and not res.critical
    assert res["COR-6.2"].detail == "internal list shorter than 5"


def test_suite_parsing():
    assert parse_suite(None) == THEOREMS
    assert parse_suite("THM-6.3,LEM-3.2") == ("LEM-3.2", "THM-6.3")
    with pytest.raises(ValueError, match="unknown"):
        parse_suite("THM-9.9")
    res = check_instance(fix_w5(), suite="LEM-3.2")
    assert [r.theorem for r in res.results] == ["LEM-3.2"]
    assert set(REPLICATIONS) <= {r.theorem for r in check_instance(fix_w5(), suite="LEM-3.2", replicate=True).results}


def test_criticality_certificate_replays():
    data = criticality_certificate(fix_c4e())
    doc = json.loads(data)
    assert doc["verdict"] is True
    assert doc["witnesses"] == [[[0, 2], [[0, 1], [1, 2], [2, 1], [3, 2]]]]
    res = replay_certificate(data)
    assert res.matches and res.recorded is True and res.recomputed is True


def test_tampered_certificate_mismatches():
    doc = json.loads(criticality_certificate(fix_c4e()))
    doc["witnesses"][0][1] = [[0, 1], [1, 2], [2, 2], [3, 1]]
    res = replay_certificate(json.dumps(doc))
    assert not res.matches and res.detail == "witnesses do not re-verify"
    doc = json.loads(criticality_certificate(fix_k4(range(5))))
    doc["verdict"] = True
    assert not replay_certificate(json.dumps(doc)).matches


def test_malformed_certificates():
    data = criticality_certificate(fix_w5())
    with pytest.raises(ReplayError):
        replay_certificate(data[:50])
    with pytest.raises(ReplayError):
        replay_certificate(b'{"kind":"criticality"}')
    with pytest.raises(ReplayError):
        replay_certificate(b'{"kind":"other","canvas":' + json.dumps(json.loads(data)["canvas"]).encode() + b"}")


def test_check_certificate_replays_the_face_corollary_failure():
    t = fix_c4e()
    r = check_instance(t, suite="COR-6.2")["COR-6.2"]
    cert = check_certificate(t, "COR-6.2", Params.parse("1/18,1/12,2/3"), r.status, r.detail)
    res = replay_certificate(json.dumps(cert))
    assert res.matches and res.recorded == "fail"


def test_scan_counts_and_violation_records():
    rep = scan(SMALL)
    assert rep.footer["instances"] == sum(1 for _ in generate_instances(SMALL))
    assert rep.footer["violations"] == len(rep.violations)
    for v in rep.violations:
        assert v["type"] == "violation"
        assert replay_certificate(json.dumps(v)).matches
    # every violation in this range is the face corollary on a chorded cycle
    assert {v["certificate"]["theorem"] for v in rep.violations} <= {"COR-6.2"}


def test_scan_critical_chordal_c4():
    rep = scan(GenSpec(4), verbose=True)
    records = [json.loads(x) for x in rep.lines if '"type":"instance"' in x]
    crit = {r["index"] for r in records if r["critical"]}
    assert crit, "C4 plus a chord with clashing colours should be critical"
    for inst in generate_instances(GenSpec(4)):
        t = inst.canvas
        if inst.index in crit:
            assert len(chords(t)) == 1
            # the chord ends share their only colour
            a, b = chords(t)[0]
            assert t.lists[a] == t.lists[b]


def test_scan_is_independent_of_jobs(tmp_path):
    a = scan(SMALL, jobs=1, checkpoint_every=7)
    b = scan(SMALL, jobs=2, checkpoint_every=7)
    assert a.text() == b.text()


def test_scan_resumes_from_checkpoint(tmp_path):
    ck = tmp_path / "ck.json"
    full = scan(SMALL, checkpoint_every=5)
    assert scan(SMALL, checkpoint=ck, checkpoint_every=5, stop_after=10) is None
    assert ck.exists()
    assert scan(SMALL, checkpoint=ck, checkpoint_every=5, stop_after=10) is None
    rest = scan(SMALL, checkpoint=ck, checkpoint_every=5)
    assert rest.text() == full.text()
    assert not ck.exists()


def test_checkpoint_for_a_different_scan_is_rejected(tmp_path):
    ck = tmp_path / "ck.json"
    scan(SMALL, checkpoint=ck, checkpoint_every=5, stop_after=5)
    with pytest.raises(ValueError, match="different scan"):
        scan(SMALL, suite="LEM-3.2", checkpoint=ck)


def test_report_file(tmp_path):
    out = tmp_path / "r.jsonl"
    rep = scan(GenSpec(3), report_path=out)
    assert out.read_text() == rep.text()
    first, last = rep.text().splitlines()[0], rep.text().splitlines()[-1]
    assert json.loads(first)["type"] == "header"
    assert json.loads(last)["type"] == "footer"
