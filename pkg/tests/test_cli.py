import json

import pytest

from canvaslab.canvas import fix_c4e, fix_k4, fix_w5
from canvaslab.cli import main
from canvaslab.fileformat import dump, loads


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, t in [("w5", fix_w5()), ("c4e", fix_c4e()), ("k4", fix_k4())]:
        path = tmp_path / f"{name}.json"
        dump(t, path)
        out[name] = str(path)
    bad = tmp_path / "bad.json"
    bad.write_text(open(out["w5"]).read()[:30])
    out["bad"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_validate(files, capsys):
    assert run(capsys, "validate", files["w5"])[:2] == (0, "ok\n")
    code, out, _ = run(capsys, "validate", files["k4"])
    assert code == 1 and out.startswith("short-internal-list")
    code, _, err = run(capsys, "validate", files["bad"])
    assert code == 2 and "line 1 column 31" in err
    assert run(capsys, "validate", "/nonexistent.json")[0] == 2


def test_color(files, capsys):
    assert run(capsys, "color", files["w5"], "--phi", "0=0,1=1,2=2,3=3,4=4")[:2] == (1, "NO_EXTENSION\n")
    assert run(capsys, "color", files["k4"])[:2] == (0, "0=1 1=2 2=3 3=4\n")
    assert run(capsys, "color", files["w5"], "--phi", "5=1")[0] == 2
    assert run(capsys, "color", files["w5"], "--phi", "0=x")[0] == 2
    assert run(capsys, "color", files["w5"], "--phi", "0=3")[0] == 2


def test_critical_and_replay(files, capsys, tmp_path):
    code, out, _ = run(capsys, "critical", files["c4e"])
    assert code == 0
    doc = json.loads(out)
    assert doc["witnesses"] == [[[0, 2], [[0, 1], [1, 2], [2, 1], [3, 2]]]]
    assert run(capsys, "critical", files["k4"])[0] == 1
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    assert run(capsys, "replay", str(cert))[:2] == (0, "match: recorded True, recomputed True\n")
    doc["witnesses"][0][1] = [[0, 1], [1, 2], [2, 2], [3, 1]]
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "replay", str(cert))
    assert code == 1 and out.startswith("MISMATCH")
    cert.write_text(out[:10])
    assert run(capsys, "replay", str(cert))[0] == 2


def test_extract(files, capsys):
    code, out, _ = run(capsys, "extract", files["k4"])
    assert code == 0
    h = loads(out)
    assert set(h.graph.vertices) == {0, 1, 2}
    code, out, _ = run(capsys, "extract", files["w5"])
    assert loads(out) == fix_w5()


def test_draw(files, capsys, tmp_path):
    code, out, _ = run(capsys, "draw", files["w5"])
    assert code == 0 and out.startswith("<svg")
    target = tmp_path / "w5.dot"
    assert run(capsys, "draw", files["w5"], "--dot", "-o", str(target))[0] == 0
    assert target.read_text().startswith('graph "W5"')


def test_scan(capsys, tmp_path):
    code, out, err = run(capsys, "scan", "--k", "3", "--m", "1")
    assert code == 0
    lines = out.splitlines()
    assert json.loads(lines[0])["type"] == "header"
    assert json.loads(lines[-1])["type"] == "footer"
    assert "seed 0:" in err
    # the chorded 4-cycle violates the face corollary
    report = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "scan", "--k", "4", "--m", "0", "--report", str(report))
    assert code == 1 and out == ""
    assert '"theorem":"COR-6.2"' in report.read_text()


@pytest.mark.parametrize(
    "argv,message",
    [
        (["scan", "--params", "1/6,1/12,2/3"], "I1 violated"),
        (["scan", "--suite", "THM-0"], "unknown theorem"),
        (["scan", "--k", "2"], "outer_len"),
        (["scan", "--jobs", "0"], "--jobs"),
        (["scan", "--k", "a"], "integers"),
    ],
)
def test_scan_usage_errors(capsys, argv, message):
    code, _, err = run(capsys, *argv)
    assert code == 2 and message in err


def test_bad_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--help")[0] == 0
