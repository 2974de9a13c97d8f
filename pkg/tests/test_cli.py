import json
import subprocess
import sys

import pytest

import helpers
from hlpa import parse_hypergraph
from hlpa.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("square.hg", helpers.SQUARE),
        ("laurent.hg", helpers.LAURENT),
        ("l12.hg", helpers.L12),
        ("l23.hg", helpers.L23),
        ("l23.wg", "vertices: u\nemits u weight 2: u u u\n"),
        ("l12.sg", "vertices: u\ngroup f at u: u u\n"),
        ("plain.wg", "vertices: a b\nemits a weight 1: a b\n"),
        ("bad.hg", "vertices: a\nedge e: a -> b\n"),
        ("w.txt", "h 1 1 : 1 0\nh 1 2 : 1 0\nh 2 1 : 0 1\nh 2 2 : 0 1\n"),
        ("badw.txt", "h 1 1 : 0\nh 1 2 : 0\nh 2 1 : 0\nh 2 2 : 1\n"),
    ]:
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gkdim(files, capsys):
    code, out, _ = run(capsys, "gkdim", files["square.hg"])
    assert code == 0 and out.strip() == "GKdim = 1; chain: [h[2,2] h*[2,2]]"


def test_gkdim_json(files, capsys):
    _, out, _ = run(capsys, "gkdim", files["l12.hg"], "--json")
    data = json.loads(out)
    assert data["kind"] == "exponential"
    assert data["selfconnected"] == ["f[1,1]"] and data["connector"] == ["f[1,2]"]
    _, out, _ = run(capsys, "gkdim", files["square.hg"], "--json")
    data = json.loads(out)
    assert data["dimension"] == 1 and data["chain"][0]["quasi_cycle"] == ["h[2,2]", "h*[2,2]"]


def test_nf(files, capsys):
    code, out, _ = run(capsys, "nf", files["square.hg"], "-e", "h[1,1] * h*[1,1]")
    assert code == 0 and out.strip() == "v1 - h[1,2] h*[1,2]"
    _, out, _ = run(capsys, "nf", files["square.hg"], "-e", "h[1,1] * h*[1,1]", "--strategy", "right")
    assert out.strip() == "v1 - h[1,2] h*[1,2]"
    _, out, _ = run(capsys, "nf", files["square.hg"], "-e", "2/3 h[1,2] - h[1,2]", "--json")
    assert json.loads(out) == {"field": "q", "terms": [{"coefficient": "-1/3", "word": ["h[1,2]"]}]}


def test_nf_prime_field(files, capsys):
    _, out, _ = run(capsys, "nf", files["square.hg"], "-e", "2 h[1,1] h*[1,1]", "--field", "fp:3")
    assert out.strip() == "2 v1 + h[1,2] h*[1,2]"


def test_mul(files, capsys):
    _, out, _ = run(capsys, "mul", files["laurent.hg"], "-a", "l[1,1]", "-b", "l*[1,1]")
    assert out.strip() == "u"


def test_basis(files, capsys):
    _, out, _ = run(capsys, "basis", files["laurent.hg"], "--max-len", "2", "--list")
    assert out.splitlines() == ["0\tu", "1\tl[1,1]", "1\tl*[1,1]", "2\tl[1,1] l[1,1]", "2\tl*[1,1] l*[1,1]"]
    _, out, _ = run(capsys, "basis", files["laurent.hg"], "--max-len", "3", "--json")
    assert json.loads(out) == {"per_length": [1, 2, 2, 2], "cumulative": [1, 3, 5, 7]}


def test_quasicycles(files, capsys):
    _, out, _ = run(capsys, "quasicycles", files["square.hg"])
    assert out.splitlines()[0] == "2 quasi-cycles in 1 classes"
    _, out, _ = run(capsys, "quasicycles", files["laurent.hg"], "--json")
    assert json.loads(out)["classes"] == 2


def test_props(files, capsys):
    _, out, _ = run(capsys, "props", files["l23.hg"], "--json")
    props = json.loads(out)["properties"]
    assert props["domain"]["status"] == "yes"
    assert props["leftNoetherian"]["status"] == "no" and props["leftNoetherian"]["citation"]


def test_vmonoid(files, capsys):
    _, out, _ = run(capsys, "vmonoid", files["square.hg"], "--k0")
    assert out.splitlines() == ["<v1, v2, w1, w2 | v1 + v2 = w1 + w2>", "K0 = Z^3"]
    _, out, _ = run(capsys, "vmonoid", files["square.hg"], "--graded", "--weights", files["w.txt"], "--window", "1", "--json")
    data = json.loads(out)
    assert "h__0_0" in [r["label"] for r in data["relations"]]


def test_cover_and_verify(files, capsys, tmp_path):
    code, out, _ = run(capsys, "cover", files["laurent.hg"], "--window", "1")
    assert code == 0
    H = parse_hypergraph(out)
    assert H.vertices == ("u__m1", "u__0", "u__1") and len(H.edges) == 2
    code, out, _ = run(capsys, "verify-cover", files["square.hg"], "--window", "1", "--trials", "10")
    assert code == 0 and "violations: 0" in out


def test_convert(files, capsys, tmp_path):
    _, out, _ = run(capsys, "convert", files["l23.wg"])
    assert out == "vertices: u\nedge h_u: u u -> u u u\n"
    _, out, _ = run(capsys, "convert", files["l12.sg"])
    assert out == "vertices: u\nedge f: u -> u u\n"
    target = tmp_path / "plain.hg"
    run(capsys, "convert", files["plain.wg"], "-o", str(target))
    H = parse_hypergraph(target.read_text())
    assert all(len(e.source) == 1 for e in H.edges)
    # converting is idempotent under re-parse
    assert parse_hypergraph(target.read_text()) == parse_hypergraph(target.read_text())


def test_domain_errors_exit_1(files, capsys):
    code, _, err = run(capsys, "check", "missing.hg")
    assert code == 1 and "file not found" in err
    code, _, err = run(capsys, "check", files["bad.hg"])
    assert code == 1 and "line 2, column 14" in err
    code, _, err = run(capsys, "nf", files["square.hg"], "-e", "h[9,9]")
    assert code == 1
    code, _, err = run(capsys, "vmonoid", files["square.hg"], "--graded", "--weights", files["badw.txt"], "--window", "1")
    assert code == 1 and "inadmissible" in err


def test_usage_errors_exit_2(files, capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "basis", files["square.hg"])[0] == 2
    assert run(capsys, "nf", files["square.hg"], "-e", "v1", "--field", "fp:4")[0] == 2
    assert run(capsys, "basis", files["square.hg"], "--max-len", "2", "--list", "--count")[0] == 2
    assert run(capsys, "convert", files["square.hg"])[0] == 2
    assert run(capsys, "cover", files["square.hg"])[0] == 2


def test_budget_exhausted(files, capsys, monkeypatch):
    monkeypatch.setenv("HLPA_MAX_STEPS", "3")
    code, _, err = run(capsys, "gkdim", files["square.hg"])
    assert code == 1 and "budget exhausted" in err


def test_check_and_determinism(files, capsys):
    _, a, _ = run(capsys, "check", files["square.hg"], "--json")
    _, b, _ = run(capsys, "check", files["square.hg"], "--json")
    assert a == b
    assert json.loads(a)["letters"] == 8


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "hlpa.cli", "gkdim", files["square.hg"]], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "GKdim = 1; chain: [h[2,2] h*[2,2]]"
