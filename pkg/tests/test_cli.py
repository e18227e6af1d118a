import json
import subprocess
import sys

import pytest

from circrecolour.circular import CircularColouring, CircularParams, format_colouring, parse_colouring
from circrecolour.cli import main
from circrecolour.graph import Graph, format_graph, parse_graph
from circrecolour.recolour import check_sequence, obstruction_from_dict


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    def colouring(name, p, q, *cs):
        return write(name, format_colouring(CircularColouring(CircularParams(p, q), cs)))

    write.colouring = colouring
    write.dir = tmp_path
    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys, files):
    ok = files.colouring("ok.col", 5, 2, 0, 2, 4)
    assert run(capsys, "verify", "--graph", "P3", "--colouring", ok)[:2] == (0, "ok\n")
    bad = files.colouring("bad.col", 5, 2, 0, 1)
    assert run(capsys, "verify", "--graph", "K2", "--colouring", bad)[:2] == (2, "violation e 0 1\n")
    broken = files("broken.graph", "p edge 2 1\ne 0 x\n")
    assert run(capsys, "verify", "--graph", broken, "--colouring", ok)[0] == 65


def test_verify_with_explicit_params_mismatch(capsys, files):
    ok = files.colouring("ok.col", 5, 2, 0, 2, 4)
    code, _, err = run(capsys, "verify", "--graph", "P3", "--colouring", ok, "-p", "7", "-q", "2")
    assert code == 64 and "error" in err


def test_reconfigure_yes(capsys, files):
    a = files.colouring("a.col", 5, 2, 0, 2, 4)
    b = files.colouring("b.col", 5, 2, 0, 2, 0)
    code, out, _ = run(capsys, "reconfigure", "--graph", "P3", "--from", a, "--to", b, "-p", 5, "-q", 2)
    assert code == 0
    assert json.loads(out) == {"result": "yes", "sequence": [[2, 0]]}
    assert out == json.dumps({"result": "yes", "sequence": [[2, 0]]}, indent=2, sort_keys=True) + "\n"


def test_reconfigure_no(capsys, files):
    a = files.colouring("a.col", 7, 2, 0, 2, 4)
    b = files.colouring("b.col", 7, 2, 0, 5, 3)
    code, out, _ = run(capsys, "reconfigure", "--graph", "C3", "--from", a, "--to", b, "-p", 7, "-q", 2)
    doc = json.loads(out)
    assert code == 1 and doc["certificate"]["kind"] == "cycle-weight"
    pr = CircularParams(7, 2)
    cert = obstruction_from_dict(doc["certificate"])
    assert cert.validate(Graph.complete(3), CircularColouring(pr, (0, 2, 4)), CircularColouring(pr, (0, 5, 3)))


def test_reconfigure_parameter_gate(capsys, files):
    a = files.colouring("a.col", 9, 2, 0, 2)
    code, out, err = run(capsys, "reconfigure", "--graph", "K2", "--from", a, "--to", a, "-p", 9, "-q", 2)
    assert code == 3 and out == "" and "reduce" in err


def test_reconfigure_invalid_colouring(capsys, files):
    a = files.colouring("a.col", 5, 2, 0, 1)
    b = files.colouring("b.col", 5, 2, 0, 2)
    assert run(capsys, "reconfigure", "--graph", "K2", "--from", a, "--to", b, "-p", 5, "-q", 2)[0] == 2


def test_reconfigure_decomposes_components(capsys, files):
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    gpath = files("g.graph", format_graph(g))
    a = files.colouring("a.col", 5, 2, 0, 2, 4, 1, 3)
    b = files.colouring("b.col", 5, 2, 0, 2, 0, 1, 4)
    out_path = files.dir / "v.json"
    code, out, _ = run(
        capsys, "reconfigure", "--graph", gpath, "--from", a, "--to", b, "-p", 5, "-q", 2, "--out", out_path
    )
    assert code == 0 and out == ""
    steps = json.loads(out_path.read_text())["sequence"]
    pr = CircularParams(5, 2)
    assert check_sequence(g, CircularColouring(pr, (0, 2, 4, 1, 3)), CircularColouring(pr, (0, 2, 0, 1, 4)), steps) is None


def test_reconfigure_relabels_component_certificates(capsys, files):
    g = Graph(4, [(2, 3)])
    gpath = files("g.graph", format_graph(g))
    a = files.colouring("a.col", 2, 1, 0, 0, 0, 1)
    b = files.colouring("b.col", 2, 1, 0, 0, 1, 0)
    code, out, _ = run(capsys, "reconfigure", "--graph", gpath, "--from", a, "--to", b, "-p", 2, "-q", 1)
    cert = json.loads(out)["certificate"]
    assert code == 1 and cert["kind"] == "fixed-vertex" and cert["witness"]["vertex"] == 2


def test_oracle(capsys, files):
    assert run(capsys, "oracle", "--graph", "K2", "-p", 2, "-q", 1, "--components")[:2] == (
        0, "components=2 sizes=1,1 frozen=2\n"
    )
    a = files.colouring("a.col", 5, 2, 0, 2)
    b = files.colouring("b.col", 5, 2, 2, 0)
    code, out, _ = run(capsys, "oracle", "--graph", "K2", "-p", 5, "-q", 2, "--from", a, "--to", b)
    assert code == 0 and json.loads(out)["result"] == "yes"
    assert run(capsys, "oracle", "--graph", "K2", "-p", 5, "-q", 2, "--from", a)[0] == 64
    assert run(capsys, "oracle", "--graph", "P5", "-p", 5, "-q", 2, "--components", "--budget", 3)[0] == 69
    assert run(capsys, "oracle", "--graph", "K2", "-p", 5, "-q", 2, "--components", "--threads", 0)[0] == 64


def test_oracle_threads_do_not_change_output(capsys, files):
    a = files.colouring("a.col", 5, 2, 0, 2, 4, 1)
    b = files.colouring("b.col", 5, 2, 3, 0, 2, 4)
    base = ["oracle", "--graph", "P4", "-p", 5, "-q", 2, "--from", a, "--to", b]
    assert run(capsys, *base) == run(capsys, *base, "--threads", 4)


def test_reduce_and_lift(capsys, files):
    f = files.colouring("f.col", 4, 1, 0, 2)
    h = files.colouring("h.col", 4, 1, 1, 2)
    prefix = files.dir / "red"
    args = ["--graph", "K2", "--from", f, "--to", h, "-p", 18, "-q", 4]
    assert run(capsys, "reduce", *args, "--out-prefix", prefix)[0] == 0
    gp = parse_graph((files.dir / "red.graph").read_text())
    alpha = parse_colouring((files.dir / "red.alpha").read_text())
    beta = parse_colouring((files.dir / "red.beta").read_text())
    meta = json.loads((files.dir / "red.meta.json").read_text())
    assert gp.n == 30 and sorted(meta) == ["original", "paths", "pinned"]
    ks = files("k.json", json.dumps({"sequence": [[0, 1]]}))
    code, out, _ = run(capsys, "lift", *args, "--ksteps", ks)
    assert code == 0
    assert check_sequence(gp, alpha, beta, json.loads(out)["sequence"]) is None
    bad = files("bad.json", "[[0, 2]]")
    assert run(capsys, "lift", *args, "--ksteps", bad)[0] == 2
    assert run(capsys, "lift", *args, "--ksteps", files("junk.json", "{"))[0] == 65


def test_reduce_rejects_low_ratio(capsys, files):
    f = files.colouring("f.col", 3, 1, 0, 1)
    prefix = files.dir / "red"
    code = run(capsys, "reduce", "--graph", "K2", "--from", f, "--to", f, "-p", 7, "-q", 2, "--out-prefix", prefix)[0]
    assert code == 3


def test_cycles(capsys):
    assert run(capsys, "cycles", "--graph", "K4", "-k", 3)[:2] == (0, "count=4 threshold=1 verdict=at-or-above\n")
    assert run(capsys, "cycles", "--graph", "C4", "-k", 3)[1] == "count=0 threshold=1 verdict=below\n"
    out = run(capsys, "cycles", "--graph", "K4", "-k", 3, "--list")[1].splitlines()
    assert len([line for line in out if line.startswith("cycle ")]) == 4
    assert run(capsys, "cycles", "--graph", "K6", "-k", 3, "--budget", 5)[0] == 69


def test_sparse_colour(capsys, files):
    code, out, _ = run(capsys, "sparse-colour", "--graph", "C5", "-k", 3)
    c = parse_colouring(out)
    assert code == 0 and c.params == CircularParams(3, 1)
    assert all(c[u] != c[v] for u, v in Graph.cycle(5).edges)
    code, out, _ = run(capsys, "sparse-colour", "--graph", "K4", "-k", 3)
    doc = json.loads(out)
    assert code == 1 and doc["result"] == "failure" and doc["count"] == 2
    assert run(capsys, "sparse-colour", "--graph", "K4", "-k", 2)[0] == 64


def test_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 64
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys, "verify", "--graph", "nowhere.graph", "--colouring", "nowhere.col")[0] == 64


def test_logging_goes_to_stderr(capsys, files, monkeypatch):
    a = files.colouring("a.col", 5, 2, 0, 2, 4)
    b = files.colouring("b.col", 5, 2, 0, 2, 0)
    argv = ["reconfigure", "--graph", "P3", "--from", a, "--to", b, "-p", 5, "-q", 2]
    quiet = run(capsys, *argv)
    monkeypatch.setenv("RECOLOUR_LOG", "info")
    loud = run(capsys, *argv)
    assert quiet[:2] == loud[:2]
    assert quiet[2] == "" and "INFO" in loud[2]


def test_console_entry_point_is_deterministic(files):
    a = files.colouring("a.col", 7, 2, 0, 2, 4)
    b = files.colouring("b.col", 7, 2, 0, 5, 3)
    cmd = [sys.executable, "-m", "circrecolour.cli", "reconfigure", "--graph", "C3",
           "--from", a, "--to", b, "-p", "7", "-q", "2"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    assert runs[0].returncode == 1
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout
