import subprocess
import sys

import numpy as np
import pytest

from fiedler_hotspots import __version__
from fiedler_hotspots.cli import main
from fiedler_hotspots.errors import ParseError
from fiedler_hotspots.formats import (
    fmt_float,
    graph_text,
    parse_graph,
    read_csv_table,
    read_graph,
    read_labels,
    write_graph,
    write_labels,
)
from fiedler_hotspots.sbm import SbmParams, sample_sbm


def test_two_k2_text(two_k2):
    assert graph_text(two_k2) == "n 4\n0 1\n2 3\n"


def test_graph_round_trip(tmp_path):
    g = sample_sbm(SbmParams(80, 0.3, 0.1, 2))
    write_graph(tmp_path / "g", g)
    write_labels(tmp_path / "l", g.labels)
    back = read_graph(tmp_path / "g", tmp_path / "l")
    assert back.same_edges(g) and np.array_equal(back.labels, g.labels)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("n 3\n0 1\n1 3\n", 3),
        ("n 3\n1 0\n", 2),
        ("n 3\n0 1\n0 1\n", 3),
        ("n 3\n0 x\n", 2),
        ("m 3\n", 1),
        ("n 3\n0 1 2\n", 2),
    ],
)
def test_parse_errors_carry_line(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.lineno == lineno


def test_bad_label_token(tmp_path):
    (tmp_path / "l").write_text("+1\n0\n")
    with pytest.raises(ParseError) as info:
        read_labels(tmp_path / "l")
    assert info.value.lineno == 2


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, 1e-300, -2.5e17):
        assert float(fmt_float(x)) == x


def _run(args, tmp_path, name):
    out = tmp_path / name
    assert main(list(args) + ["--out", str(out)]) == 0
    return out


def test_sbm_byte_identical(tmp_path):
    args = ["sbm", "--n", "100", "--p", "0.5", "--q", "0.1", "--seed", "0x2a"]
    a = _run(args, tmp_path, "a")
    b = _run(args, tmp_path, "b")
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.labels").read_bytes() == (tmp_path / "b.labels").read_bytes()
    assert read_graph(a).same_edges(sample_sbm(SbmParams(100, 0.5, 0.1, 42)))


def test_analyze_rows_and_header(tmp_path):
    g = _run(["sbm", "--n", "120", "--p", "0.6", "--q", "0.2", "--seed", "3"], tmp_path, "g")
    out = _run(["analyze", "--graph", str(g), "--labels", f"{g}.labels", "--p", "0.6", "--q", "0.2"], tmp_path, "a.csv")
    comments, cols, rows = read_csv_table(out)
    assert len(rows) == 120 and cols[0] == "vertex"
    assert comments[0] == f"# fiedler-hotspots {__version__}"
    assert "# command: analyze" in comments
    assert any(c.startswith("# rng: ") for c in comments)
    assert any(c.startswith("# lemma_probe: ") for c in comments)


def test_every_subcommand_runs(tmp_path):
    synth = _run(["synth", "--m-per-class", "20", "--d", "16", "--seed", "1"], tmp_path, "s.csv")
    knn = _run(["knn", "--data", str(synth), "--k-fraction", "0.2", "--flip-rho", "0.1"], tmp_path, "k")
    assert read_graph(knn, f"{knn}.labels").n == 40
    mc = _run(["mc", "--n", "60", "--p", "0.6", "--q", "0.3", "--trials", "4", "--eps", "0.1,0.2"], tmp_path, "mc")
    _, cols, rows = read_csv_table(mc)
    assert cols[:3] == ["trial", "seed", "status"]
    assert [r[2] for r in rows].count("ok") == 4 and [r[2] for r in rows].count("aggregate") == 6
    aff = _run(["affinity", "--n", "100", "--p", "0.6", "--q", "0.3"], tmp_path, "aff")
    assert len(read_csv_table(aff)[2]) == 100
    aff2 = _run(["affinity", "--graph", str(knn), "--labels", f"{knn}.labels", "--p", "0.6", "--q", "0.1"], tmp_path, "aff2")
    assert len(read_csv_table(aff2)[2]) == 40
    scan = _run(["scan-conjecture", "--p", "0.6", "--q", "0.4", "--n-list", "100,200", "--trials", "2"], tmp_path, "sc")
    assert [r[0] for r in read_csv_table(scan)[2]] == ["100", "200"]


def test_exit_codes(tmp_path, capsys):
    assert main(["sbm", "--n", "100"]) == 2
    assert main(["nope"]) == 2
    assert main(["sbm", "--n", "101", "--p", "0.5", "--q", "0.1", "--out", str(tmp_path / "x")]) == 1
    assert main(["analyze", "--graph", str(tmp_path / "missing"), "--labels", "x", "--p", "0.5", "--q", "0.1"]) == 1
    assert main(["mc", "--n", "60", "--p", "0.6", "--q", "0.3", "--workers", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fiedler_hotspots", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
