import io
import re
import subprocess
import sys

import pytest

from spacefill import PathSequence, encode, make_serpentine_path, peano_cell, render_cell_file
from spacefill.cli import run


def sfc(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def peano_file(tmp_path):
    path = tmp_path / "peano.cell"
    assert sfc("cell", "gen", "--rank", "2", "--side", "3", "--out", str(path))[0] == 0
    return path


@pytest.fixture
def hilbert_file(tmp_path):
    path = tmp_path / "hilbert.cell"
    path.write_text(render_cell_file(make_serpentine_path(2, 2)))
    return path


def test_gen_then_check(peano_file):
    code, out, _ = sfc("cell", "check", str(peano_file))
    assert code == 0
    assert "DiagonalCorners" in out


def test_encode_hilbert(hilbert_file):
    assert sfc("encode", "--cell", str(hilbert_file), "--variant", "adj", "1") == (0, "1 0\n", "")


def test_isotropy_precess1(peano_file):
    code, out, _ = sfc("isotropy", "--cell", str(peano_file), "--variant", "precess1", "--levels", "2")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "nodes,axis,count,percent"
    assert sorted(int(r.split(",")[2]) for r in rows[1:]) == [40, 40]


def test_info(peano_file):
    code, out, _ = sfc("cell", "info", str(peano_file))
    assert code == 0
    assert "isotropy_feasible true" in out
    assert "aligned_runs_possible false" in out


def test_encode_decode_roundtrip_through_stdin(monkeypatch):
    scalars = "\n".join(str(u) for u in range(0, 6561, 7)) + "\n"
    code, points, _ = sfc("encode", "--rank", "2", "--side", "3", "--variant", "precess",
                          stdin=scalars, monkeypatch=monkeypatch)
    assert code == 0
    code, back, _ = sfc("decode", "--rank", "2", "--side", "3", "--variant", "precess",
                        stdin=points, monkeypatch=monkeypatch)
    assert code == 0
    assert back == scalars


def test_centered(monkeypatch):
    code, out, _ = sfc("encode", "--rank", "2", "--side", "3", "--centered", "0", "-3280")
    assert out == "0 0\n-40 -40\n"
    assert sfc("decode", "--rank", "2", "--side", "3", "--centered", "-40", "-40")[1] == "-3280\n"


def test_centered_adjacent_is_usage_error():
    assert sfc("encode", "--rank", "2", "--side", "2", "--centered", "0")[0] == 1


def test_curve_csv_and_svg_agree(tmp_path):
    code, csv_text, _ = sfc("curve", "--rank", "2", "--side", "3", "--levels", "2")
    assert code == 0
    rows = csv_text.splitlines()[1:]
    assert len(rows) == 81
    assert rows[3] == "3," + ",".join(map(str, encode(3, peano_cell())))
    code, svg, _ = sfc("curve", "--rank", "2", "--side", "3", "--levels", "2", "--format", "svg")
    assert code == 0
    assert svg.count("<polyline") == 1
    assert 'viewBox="-0.5 -0.5 9 9"' in svg
    assert 'stroke-width="0.1"' in svg
    pts = re.search(r'points="([^"]*)"', svg).group(1).split()
    assert pts == [",".join(r.split(",")[1:]) for r in rows]


def test_curve_svg_rank3_rejected():
    assert sfc("curve", "--rank", "3", "--side", "2", "--levels", "1", "--format", "svg")[0] == 1


def test_runs():
    code, out, _ = sfc("runs", "--rank", "2", "--side", "3", "--levels", "2")
    assert code == 0
    assert out.splitlines()[0] == "axis,length,count"


def test_dimred_bit_stable():
    argv = ["bench", "dimred", "--rank", "2", "--side", "2", "--gaps", "10", "--samples", "128"]
    a, b = sfc(*argv), sfc(*argv)
    assert a[0] == 0 and a == b
    lines = a[1].splitlines()
    assert lines[0] == "curve,d,s,variant,gap,mean_distance,samples,seed"
    assert len(lines) == 11
    assert lines[1].endswith(f",1,1,128,{0x5fc5fc}")


def test_dimred_z():
    code, out, _ = sfc("bench", "dimred", "--z", "--rank", "3", "--gaps", "10", "--samples", "64")
    assert code == 0
    assert out.splitlines()[1].startswith("z,3,2,z,1,")


@pytest.mark.parametrize("argv,expected", [
    (["real", "F", "--rank", "2", "--side", "3", "--centered", "0"], "-1/18,-1/18\n"),
    (["real", "F", "--rank", "2", "--side", "2", "1/4"], "0,1/2\n"),
    (["real", "f", "--rank", "2", "--side", "2", "1/4,0"], "1/16\n"),
    (["real", "E", "--rank", "2", "--side", "2", "--depth", "2", "0"], "1/8,1/8\n"),
    (["real", "e", "--rank", "2", "--side", "2", "--depth", "2", "1/8,1/8"], "0\n"),
])
def test_real(argv, expected):
    assert sfc(*argv) == (0, expected, "")


def test_usage_errors(hilbert_file):
    assert sfc()[0] == 1
    assert sfc("encode", "1")[0] == 1
    assert sfc("encode", "--cell", str(hilbert_file), "--rank", "2", "--side", "2", "1")[0] == 1
    assert sfc("encode", "--cell", str(hilbert_file), "--variant", "peano", "1")[0] == 1
    assert sfc("encode", "--rank", "2", "--side", "2", "x")[0] == 1
    assert sfc("real", "F", "--rank", "2", "--side", "2", "3/2")[0] == 1


def test_invalid_cell_file(tmp_path):
    bad = tmp_path / "bad.cell"
    bad.write_text("2 3\n0 0\n0 1\n")
    code, _, err = sfc("cell", "check", str(bad))
    assert code == 2
    assert "expected 9 nodes" in err


def test_orientation_failure(tmp_path):
    # adjacent-corner 3x3x3 path; the last sub-cell's entry and exit differ in three coordinates
    nodes = [
        (0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 2, 1), (0, 2, 2), (1, 2, 2), (2, 2, 2), (2, 1, 2), (2, 0, 2),
        (2, 0, 1), (2, 0, 0), (1, 0, 0), (1, 1, 0), (1, 2, 0), (2, 2, 0), (2, 1, 0), (2, 1, 1), (2, 2, 1),
        (1, 2, 1), (1, 1, 1), (1, 1, 2), (0, 1, 2), (0, 1, 1), (0, 0, 1), (1, 0, 1), (1, 0, 2), (0, 0, 2),
    ]
    f = tmp_path / "bad.cell"
    f.write_text(render_cell_file(PathSequence(3, 3, tuple(nodes))))
    code, _, err = sfc("cell", "check", str(f))
    assert code == 3, err


def test_io_error(tmp_path):
    assert sfc("cell", "check", str(tmp_path / "missing.cell"))[0] == 4
    out = tmp_path / "nodir" / "x.cell"
    assert sfc("cell", "gen", "--rank", "2", "--side", "2", "--out", str(out))[0] == 4


def test_node_budget_env(monkeypatch):
    monkeypatch.setenv("SFC_NODE_BUDGET", "10")
    assert sfc("curve", "--rank", "2", "--side", "2", "--levels", "2")[0] == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spacefill", "encode", "--rank", "2", "--side", "2", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "0 2\n"
