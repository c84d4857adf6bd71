import filecmp

import pytest

from commcount.cli import RunConfig, pipeline, run
from commcount.decgraph import enumerate_subgroups, format_graph
from commcount.errors import InputError


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graphs_count(capsys):
    assert call(capsys, "graphs", "count", "--n", "4") == (0, "71\n", "")


def test_hilbert_zero_argument(capsys):
    code, out, err = call(capsys, "hilbert", "--a", "0", "--b", "3", "--at", "inert:3")
    assert code == 1 and out == "" and err.startswith("commcount:")


def test_select_d_exhausted(capsys):
    code, out, err = call(capsys, "select-d", "--form", "default", "--count", "6", "--pool", "3", "--norms", "10")
    assert code == 2
    assert out.startswith("d 1 1\n")
    assert err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["graphs", "count"],
        ["graphs", "count", "--n", "-2"],
        ["hilbert", "--a", "1", "--b", "3", "--at", "inert:2"],
        ["hilbert-q", "--a", "1", "--b", "3", "--place", "x"],
        ["swdim", "--c1sq", "1", "--euler", "0", "--sigma", "0"],
        ["graphs", "enumerate", "--n", "9"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1
    assert err


def test_symbol_commands(capsys):
    assert call(capsys, "hilbert", "--a", "11", "--b", "2", "--at", "split:11:+")[:2] == (0, "-1\n")
    assert call(capsys, "hilbert-q", "--a", "-1", "--b", "-1", "--place", "inf")[:2] == (0, "-1\n")
    assert call(capsys, "hilbert-q", "--a", "3", "--b", "5", "--place", "3")[:2] == (0, "-1\n")
    assert call(capsys, "sqclass", "--x", "2", "--at", "split:11:+")[:2] == (0, "0 -1\n")
    assert call(capsys, "sqclass", "--x", "1*r", "--at", "ram")[:2] == (0, "1 +1\n")
    assert call(capsys, "swdim", "--c1sq", "0", "--euler", "24", "--sigma", "-16")[:2] == (0, "0\n")


def test_form_commands(capsys, tmp_path):
    code, out, _ = call(capsys, "admissible", "--form", "default")
    assert code == 0
    assert out.splitlines()[-1] == "admissible true"
    bad = tmp_path / "bad.form"
    bad.write_text("1\n1\n1\n1\n-1\n")
    code, out, _ = call(capsys, "admissible", "--form", str(bad))
    assert code == 0 and out.endswith("admissible false\n")
    assert call(capsys, "hasse", "--form", "default", "--at", "inert:3")[0] == 0
    assert call(capsys, "similar", "--form1", "default", "--form2", "default", "--at", "ram")[:2] == (0, "true\n")
    assert call(capsys, "admissible", "--form", str(tmp_path / "missing.form"))[0] == 1


def test_graph_commands(capsys, tmp_path):
    out_dir = tmp_path / "g3"
    code, out, _ = call(capsys, "graphs", "enumerate", "--n", "3", "--out", str(out_dir))
    assert code == 0
    files = sorted(out_dir.glob("*.graph"))
    assert len(files) == 13
    assert (out_dir / "COUNT").read_text() == "13\n"
    assert call(capsys, "graphs", "iso", str(files[0]), str(files[0]))[:2] == (0, "true\n")
    assert call(capsys, "graphs", "iso", str(files[0]), str(files[1]))[:2] == (0, "false\n")
    bouquet = tmp_path / "b.graph"
    bouquet.write_text("n=1\na=1\nb=1\ncolored=1\n")
    double = tmp_path / "d.graph"
    double.write_text("n=2\na=2 1\nb=2 1\ncolored=1 2\n")
    assert call(capsys, "graphs", "cover", "--base", str(bouquet), "--cover", str(double), "--map", "1,1")[:2] == (0, "true\n")
    assert call(capsys, "graphs", "cover", "--base", str(bouquet), "--cover", str(double), "--map", "1,x")[0] == 1
    code, out, _ = call(capsys, "graphs", "bound", "--n", "4")
    assert out == "a_n=71\nfloor_n^(n/2)=16\nholds true\n"


def test_assemble_command(capsys, tmp_path):
    path = tmp_path / "g.graph"
    path.write_text(format_graph(enumerate_subgroups(2)[1]))
    code, out, _ = call(capsys, "assemble", "--graph", str(path))
    assert code == 0 and out.startswith("blocks 10\n") and out.endswith("valid\n")
    assert call(capsys, "assemble", "--graph", str(path), "--check")[:2] == (0, "valid\n")


def test_vc_lower_command(capsys, tmp_path):
    code, out, _ = call(capsys, "vc-lower", "--volume", "40", "--block-volume", "1", "--manifest", str(tmp_path / "m"))
    assert (code, out) == (0, "n=4\nlower_bound=16\nexact_count=71\n")
    assert len(list((tmp_path / "m").glob("*.graph"))) == 71
    cert = (tmp_path / "m" / "certificate.txt").read_text().splitlines()
    assert len(cert) == 72
    assert call(capsys, "vc-lower", "--volume", "0", "--block-volume", "1")[0] == 1


def test_pipeline_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        code, out, err = call(capsys, "pipeline", "--out", str(d))
        assert code == 0 and err == ""
    cmp = filecmp.dircmp(a, b)
    assert not cmp.diff_files and not cmp.left_only and not cmp.right_only
    assert not filecmp.dircmp(a / "manifest", b / "manifest").diff_files
    witnesses = (a / "witnesses.txt").read_text().splitlines()
    assert sum(line.startswith("d ") for line in witnesses) == 6
    assert sum(line.endswith("DISTINGUISHED") for line in witnesses) == 15
    assert len(list((a / "manifest").glob("*.graph"))) == 71
    assert (a / "assemblies.txt").read_text().count(" valid\n") == 1 + 3 + 13 + 71


def test_pipeline_inadmissible(capsys, tmp_path):
    bad = tmp_path / "bad.form"
    bad.write_text("1\n1\n")
    code, _, err = call(capsys, "pipeline", "--form", str(bad))
    assert code == 1 and "admissible" in err


def test_pipeline_exhausted_exit_2(capsys):
    assert call(capsys, "pipeline", "--pool", "3", "--norms", "10")[0] == 2


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(n_cap=0)
    with pytest.raises(InputError):
        RunConfig(n_cap=8)
    lines = pipeline(RunConfig(n_cap=2, volume=20))
    assert lines[-1] == "stage vc-lower n=2 bound=2 exact=3"
