import hashlib

import pytest

from wangshift.cli import run
from wangshift.core import Tile, Tileset, Window

CHECKER = Tileset(2, (Tile(1, 1, 1, 0, 0), Tile(2, 0, 0, 1, 1)))


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c.wt").write_text(CHECKER.to_text())
    (tmp_path / "free.win").write_text(Window.blank(3, 2).to_text())
    (tmp_path / "bad.win").write_text(Window.from_rows([[1, 1]]).to_text())
    return tmp_path


def out_of(capsys, argv):
    code = run([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_solve_and_count(files, capsys):
    assert out_of(capsys, ["solve", files / "c.wt", files / "free.win"]) == (0, "sat\n")
    assert out_of(capsys, ["solve", files / "c.wt", files / "free.win", "--mode", "count"]) == (0, "2\n")
    assert out_of(capsys, ["solve", files / "c.wt", files / "bad.win"]) == (1, "unsat\n")


def test_enumerate_prints_windows(files, capsys):
    code, out = out_of(capsys, ["enumerate", files / "c.wt", files / "free.win", "--limit", "5"])
    assert code == 0 and out.count("window 3 2") == 2


def test_extensible(files, capsys):
    (files / "p.win").write_text(Window.from_rows([[1]]).to_text())
    assert out_of(capsys, ["extensible", files / "c.wt", files / "p.win", "--radius", "2"]) == (0, "extensible\n")


def test_usage_and_format_errors(files, capsys):
    assert run(["solve"]) == 2
    assert run(["no-such-command"]) == 2
    (files / "junk.wt").write_text("not a tileset\n")
    code, out = out_of(capsys, ["solve", files / "junk.wt", files / "free.win"])
    assert code == 1 and out.startswith("error:") and out.count("\n") == 1


def test_budget_exhaustion_exits_3(files, capsys):
    (files / "big.win").write_text(Window.blank(6, 6).to_text())
    free = Tileset(1, tuple(Tile(i, 0, 0, 0, 0) for i in range(1, 4)))
    (files / "free.wt").write_text(free.to_text())
    code, out = out_of(capsys, ["solve", files / "free.wt", files / "big.win", "--mode", "count",
                                "--budget", "100"])
    assert code == 3 and out.startswith("resource-limit")


def test_origin_solve(corpus, capsys):
    assert out_of(capsys, ["origin-solve", corpus / "bit0.tm", "--k", "8", "--prefix", "0"]) == (0, "runs\n")
    assert out_of(capsys, ["origin-solve", corpus / "bit0.tm", "--k", "8", "--prefix", "1"]) == (1, "halts\n")


def test_compile_tm(corpus, tmp_path, capsys):
    code, out = out_of(capsys, ["compile-tm", corpus / "walker.tm", "-o", tmp_path / "w.wt"])
    assert code == 0 and out == "origin 1\n"
    assert Tileset.from_text((tmp_path / "w.wt").read_text())


def test_sparse_grid_emits_checksummed_files(tmp_path, capsys):
    code, out = out_of(capsys, ["sparse-grid", "--emit", "T", "--out-dir", tmp_path])
    name, digest = out.split()
    assert code == 0 and name == "sparse_T.wt"
    assert hashlib.sha256((tmp_path / name).read_bytes()).hexdigest() == digest
    code, out = out_of(capsys, ["sparse-grid", "--emit", "beta", "--size", "6", "--out-dir", tmp_path])
    assert code == 0 and (tmp_path / "beta_6.win").exists()


def test_grid_coords(capsys):
    code, out = out_of(capsys, ["grid-coords", "--bound", "5"])
    assert code == 0 and "2 2" in out.splitlines()


def test_pi01_round_trip(corpus, tmp_path, capsys):
    spec = corpus / "no11.pi01"
    w = tmp_path / "e.win"
    assert run(["pi01-encode", str(spec), "--oracle", "0010", "--k", "15", "-o", str(w)]) == 0
    capsys.readouterr()
    assert out_of(capsys, ["pi01-decode", spec, w]) == (0, "001 0 0\n")
    code, out = out_of(capsys, ["sofic-project", spec, w])
    assert code == 0 and out.splitlines()[0] == "grid"
    assert out_of(capsys, ["pi01-encode", spec, "--oracle", "1100", "--k", "15", "-o", w]) == (1, "rejected 11\n")


def test_subshift_commands(tmp_path, capsys):
    (tmp_path / "f.words").write_text("words v1\nalphabet 0 1\n")
    (tmp_path / "e.words").write_text("words v1\nalphabet 0 1\n0\n1\n")
    assert out_of(capsys, ["is-empty", tmp_path / "f.words"]) == (0, "nonempty\n")
    assert out_of(capsys, ["is-empty", tmp_path / "e.words"]) == (1, "empty\n")
    code, out = out_of(capsys, ["minimalize", tmp_path / "f.words", "--max-len", "2"])
    assert code == 0 and out.startswith("words v1\nalphabet 0 1\n0\n")
    assert out_of(capsys, ["minimalize", tmp_path / "e.words", "--max-len", "2"]) == (1, "empty\n")


@pytest.mark.parametrize("dim", ["1", "2"])
def test_codec_round_trip(tmp_path, capsys, dim):
    t = tmp_path / "t.codec"
    assert run(["codec-encode", "--bits", "10110", "--dim", dim, "-o", str(t)]) == 0
    assert t.read_text().splitlines()[-1].startswith(f"point thue-morse dim {dim} shift ")
    assert out_of(capsys, ["codec-decode", t, "--nbits", "5"]) == (0, "10110\n")


def test_cb_chain(tmp_path, capsys):
    line = Tileset(4, (Tile(1, 0, 0, 0, 0), Tile(2, 1, 2, 0, 2), Tile(3, 1, 1, 1, 1)))
    (tmp_path / "l.wt").write_text(line.to_text())
    code, out = out_of(capsys, ["cb-chain", tmp_path / "l.wt", "--order", "3", "--radius", "2",
                                "-o", tmp_path / "l.cb"])
    assert (code, out) == (0, "5 2 0\n")
    assert (tmp_path / "l.cb").read_text().startswith("cb-report v1")


def test_render_ascii(files, capsys, tmp_path):
    (files / "r.win").write_text(Window.from_rows([[1, 2], [None, 1]]).to_text())
    assert run(["render", str(files / "r.win"), "-o", str(tmp_path / "r.txt")]) == 0
    assert (tmp_path / "r.txt").read_text() == "?1\n12\n"
    assert run(["render", str(files / "r.win"), "--format", "ppm", "--scale", "2",
                "-o", str(tmp_path / "r.ppm")]) == 0
    assert (tmp_path / "r.ppm").read_bytes().startswith(b"P6\n4 4\n255\n")
