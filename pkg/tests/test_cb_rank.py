import pytest

from wangshift import pi01_bridge as pb
from wangshift import sparse_grid as sg
from wangshift.cb_rank import (classify_projection, derivative_chain, parse_report,
                               rank1_certificate, report_to_text, sample_windows, sofic_project,
                               write_report)
from wangshift.core import Tile, Tileset, Window, superimpose

# blank below, the line, filler above; at most one line in a configuration
LINE = Tileset(4, (Tile(1, 0, 0, 0, 0), Tile(2, 1, 2, 0, 2), Tile(3, 1, 1, 1, 1)))
VLINE = Tileset(4, tuple(t.mirrored() for t in LINE.tiles))


def line_config_rows(row, size):
    """Rows of a LINE configuration whose line sits at ``row`` (None: no line,
    all blank or all filler)."""
    return [1 if y < row else 2 if y == row else 3 for y in range(size)]


def line_blocks(n):
    """n x n blocks of LINE configurations, by listing the configurations."""
    out = {tuple((v,) * n for v in line_config_rows(r, n)) for r in range(n)}
    return out | {((1,) * n,) * n, ((3,) * n,) * n}


def test_line_language_matches_configuration_listing():
    rep = derivative_chain(LINE, 3, 2)
    assert rep.levels[0][1] == len(line_blocks(3)) == 5
    # line blocks pin their host, then the two constant blocks do
    assert rep.sizes == [5, 2, 0] and rep.chain_length == 1 and rep.fixpoint


def test_product_chain_lengths_add():
    a, b = derivative_chain(LINE, 3, 2), derivative_chain(VLINE, 3, 2)
    ab = derivative_chain(superimpose(LINE, VLINE, []).tileset, 3, 2)
    assert ab.sizes[0] == a.sizes[0] * b.sizes[0]
    assert ab.chain_length == a.chain_length + b.chain_length == 2


def test_free_shift_never_shrinks():
    free = Tileset(1, (Tile(1, 0, 0, 0, 0), Tile(2, 0, 0, 0, 0)))
    rep = derivative_chain(free, 2, 1)
    assert rep.sizes == [16] and rep.fixpoint and rep.chain_length is None


def test_bad_arguments():
    with pytest.raises(ValueError):
        derivative_chain(LINE, 0, 1)


def test_report_round_trip(tmp_path):
    rep = derivative_chain(LINE, 3, 2)
    path = write_report(rep, tmp_path / "line.cb")
    back = parse_report(path.read_text(), tmp_path)
    assert back.levels == rep.levels
    assert [q for _, q, _ in back.certificates] == [q for _, q, _ in rep.certificates]
    assert report_to_text(rep).startswith("cb-report v1\norder 3 radius 2\n")
    with pytest.raises(ValueError):
        parse_report("cb-report v2\n")


def test_rank1_alpha_corner():
    cw = sg.alpha_window(-10, -10, 30, 30)
    assert rank1_certificate(sg.build_T().T, cw, Window.from_rows([[sg.CORNER]]), 8)


def test_rank1_rejects_unpinned_pattern():
    # a blank tile fits both the all-blank configuration and those with a line
    cw = Window.from_rows([[1] * 6] * 6)
    assert not rank1_certificate(LINE, cw, Window.from_rows([[1]]), 3)
    with pytest.raises(ValueError):
        rank1_certificate(LINE, cw, Window.from_rows([[2]]), 3)
    with pytest.raises(ValueError):
        rank1_certificate(LINE, cw, Window.from_rows([[1, 1]]), 1)


def test_classify_projection_families():
    assert classify_projection(Window.from_rows([[0, 0], [0, 0]])) == "blank"
    assert classify_projection(Window.from_rows([[0, 2], [0, 0]])) == "single"
    # grid points with the corner left out: (2,2), (5,2), (2,5), (5,5) shifted by -2
    pts = {(0, 0), (3, 0), (0, 3), (3, 3)}
    w = Window.from_function(5, 5, lambda x, y: 1 if (x, y) in pts else 0)
    assert classify_projection(w) == "grid"
    l_shape = Window.from_function(5, 5, lambda x, y: 1 if (x, y) in pts - {(3, 3)} else 0)
    assert classify_projection(l_shape) is None


@pytest.fixture(scope="module")
def marker(corpus):
    spec = pb.parse_spec((corpus / "marker.pi01").read_text(), corpus)
    return spec, pb.build_tau_M(spec)


def test_beta_window_projects_to_grid(marker):
    spec, ge = marker
    for z in ((0, 0), (2, 3), (-3, -2)):
        w = pb.encode(ge, spec, "0" * 8, z, 12)
        assert classify_projection(sofic_project(ge, w)) == "grid"


def test_sampled_windows_are_valid(marker):
    _, ge = marker
    got = list(sample_windows(ge, 5, 10, seed=3))
    assert got and all(ge.validate(w) for w in got)
