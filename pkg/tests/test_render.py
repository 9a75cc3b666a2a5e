import pytest
from hypothesis import given, strategies as st

from wangshift import render as rnd
from wangshift import sparse_grid as sg
from wangshift.core import Window

cells = st.one_of(st.none(), st.integers(1, 70))
windows = st.integers(1, 6).flatmap(
    lambda w: st.lists(st.lists(cells, min_size=w, max_size=w), min_size=1, max_size=6))


@given(windows)
def test_ascii_has_one_line_per_row_top_first(rows):
    w = Window.from_rows(rows)
    pal = rnd.default_palette(w, "ascii")
    text = rnd.render(w, rnd.RenderSpec("ascii", pal)).decode()
    lines = text.splitlines()
    assert len(lines) == w.height and all(len(ln) == w.width for ln in lines)
    for y in range(w.height):
        for x in range(w.width):
            c = w[x, y]
            assert lines[w.height - 1 - y][x] == (rnd.FREE_GLYPH if c is None else pal[c])


@given(windows, st.integers(1, 3))
def test_ppm_size_and_pixels(rows, scale):
    w = Window.from_rows(rows)
    pal = rnd.default_palette(w, "ppm")
    data = rnd.render(w, rnd.RenderSpec("ppm", pal, scale))
    head = f"P6\n{w.width * scale} {w.height * scale}\n255\n".encode()
    assert data.startswith(head)
    body = data[len(head):]
    assert len(body) == 3 * w.width * w.height * scale * scale
    # top-left pixel is the top-left cell
    c = w[0, w.height - 1]
    assert tuple(body[:3]) == (rnd.FREE_RGB if c is None else pal[c])
    assert rnd.FREE_RGB not in pal.values()


def test_errors():
    w = Window.from_rows([[1, 2]])
    with pytest.raises(rnd.RenderError):
        rnd.render(w, rnd.RenderSpec("ascii", {1: "a"}))
    with pytest.raises(rnd.RenderError):
        rnd.render(w, rnd.RenderSpec("svg", {1: "a", 2: "b"}))
    with pytest.raises(rnd.RenderError):
        rnd.render(w, rnd.RenderSpec("ppm", {1: (0, 0, 0), 2: (1, 1, 1)}, 0))
    with pytest.raises(rnd.RenderError):
        rnd.parse_palette("1 ab\n", "ascii")


def test_palette_parsing():
    assert rnd.parse_palette("1 a\n2 b\n", "ascii") == {1: "a", 2: "b"}
    assert rnd.parse_palette("# comment\n3 1 2 3\n", "ppm") == {3: (1, 2, 3)}


def test_role_glyphs_draw_alpha_lines():
    pal = rnd.role_palette(sg.build_T().role_of)
    text = rnd.render(sg.generate_alpha(12), rnd.RenderSpec("ascii", pal)).decode()
    bottom = text.splitlines()[-1]
    assert bottom[0] == "+"
    # the line of the first column stands at x = 2
    assert all(ln[2] in "|#+" for ln in text.splitlines()[-6:])
