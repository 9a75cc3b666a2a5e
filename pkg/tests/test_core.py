import pytest
from hypothesis import given, strategies as st

from wangshift.core import (EMPTY, FormatError, Tile, Tileset, Window, occurrences, shift_window,
                            superimpose, validate_window)


def small_tileset(colors=2):
    return Tileset(colors, (Tile(1, 0, 1, 0, 1), Tile(2, 1, 0, 1, 0)))


windows = st.integers(1, 4).flatmap(lambda w: st.integers(1, 4).flatmap(
    lambda h: st.lists(st.lists(st.sampled_from([None, 1, 2]), min_size=w, max_size=w),
                       min_size=h, max_size=h).map(lambda rows: Window.from_rows(rows))))


@given(windows)
def test_window_text_round_trip(w):
    assert Window.from_text(w.to_text()) == w


def test_tileset_text_round_trip():
    ts = small_tileset()
    assert Tileset.from_text(ts.to_text()) == ts


def test_duplicate_ids_rejected():
    with pytest.raises(FormatError):
        Tileset(2, (Tile(1, 0, 0, 0, 0), Tile(1, 1, 1, 1, 1)))


def test_color_out_of_range():
    with pytest.raises(FormatError):
        Tileset(1, (Tile(1, 0, 1, 0, 0),))


def test_bad_headers():
    with pytest.raises(FormatError):
        Tileset.from_text("tiles\n")
    with pytest.raises(FormatError):
        Window.from_text("window 2 1\n1\n")


def test_validate_checks_edges():
    ts = Tileset(2, (Tile(1, 0, 1, 0, 0), Tile(2, 0, 0, 0, 1)))
    assert validate_window(ts, Window.from_rows([[1, 2]]))
    assert not validate_window(ts, Window.from_rows([[1, 1]]))
    # free cells break no constraint
    assert validate_window(ts, Window.from_rows([[2, None, 1]]))
    with pytest.raises(FormatError):
        validate_window(ts, Window.from_rows([[7]]))


def test_occurrences_skip_free_pattern_cells():
    host = Window.from_rows([[1, 2, 1], [2, 1, 2]])
    pat = Window.from_rows([[1, None]])
    assert occurrences(host, pat) == [(0, 0), (1, 1)]


@given(windows, st.integers(-3, 3), st.integers(-3, 3))
def test_shift_round_trip(w, vx, vy):
    s = shift_window(w, (vx, vy))
    if abs(vx) >= w.width or abs(vy) >= w.height:
        assert s == EMPTY
        return
    back = shift_window(s, (-vx, -vy))
    if back == EMPTY:
        assert 2 * abs(vx) >= w.width or 2 * abs(vy) >= w.height
        return
    # what survives both shifts is the original, cut by |v| on each side
    assert back == w.crop(abs(vx), abs(vy), back.width, back.height)


def test_shift_moves_content():
    w = Window.from_rows([[1, 2, 3]])
    s = shift_window(w, (1, 0))
    assert s.cells == ((1, 2),)


def test_mirror_swaps_axes():
    t = Tile(5, 1, 2, 3, 4)
    assert t.mirrored() == Tile(5, 2, 1, 4, 3)
    assert t.mirrored().mirrored() == t


def test_superimpose_pairs_are_exclusive():
    a = Tileset(1, (Tile(1, 0, 0, 0, 0), Tile(2, 0, 0, 0, 0)))
    p = superimpose(a, a, [(1, 1)])
    assert sorted(p.pairs.values()) == [(1, 1), (2, 2)]
    assert p.id_of(2, 2) in p.tileset
