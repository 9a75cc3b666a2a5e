import pytest
from hypothesis import given, strategies as st

from oracles import factors_of, fibonacci_prefix, thue_morse_prefix
from wangshift import degree_codec as dc
from wangshift.subshift1d import FIBONACCI

ORDER = ("0", "1")
TEXT = thue_morse_prefix(1 << 16)


def naive_copy(x, extent=1 << 16):
    return dc.PointStream1D(x.access, -extent, extent, "naive copy", None)


def test_thue_morse_point_agrees_with_iteration():
    x = dc.thue_morse()
    assert x.word(0, 4096) == TEXT[:4096]
    # the left half is made of factors too
    facts = factors_of(TEXT, 64)
    assert all(x.word(a, a + 64) in facts for a in range(-2000, 0, 37))


@given(st.integers(-3000, 3000), st.integers(1, 40), st.integers(0, 200))
def test_structural_index_matches_scanning(a, length, gap):
    x = dc.thue_morse()
    fast, slow = x.finder(), naive_copy(x).finder()
    after = a + gap
    assert fast.next_occurrence(a, length, after) == slow.next_occurrence(a, length, after)


@given(st.integers(-3000, 3000), st.integers(1, 3000), st.booleans())
def test_first_difference_matches_scanning(u, d, back):
    x = dc.thue_morse()
    v = u + d
    assert x.finder().first_difference(u, v, back) == naive_copy(x).finder().first_difference(u, v, back)


@given(st.text("01", max_size=16))
def test_1d_round_trip(s):
    x = dc.thue_morse()
    c, st_ = dc.encode_1d(x, s, ORDER)
    assert dc.decode_1d(c, ORDER, len(s)) == s
    assert dc.chain_ok(x, st_)
    assert st_.bitsConsumed == len(s) and len(st_.blocks) == len(s) + 1


@given(st.text("01", max_size=7))
def test_2d_round_trip(s):
    x2 = dc.vertical_lift(dc.thue_morse())
    c2, levels = dc.encode_2d(x2, s, ORDER)
    assert dc.decode_2d(c2, ORDER, len(s)) == s
    halves = [lev.half for lev in levels]
    assert halves == sorted(halves)
    assert all(c2.access(0, j) == c2.access(0, 0) for j in range(-5, 5))


@given(st.text("01", max_size=5))
def test_fibonacci_round_trip(s):
    fib = dc.fixed_point(FIBONACCI, "0", "0", 1 << 14)
    assert fib.word(0, 500) == fibonacci_prefix(500)
    c, _ = dc.encode_1d(fib, s, ORDER)
    assert dc.decode_1d(c, ORDER, len(s)) == s


def test_two_words_witness():
    x = dc.thue_morse()
    for w in ("0", "01", "0110"):
        r = dc.two_words_1d(x, w, ORDER)
        assert r.check(w, ORDER)
        assert r.w0 in TEXT and r.w1 in TEXT


def test_periodic_point_has_no_two_words():
    with pytest.raises(dc.BudgetExhausted):
        dc.two_words_1d(dc.periodic("01"), "01", ORDER)
    with pytest.raises(dc.BudgetExhausted):
        dc.encode_1d(dc.periodic("011"), "0", ORDER)


def test_decode_reports_a_short_window():
    c = dc.PointStream1D(lambda i: TEXT[i + 50], -50, 50, "short", None)
    with pytest.raises(dc.CodecError):
        dc.decode_1d(c, ORDER, 12)


def test_transcript_lines():
    _, st_ = dc.encode_1d(dc.thue_morse(), "0110", ORDER)
    lines = dc.transcript(st_).splitlines()
    assert lines[0] == "codec v1" and len(lines) == 5
    assert lines[1].startswith("level 0 extent ") and lines[1].endswith("bit 0")
