"""Geometry of the column-of-squares configuration alpha.

Column n occupies x in [f(n), f(n+1)] (borders shared with neighbours), has
squares of side s = n + 2 and stacks 2n + 1 of them, so its top line sits at
height H(n) = f(2n + 1). The vertical line at x = f(n) rises from the bottom
row to H(n).

Inside square j of column n (rows j*s .. (j+1)*s) a counting signal runs
at offset p_j from the left line: 1, 2, ..., n+1 going up the column, then
n, ..., 1. A lock diagonal joins the counting signal to the left line at the
height where the neighbouring column's horizontal line must meet it.
"""
from __future__ import annotations

from functools import lru_cache
from math import isqrt


def f(n: int) -> int:
    """Coordinate of the n-th grid line: (n+1)(n+2)/2 - 1."""
    return (n + 1) * (n + 2) // 2 - 1


def side(n: int) -> int:
    return n + 2


def squares(n: int) -> int:
    return 2 * n + 1


def height(n: int) -> int:
    """Top of column n, equal to f(2n + 1)."""
    return squares(n) * side(n)


def column_of(x: int) -> int:
    """Largest n with f(n) <= x (x >= 0)."""
    n = max(0, (isqrt(8 * (x + 1) + 1) - 3) // 2)
    while f(n + 1) <= x:
        n += 1
    while n > 0 and f(n) > x:
        n -= 1
    return n


def count_offset(n: int, j: int) -> int:
    return j + 1 if j <= n else 2 * n + 1 - j


def is_up(n: int, j: int) -> bool:
    return j <= n


def admissible(n: int, m: int) -> bool:
    return 2 * n >= m and 2 * m >= n


@lru_cache(maxsize=None)
def signal_edges(n: int) -> tuple[dict, dict]:
    """Signals carried by edges of column n.

    Returns (hsig, vsig): hsig[(x, y)] labels the edge between (x, y) and
    (x+1, y); vsig[(x, y)] the edge between (x, y) and (x, y+1).
    """
    x0, s = f(n), side(n)
    hsig: dict = {}
    vsig: dict = {}

    def add(d, key, val):
        d.setdefault(key, set()).add(val)

    for j in range(squares(n)):
        p = count_offset(n, j)
        phase = "cu" if is_up(n, j) else "cd"
        for y in range(j * s, (j + 1) * s):
            add(vsig, (x0 + p, y), phase)
        if j + 1 < squares(n):
            q = count_offset(n, j + 1)
            y = (j + 1) * s
            lo = min(p, q)
            # sX marks the bounce, where the count turns from rising to falling
            add(hsig, (x0 + lo, y), "sR" if q > p else ("sX" if is_up(n, j) else "sL"))
        if is_up(n, j):
            top = (j + 1) * s
            for k in range(1, p + 1):
                add(vsig, (x0 + p - k + 1, top - k), "ka")
                add(hsig, (x0 + p - k, top - k), "ka")
        else:
            base = j * s
            add(vsig, (x0 + p, base), "kc")
            for k in range(1, p + 1):
                add(vsig, (x0 + p - k + 1, base + k), "kb")
                add(hsig, (x0 + p - k, base + k + 1), "kb")
    return hsig, vsig


def _base_sides(x: int, y: int) -> tuple[str, str, str, str]:
    """(N, E, S, W) colors of alpha at (x, y), ignoring signals."""
    if x < 0:
        if y > 0:
            return ("ul|", "ul-", "ul|", "ul-")
        if y == 0:
            return ("ul|", "rl", "dl|", "rl")
        return ("dl|", "dl-", "dl|", "dl-")
    if y < 0:
        if x == 0:
            return ("rd", "dr-", "rd", "dl-")
        return ("dr|", "dr-", "dr|", "dr-")
    if y == 0:
        n = column_of(x)
        west = "rl" if x == 0 else _bottom_edge(x - 1)
        south = "rd" if x == 0 else "dr|"
        if x == f(n):
            return (_line_color(n, 0), _bottom_edge(x), south, west)
        return (f"y{x}.0" if n < EXACT_BOTTOM else "L", _bottom_edge(x), south, west)
    n = column_of(x)
    x0, s, top = f(n), side(n), height(n)
    if y > top:
        if x == 0:
            return ("top0|", "top-", "top0|", "ul-")
        return ("top|", "top-", "top|", "top-")
    if x == x0:
        west = "ul-" if n == 0 else _base_sides(x - 1, y)[1]
        below = _line_color(n, y - 1)
        if y == top:
            return ("top0|" if n == 0 else "top|", _base_sides(x + 1, y)[3], below, west)
        east = _base_sides(x + 1, y)[3]
        return (_line_color(n, y), east, below, west)
    if n < EXACT_BOTTOM:
        return ("top|" if y == top else f"y{x}.{y}", f"x{x}.{y}", f"y{x}.{y - 1}", f"x{x - 1}.{y}")
    u, r = x - x0, y % s
    fw, fe = _flag(n, u - 1, y), _flag(n, u, y)
    if r == 0:
        typ = "ht" if y == top else "hm"
        w = typ + ":s" + (fw if typ == "hm" else "") if u == 1 else typ + fw
        e = typ + ":e" if u == s - 1 else typ + fe
        return ("top|" if y == top else "L", e, "Ud" if u == s - 1 else "U", w)
    if r > u:
        return ("U", "U" + fe, "Ud" if r == u + 1 else "U", "U" + fw)
    if r < u:
        return ("L", "L" + fe, "L", ("Ld" if r == u - 1 else "L") + fw)
    return ("Ud", "Ld" + fe, "L", "U" + fw)


# columns narrower than this carry exact coordinates on every edge
EXACT_BOTTOM = 3


def _bottom_edge(x: int) -> str:
    """Label of the bottom-row edge between (x, 0) and (x+1, 0), x >= 0."""
    n = column_of(x)
    u = x - f(n)
    if n < EXACT_BOTTOM:
        return f"bot{n}.{u}"
    if u == 0:
        return "bot:s"
    if u == side(n) - 1:
        return "bot:e"
    return "bot" + _flag(n, u, 0)


def lock_offset(n: int, j: int) -> int:
    """Height above the bottom of square j where its lock meets the left line."""
    p = count_offset(n, j)
    return side(n) - p if is_up(n, j) else p + 1


def _line_color(n: int, y: int) -> str:
    """Color of the left line of column n on the edge above row y. Narrow
    columns carry their exact height, wider ones only the lock state."""
    if n < EXACT_BOTTOM:
        return f"vl{n}.{y}"
    return "vline" + _lock_state(n, y)


def _lock_state(n: int, y: int) -> str:
    """State of the left line of column n on the edge above row y: whether the
    lock of the current square has already arrived ('g') or not ('w'), and
    whether the square is rising ('u') or falling ('d')."""
    j, r = divmod(y, side(n))
    return ("g" if r >= lock_offset(n, j) else "w") + ("u" if is_up(n, j) else "d")


def _flag(n: int, u: int, y: int) -> str:
    """Whether the edge right of offset u in row y lies before ('b') or after
    ('a') the counting signal, or on its horizontal shift ('m')."""
    s = side(n)
    j, r = divmod(y, s)
    if r:
        p = count_offset(n, j)
        return "a" if u >= p else "b"
    if j == 0:
        lo = hi = 1
    elif j == squares(n):
        lo = hi = count_offset(n, j - 1)
    else:
        a, b = count_offset(n, j - 1), count_offset(n, j)
        lo, hi = min(a, b), max(a, b)
    if u < lo:
        # the line below a falling square says so all the way to the left wall,
        # with its own mark for the bounce
        if j == n + 1:
            return "B"
        return "b" if is_up(n, j) else "c"
    return "a" if u >= hi else "m"


def _signals(x: int, y: int, horizontal: bool) -> tuple[str, ...]:
    """Signals on the edge leaving (x, y) eastward (horizontal) or northward."""
    if x < 0 or y < 0:
        return ()
    n = column_of(x)
    found: set = set()
    # an edge at a line position may belong to the column on either side
    for m in {n, n - 1} if n > 0 else {n}:
        hsig, vsig = signal_edges(m)
        found |= (hsig if horizontal else vsig).get((x, y), set())
    return tuple(sorted(found))


def alpha_sides(x: int, y: int) -> tuple[str, str, str, str]:
    """Full (N, E, S, W) edge labels of alpha at (x, y)."""
    n_, e_, s_, w_ = _base_sides(x, y)

    def lab(base, sig):
        return base if not sig else base + "+" + ".".join(sig)

    return (
        lab(n_, _signals(x, y, False)),
        lab(e_, _signals(x, y, True)),
        lab(s_, _signals(x, y - 1, False)),
        lab(w_, _signals(x - 1, y, True)),
    )
