"""Turing machine run on the lattice of grid intersections.

Intersection (n, m) hosts tape cell i = n - m at lattice time t = n + m; it
exists when |i| <= t/3. It hears from its west neighbour (i-1, t-1) along
the horizontal line and from its south neighbour (i+1, t-1) along the
vertical one, and talks to (i+1, t+1) eastward and (i-1, t+1) northward.

A message is (own content, relayed content, frontier flag). The relayed
content is the receiver's own cell two time steps earlier, which is how a
cell remembers itself. A content is (symbol, oracle bit, head state, stall).

Points on the right edge of the wedge come in two kinds: B at t = 3i + 2,
which flags its east message, and A at t = 3i, which gets that flag and has
no east neighbour. A head that wants to move right from an A point stalls
until the B point of the same cell; the left edge is the mirror image.
Cells i >= 0 carry an oracle bit, cells left of the origin carry none.
"""
from __future__ import annotations

from dataclasses import dataclass

BLANK = "B"


@dataclass(frozen=True)
class Content:
    symbol: str
    bit: int | None
    head: str | None = None
    stall: bool = False


@dataclass(frozen=True)
class Message:
    own: Content
    relay: Content | None
    frontier: bool


class Halt(Exception):
    """A head reached a configuration without transition."""


def kind_of(west, south) -> str | None:
    """Point kind from its inputs; None if the inputs cannot meet."""
    if west is None and south is None:
        return "source"
    if south is None:
        return "A" if west.frontier else "B"
    if west is None:
        return "A'" if south.frontier else "B'"
    if west.relay is None or west.relay != south.relay:
        return None
    return "interior"


def _step(delta, c: Content):
    return delta(c.head, c.symbol, c.bit)


def point_rule(delta, initial: str, west, south, bit=None):
    """Content and (east, north) messages of a point, or None if no tile fits.

    ``delta(q, a, b)`` returns (q', a', move) or None. ``bit`` is the oracle
    bit chosen by a fresh cell on the right of the origin."""
    kind = kind_of(west, south)
    if kind is None:
        return None
    prev = west.relay if west is not None else (south.relay if south is not None else None)
    if prev is None:
        if kind not in ("source", "A", "A'"):
            return None
        if kind == "A'":
            if bit is not None:
                return None
        elif bit not in (0, 1):
            return None
        heads = [initial] if kind == "source" else []
        symbol = BLANK
    else:
        if bit is not None:
            return None
        symbol, bit, heads = prev.symbol, prev.bit, []
        if prev.head is not None:
            if prev.stall:
                heads.append(prev.head)
            else:
                q2, a2, m = _step(delta, prev)
                symbol = a2
                if m == "N":
                    heads.append(q2)
    for msg, way in ((west, "R"), (south, "L")):
        c = msg.own if msg is not None else None
        if c is not None and c.head is not None and not c.stall:
            q2, a2, m = _step(delta, c)
            if m == way:
                heads.append(q2)
    if len(heads) > 1:
        return None
    head = heads[0] if heads else None
    stall = False
    if head is not None:
        t = delta(head, symbol, bit)
        if t is None:
            return None
        stall = (kind == "A" and t[2] == "R") or (kind == "A'" and t[2] == "L")
    c = Content(symbol, bit, head, stall)
    east = Message(c, south.own if south is not None else None, kind in ("B", "source"))
    north = Message(c, west.own if west is not None else None, kind in ("B'", "source"))
    return c, east, north


def admissible_points(nmax: int, mmax: int | None = None):
    """Intersections (n, m) with n <= nmax, m <= mmax and m/2 <= n <= 2m, in time order."""
    mmax = nmax if mmax is None else mmax
    pts = [(n, m) for n in range(nmax + 1) for m in range(mmax + 1)
           if 2 * n >= m and 2 * m >= n]
    return sorted(pts, key=lambda p: (p[0] + p[1], p[0]))


def run(delta, initial: str, oracle, nmax: int, mmax: int | None = None):
    """Contents of every intersection with n <= nmax, m <= mmax (default
    nmax), the corner excluded.

    Raises Halt naming the first point with no possible content."""
    return run_messages(delta, initial, oracle, nmax, mmax)[0]


def run_messages(delta, initial: str, oracle, nmax: int, mmax: int | None = None):
    """(contents, east messages, north messages) keyed by intersection."""
    out, east, north = {}, {}, {}
    for n, m in admissible_points(nmax, mmax):
        if (n, m) == (0, 0):
            continue
        w = east.get((n - 1, m))
        s = north.get((n, m - 1))
        i = n - m
        fresh = (w is None or w.relay is None) and (s is None or s.relay is None)
        bit = oracle[i] if fresh and i >= 0 else None
        if fresh and i >= 0 and bit is None:
            raise ValueError(f"oracle too short for cell {i}")
        r = point_rule(delta, initial, w, s, bit)
        if r is None:
            raise Halt((n, m))
        out[(n, m)], east[(n, m)], north[(n, m)] = r
    return out, east, north


def first_point(i: int) -> tuple[int, int]:
    """Intersection where cell i appears; cell 0 starts at the source (1, 1)."""
    if i == 0:
        return (1, 1)
    return (2 * i, i) if i > 0 else (-i, -2 * i)
