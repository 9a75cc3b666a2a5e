"""Encode a bit string into a point of a minimal subshift and read it back.

Starting from the central letter C_{-1} = x_0, each bit picks two
consecutive occurrences of the current block C_i in x whose first differing
following letters come in the order the bit asks for (first smaller for 0,
first larger for 1). C_{i+1} is cut from x so that the first occurrence sits
at its centre and its last letter is the differing letter after the second
one. The decoder walks the same chain: the first occurrence is at the
centre, the second is the nearest one to its right.

Blocks grow by a constant factor per bit (about 10 on Thue-Morse), so long
chains are never spelled out. A block is an interval of the source point,
and occurrence searches run on an index. The Thue-Morse index answers them
through desubstitution and never builds the string.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

DEFAULT_BUDGET = 1 << 20


class BudgetExhausted(RuntimeError):
    def __init__(self, what: str, lo: int, hi: int):
        super().__init__(f"{what}: nothing found in positions [{lo}, {hi})")
        self.range = (lo, hi)


class CodecError(ValueError):
    """The input point does not carry a chain that far."""


# -- streams --------------------------------------------------------------

def _tm(i: int) -> str:
    # two-sided fixed point of 0 -> 0110, 1 -> 1001 with 0.0 at the origin
    return "01"[bin(i if i >= 0 else -1 - i).count("1") & 1]


@dataclass
class PointStream1D:
    access: Callable[[int], str]
    lo: int  # access is total on [lo, hi)
    hi: int
    provenance: str
    index: object = None

    def __getitem__(self, i: int) -> str:
        if not self.lo <= i < self.hi:
            raise IndexError(f"position {i} outside [{self.lo}, {self.hi})")
        return self.access(i)

    def word(self, a: int, b: int) -> str:
        return "".join(self[i] for i in range(a, b))

    def finder(self, budget: int = DEFAULT_BUDGET):
        return self.index if self.index is not None else NaiveIndex(self, budget)

    def shifted(self, t: int) -> "PointStream1D":
        """The point y with y[i] = self[i + t]."""
        idx = ShiftedIndex(self.index, t) if self.index is not None else None
        return PointStream1D(lambda i: self.access(i + t), self.lo - t, self.hi - t,
                             f"shift of {self.provenance} by {t}", idx)


def thue_morse(extent: int = 1 << 200) -> PointStream1D:
    return PointStream1D(_tm, -extent, extent, "Thue-Morse fixed point of 0 -> 0110",
                         ThueMorseIndex())


def periodic(period: str, extent: int = 1 << 20) -> PointStream1D:
    p = len(period)
    return PointStream1D(lambda i: period[i % p], -extent, extent, f"periodic ({period})")


def fixed_point(rules: dict, left: str, right: str, extent: int = 1 << 16) -> PointStream1D:
    """Two-sided point left.right fixed by the least power of the substitution
    that fixes it, spelled out on [-extent, extent)."""
    from .subshift1d import apply
    power = dict(rules)
    for _ in range(6):
        if power[right].startswith(right) and power[left].endswith(left) and len(power[right]) > 1:
            break
        power = {c: apply(rules, w) for c, w in power.items()}
    else:
        raise ValueError(f"{left}.{right} is not a fixed point of a power of the substitution")
    a, b = right, left
    while len(a) < extent or len(b) < extent:
        a, b = apply(power, a), apply(power, b)
    a, b = a[:extent], b[-extent:]
    return PointStream1D(lambda i: a[i] if i >= 0 else b[i], -extent, extent,
                         f"fixed point {left}.{right} of {rules}")


# -- occurrence indexes ---------------------------------------------------

class NaiveIndex:
    """Searches by scanning the stream; gives up after ``budget`` positions."""

    def __init__(self, x: PointStream1D, budget: int = DEFAULT_BUDGET):
        self.x, self.budget = x, budget

    def next_occurrence(self, a: int, length: int, after: int) -> int:
        x = self.x
        w = [x[i] for i in range(a, a + length)]
        stop = min(x.hi - length + 1, after + 1 + self.budget)
        for q in range(max(after + 1, x.lo), stop):
            if all(x.access(q + i) == w[i] for i in range(length)):
                return q
        raise BudgetExhausted("next occurrence", after + 1, stop)

    def first_difference(self, u: int, v: int, back: bool = False) -> int:
        x, s = self.x, -1 if back else 1
        for j in range(self.budget):
            p, q = u + s * j, v + s * j
            if not (x.lo <= p < x.hi and x.lo <= q < x.hi):
                break
            if x.access(p) != x.access(q):
                return j
        raise BudgetExhausted("first difference", min(u, v), max(u, v) + self.budget)


class ThueMorseIndex:
    """Exact searches on the Thue-Morse point x, working level by level.

    x[2k + d] = y[k] xor d where y[k] = x[2k] is again a Thue-Morse point
    (and y's own preimage is x). Words longer than SYNC letters start at a
    position of fixed parity, so occurrences of a long word are the doubled
    occurrences of the word one level down."""

    SYNC = 16
    SCAN = 1 << 12

    def letter(self, level: int, k: int) -> str:
        return _tm(k << (level & 1))

    def next_occurrence(self, a: int, length: int, after: int, level: int = 0) -> int:
        if length <= self.SYNC:
            w = [self.letter(level, a + i) for i in range(length)]
            for q in range(after + 1, after + 1 + self.SCAN):
                if all(self.letter(level, q + i) == w[i] for i in range(length)):
                    return q
            raise BudgetExhausted("next occurrence", after + 1, after + 1 + self.SCAN)
        e = a % 2
        A = a // 2
        cover = (a + length - 1) // 2 - A + 1
        R = self.next_occurrence(A, cover, (after - e) // 2, level + 1)
        return 2 * R + e

    def first_difference(self, u: int, v: int, back: bool = False, level: int = 0) -> int:
        d = v - u
        if d % 2:
            s = -1 if back else 1
            for j in range(4 * abs(d) + self.SCAN):
                if self.letter(level, u + s * j) != self.letter(level, v + s * j):
                    return j
            raise BudgetExhausted("first difference", min(u, v), max(u, v) + 4 * abs(d))
        e = u % 2
        l2 = self.first_difference(u // 2, v // 2, back, level + 1)
        return max(0, e + 2 * l2 - 1) if back else max(0, 2 * l2 - e)


class ShiftedIndex:
    def __init__(self, base, t: int):
        self.base, self.t = base, t

    def next_occurrence(self, a: int, length: int, after: int) -> int:
        return self.base.next_occurrence(a + self.t, length, after + self.t) - self.t

    def first_difference(self, u: int, v: int, back: bool = False) -> int:
        return self.base.first_difference(u + self.t, v + self.t, back)


# -- two words ------------------------------------------------------------

@dataclass
class TwoWordsResult:
    w0: str
    w1: str
    occPositions: tuple  # ((0, q0), (0, q1)) occurrence starts inside w0, w1
    diffLetters: tuple  # ((a, b), (c, d)) with a < b and c > d
    sources: tuple = ()  # where w0 and w1 start in x

    def check(self, w: str, order) -> bool:
        """Recount: w starts at 0 and at the second position and nowhere in
        between, and the letters after the two occurrences differ as declared."""
        rank = {s: i for i, s in enumerate(order)}
        (a, b), (c, d) = self.diffLetters
        ok = rank[a] < rank[b] and rank[c] > rank[d]
        for u, (_, q), last in ((self.w0, self.occPositions[0], b), (self.w1, self.occPositions[1], d)):
            starts = [i for i in range(q + 1) if u.startswith(w, i)]
            ok = ok and starts == [0, q] and u[-1] == last
        return ok


def _step(finder, x, a: int, length: int, want, budget: int):
    """First pair p < q of consecutive occurrences of x[a:a+length], p >= a,
    whose differing letters pass ``want``; returns (p, q, j, letters)."""
    p = a
    for _ in range(budget):
        q = finder.next_occurrence(a, length, p)
        j = finder.first_difference(p + length, q + length)
        la, lb = x.access(p + length + j), x.access(q + length + j)
        if want(la, lb, p, q, j):
            return p, q, j, (la, lb)
        p = q
    raise BudgetExhausted("occurrence pairs", a, p)


def two_words_1d(x: PointStream1D, w: str, order, budget: int = 4096) -> TwoWordsResult:
    rank = {s: i for i, s in enumerate(order)}
    finder = x.finder()
    # find w itself, scanning right from 0
    start = None
    for i in range(max(0, x.lo), min(x.hi, DEFAULT_BUDGET)):
        if x.word(i, i + len(w)) == w:
            start = i
            break
    if start is None:
        raise BudgetExhausted(f"occurrence of {w!r}", 0, DEFAULT_BUDGET)
    out = []
    for sign in (1, -1):
        def want(la, lb, *_, sign=sign):
            return sign * (rank[lb] - rank[la]) > 0
        p, q, j, letters = _step(finder, x, start, len(w), want, budget)
        out.append((x.word(p, q + len(w) + j + 1), q - p, letters, p))
    (w0, q0, d0, p0), (w1, q1, d1, p1) = out
    return TwoWordsResult(w0, w1, ((0, q0), (0, q1)), (d0, d1), (p0, p1))


# -- 1-D codec ----------------------------------------------------------------

@dataclass
class Level:
    start: int  # C_{i+1} = x[start : start + length]
    length: int
    first: int  # the two occurrences of C_i
    second: int
    diff: int  # offset j of the differing letters after the occurrences
    letters: tuple
    bit: str


@dataclass
class CodecState:
    blocks: list = field(default_factory=list)  # (start, length) of C_-1, C_0, ...
    bitsConsumed: int = 0
    searchCursor: int = 0
    levels: list = field(default_factory=list)


def _wants(bit: str, rank):
    if bit == "0":
        return lambda la, lb, *_: rank[la] < rank[lb]
    return lambda la, lb, *_: rank[la] > rank[lb]


def encode_1d(x: PointStream1D, s: str, order, budget: int = 4096):
    """Returns (point, state): the point is x shifted so that the last block
    is centred at 0, and the state keeps the whole chain."""
    rank = {c: i for i, c in enumerate(order)}
    finder = x.finder()
    st = CodecState(blocks=[(0, 1)])
    a, length = 0, 1
    for bit in s:
        if bit not in "01":
            raise ValueError(f"not a bit: {bit!r}")
        p, q, j, letters = _step(finder, x, a, length, _wants(bit, rank), budget)
        m = q - p + j + 1
        st.levels.append(Level(p - m, length + 2 * m, p, q, j, letters, bit))
        a, length = p - m, length + 2 * m
        st.blocks.append((a, length))
        st.bitsConsumed += 1
        st.searchCursor = max(st.searchCursor, q + length)
    return x.shifted(a + length // 2), st


def decode_1d(c: PointStream1D, order, nbits: int) -> str:
    rank = {s: i for i, s in enumerate(order)}
    finder = c.finder()
    bits, h = [], 0
    for _ in range(nbits):
        length = 2 * h + 1
        try:
            q = finder.next_occurrence(-h, length, -h)
            j = finder.first_difference(-h + length, q + length)
        except BudgetExhausted as err:
            raise CodecError(f"no second occurrence of the central block found: {err}") from err
        end = q + length + j
        if end >= c.hi:
            raise CodecError(f"second occurrence runs past the window end {c.hi}")
        la, lb = c[-h + length + j], c[end]
        bits.append("0" if rank[la] < rank[lb] else "1")
        h += q + h + j + 1
    return "".join(bits)


def chain_ok(x: PointStream1D, st: CodecState) -> bool:
    """Each C_i sits at the centre of C_{i+1}, whose last letter is the
    differing letter after the second occurrence."""
    finder = x.finder()
    for (a, n), lev in zip(st.blocks, st.levels):
        if lev.first - lev.start != (lev.length - n) // 2 or lev.length % 2 != 1:
            return False
        for occ in (lev.first, lev.second):
            if occ != a and finder.first_difference(a, occ) < n:
                return False
        la, lb = lev.letters
        if la == lb or x.access(lev.start + lev.length - 1) != lb:
            return False
    return True


# -- 2-D codec on vertical lifts ------------------------------------------------

@dataclass
class PointStream2D:
    access: Callable[[int, int], str]
    provenance: str
    row: PointStream1D | None = None  # set for vertical lifts: every row is this point


def vertical_lift(x: PointStream1D) -> PointStream2D:
    return PointStream2D(lambda i, j: x.access(i), f"vertical lift of {x.provenance}", x)


def _row_of(x2: PointStream2D) -> PointStream1D:
    if x2.row is None:
        raise NotImplementedError("the 2-D codec runs on vertical lifts only")
    return x2.row


def _ring_diff(finder, p: int, q: int, h: int):
    """First differing cell around two occurrences of the (2h+1)-square
    centred at columns p and q: by growing distance from the block, then row
    by row from the bottom, then left to right. Returns (radius, dx)."""
    right = finder.first_difference(p + h + 1, q + h + 1) + 1
    left = finder.first_difference(p - h - 1, q - h - 1, back=True) + 1
    r = min(left, right)
    # the bottom row of ring r holds both side cells; the left one comes first
    return r, (-h - r if left == r else h + r)


@dataclass
class Level2D:
    centre: int  # C_{i+1} is the square of half-side half centred at (centre, 0)
    half: int
    second: int
    radius: int
    dx: int
    letters: tuple
    bit: str


def _grow(p: int, q: int, h: int, r: int, dx: int) -> int:
    # the new square holds both rings out to the differing radius, so the
    # decoder sees the same comparisons; the differing cells lie on its border
    return q - p + h + r


def two_words_2d(x2: PointStream2D, h: int, order, budget: int = 4096):
    """Two squares around consecutive same-row occurrences of the central
    (2h+1)-square whose first differing cells come in each order. Returns
    ((p, q, radius, dx, letters) for the a<b pair, the same for c>d)."""
    x = _row_of(x2)
    rank = {s: i for i, s in enumerate(order)}
    finder = x.finder()
    out = []
    for sign in (1, -1):
        p = -h
        for _ in range(budget):
            q = finder.next_occurrence(-h, 2 * h + 1, p)
            r, dx = _ring_diff(finder, p + h, q + h, h)
            la, lb = x.access(p + h + dx), x.access(q + h + dx)
            if sign * (rank[lb] - rank[la]) > 0:
                out.append((p + h, q + h, r, dx, (la, lb)))
                break
            p = q
        else:
            raise BudgetExhausted("occurrence pairs", -h, p)
    return tuple(out)


def encode_2d(x2: PointStream2D, s: str, order, budget: int = 4096):
    x = _row_of(x2)
    rank = {c: i for i, c in enumerate(order)}
    finder = x.finder()
    levels, c, h = [], 0, 0
    for bit in s:
        want = _wants(bit, rank)
        p = c - h
        for _ in range(budget):
            q = finder.next_occurrence(c - h, 2 * h + 1, p)
            r, dx = _ring_diff(finder, p + h, q + h, h)
            la, lb = x.access(p + h + dx), x.access(q + h + dx)
            if want(la, lb):
                break
            p = q
        else:
            raise BudgetExhausted("occurrence pairs", c - h, p)
        centre, h2 = p + h, _grow(p + h, q + h, h, r, dx)
        levels.append(Level2D(centre, h2, q + h, r, dx, (la, lb), bit))
        c, h = centre, h2
    row = x.shifted(c)
    return vertical_lift(row), levels


def decode_2d(c2: PointStream2D, order, nbits: int) -> str:
    x = _row_of(c2)
    rank = {s: i for i, s in enumerate(order)}
    finder = x.finder()
    bits, h = [], 0
    for _ in range(nbits):
        try:
            q = finder.next_occurrence(-h, 2 * h + 1, -h) + h
            r, dx = _ring_diff(finder, 0, q, h)
        except BudgetExhausted as err:
            raise CodecError(f"no second occurrence of the central square found: {err}") from err
        la, lb = x[dx], x[q + dx]
        bits.append("0" if rank[la] < rank[lb] else "1")
        h = _grow(0, q, h, r, dx)
    return "".join(bits)


# -- transcripts --------------------------------------------------------------

def transcript(st: CodecState) -> str:
    out = ["codec v1"]
    for i, lev in enumerate(st.levels):
        out.append(f"level {i} extent {lev.start} {lev.length} occ {lev.first} {lev.second} "
                   f"diff {lev.letters[0]} {lev.letters[1]} bit {lev.bit}")
    return "\n".join(out) + "\n"
