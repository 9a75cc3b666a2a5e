"""Completion search over Wang windows.

Domains are Python ints used as bitsets over tile indices (tiles sorted by
id). Search maintains arc consistency and assigns cells in row-major order
with ascending tile ids, so enumeration order is canonical.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .core import EMPTY, FormatError, Tileset, Window, validate_window

DEFAULT_BUDGET = int(os.environ.get("WANGSHIFT_BUDGET", 10**8))

# Maxima (cells) accepted by solve/extensible; larger requests must raise the cap.
MAX_CELLS = 200 * 200


class ResourceLimit(RuntimeError):
    def __init__(self, budget: int, what: str = "search"):
        super().__init__(f"{what} exceeded node budget of {budget}")
        self.budget = budget


@dataclass
class SolveRequest:
    tileset: Tileset
    window: Window
    mode: str = "decide"  # decide | count | enumerate
    limit: int | None = None
    budget: int = DEFAULT_BUDGET
    # optional extra restriction: (x, y) -> allowed tile ids
    allowed: Mapping[tuple[int, int], Iterable[int]] | None = None

    def __post_init__(self):
        if self.mode not in ("decide", "count", "enumerate"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "enumerate" and (self.limit is None or self.limit <= 0):
            raise ValueError("enumerate mode requires a positive limit")


@dataclass
class ExtensibilityQuery:
    pattern: Window
    radius: int


class _Compiled:
    """Per-tileset lookup tables shared by every search on that tileset."""

    _cache: dict = {}

    def __init__(self, ts: Tileset):
        order = sorted(ts.tiles, key=lambda t: t.id)
        self.ts = ts
        self.ids = [t.id for t in order]
        self.index = {tid: i for i, tid in enumerate(self.ids)}
        self.n = len(order)
        self.full = (1 << self.n) - 1
        self.colors = [t.edges for t in order]  # (N, E, S, W)
        # mask[d][c]: tiles whose side d has color c
        self.mask = [dict() for _ in range(4)]
        for i, edges in enumerate(self.colors):
            for d, c in enumerate(edges):
                self.mask[d][c] = self.mask[d].get(c, 0) | (1 << i)

    @classmethod
    def of(cls, ts: Tileset) -> "_Compiled":
        key = id(ts)
        hit = cls._cache.get(key)
        if hit is None or hit.ts is not ts:
            hit = cls(ts)
            if len(cls._cache) > 64:
                cls._cache.clear()
            cls._cache[key] = hit
        return hit

    def side_colors(self, dom: int, d: int) -> list[int]:
        m = self.mask[d]
        if len(m) <= bin(dom).count("1"):
            return [c for c, bits in m.items() if bits & dom]
        out, i = set(), 0
        while dom:
            if dom & 1:
                out.add(self.colors[i][d])
            dom >>= 1
            i += 1
        return list(out)

    def support(self, dom: int, d: int) -> int:
        """Tiles compatible, across side d of a cell with domain dom, with that cell."""
        opp = (d + 2) % 4
        m = self.mask[opp]
        acc = 0
        for c in self.side_colors(dom, d):
            acc |= m.get(c, 0)
        return acc

    def bits(self, dom: int) -> Iterator[int]:
        i = 0
        while dom:
            low = dom & -dom
            i = low.bit_length() - 1
            yield i
            dom ^= low


_DIRS = ((0, 1, 0), (1, 0, 1), (0, -1, 2), (-1, 0, 3))  # dx, dy, side


class _Search:
    def __init__(self, ts: Tileset, window: Window, allowed=None, budget: int = DEFAULT_BUDGET):
        if window.width * window.height > MAX_CELLS:
            raise ValueError(f"window exceeds {MAX_CELLS} cells")
        validate_window(ts, window)  # id check only; result ignored
        self.cp = _Compiled.of(ts)
        self.w, self.h = window.width, window.height
        self.budget = budget
        self.nodes = 0
        cp = self.cp
        doms = []
        for y in range(self.h):
            for x in range(self.w):
                c = window[x, y]
                d = cp.full if c is None else 1 << cp.index[c]
                if allowed and (x, y) in allowed:
                    m = 0
                    for tid in allowed[(x, y)]:
                        if tid in cp.index:
                            m |= 1 << cp.index[tid]
                    d &= m
                doms.append(d)
        self.root = doms

    def tick(self, k: int = 1):
        self.nodes += k
        if self.nodes > self.budget:
            raise ResourceLimit(self.budget)

    def neighbours(self, p: int):
        x, y = p % self.w, p // self.w
        for dx, dy, side in _DIRS:
            nx, ny = x + dx, y + dy
            if 0 <= nx < self.w and 0 <= ny < self.h:
                yield ny * self.w + nx, side

    def propagate(self, doms: list[int], queue: Iterable[int]) -> bool:
        cp = self.cp
        pending = list(queue)
        inq = set(pending)
        while pending:
            p = pending.pop()
            inq.discard(p)
            self.tick()
            dp = doms[p]
            for q, side in self.neighbours(p):
                dq = doms[q]
                nd = dq & cp.support(dp, side)
                if nd != dq:
                    if not nd:
                        doms[q] = 0
                        return False
                    doms[q] = nd
                    if q not in inq:
                        inq.add(q)
                        pending.append(q)
        return True

    def initial(self) -> list[int] | None:
        doms = list(self.root)
        if any(d == 0 for d in doms):
            return None
        if not self.propagate(doms, range(len(doms))):
            return None
        return doms

    def solutions(self, doms=None, order=None) -> Iterator[list[int]]:
        """Yield complete assignments (domains all singletons), canonical order."""
        if doms is None:
            doms = self.initial()
            if doms is None:
                return
        cells = list(range(len(doms))) if order is None else list(order)
        yield from self._dfs(doms, cells, 0)

    def _dfs(self, doms, cells, k):
        while k < len(cells) and doms[cells[k]] & (doms[cells[k]] - 1) == 0:
            k += 1
        if k == len(cells):
            yield doms
            return
        p = cells[k]
        for i in self.cp.bits(doms[p]):
            self.tick()
            nd = list(doms)
            nd[p] = 1 << i
            if self.propagate(nd, [p]):
                yield from self._dfs(nd, cells, k + 1)

    def first(self, doms=None) -> list[int] | None:
        for sol in self.solutions(doms):
            return sol
        return None

    def to_window(self, doms: list[int]) -> Window:
        ids = self.cp.ids
        return Window.from_function(
            self.w, self.h, lambda x, y: ids[doms[y * self.w + x].bit_length() - 1]
        )

    def count(self) -> int:
        """Exact number of completions by row-major profile dynamic programming."""
        doms = self.initial()
        if doms is None:
            return 0
        cp, w = self.cp, self.w
        # state: (north colors of the last w placed cells, east color of previous cell)
        states = {((None,) * w, None): 1}
        for p in range(len(doms)):
            x = p % w
            nxt: dict = {}
            options = [cp.colors[i] for i in cp.bits(doms[p])]
            for (prof, east), n in states.items():
                below = prof[0]
                for nn, ee, ss, ww in options:
                    self.tick()
                    if below is not None and ss != below:
                        continue
                    if x > 0 and ww != east:
                        continue
                    key = (prof[1:] + (nn,), ee)
                    nxt[key] = nxt.get(key, 0) + n
            states = nxt
            if not states:
                return 0
        return sum(states.values())


def solve(req: SolveRequest):
    """decide -> bool, count -> int, enumerate -> list[Window] (first ``limit``)."""
    if req.window.is_empty:
        return {"decide": True, "count": 1, "enumerate": [EMPTY]}[req.mode]
    s = _Search(req.tileset, req.window, req.allowed, req.budget)
    if req.mode == "count":
        return s.count()
    if req.mode == "decide":
        return s.first() is not None
    out = []
    for sol in s.solutions():
        out.append(s.to_window(sol))
        if len(out) >= req.limit:
            break
    return out


def _embed(pattern: Window, radius: int) -> Window:
    w, h = pattern.width + 2 * radius, pattern.height + 2 * radius
    return Window.from_function(w, h, lambda x, y: pattern.get(x - radius, y - radius))


def extensible(ts: Tileset, q: ExtensibilityQuery, budget: int = DEFAULT_BUDGET) -> bool:
    """Radius-r approximation of extensibility: a necessary condition."""
    if q.radius < 0:
        raise ValueError("radius must be non-negative")
    return solve(SolveRequest(ts, _embed(q.pattern, q.radius), "decide", budget=budget))


def enumerate_language(
    ts: Tileset, n: int, radius: int, budget: int = DEFAULT_BUDGET, allowed=None
) -> list[Window]:
    """All n x n blocks that extend to a valid window with margin ``radius``.

    ``allowed`` optionally restricts cells of the big window (coordinates
    relative to its lower-left corner).
    """
    big = n + 2 * radius
    s = _Search(ts, Window.blank(big, big), allowed, budget)
    doms = s.initial()
    if doms is None:
        return []
    centre = [(radius + y) * big + radius + x for y in range(n) for x in range(n)]
    rest = [p for p in range(big * big) if p not in set(centre)]
    ids = s.cp.ids
    out = []

    def blocks(doms, k):
        if k == len(centre):
            yield doms
            return
        p = centre[k]
        for i in s.cp.bits(doms[p]):
            s.tick()
            nd = list(doms)
            nd[p] = 1 << i
            if s.propagate(nd, [p]):
                yield from blocks(nd, k + 1)

    for d in blocks(doms, 0):
        if next(s._dfs(d, rest, 0), None) is not None:
            out.append(
                Window.from_function(
                    n, n, lambda x, y: ids[d[(radius + y) * big + radius + x].bit_length() - 1]
                )
            )
    return out


def block_key(w: Window) -> tuple:
    return w.cells


def _host_count(ts, block, radius, lang_keys, n, budget, cap=2):
    """Completions (up to cap) of block centred with margin radius, using only lang blocks."""
    big = block.width + 2 * radius
    s = _Search(ts, _embed(block, radius), None, budget)
    doms = s.initial()
    if doms is None:
        return 0, None
    ids = s.cp.ids
    found, first = 0, None
    for sol in s.solutions(doms):
        win = s.to_window(sol)
        if lang_keys is not None:
            ok = all(
                win.crop(x, y, n, n).cells in lang_keys
                for y in range(big - n + 1)
                for x in range(big - n + 1)
            )
            if not ok:
                continue
        found += 1
        first = first or win
        if found >= cap:
            break
    return found, first


def isolated_patterns(
    lang: list[Window], host_radius: int, ts: Tileset, budget: int = DEFAULT_BUDGET
) -> list[tuple[Window, Window]]:
    """Blocks of ``lang`` whose host window is pinned to a single filling.

    A block p is reported with certificate q = p when the window of margin
    ``host_radius`` around p admits exactly one valid filling all of whose
    block-size sub-windows belong to ``lang``.
    """
    if not lang:
        return []
    n = lang[0].width
    keys = {b.cells for b in lang}
    hits = []
    for b in lang:
        cnt, _ = _host_count(ts, b, host_radius, keys, n, budget)
        if cnt == 1:
            hits.append((b, b))
    return hits
