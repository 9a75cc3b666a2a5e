"""Wang tiles, tilesets and rectangular windows.

Coordinates are x rightward, y upward, origin at the lower-left cell of a
window. A window cell holds a tile id or ``None`` (unconstrained).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

N, E, S, W = 0, 1, 2, 3


class FormatError(ValueError):
    """Malformed text input or a reference to an unknown tile."""


@dataclass(frozen=True)
class Tile:
    id: int
    north: int
    east: int
    south: int
    west: int

    @property
    def edges(self) -> tuple[int, int, int, int]:
        return (self.north, self.east, self.south, self.west)

    def mirrored(self) -> "Tile":
        """Reflection across the SW-NE diagonal."""
        return Tile(self.id, self.east, self.north, self.west, self.south)


@dataclass(frozen=True)
class Tileset:
    color_count: int
    tiles: tuple[Tile, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.color_count <= 0:
            raise FormatError("color count must be positive")
        tiles = tuple(self.tiles)
        object.__setattr__(self, "tiles", tiles)
        index = {}
        for t in tiles:
            if t.id in index:
                raise FormatError(f"duplicate tile id {t.id}")
            for c in t.edges:
                if not 0 <= c < self.color_count:
                    raise FormatError(f"tile {t.id}: color {c} out of range")
            index[t.id] = t
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[Tile]:
        return iter(self.tiles)

    def __contains__(self, tid) -> bool:
        return tid in self._index

    def __getitem__(self, tid: int) -> Tile:
        try:
            return self._index[tid]
        except KeyError:
            raise FormatError(f"unknown tile id {tid}") from None

    @property
    def ids(self) -> list[int]:
        return [t.id for t in self.tiles]

    def subset(self, ids: Iterable[int]) -> "Tileset":
        keep = set(ids)
        return Tileset(self.color_count, tuple(t for t in self.tiles if t.id in keep))

    # -- text format v1 -------------------------------------------------
    def to_text(self) -> str:
        lines = ["wang-tileset v1", f"colors {self.color_count}"]
        lines += [f"tile {t.id} {t.north} {t.east} {t.south} {t.west}" for t in self.tiles]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Tileset":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].strip() != "wang-tileset v1":
            raise FormatError("missing 'wang-tileset v1' header")
        head = lines[1].split() if len(lines) > 1 else []
        if len(head) != 2 or head[0] != "colors":
            raise FormatError("expected 'colors <k>'")
        tiles = []
        for ln in lines[2:]:
            parts = ln.split()
            if len(parts) != 6 or parts[0] != "tile":
                raise FormatError(f"bad tile line: {ln!r}")
            tiles.append(Tile(*map(int, parts[1:])))
        return cls(int(head[1]), tuple(tiles))


@dataclass(frozen=True)
class Window:
    """Rectangular partial coloring; ``cells[y][x]`` with row 0 at the bottom."""

    width: int
    height: int
    cells: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.height or any(len(r) != self.width for r in cells):
            raise FormatError("cell grid does not match window dimensions")

    @classmethod
    def blank(cls, width: int, height: int) -> "Window":
        return cls(width, height, tuple((None,) * width for _ in range(height)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | None]]) -> "Window":
        """Build from rows listed bottom row first."""
        h = len(rows)
        w = len(rows[0]) if h else 0
        return cls(w, h, tuple(tuple(r) for r in rows))

    @classmethod
    def from_function(cls, width: int, height: int, fn) -> "Window":
        return cls(width, height, tuple(tuple(fn(x, y) for x in range(width)) for y in range(height)))

    @property
    def is_empty(self) -> bool:
        return self.width == 0 or self.height == 0

    def __getitem__(self, xy: tuple[int, int]) -> int | None:
        x, y = xy
        return self.cells[y][x]

    def get(self, x: int, y: int, default=None):
        if 0 <= x < self.width and 0 <= y < self.height:
            return self.cells[y][x]
        return default

    def positions(self) -> Iterator[tuple[int, int]]:
        for y in range(self.height):
            for x in range(self.width):
                yield x, y

    def crop(self, x0: int, y0: int, width: int, height: int) -> "Window":
        """Sub-window; parts outside self become unconstrained."""
        return Window.from_function(width, height, lambda x, y: self.get(x0 + x, y0 + y))

    def with_cell(self, x: int, y: int, value: int | None) -> "Window":
        rows = [list(r) for r in self.cells]
        rows[y][x] = value
        return Window.from_rows(rows)

    def map(self, fn) -> "Window":
        return Window.from_function(
            self.width, self.height, lambda x, y: None if self[x, y] is None else fn(self[x, y])
        )

    def constrained_count(self) -> int:
        return sum(c is not None for row in self.cells for c in row)

    # -- text format v1 -------------------------------------------------
    def to_text(self) -> str:
        lines = [f"window {self.width} {self.height}"]
        for y in reversed(range(self.height)):
            lines.append(" ".join("." if c is None else str(c) for c in self.cells[y]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Window":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise FormatError("empty window text")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "window":
            raise FormatError("expected 'window <width> <height>'")
        width, height = int(head[1]), int(head[2])
        body = lines[1:]
        if len(body) != height:
            raise FormatError(f"expected {height} rows, got {len(body)}")
        rows = []
        for ln in reversed(body):
            parts = ln.split()
            if len(parts) != width:
                raise FormatError(f"row has {len(parts)} cells, expected {width}")
            rows.append(tuple(None if p == "." else int(p) for p in parts))
        return cls(width, height, tuple(rows))


EMPTY = Window(0, 0, ())


def _check_ids(ts: Tileset, w: Window) -> None:
    for row in w.cells:
        for c in row:
            if c is not None and c not in ts:
                raise FormatError(f"window references unknown tile id {c}")


def validate_window(ts: Tileset, w: Window) -> bool:
    """True iff all adjacent constrained cells have matching edges."""
    _check_ids(ts, w)
    for y in range(w.height):
        row = w.cells[y]
        above = w.cells[y + 1] if y + 1 < w.height else None
        for x, c in enumerate(row):
            if c is None:
                continue
            t = ts[c]
            if x + 1 < w.width and row[x + 1] is not None and t.east != ts[row[x + 1]].west:
                return False
            if above is not None and above[x] is not None and t.north != ts[above[x]].south:
                return False
    return True


def occurrences(host: Window, pattern: Window) -> list[tuple[int, int]]:
    """Offsets z with pattern (constrained cells only) equal to host at z + support."""
    if pattern.width > host.width or pattern.height > host.height:
        return []
    fixed = [(x, y, c) for (x, y) in pattern.positions() if (c := pattern[x, y]) is not None]
    hits = []
    for oy in range(host.height - pattern.height + 1):
        for ox in range(host.width - pattern.width + 1):
            if all(host.cells[oy + y][ox + x] == c for x, y, c in fixed):
                hits.append((ox, oy))
    return hits


def shift_window(w: Window, v: tuple[int, int]) -> Window:
    """Translate content by v, cropping to the overlap with the original support.

    The result's origin sits at the lower-left of the overlap; returns EMPTY when
    the shifted copy no longer meets the support.
    """
    vx, vy = v
    x0, x1 = max(0, vx), min(w.width, w.width + vx)
    y0, y1 = max(0, vy), min(w.height, w.height + vy)
    if x1 <= x0 or y1 <= y0:
        return EMPTY
    return Window.from_function(x1 - x0, y1 - y0, lambda x, y: w[x + x0 - vx, y + y0 - vy])


@dataclass(frozen=True)
class ProductTileset:
    """Result of superimposing two tilesets; ``pairs[id] = (id1, id2)``."""

    tileset: Tileset
    pairs: dict
    left: Tileset
    right: Tileset

    def project(self, w: Window, side: int) -> Window:
        return w.map(lambda t: self.pairs[t][side])

    def id_of(self, a: int, b: int) -> int:
        return self._lookup[(a, b)]

    @property
    def _lookup(self) -> dict:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = {v: k for k, v in self.pairs.items()}
            object.__setattr__(self, "_lookup_cache", cached)
        return cached


def superimpose(ts1: Tileset, ts2: Tileset, paired: list[tuple[int, int]]) -> ProductTileset:
    """Product tileset in which paired tiles only ever sit on top of each other.

    Unpaired tiles of both factors combine freely; each listed pair contributes
    exactly one product tile. Product ids are dense, in (id1, id2) order.
    """
    for a, b in paired:
        ts1[a], ts2[b]  # raises FormatError on unknown ids
    left_paired = {a for a, _ in paired}
    right_paired = {b for _, b in paired}
    combos = [(a, b) for a in ts1.ids for b in ts2.ids if a not in left_paired and b not in right_paired]
    combos += list(paired)
    combos.sort(key=lambda ab: (ts1.ids.index(ab[0]), ts2.ids.index(ab[1])))
    k2 = ts2.color_count
    tiles, pairs = [], {}
    for i, (a, b) in enumerate(combos):
        t1, t2 = ts1[a], ts2[b]
        tiles.append(Tile(i, *(c1 * k2 + c2 for c1, c2 in zip(t1.edges, t2.edges))))
        pairs[i] = (a, b)
    return ProductTileset(Tileset(ts1.color_count * k2, tuple(tiles)), pairs, ts1, ts2)
