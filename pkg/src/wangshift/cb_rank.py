"""Finite-order Cantor-Bendixson evidence over block languages.

Nothing here computes a true rank. A derivative chain removes, level by
level, the blocks whose host window has a single filling inside the
surviving language; its length is a lower-bound witness at the chosen order.
A rank-1 certificate checks that a pattern pins every window of a given size
around it to a translate of one configuration.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from . import sparse_grid as sg
from .core import ProductTileset, Tileset, Window
from .solver import DEFAULT_BUDGET, ResourceLimit, _Search, enumerate_language, isolated_patterns


@dataclass
class DerivativeReport:
    order: int
    radius: int
    levels: list = field(default_factory=list)  # (level index, surviving block count)
    certificates: list = field(default_factory=list)  # (block, isolating pattern, level)
    fixpoint: bool = False

    @property
    def sizes(self) -> list[int]:
        return [s for _, s in self.levels]

    @property
    def chain_length(self):
        """Index of the last non-empty level when the chain runs out, else None.

        This is the largest point rank seen at this order, so it adds up
        under products."""
        if not self.levels or self.levels[-1][1] != 0:
            return None
        return len(self.levels) - 2


def derivative_chain(ts: Tileset, n: int, radius: int, maxLevels: int = 8,
                     budget: int = DEFAULT_BUDGET) -> DerivativeReport:
    if n <= 0 or radius <= 0 or maxLevels <= 0:
        raise ValueError("order, radius and maxLevels must be positive")
    rep = DerivativeReport(n, radius)
    lang = enumerate_language(ts, n, radius, budget=budget)
    rep.levels.append((0, len(lang)))
    for level in range(maxLevels):
        hits = isolated_patterns(lang, radius, ts, budget=budget)
        if not hits:
            rep.fixpoint = True
            break
        gone = {b.cells for b, _ in hits}
        rep.certificates += [(b, q, level) for b, q in hits]
        lang = [b for b in lang if b.cells not in gone]
        rep.levels.append((level + 1, len(lang)))
        if not lang:
            rep.fixpoint = True
            break
    return rep


# -- report text format -------------------------------------------------

def report_to_text(rep: DerivativeReport, pattern_files=None) -> str:
    """``pattern_files[i]`` names the file holding certificate i's pattern."""
    out = ["cb-report v1", f"order {rep.order} radius {rep.radius}"]
    out += [f"level {i} size {s}" for i, s in rep.levels]
    for i, (_, _, level) in enumerate(rep.certificates):
        name = pattern_files[i] if pattern_files else f"cert-{i}.win"
        out.append(f"certificate {level} {name}")
    return "\n".join(out) + "\n"


def write_report(rep: DerivativeReport, path) -> Path:
    """Write the report and one window file per certificate beside it."""
    path = Path(path)
    names = []
    for i, (_, q, level) in enumerate(rep.certificates):
        name = f"{path.stem}-cert{i}.win"
        (path.parent / name).write_text(q.to_text())
        names.append(name)
    path.write_text(report_to_text(rep, names))
    return path


def parse_report(text: str, base=None) -> DerivativeReport:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "cb-report v1":
        raise ValueError("expected header 'cb-report v1'")
    head = lines[1].split()
    if len(head) != 4 or head[0] != "order" or head[2] != "radius":
        raise ValueError(f"bad order line: {lines[1]}")
    rep = DerivativeReport(int(head[1]), int(head[3]))
    for ln in lines[2:]:
        word = ln.split()
        if word[0] == "level":
            rep.levels.append((int(word[1]), int(word[3])))
        elif word[0] == "certificate":
            q = Window.from_text((Path(base) / word[2]).read_text()) if base is not None else None
            rep.certificates.append((q, q, int(word[1])))
        else:
            raise ValueError(f"unknown line: {ln}")
    return rep


# -- rank-1 certificates ------------------------------------------------

def _crops(w: Window, size: int) -> set:
    return {w.crop(x, y, size, size).cells
            for x in range(w.width - size + 1) for y in range(w.height - size + 1)}


def _placed(pattern: Window, size: int, ox: int, oy: int) -> Window:
    return Window.from_function(
        size, size, lambda x, y: pattern.get(x - ox, y - oy) if 0 <= x - ox < pattern.width
        and 0 <= y - oy < pattern.height else None)


def _completions(ts: Tileset, w: Window, budget: int):
    s = _Search(ts, w, None, budget)
    doms = s.initial()
    if doms is None:
        return
    for sol in s.solutions(doms):
        yield s.to_window(sol)


def _product_completions(tp: ProductTileset, w: Window, budget: int):
    """Completions over a product, found factor by factor and then paired."""
    def side(i):
        return w.map(lambda c: None if c is None else tp.pairs[c][i])

    rights = list(_completions(tp.right, side(1), budget))
    for a in _completions(tp.left, side(0), budget):
        for b in rights:
            try:
                yield Window.from_function(w.width, w.height, lambda x, y: tp.id_of(a[x, y], b[x, y]))
            except KeyError:
                continue


def rank1_certificate(ts, configWindow: Window, pattern: Window, radius: int,
                      budget: int = DEFAULT_BUDGET) -> bool:
    """Does every valid radius x radius window containing pattern occur in
    configWindow? ``ts`` may be a ProductTileset, solved factor by factor."""
    if radius < max(pattern.width, pattern.height):
        raise ValueError("radius smaller than the pattern")
    seen = _crops(configWindow, radius)
    if not any(pattern.cells == configWindow.crop(x, y, pattern.width, pattern.height).cells
               for x in range(configWindow.width - pattern.width + 1)
               for y in range(configWindow.height - pattern.height + 1)):
        raise ValueError("pattern does not occur in configWindow")
    for ox in range(radius - pattern.width + 1):
        for oy in range(radius - pattern.height + 1):
            w = _placed(pattern, radius, ox, oy)
            if isinstance(ts, ProductTileset):
                sols = _product_completions(ts, w, budget)
            else:
                sols = _completions(ts, w, budget)
            for sol in sols:
                if sol.cells not in seen:
                    return False
    return True


# -- sofic projection ---------------------------------------------------

BLANK_SYMBOL = 0


def symbols(ge) -> tuple:
    """Output alphabet of sofic_project: index 0 is the blank."""
    return (".",) + tuple(ge.machine.alphabet)


def sofic_project(ge, w: Window) -> Window:
    """Keep the tape symbol at every computation cell, blank elsewhere."""
    alpha = ge.machine.alphabet

    def proj(c):
        if c is None:
            return None
        content = ge.point_tile.get(ge.split(c)[1])
        return BLANK_SYMBOL if content is None else 1 + alpha.index(content.symbol)

    return w.map(proj)


def _grid_points(bound: int) -> list:
    # the corner starts the lines but hosts no tape cell
    return [q for q in sg.grid_coords(bound) if q != (0, 0)]


def classify_projection(p: Window) -> str | None:
    """'blank', 'single', 'grid' (symbols exactly on a shifted sparse grid,
    corner excluded), or None for anything else."""
    marks = sorted((x, y) for x, y in p.positions() if p[x, y] not in (None, BLANK_SYMBOL))
    if not marks:
        return "blank"
    if len(marks) == 1:
        return "single"
    size = max(p.width, p.height)
    pts = _grid_points(sg.f(2 * (size + 2)))
    x0, y0 = marks[0]
    for gx, gy in pts:
        zx, zy = x0 - gx, y0 - gy
        inside = sorted((a + zx, b + zy) for a, b in pts
                        if 0 <= a + zx < p.width and 0 <= b + zy < p.height)
        if inside == marks:
            return "grid"
    return None


def _pinned_solution(ts: Tileset, k: int, rnd, budget: int, tries: int = 20):
    ids = [t.id for t in ts.tiles]
    for _ in range(tries):
        pins = {(rnd.randrange(k), rnd.randrange(k)): frozenset([rnd.choice(ids)])
                for _ in range(rnd.randint(1, 3))}
        s = _Search(ts, Window.blank(k, k), pins, budget)
        sol = s.first()
        if sol is not None:
            return s.to_window(sol)
    return None


def sample_windows(ge, k: int, count: int, seed: int = 0, budget: int = 10**6):
    """Valid k x k tau_M windows found by the solver from random pins.

    Each factor of tau is solved from one to three pinned tiles, the two
    answers are paired (skipped when the pairing is not a tau tile), and the
    machine layer is solved over the resulting roles. Yields at most count
    windows."""
    tp = sg.build_tau_product()
    rnd = random.Random(seed)
    for _ in range(count):
        a = _pinned_solution(tp.left, k, rnd, budget)
        b = _pinned_solution(tp.right, k, rnd, budget)
        if a is None or b is None:
            continue
        try:
            tw = Window.from_function(k, k, lambda x, y: tp.id_of(a[x, y], b[x, y]))
        except KeyError:
            continue
        allowed = {p: ge.by_role.get(ge.tau_role[tw[p]], frozenset()) for p in tw.positions()}
        s = _Search(ge.layer, Window.blank(k, k), allowed, budget)
        sol = s.first()
        if sol is None:
            continue
        lw = s.to_window(sol)
        yield Window.from_function(k, k, lambda x, y: ge.pair_id(tw[x, y], lw[x, y]))


__all__ = ["DerivativeReport", "derivative_chain", "report_to_text", "write_report", "parse_report",
           "rank1_certificate", "sofic_project", "symbols", "classify_projection", "sample_windows",
           "ResourceLimit"]
