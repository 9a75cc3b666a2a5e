"""Effectively closed classes embedded in the sparse grid.

A class is given by a decidable set of rejected prefixes. It is turned into
a machine that scans the oracle left to right and halts on a rejected
prefix; the machine runs on the grid intersections of beta (see
``lattice``), so tau_M is tau with a machine layer laid along its lines.

The machine layer is kept apart from tau: a tau_M tile is a pair (tau tile,
machine tile) whose roles agree, where the role of a tau tile says whether
a vertical line of T and a horizontal line of T' start, pass or end there.
Materialising every pair would cost millions of tiles, so ``GridEmbedding``
stores the two factors and the role relation.

Oracle layout: bit j rides tape cell j, i.e. the intersections (n, m) with
n - m = j; it first shows up at (2j, j) (cell 0 at the source (1, 1)), so a
k x k window with the corner at its origin reads d(k) = #{j : f(2j) < k}
bits, counting cell 0 once f(1) < k:

    k     3   6  15  28  45  66  91
    d(k)  1   2   3   4   5   6   7
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from . import lattice
from . import sparse_grid as sg
from .core import Tile, Tileset, Window
from .lattice import first_point
from .solver import DEFAULT_BUDGET, SolveRequest, _Search, solve
from .tm_compiler import BLANK, TuringMachineSpec, format_machine, parse_machine

MAX_STATES = 256
MAX_TILES = 200_000


class SpecError(ValueError):
    pass


class RejectedPrefix(ValueError):
    def __init__(self, prefix: str):
        super().__init__(f"prefix {prefix!r} is rejected")
        self.prefix = prefix


class Undetermined(Exception):
    """The window is too small to decide; enlarge it."""


IN_O = "InO"
UNDETERMINED = "undetermined"


# -- class presentations ----------------------------------------------------

@dataclass(frozen=True)
class Automaton:
    states: tuple
    initial: str
    reject: frozenset
    delta: dict  # (state, bit) -> state


@dataclass(frozen=True)
class PrefixClassSpec:
    kind: str  # badprefix | automaton | machine
    bad: tuple = ()
    automaton: Automaton | None = None
    machine: TuringMachineSpec | None = None
    fuel: int = 10_000

    def rejector(self, u: str) -> bool:
        """True when u or one of its prefixes is rejected."""
        if self.kind == "badprefix":
            return any(u.startswith(b) for b in self.bad)
        if self.kind == "automaton":
            a = self.automaton
            q = a.initial
            for ch in u:
                if q in a.reject:
                    return True
                q = a.delta.get((q, int(ch)))
                if q is None:
                    return True
            return q in a.reject
        return _machine_rejects(self.machine, u, self.fuel)

    def accepted(self, depth: int) -> list[str]:
        out = [""]
        for _ in range(depth):
            out = [u + b for u in out for b in "01" if not self.rejector(u + b)]
        return out if not self.rejector("") else []


def _machine_rejects(tm: TuringMachineSpec, u: str, fuel: int) -> bool:
    """Does the machine halt before reading past u? Cells left of the origin
    carry no oracle bit, so a machine reading there halts."""
    tape, q, h = {}, tm.initial_state, 0
    for _ in range(fuel):
        if h >= len(u):
            return False
        b = int(u[h]) if h >= 0 else None
        t = tm.transitions.get((q, tape.get(h, BLANK), b)) if b is not None else None
        if t is None:
            return True
        q, tape[h], m = t
        h += 1 if m == "R" else -1 if m == "L" else 0
    return False


def parse_automaton(text: str) -> Automaton:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "dfa v1":
        raise SpecError("expected header 'dfa v1'")
    states, initial, reject, delta = (), None, set(), {}
    for ln in lines[1:]:
        word, *rest = ln.split()
        if word == "states":
            states = tuple(rest)
        elif word == "initial":
            initial = rest[0]
        elif word == "reject":
            reject |= set(rest)
        elif word == "delta" and len(rest) == 4 and rest[2] == "->":
            delta[(rest[0], int(rest[1]))] = rest[3]
        else:
            raise SpecError(f"bad automaton line: {ln}")
    if initial not in states or not reject <= set(states):
        raise SpecError("automaton names unknown states")
    return Automaton(states, initial, frozenset(reject), delta)


def parse_spec(text: str, base: Path | str = ".") -> PrefixClassSpec:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "pi01 v1":
        raise SpecError("expected header 'pi01 v1'")
    bad, auto, tm = [], None, None
    for ln in lines[1:]:
        word, *rest = ln.split()
        if word == "badprefix" and len(rest) == 1 and set(rest[0]) <= set("01"):
            bad.append(rest[0])
        elif word == "badprefix" and not rest:
            bad.append("")
        elif word == "automaton" and len(rest) == 1:
            auto = parse_automaton((Path(base) / rest[0]).read_text())
        elif word == "machine" and len(rest) == 1:
            tm = parse_machine((Path(base) / rest[0]).read_text())
        else:
            raise SpecError(f"bad line: {ln}")
    if sum(x is not None and x != [] for x in (bad, auto, tm)) != 1:
        raise SpecError("give exactly one presentation")
    if auto is not None:
        return PrefixClassSpec("automaton", automaton=auto)
    if tm is not None:
        if not tm.oracle_track:
            raise SpecError("machine presentation needs the oracle track")
        return PrefixClassSpec("machine", machine=tm)
    return PrefixClassSpec("badprefix", bad=tuple(sorted(set(bad))))


def to_machine(spec: PrefixClassSpec) -> TuringMachineSpec:
    """Scanning machine: reads cell after cell, halts on a rejected prefix."""
    if spec.kind == "machine":
        return spec.machine
    delta = {}
    if spec.kind == "badprefix":
        depth = max((len(b) for b in spec.bad), default=0)
        states, todo = [], [""]
        if spec.rejector(""):
            todo = []
        while todo:
            p = todo.pop()
            states.append("p" + p)
            if p == "*":
                # past the longest rejected prefix everything is accepted
                for b in (0, 1):
                    delta[("p*", BLANK, b)] = ("p*", BLANK, "R")
                continue
            for b in "01":
                u = p + b
                if spec.rejector(u):
                    continue
                nxt = u if len(u) < depth else "*"
                delta[("p" + p, BLANK, int(b))] = ("p" + nxt, BLANK, "R")
                if "p" + nxt not in states and nxt not in todo:
                    todo.append(nxt)
        states = sorted(set(states) | {"p"})
        initial = "p"
    else:
        a = spec.automaton
        states, initial = list(a.states), a.initial
        for (q, b), q2 in a.delta.items():
            if q not in a.reject and q2 not in a.reject:
                delta[(q, BLANK, b)] = (q2, BLANK, "R")
    if len(states) > MAX_STATES:
        raise SpecError(f"machine needs {len(states)} states, budget is {MAX_STATES}")
    return TuringMachineSpec(tuple(states), initial, (BLANK,), True, delta)


# -- embedding ----------------------------------------------------------------

def cell_of(n: int, m: int) -> tuple[int, int]:
    """Intersection (n, m) -> (tape cell, lattice time)."""
    return n - m, n + m


def point_of(i: int, t: int) -> tuple[int, int]:
    return (t + i) // 2, (t - i) // 2


def depth(k: int) -> int:
    """d(k): oracle bits on the tape cells met by a k x k corner window."""
    j = 0
    while sg.f(first_point(j)[0]) < k:
        j += 1
    return j


def _line_state(a: str, b: str) -> str:
    if a.startswith("vl") and b.startswith("vl"):
        return "pass"
    if a.startswith("vl"):
        return "start"
    if b.startswith("vl"):
        return "end"
    return "none"


@lru_cache(maxsize=1)
def tau_roles() -> dict:
    """tau id -> (vertical role, horizontal role)."""
    tp = sg.build_tau_product()
    T, Tm = sg.build_T().labels, sg.build_T_mirror().labels
    out = {}
    for tid, (a, b) in tp.pairs.items():
        n, _, s, _ = T[a]
        _, e, _, w = Tm[b]
        out[tid] = (_line_state(n, s), _line_state(e, w))
    return out


def _closure(delta, initial: str):
    east, north = {None}, {None}
    tiles = {}
    tried = set()
    grew = True
    while grew:
        grew = False
        for w in list(east):
            for s in list(north):
                if (w, s) in tried:
                    continue
                tried.add((w, s))
                fresh = (w is None or w.relay is None) and (s is None or s.relay is None)
                for bit in ((0, 1, None) if fresh else (None,)):
                    r = lattice.point_rule(delta, initial, w, s, bit)
                    if r is None:
                        continue
                    tiles[(w, s, bit)] = r
                    if len(tiles) > MAX_TILES:
                        raise SpecError("machine layer exceeds the tile budget")
                    for pool, msg in ((east, r[1]), (north, r[2])):
                        if msg not in pool:
                            pool.add(msg)
                            grew = True
    return tiles, east, north


BLANK_SIDE = "_"


@dataclass
class GridEmbedding:
    machine: TuringMachineSpec
    tau: Tileset
    layer: Tileset  # machine tiles
    layer_role: dict  # machine tile id -> (vertical role, horizontal role)
    tau_role: dict  # tau id -> (vertical role, horizontal role)
    point_tile: dict  # machine tile id -> Content at an intersection
    palette: tuple
    by_role: dict = field(default_factory=dict)

    @property
    def base(self) -> int:
        return len(self.layer.tiles) + 1

    def pair_id(self, tau_id: int, layer_id: int) -> int:
        return tau_id * self.base + layer_id

    def split(self, pid: int) -> tuple[int, int]:
        return divmod(pid, self.base)

    def compatible(self, tau_id: int, layer_id: int) -> bool:
        return self.tau_role[tau_id] == self.layer_role[layer_id]

    def tau_M_size(self) -> int:
        counts = {}
        for r in self.layer_role.values():
            counts[r] = counts.get(r, 0) + 1
        return sum(counts.get(r, 0) for r in self.tau_role.values())

    def delta(self, q, a, b):
        return self.machine.step(q, a, b) if b is not None else None

    def validate(self, w: Window) -> bool:
        """Is w a valid tau_M window: both layers valid, roles compatible?"""
        from .core import validate_window
        ids = {t.id for t in self.layer.tiles}
        taus, layer = {}, {}
        for x, y in w.positions():
            c = w[x, y]
            if c is None:
                continue
            a, m = self.split(c)
            if m not in ids or a not in self.tau_role or not self.compatible(a, m):
                return False
            taus[(x, y)], layer[(x, y)] = a, m
        tw = Window.from_function(w.width, w.height, lambda x, y: taus.get((x, y)))
        lw = Window.from_function(w.width, w.height, lambda x, y: layer.get((x, y)))
        return validate_window(self.tau, tw) and validate_window(self.layer, lw)


def build_tau_M(spec: PrefixClassSpec | TuringMachineSpec) -> GridEmbedding:
    tm = spec if isinstance(spec, TuringMachineSpec) else to_machine(spec)
    key = format_machine(tm)
    if key not in _BUILT:
        _BUILT[key] = _build(tm)
    return _BUILT[key]


_BUILT: dict = {}


def _build(tm: TuringMachineSpec) -> GridEmbedding:
    def delta(q, a, b):
        return tm.step(q, a, b) if b is not None else None

    tiles, east, north = _closure(delta, tm.initial_state)
    labels = []  # (N, E, S, W), role, content
    for (w, s, bit), (c, e, n) in tiles.items():
        labels.append(((n, e, s, w), ("pass", "pass"), c))
    roles = set(tau_roles().values())
    for v, h in sorted(roles):
        if (v, h) == ("pass", "pass") or (v, h) == ("end", "end"):
            continue
        # a line passing a crossing without an intersection carries no message
        vs = _side_options(v, {None} if v == "pass" and h != "none" else north)
        hs = _side_options(h, {None} if h == "pass" and v != "none" else east)
        for nn, ss in vs:
            for ee, ww in hs:
                labels.append(((nn, ee, ss, ww), (v, h), None))
    palette = sorted({c for lab, _, _ in labels for c in lab}, key=_color_key)
    idx = {c: i for i, c in enumerate(palette)}
    out, role_of, content = [], {}, {}
    for i, (lab, role, c) in enumerate(labels, start=1):
        out.append(Tile(i, *(idx[x] for x in lab)))
        role_of[i] = role
        if c is not None:
            content[i] = c
    by_role = {}
    for i, r in role_of.items():
        by_role.setdefault(r, []).append(i)
    return GridEmbedding(tm, sg.build_tau(), Tileset(len(palette), tuple(out)), role_of,
                         tau_roles(), content, tuple(palette), {r: frozenset(v) for r, v in by_role.items()})


def _side_options(state: str, msgs):
    """(out, in) color pairs along one line direction."""
    if state == "none":
        return [(BLANK_SIDE, BLANK_SIDE)]
    if state == "start":
        return [(None, BLANK_SIDE)]
    if state == "end":
        return [(BLANK_SIDE, m) for m in msgs]
    return [(m, m) for m in msgs]


def _color_key(c):
    return (c is not None and c != BLANK_SIDE, repr(c))


# -- windows ----------------------------------------------------------------

def window_constraints(ge: GridEmbedding, z, k: int, prefix: str = ""):
    """Allowed machine tiles per cell when tau is pinned to beta with the corner at z."""
    beta = sg.beta_window(-z[0], -z[1], k, k)
    allowed = {}
    for x, y in beta.positions():
        allowed[(x, y)] = ge.by_role.get(ge.tau_role[beta[x, y]], frozenset())
    for j, ch in enumerate(prefix):
        n, m = first_point(j)
        p = (sg.f(n) + z[0], sg.f(m) + z[1])
        if p not in allowed:
            raise ValueError(f"oracle bit {j} lies outside the window")
        allowed[p] = frozenset(t for t in allowed[p] if ge.point_tile[t].bit == int(ch))
    return beta, allowed


def origin_constrained_solve(ge: GridEmbedding, k: int, prefix: str = "",
                             budget: int = DEFAULT_BUDGET) -> bool:
    """Is there a valid k x k tau_M window with the corner at (0, 0) and the
    given oracle prefix? The tau layer of such a window is the beta window
    (corner rigidity), so only the machine layer is searched."""
    _, allowed = window_constraints(ge, (0, 0), k, prefix)
    return solve(SolveRequest(ge.layer, Window.blank(k, k), "decide", budget=budget, allowed=allowed))


def prefix_set(ge: GridEmbedding, k: int, budget: int = DEFAULT_BUDGET) -> set[str]:
    """Oracle prefixes of length d(k) found in origin-constrained k-windows."""
    _, allowed = window_constraints(ge, (0, 0), k)
    s = _Search(ge.layer, Window.blank(k, k), allowed, budget)
    d = depth(k)
    out = set()
    for sol in s.solutions():
        w = s.to_window(sol)
        out.add(_read_bits(ge, w, (0, 0), d))
    return out


def _read_bits(ge: GridEmbedding, layer: Window, z, d: int) -> str:
    bits = []
    for j in range(d):
        n, m = first_point(j)
        bits.append(str(ge.point_tile[layer[sg.f(n) + z[0], sg.f(m) + z[1]]].bit))
    return "".join(bits)


def _span(offset: int, k: int) -> int:
    """Largest n with f(n) + offset < k, or -1."""
    n = -1
    while sg.f(n + 1) + offset < k:
        n += 1
    return n


def encode(ge: GridEmbedding, spec: PrefixClassSpec | None, x: str, z, k: int) -> Window:
    """k x k window over tau_M of the beta tiling with its corner at z and
    oracle x, the window covering [0, k) x [0, k)."""
    nmax, mmax = _span(z[0], k), _span(z[1], k)
    need = 0
    while first_point(need)[0] <= nmax and first_point(need)[1] <= mmax:
        need += 1
    if len(x) < need:
        raise ValueError(f"window reads {need} oracle bits, only {len(x)} given")
    if spec is not None:
        for j in range(len(x) + 1):
            if spec.rejector(x[:j]):
                raise RejectedPrefix(x[:j])
    try:
        contents = lattice.run(ge.delta, ge.machine.initial_state, [int(c) for c in x], nmax, mmax)
    except lattice.Halt as h:
        raise RejectedPrefix(x) from h
    beta, allowed = window_constraints(ge, z, k)
    # pin the intersections, then let the solver route the messages
    tile_of = {}
    for t, c in ge.point_tile.items():
        tile_of.setdefault(c, []).append(t)
    for (n, m), c in contents.items():
        p = (sg.f(n) + z[0], sg.f(m) + z[1])
        if p in allowed:
            allowed[p] = allowed[p] & frozenset(tile_of.get(c, ()))
    s = _Search(ge.layer, Window.blank(k, k), allowed, DEFAULT_BUDGET)
    sol = s.first()
    if sol is None:
        raise RejectedPrefix(x)
    layer = s.to_window(sol)
    return Window.from_function(k, k, lambda a, b: ge.pair_id(beta[a, b], layer[a, b]))


def _corner_pair(ge: GridEmbedding):
    tp = sg.build_tau_product()
    return tp.id_of(sg.CORNER, sg.CORNER)


def decode(w: Window, ge: GridEmbedding):
    """(oracle bits read in w, corner position) or IN_O; raises Undetermined."""
    corner = _corner_pair(ge)
    spots = [(x, y) for x, y in w.positions() if w[x, y] is not None and ge.split(w[x, y])[0] == corner]
    if len(spots) == 1:
        z = spots[0]
        bits = []
        j = 0
        while True:
            n, m = first_point(j)
            p = (sg.f(n) + z[0], sg.f(m) + z[1])
            if not (0 <= p[0] < w.width and 0 <= p[1] < w.height) or w[p] is None:
                break
            bits.append(str(ge.point_tile[ge.split(w[p])[1]].bit))
            j += 1
        return "".join(bits), z
    if _lines(w, ge) <= (1, 1):
        return IN_O
    raise Undetermined("two grid lines but no corner in view; enlarge the window")


def _lines(w: Window, ge: GridEmbedding) -> tuple[int, int]:
    """Vertical lines of T crossing the whole window height, horizontal lines
    of T' crossing its whole width."""
    roles = ge.tau_role

    def vertical(x):
        return all(w[x, y] is not None and roles[ge.split(w[x, y])[0]][0] != "none"
                   for y in range(w.height))

    def horizontal(y):
        return all(w[x, y] is not None and roles[ge.split(w[x, y])[0]][1] != "none"
                   for x in range(w.width))

    return (sum(vertical(x) for x in range(w.width)), sum(horizontal(y) for y in range(w.height)))


def computation_cells(w: Window, ge: GridEmbedding) -> list[tuple[int, int]]:
    return sorted((x, y) for x, y in w.positions()
                  if w[x, y] is not None and ge.tau_role[ge.split(w[x, y])[0]] == ("pass", "pass"))


def is_in_O(w: Window, ge: GridEmbedding, radius: int, budget: int = DEFAULT_BUDGET):
    """True if no radius-r extension of the tau layer of w holds two
    computation cells, False if w itself shows beta structure (the corner or
    two computation cells), UNDETERMINED otherwise. A radius-0 neighbourhood
    carries no certificate."""
    corner = _corner_pair(ge)
    cells = computation_cells(w, ge)
    if len(cells) >= 2 or any(w[p] is not None and ge.split(w[p])[0] == corner for p in w.positions()):
        return False
    if radius <= 0:
        return UNDETERMINED
    tau = sg.build_tau()
    big = Window.from_function(w.width + 2 * radius, w.height + 2 * radius,
                               lambda x, y: _tau_of(ge, w.get(x - radius, y - radius)))
    if _Search(tau, big, None, budget).first() is None:
        return True
    comp = frozenset(t for t, r in ge.tau_role.items() if r == ("pass", "pass"))
    spots = [(x, y) for x, y in big.positions() if big[x, y] is None
             and _Search(tau, big, {(x, y): comp}, budget).first() is not None]
    if cells and spots:
        return UNDETERMINED
    for i, p in enumerate(spots):
        for q in spots[i + 1:]:
            if _Search(tau, big, {p: comp, q: comp}, budget).first() is not None:
                return UNDETERMINED
    return True


def _tau_of(ge, c):
    return None if c is None else ge.split(c)[0]
