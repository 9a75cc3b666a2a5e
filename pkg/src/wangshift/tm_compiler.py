"""Compile a Turing machine with an oracle track into Wang tiles.

Layout of a compiled window, origin tile at (0, 0):

* column 0 above the origin is a wall;
* row 0 is the start row, tape cell i sits in column i + 1;
* row t >= 1 turns configuration t-1 (south edges) into configuration t
  (north edges), so a k-row window encodes d(k) = k - 1 steps.

A vertical color holds one tape cell: (symbol, state or None, oracle bit,
leftmost flag, virgin flag). Horizontal colors carry the head between
neighbours. A missing transition has no tile, so a halting run cannot be
continued upward. Cells never visited by the head are virgin; a head may
only enter a cell from the right when that cell has been visited, which
keeps heads from drifting in across the right border of a window.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .core import Tile, Tileset, Window
from .solver import DEFAULT_BUDGET, SolveRequest, solve

BLANK = "B"
MAX_STATES = 16
MAX_SYMBOLS = 8
# a start row plus one step row; an immediately halting machine has no window this tall
START_ROW_HEIGHT = 2


class MachineError(ValueError):
    pass


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class TuringMachineSpec:
    states: tuple
    initial_state: str
    alphabet: tuple  # blank first
    oracle_track: bool = False
    # (state, symbol, bit or None) -> (state', symbol', move)
    transitions: dict = field(default_factory=dict)

    def step(self, state, symbol, bit):
        key = (state, symbol, bit if self.oracle_track else None)
        return self.transitions.get(key)


def steps_in_window(k: int) -> int:
    """d(k): number of machine steps encoded by a k-row window."""
    return max(0, k - 1)


def validate(tm: TuringMachineSpec) -> None:
    if len(tm.states) > MAX_STATES or len(tm.alphabet) > MAX_SYMBOLS:
        raise MachineError(f"at most {MAX_STATES} states and {MAX_SYMBOLS} symbols")
    if not tm.alphabet or tm.alphabet[0] != BLANK:
        raise MachineError("alphabet must list the blank B first")
    if tm.initial_state not in tm.states:
        raise MachineError(f"unknown initial state {tm.initial_state}")
    for (q, a, b), (q2, a2, m) in tm.transitions.items():
        if q not in tm.states or q2 not in tm.states:
            raise MachineError(f"unknown state in transition from {q}")
        if a not in tm.alphabet or a2 not in tm.alphabet:
            raise MachineError(f"unknown symbol in transition from {q}")
        if m not in ("L", "R", "N"):
            raise MachineError(f"bad move {m}")
        if tm.oracle_track and b not in (0, 1):
            raise MachineError("oracle machines read a bit in every transition")
        if not tm.oracle_track and b is not None:
            raise MachineError("transition reads an oracle bit but the track is off")


# -- text format ------------------------------------------------------------

def parse_machine(text: str) -> TuringMachineSpec:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "tm v1":
        raise MachineError("expected header 'tm v1'")
    states, initial, alphabet, oracle, delta = (), None, (), False, {}
    for ln in lines[1:]:
        word, *rest = ln.split()
        if word == "states":
            states = tuple(rest)
        elif word == "initial":
            initial = rest[0] if rest else None
        elif word == "alphabet":
            alphabet = tuple(rest)
        elif word == "oracle":
            oracle = rest == ["on"]
        elif word == "delta":
            if "->" not in rest:
                raise MachineError(f"bad transition line: {ln}")
            i = rest.index("->")
            lhs, rhs = rest[:i], rest[i + 1:]
            if len(rhs) != 3 or len(lhs) not in (2, 3):
                raise MachineError(f"bad transition line: {ln}")
            bit = int(lhs[2]) if len(lhs) == 3 else None
            key = (lhs[0], lhs[1], bit)
            if key in delta:
                raise MachineError(f"duplicate transition: {ln}")
            delta[key] = (rhs[0], rhs[1], rhs[2])
        else:
            raise MachineError(f"unknown line: {ln}")
    tm = TuringMachineSpec(states, initial, alphabet, oracle, delta)
    validate(tm)
    return tm


def format_machine(tm: TuringMachineSpec) -> str:
    out = ["tm v1", "states " + " ".join(tm.states), "initial " + tm.initial_state,
           "alphabet " + " ".join(tm.alphabet), "oracle " + ("on" if tm.oracle_track else "off")]
    for (q, a, b), (q2, a2, m) in sorted(tm.transitions.items(), key=str):
        lhs = f"{q} {a}" + (f" {b}" if b is not None else "")
        out.append(f"delta {lhs} -> {q2} {a2} {m}")
    return "\n".join(out) + "\n"


# -- reference simulator ----------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    state: str
    head: int
    tape: tuple  # symbols of cells 0 .. len-1
    oracle: tuple  # bits of the same cells (empty without a track)


def simulate(tm: TuringMachineSpec, oracle, steps: int, width: int) -> list[Configuration]:
    """Configurations 0..steps (fewer if the machine halts), tape cut to width
    cells. Moving left from cell 0 leaves the head in place."""
    bits = tuple(oracle[:width]) if tm.oracle_track else ()
    tape = [BLANK] * max(width, steps + 1)
    q, h = tm.initial_state, 0
    trace = [Configuration(q, h, tuple(tape[:width]), bits)]
    for _ in range(steps):
        b = oracle[h] if tm.oracle_track else None
        move = tm.step(q, tape[h], b)
        if move is None:
            break
        q, tape[h], m = move
        h = h + 1 if m == "R" else max(0, h - 1) if m == "L" else h
        trace.append(Configuration(q, h, tuple(tape[:width]), bits))
    return trace


def runs_at_least(tm: TuringMachineSpec, oracle, steps: int) -> bool:
    return len(simulate(tm, oracle, steps, 1)) == steps + 1


# -- compiler ---------------------------------------------------------------

@dataclass(frozen=True)
class CompiledTileset:
    tileset: Tileset
    origin_tile_id: int
    oracle_color_of: dict  # bit -> list of vertical colors carrying it
    traceability: dict  # tile id -> role tag
    machine: TuringMachineSpec
    cell_of: dict  # vertical color -> (symbol, state, bit, leftmost, virgin)
    palette: tuple


ROLE_TAGS = ("head-move", "tape-copy", "start-row", "boundary")


def compile(tm: TuringMachineSpec) -> CompiledTileset:
    validate(tm)
    bits = (0, 1) if tm.oracle_track else (None,)
    labels = []  # (N, E, S, W, role)

    def cell(a, q, b, left, virgin):
        return ("c", a, q, b, left, virgin)

    origin = ("wall", "s1", "start", "none")
    labels.append(origin + ("boundary",))
    labels.append(("wall", "wallE", "wall", "none", "boundary"))
    for b in bits:
        labels.append((cell(BLANK, tm.initial_state, b, True, False), "s", "start", "s1", "start-row"))
        labels.append((cell(BLANK, None, b, False, True), "s", "start", "s", "start-row"))

    def west_of(left, msg):
        return "wallE" if left else msg

    for a, b, left, virgin in product(tm.alphabet, bits, (True, False), (True, False)):
        if left and virgin:
            continue
        # the cell keeps its content
        labels.append((cell(a, None, b, left, virgin), "0", cell(a, None, b, left, virgin),
                       west_of(left, "0"), "tape-copy"))
        for q in tm.states:
            # the head arrives from the west or (into visited cells) from the east
            if not left:
                labels.append((cell(a, q, b, left, False), "0", cell(a, None, b, left, virgin),
                               "R" + q, "head-move"))
            if not virgin:
                labels.append((cell(a, q, b, left, False), "L" + q, cell(a, None, b, left, virgin),
                               west_of(left, "0"), "head-move"))
            if virgin:
                continue
            mv = tm.step(q, a, b)
            if mv is None:
                continue
            q2, a2, m = mv
            if m == "N" or (m == "L" and left):
                labels.append((cell(a2, q2, b, left, False), "0", cell(a, q, b, left, False),
                               west_of(left, "0"), "head-move"))
            elif m == "R":
                labels.append((cell(a2, None, b, left, False), "R" + q2, cell(a, q, b, left, False),
                               west_of(left, "0"), "head-move"))
            else:
                labels.append((cell(a2, None, b, left, False), "0", cell(a, q, b, left, False),
                               "L" + q2, "head-move"))
    labels = list(dict.fromkeys(labels))
    palette = sorted({c for lab in labels for c in lab[:4]}, key=repr)
    idx = {c: i for i, c in enumerate(palette)}
    tiles, roles = [], {}
    for i, lab in enumerate(labels, start=1):
        tiles.append(Tile(i, *(idx[c] for c in lab[:4])))
        roles[i] = lab[4]
    cell_of = {idx[c]: c[1:] for c in palette if isinstance(c, tuple)}
    oracle_color_of = {}
    if tm.oracle_track:
        for c, (a, q, b, left, virgin) in cell_of.items():
            oracle_color_of.setdefault(b, []).append(c)
    return CompiledTileset(Tileset(len(palette), tuple(tiles)), 1, oracle_color_of, roles, tm,
                           cell_of, tuple(palette))


def _origin_window(ct: CompiledTileset, k: int) -> Window:
    return Window.blank(k, k).with_cell(0, 0, ct.origin_tile_id)


def _allowed(ct: CompiledTileset, k: int, prefix: str):
    if not prefix:
        return None
    if len(prefix) > k - 1:
        raise ValueError(f"oracle prefix longer than the {k - 1} oracle columns of a {k}-window")
    if not ct.machine.oracle_track:
        raise ValueError("machine has no oracle track")
    t = ct.tileset
    keep = {}
    for i, ch in enumerate(prefix):
        bit = int(ch)
        ok = frozenset(tile.id for tile in t.tiles
                       if ct.cell_of.get(tile.north, (None, None, bit))[2] == bit)
        for y in range(k):
            keep[(i + 1, y)] = ok
    return keep


def origin_constrained_solve(ct: CompiledTileset, k: int, oracle_prefix: str = "",
                             budget=None) -> bool:
    """Is there a valid k x k window with the origin tile at (0, 0) and the
    given oracle bits on the first tape columns?"""
    return solve(SolveRequest(ct.tileset, _origin_window(ct, k), "decide", budget=budget or DEFAULT_BUDGET,
                              allowed=_allowed(ct, k, oracle_prefix)))


def origin_window_solution(ct: CompiledTileset, k: int, oracle_prefix: str = "", budget=None):
    found = solve(SolveRequest(ct.tileset, _origin_window(ct, k), "enumerate", limit=1,
                               budget=budget or DEFAULT_BUDGET, allowed=_allowed(ct, k, oracle_prefix)))
    return found[0] if found else None


def extract_run(window: Window, ct: CompiledTileset) -> list[Configuration]:
    """Decode the configurations held by the rows above the origin tile."""
    spots = [(x, y) for x, y in window.positions() if window[x, y] == ct.origin_tile_id]
    if len(spots) != 1:
        raise DecodeError("window must contain the origin tile exactly once")
    ox, oy = spots[0]
    tiles = {t.id: t for t in ct.tileset.tiles}
    out = []
    for y in range(oy, window.height):
        cells = []
        for x in range(ox + 1, window.width):
            tid = window[x, y]
            if tid is None:
                raise DecodeError(f"unfilled cell at ({x}, {y})")
            c = ct.cell_of.get(tiles[tid].north)
            if c is None:
                raise DecodeError(f"tile {tid} at ({x}, {y}) carries no tape cell")
            cells.append(c)
        heads = [i for i, c in enumerate(cells) if c[1] is not None]
        if len(heads) > 1:
            raise DecodeError(f"row {y} holds {len(heads)} heads")
        if not heads:
            # the head left the window through its right border
            break
        h = heads[0]
        bits = tuple(c[2] for c in cells) if ct.machine.oracle_track else ()
        out.append(Configuration(cells[h][1], h, tuple(c[0] for c in cells), bits))
    return out
