"""Tileset T forcing growing columns of squares, its mirror T', and tau.

T is read off the structural description of alpha (see ``geometry``): every
local 4-tuple of edge labels occurring in alpha becomes one tile. The corner
keeps id 30 so that (30, 30') names the corner of tau.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import geometry as g
from .core import ProductTileset, Tile, Tileset, Window, superimpose

CORNER = 30

# columns sampled when harvesting tiles; the tile set stabilises by n = 6
_HARVEST_COLUMNS = 8

ROLES = (
    "corner", "top", "bottom", "vertical-line", "horizontal-line",
    "diagonal", "increase-signal", "counting-signal", "white",
)


@dataclass(frozen=True)
class SparseGridTileset:
    T: Tileset
    role_of: dict  # id -> frozenset of role names
    labels: dict  # id -> (N, E, S, W) edge labels
    palette: tuple  # color index -> label


def _harvest() -> set:
    nmax = _HARVEST_COLUMNS
    found = set()
    for x in range(-2, g.f(nmax) + 1):
        for y in range(-2, g.height(nmax - 1) + 2):
            found.add(g.alpha_sides(x, y))
    return found


def _roles(lab) -> frozenset:
    n, e, s, w = lab
    base = [c.split("+")[0] for c in lab]
    sig = "".join(c.split("+")[1] for c in lab if "+" in c)
    out = set()
    if lab == _corner_label():
        out |= {"corner", "bottom", "vertical-line"}
    if base[0].startswith(_LINES) or base[2].startswith(_LINES):
        out.add("vertical-line")
    if any(b.startswith(("hm", "ht")) for b in (base[1], base[3])):
        out.add("horizontal-line")
    if base[0].startswith("top") and not base[2].startswith("top") or any(b.startswith("ht") for b in base):
        out.add("top")
    if any(b.startswith("bot") for b in base):
        out.add("bottom")
    if base[0] == "Ud" and base[2] == "L":
        out.add("diagonal")
    if "k" in sig:
        out.add("increase-signal")
    if "c" in sig or "s" in sig:
        out.add("counting-signal")
    if not out:
        out.add("white")
    return frozenset(out)


_LINES = ("vl",)


def _corner_label():
    return g.alpha_sides(0, 0)


@lru_cache(maxsize=1)
def build_T() -> SparseGridTileset:
    labels = sorted(_harvest())
    corner = _corner_label()
    labels.remove(corner)
    labels.insert(CORNER - 1, corner)
    palette = tuple(sorted({c for lab in labels for c in lab}))
    cidx = {c: i for i, c in enumerate(palette)}
    tiles, lab_of, roles = [], {}, {}
    for i, lab in enumerate(labels, start=1):
        tiles.append(Tile(i, *(cidx[c] for c in lab)))
        lab_of[i] = lab
        roles[i] = _roles(lab)
    return SparseGridTileset(Tileset(len(palette), tuple(tiles)), roles, lab_of, palette)


_MIRROR_ROLE = {"vertical-line": "horizontal-line", "horizontal-line": "vertical-line"}


def mirror_tileset(ts: Tileset) -> Tileset:
    return Tileset(ts.color_count, tuple(t.mirrored() for t in ts.tiles))


@lru_cache(maxsize=1)
def build_T_mirror() -> SparseGridTileset:
    base = build_T()
    roles = {i: frozenset(_MIRROR_ROLE.get(r, r) for r in rs) for i, rs in base.role_of.items()}
    labels = {i: (e, n, w, s) for i, (n, e, s, w) in base.labels.items()}
    return SparseGridTileset(mirror_tileset(base.T), roles, labels, base.palette)


@lru_cache(maxsize=1)
def build_tau_product() -> ProductTileset:
    return superimpose(build_T().T, build_T_mirror().T, [(CORNER, CORNER)])


def build_tau() -> Tileset:
    return build_tau_product().tileset


# -- configurations -----------------------------------------------------

@lru_cache(maxsize=1)
def _id_of_label() -> dict:
    return {lab: i for i, lab in build_T().labels.items()}


@lru_cache(maxsize=1 << 20)
def alpha_tile(x: int, y: int) -> int:
    """Tile of alpha at (x, y), corner at the origin."""
    return _id_of_label()[g.alpha_sides(x, y)]


def alpha_window(x0: int, y0: int, w: int, h: int) -> Window:
    return Window.from_function(w, h, lambda x, y: alpha_tile(x0 + x, y0 + y))


def generate_alpha(k: int) -> Window:
    """k x k window of alpha with the corner tile at (0, 0)."""
    return alpha_window(0, 0, k, k)


def beta_tile(x: int, y: int) -> int:
    # alpha' is alpha reflected across the diagonal; mirrored tiles keep ids
    return build_tau_product().id_of(alpha_tile(x, y), alpha_tile(y, x))


def beta_window(x0: int, y0: int, w: int, h: int) -> Window:
    return Window.from_function(w, h, lambda x, y: beta_tile(x0 + x, y0 + y))


def generate_beta(k: int) -> Window:
    return beta_window(0, 0, k, k)


# -- coordinate law -----------------------------------------------------

f = g.f


def grid_coords(bound: int) -> list[tuple[int, int]]:
    out = []
    n = 0
    while f(n) <= bound:
        m = 0
        while f(m) <= bound:
            if g.admissible(n, m):
                out.append((f(n), f(m)))
            m += 1
        n += 1
    return sorted(out)


def computation_cells(w: Window, origin=(0, 0)) -> list[tuple[int, int]]:
    """Cells where a vertical line of the T layer meets a horizontal line of the
    T' layer and both lines go on past the crossing (the computation sites)."""
    tp = build_tau_product()
    labels = build_T().labels
    out = []
    for x, y in w.positions():
        c = w[x, y]
        if c is None:
            continue
        a, b = tp.pairs[c]
        if _continues_up(labels[a]) and _continues_up(labels[b]):
            out.append((x - origin[0], y - origin[1]))
    return sorted(out)


def _continues_up(lab) -> bool:
    return lab[0].startswith(_LINES)


# -- artifacts ----------------------------------------------------------

def artifacts() -> dict[str, str]:
    return {
        "sparse_T.wt": build_T().T.to_text(),
        "sparse_Tprime.wt": build_T_mirror().T.to_text(),
        "sparse_tau.wt": build_tau().to_text(),
    }
