"""The ten acceptance checks, one test each, one summary line each.

Run directly (``python tests/test_acceptance.py``) to print only the summary
lines. Under pytest every check is a test and the lines are written to the
terminal at the end of the module. A check that cannot be met fails; the
reason is in the detail text.
"""
import os
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (brute_min_shift, f as f_oracle, naive_completions, random_instance,
                     thue_morse_prefix)
from wangshift import degree_codec as dc
from wangshift.geometry import height
from wangshift import pi01_bridge as pb
from wangshift import sparse_grid as sg
from wangshift import subshift1d as s1
from wangshift import tm_compiler as tmc
from wangshift.cb_rank import (classify_projection, derivative_chain, rank1_certificate,
                               sample_windows, sofic_project)
from wangshift.core import Tile, Tileset, Window, superimpose
from wangshift.solver import ResourceLimit, SolveRequest, _Search, solve

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
# the order-4 T chain runs at roughly 16k nodes per second here, so 10 minutes is ~9.6e6
CB_BUDGET = int(os.environ.get("WANGSHIFT_CB_BUDGET", 2_000_000))


# -- the checks ---------------------------------------------------------
# each returns (ok, detail)

def two_lines(k=12):
    T = sg.build_T()
    line = frozenset(i for i, r in T.role_of.items() if "vertical-line" in r)
    ref = set()
    for n in range(12):
        for x0 in range(sg.f(n) - k, sg.f(n) + 1):
            for y0 in range(-k, height(n) + 1):
                w = sg.alpha_window(x0, y0, k, k)
                full = [x for x in range(k) if all(w[x, y] in line for y in range(k))]
                if len(full) >= 2:
                    ref.add(w.cells)
    seen = 0
    for a in range(k):
        for b in range(a + 1, k):
            allowed = {(x, y): line for x in (a, b) for y in range(k)}
            s = _Search(T.T, Window.blank(k, k), allowed, 10**8)
            for sol in s.solutions():
                seen += 1
                if s.to_window(sol).cells not in ref:
                    return False, (f"window with full lines at columns {a},{b} is valid but no "
                                   f"crop of alpha ({seen} windows checked)")
    return True, f"{seen} windows all match alpha"


def corner_rigidity(k=8):
    """tau is the product of T and T'; a tau window holding the corner pair
    splits into a T window and a T' window each holding the corner, so unique
    factor completions equal to alpha and alpha' give a unique tau window."""
    tp = sg.build_tau_product()
    for cy in range(k):
        for cx in range(k):
            for ts, ref in ((tp.left, lambda x, y: sg.alpha_tile(x, y)),
                            (tp.right, lambda x, y: sg.alpha_tile(y, x))):
                s = _Search(ts, Window.blank(k, k).with_cell(cx, cy, sg.CORNER), None, 10**8)
                sols = []
                for sol in s.solutions():
                    sols.append(s.to_window(sol))
                    if len(sols) > 1:
                        break
                want = Window.from_function(k, k, lambda x, y: ref(x - cx, y - cy))
                if sols != [want]:
                    return False, f"offset ({cx},{cy}): {len(sols)} factor completions"
            beta = sg.beta_window(-cx, -cy, k, k)
            paired = Window.from_function(k, k, lambda x, y: tp.id_of(sg.alpha_tile(x - cx, y - cy),
                                                                      sg.alpha_tile(y - cy, x - cx)))
            if beta != paired:
                return False, f"offset ({cx},{cy}): beta is not the pair of alpha and alpha'"
    return True, f"all {k * k} offsets pinned to beta"


def grid_law():
    got = sg.computation_cells(sg.generate_beta(40))
    want = sg.grid_coords(40)
    fs = [sg.f(n) for n in range(7)]
    ok = got == want and fs == [f_oracle(n) for n in range(7)] == [0, 2, 5, 9, 14, 20, 27]
    return ok, f"{len(got)} computation cells, f(0..6) = {fs}"


def tm_bridge():
    bit0 = tmc.compile(tmc.parse_machine((CORPUS / "bit0.tm").read_text()))
    yes = tmc.origin_constrained_solve(bit0, 20, "0")
    no = tmc.origin_constrained_solve(bit0, 20, "1")
    if not yes or no:
        return False, f"bit0 origin solve gave {yes}/{no}"
    oracles = {"bit0.tm": "0" * 11, "walker.tm": "", "bouncer.tm": "01101001101"}
    steps = []
    for name, pre in oracles.items():
        tm = tmc.parse_machine((CORPUS / name).read_text())
        ct = tmc.compile(tm)
        run = tmc.extract_run(tmc.origin_window_solution(ct, 12, pre), ct)
        ref = tmc.simulate(tm, run[0].oracle if tm.oracle_track else None, len(run) - 1, 11)
        if run != ref or len(run) - 1 < 10:
            return False, f"{name}: decoded run differs from the simulator"
        steps.append(len(run) - 1)
    return True, f"bit0 0/1 -> True/False; runs of {steps} steps match"


def pi01_round_trip():
    ks = {}
    for k in range(1, 80):
        ks.setdefault(pb.depth(k), k)
    done = 0
    for name in ("no11.pi01", "even_ones.pi01", "marker.pi01"):
        spec = pb.parse_spec((CORPUS / name).read_text(), CORPUS)
        ge = pb.build_tau_M(spec)
        for d in range(1, 7):
            for u in spec.accepted(d):
                w = pb.encode(ge, spec, u, (0, 0), ks[d])
                if not ge.validate(w) or pb.decode(w, ge) != (u, (0, 0)):
                    return False, f"{name}: {u} does not survive encode/decode"
                done += 1
        got, want = pb.prefix_set(ge, ks[6]), set(spec.accepted(6))
        if got != want:
            return False, f"{name}: prefix set differs on {sorted(got ^ want)[:4]}"
    return True, f"{done} prefixes round-trip; prefix sets match at k={ks[6]}"


def micro_tilesets():
    # at most one horizontal line, and its transpose
    line = Tileset(4, (Tile(1, 0, 0, 0, 0), Tile(2, 1, 2, 0, 2), Tile(3, 1, 1, 1, 1)))
    vline = Tileset(4, tuple(t.mirrored() for t in line.tiles))
    return line, vline


def cb_certificates():
    T = sg.build_T().T
    tp = sg.build_tau_product()
    if not rank1_certificate(T, sg.alpha_window(-10, -10, 30, 30), Window.from_rows([[sg.CORNER]]), 8):
        return False, "alpha rank-1 certificate rejected"
    pair = Window.from_rows([[tp.id_of(sg.CORNER, sg.CORNER)]])
    if not rank1_certificate(tp, sg.beta_window(-10, -10, 30, 30), pair, 8):
        return False, "beta rank-1 certificate rejected"
    line, vline = micro_tilesets()
    a, b = derivative_chain(line, 3, 2), derivative_chain(vline, 3, 2)
    ab = derivative_chain(superimpose(line, vline, []).tileset, 3, 2)
    if None in (a.chain_length, b.chain_length) or ab.chain_length != a.chain_length + b.chain_length:
        return False, "micro product chains are not additive"
    try:
        rep = derivative_chain(T, 4, 1, budget=CB_BUDGET)
    except ResourceLimit as err:
        return False, f"rank-1 and additivity hold; T chain at n=4 did not finish: {err}"
    sizes = rep.sizes
    shrinks = sum(1 for u, v in zip(sizes, sizes[1:]) if v < u)
    return shrinks >= 2, f"T chain sizes {sizes}"


def sofic_families(samples=200):
    spec = pb.parse_spec((CORPUS / "marker.pi01").read_text(), CORPUS)
    ge = pb.build_tau_M(spec)
    counts = {}
    for w in sample_windows(ge, 8, samples, seed=1):
        fam = classify_projection(sofic_project(ge, w))
        counts[fam] = counts.get(fam, 0) + 1
    # windows cut from beta configurations join the sample
    for z in ((0, 0), (3, 2), (-4, -7), (-20, -20)):
        fam = classify_projection(sofic_project(ge, pb.encode(ge, spec, "0" * 8, z, 8)))
        counts[fam] = counts.get(fam, 0) + 1
    detail = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items(), key=lambda kv: str(kv[0])))
    return None not in counts, detail


def minimal_shift():
    got = s1.minimalize([], 4)
    want = brute_min_shift("01", [], 4)
    if got != want:
        return False, f"greedy output {got} differs from brute force {want}"
    lang = s1.forbidden_language(got)
    try:
        bounds = {w: s1.recurrence_bound(lang, w) for n in (1, 2) for w in s1.factors(lang, n)}
    except s1.NotMinimal as err:
        return False, str(err)
    return True, f"{len(got)} words taken; recurrence bounds {bounds}"


FACTOR_LIMIT = 1 << 14


def _block_ok(x, text, a, n):
    if not (x.lo <= a and a + n <= x.hi):
        return False
    return n > FACTOR_LIMIT or x.word(a, a + n) in text


def codec():
    order = ("0", "1")
    x = dc.thue_morse()
    x2 = dc.vertical_lift(x)
    text = thue_morse_prefix(1 << 18)
    rnd = random.Random(2024)
    for _ in range(20):
        s = "".join(rnd.choice("01") for _ in range(16))
        c, st = dc.encode_1d(x, s, order)
        if dc.decode_1d(c, order, 16) != s:
            return False, f"1-D round trip failed on {s}"
        if not dc.chain_ok(x, st):
            return False, f"1-D chain geometry broken on {s}"
        if not all(_block_ok(x, text, a, n) for a, n in st.blocks):
            return False, f"1-D chain block is not a factor on {s}"
    for _ in range(20):
        s = "".join(rnd.choice("01") for _ in range(8))
        c2, levels = dc.encode_2d(x2, s, order)
        if dc.decode_2d(c2, order, 8) != s:
            return False, f"2-D round trip failed on {s}"
        h = 0
        for lev in levels:
            if lev.half < lev.second - lev.centre + h or abs(lev.dx) > lev.half or lev.letters[0] == lev.letters[1]:
                return False, f"2-D chain geometry broken on {s}"
            if not _block_ok(x, text, lev.centre - lev.half, 2 * lev.half + 1):
                return False, f"2-D chain row is not a factor on {s}"
            h = lev.half
    return True, "20 x 16-bit (1-D) and 20 x 8-bit (2-D) strings round-trip"


def solver_oracle(instances=200):
    rnd = random.Random(12345)
    for i in range(instances):
        colors, tiles, w, h, fixed = random_instance(rnd)
        ts = Tileset(colors, tuple(Tile(t, *e) for t, e in tiles.items()))
        win = Window.from_function(w, h, lambda x, y: fixed.get((x, y)))
        got = solve(SolveRequest(ts, win, "count"))
        want = len(naive_completions(tiles, w, h, fixed))
        if got != want:
            return False, f"instance {i}: solver counts {got}, brute force {want}"
    return True, f"{instances} instances agree"


CRITERIA = [
    (1, "sparse-grid rigidity", two_lines),
    (2, "corner rigidity of tau", corner_rigidity),
    (3, "grid law", grid_law),
    (4, "TM bridge", tm_bridge),
    (5, "Pi01 round trip", pi01_round_trip),
    (6, "CB certificates", cb_certificates),
    (7, "sofic projection", sofic_families),
    (8, "minimalization", minimal_shift),
    (9, "codec", codec),
    (10, "solver oracle equivalence", solver_oracle),
]


def run_one(num, name, check):
    t = time.time()
    ok, detail = check()
    return ok, f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} [{time.time() - t:.1f}s] {detail}"


# -- pytest glue ----------------------------------------------------------

_LINES = []


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    rep = request.config.pluginmanager.getplugin("terminalreporter")
    if rep is not None and _LINES:
        rep.write_line("")
        for ln in sorted(_LINES, key=lambda s: int(s.split()[1])):
            rep.write_line(ln)


@pytest.mark.slow
@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check):
    ok, line = run_one(num, name, check)
    _LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    bad = 0
    for crit in CRITERIA:
        ok, line = run_one(*crit)
        bad += not ok
        print(line, flush=True)
    sys.exit(1 if bad else 0)
