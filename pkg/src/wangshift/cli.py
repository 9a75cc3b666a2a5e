"""Command-line front end.

Exit codes: 0 success, 1 domain verdict or bad input (one line on stdout),
2 usage, 3 resource limit. The default node budget comes from
WANGSHIFT_BUDGET.
"""
from __future__ import annotations

import hashlib
import sys
from pathlib import Path

import click

from . import cb_rank, degree_codec, pi01_bridge, render as rnd, sparse_grid, subshift1d, tm_compiler
from .core import FormatError, Tileset, Window
from .solver import DEFAULT_BUDGET, ExtensibilityQuery, ResourceLimit, SolveRequest, extensible, solve


class Verdict(Exception):
    """A domain answer reported with exit code 1."""


def _read(path) -> str:
    return Path(path).read_text()


def _tileset(path) -> Tileset:
    return Tileset.from_text(_read(path))


def _window(path) -> Window:
    return Window.from_text(_read(path))


def _write(path, text: str) -> None:
    Path(path).write_text(text)


budget_opt = click.option("--budget", type=int, default=None,
                          help="Node budget (default: WANGSHIFT_BUDGET or 10^8).")


@click.group()
def main():
    """Wang tiles, sparse grids and subshift tools."""


@main.command("solve")
@click.argument("tileset", type=click.Path(exists=True))
@click.argument("window", type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["decide", "count"]), default="decide")
@budget_opt
def solve_cmd(tileset, window, mode, budget):
    """Decide or count completions of WINDOW."""
    r = solve(SolveRequest(_tileset(tileset), _window(window), mode, budget=budget or DEFAULT_BUDGET))
    if mode == "count":
        click.echo(r)
    elif r:
        click.echo("sat")
    else:
        raise Verdict("unsat")


@main.command("enumerate")
@click.argument("tileset", type=click.Path(exists=True))
@click.argument("window", type=click.Path(exists=True))
@click.option("--limit", type=int, default=10, show_default=True)
@budget_opt
def enumerate_cmd(tileset, window, limit, budget):
    """Print up to LIMIT completions, separated by blank lines."""
    sols = solve(SolveRequest(_tileset(tileset), _window(window), "enumerate", limit=limit,
                              budget=budget or DEFAULT_BUDGET))
    click.echo("\n".join(w.to_text() for w in sols), nl=False)


@main.command("extensible")
@click.argument("tileset", type=click.Path(exists=True))
@click.argument("pattern", type=click.Path(exists=True))
@click.option("--radius", type=int, required=True)
@budget_opt
def extensible_cmd(tileset, pattern, radius, budget):
    """Does PATTERN extend by RADIUS cells on every side?"""
    if extensible(_tileset(tileset), ExtensibilityQuery(_window(pattern), radius), budget or DEFAULT_BUDGET):
        click.echo("extensible")
    else:
        raise Verdict("not-extensible")


@main.command("compile-tm")
@click.argument("machine", type=click.Path(exists=True))
@click.option("-o", "--out", type=click.Path(), required=True)
def compile_tm_cmd(machine, out):
    """Compile a `tm v1` machine to a tileset; prints the origin tile id."""
    ct = tm_compiler.compile(tm_compiler.parse_machine(_read(machine)))
    _write(out, ct.tileset.to_text())
    click.echo(f"origin {ct.origin_tile_id}")


@main.command("origin-solve")
@click.argument("machine", type=click.Path(exists=True))
@click.option("--k", type=int, required=True)
@click.option("--prefix", default="")
@budget_opt
def origin_solve_cmd(machine, k, prefix, budget):
    """Is there a k x k window above the origin tile with this oracle prefix?"""
    ct = tm_compiler.compile(tm_compiler.parse_machine(_read(machine)))
    if tm_compiler.origin_constrained_solve(ct, k, prefix, budget):
        click.echo("runs")
    else:
        raise Verdict("halts")


_EMIT = {"T": "sparse_T.wt", "Tprime": "sparse_Tprime.wt", "tau": "sparse_tau.wt"}


@main.command("sparse-grid")
@click.option("--emit", type=click.Choice(["T", "Tprime", "tau", "alpha", "beta"]), required=True)
@click.option("--size", type=int, default=16, show_default=True, help="Window side for alpha/beta.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".")
def sparse_grid_cmd(emit, size, out_dir):
    """Write a sparse-grid artifact and print its sha256."""
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    if emit in _EMIT:
        name, text = _EMIT[emit], sparse_grid.artifacts()[_EMIT[emit]]
    else:
        gen = sparse_grid.generate_alpha if emit == "alpha" else sparse_grid.generate_beta
        name, text = f"{emit}_{size}.win", gen(size).to_text()
    _write(Path(out_dir) / name, text)
    click.echo(f"{name} {hashlib.sha256(text.encode()).hexdigest()}")


@main.command("grid-coords")
@click.option("--bound", type=int, required=True)
def grid_coords_cmd(bound):
    """Intersections (f(n), f(m)) of the sparse grid up to BOUND."""
    for x, y in sparse_grid.grid_coords(bound):
        click.echo(f"{x} {y}")


def _spec(path):
    return pi01_bridge.parse_spec(_read(path), Path(path).parent)


@main.command("pi01-encode")
@click.argument("spec", type=click.Path(exists=True))
@click.option("--oracle", "oracle", required=True, help="Oracle bits x.")
@click.option("--corner", nargs=2, type=int, default=(0, 0), show_default=True)
@click.option("--k", type=int, required=True)
@click.option("-o", "--out", type=click.Path(), required=True)
def pi01_encode_cmd(spec, oracle, corner, k, out):
    """k x k tau_M window of the grid with corner at CORNER and oracle ORACLE."""
    ps = _spec(spec)
    ge = pi01_bridge.build_tau_M(ps)
    try:
        w = pi01_bridge.encode(ge, ps, oracle, tuple(corner), k)
    except pi01_bridge.RejectedPrefix as err:
        raise Verdict(f"rejected {err.prefix}") from err
    _write(out, w.to_text())


@main.command("pi01-decode")
@click.argument("spec", type=click.Path(exists=True))
@click.argument("window", type=click.Path(exists=True))
def pi01_decode_cmd(spec, window):
    """Print `<bits> <zx> <zy>`, or the verdicts InO / undetermined."""
    ge = pi01_bridge.build_tau_M(_spec(spec))
    try:
        r = pi01_bridge.decode(_window(window), ge)
    except pi01_bridge.Undetermined as err:
        raise Verdict("undetermined") from err
    if r == pi01_bridge.IN_O:
        raise Verdict("InO")
    bits, z = r
    click.echo(f"{bits or '-'} {z[0]} {z[1]}")


@main.command("cb-chain")
@click.argument("tileset", type=click.Path(exists=True))
@click.option("--order", type=int, required=True)
@click.option("--radius", type=int, default=1, show_default=True)
@click.option("--max-levels", type=int, default=8, show_default=True)
@click.option("-o", "--out", type=click.Path(), required=True)
@budget_opt
def cb_chain_cmd(tileset, order, radius, max_levels, out, budget):
    """Finite-order derivative chain, written as a cb-report."""
    rep = cb_rank.derivative_chain(_tileset(tileset), order, radius, max_levels,
                                   budget or DEFAULT_BUDGET)
    cb_rank.write_report(rep, out)
    click.echo(" ".join(str(s) for s in rep.sizes))


@main.command("sofic-project")
@click.argument("spec", type=click.Path(exists=True))
@click.argument("window", type=click.Path(exists=True))
def sofic_project_cmd(spec, window):
    """Project a tau_M window to tape symbols; prints the family, then the window."""
    ge = pi01_bridge.build_tau_M(_spec(spec))
    p = cb_rank.sofic_project(ge, _window(window))
    click.echo(cb_rank.classify_projection(p) or "other")
    click.echo(p.to_text(), nl=False)


def _words(path):
    return subshift1d.parse_words(_read(path))


@main.command("minimalize")
@click.argument("words", type=click.Path(exists=True))
@click.option("--max-len", type=int, required=True)
@click.option("-o", "--out", type=click.Path(), default=None)
def minimalize_cmd(words, max_len, out):
    """Greedy length-lex minimalization of a forbidden-word list."""
    alphabet, F = _words(words)
    try:
        res = subshift1d.minimalize(F, max_len, alphabet)
    except ValueError as err:
        raise Verdict("empty") from err
    text = subshift1d.format_words(alphabet, res)
    if out:
        _write(out, text)
    else:
        click.echo(text, nl=False)


@main.command("is-empty")
@click.argument("words", type=click.Path(exists=True))
@click.option("--order", type=int, default=None, help="De Bruijn order (default: longest word).")
def is_empty_cmd(words, order):
    """Is the shift avoiding the listed words empty?"""
    alphabet, F = _words(words)
    L = order or max([len(w) for w in F] + [1])
    if subshift1d.is_empty(F, L, alphabet):
        raise Verdict("empty")
    click.echo("nonempty")


_ORDER = ("0", "1")


@main.command("codec-encode")
@click.option("--bits", "bits", required=True)
@click.option("--dim", type=click.Choice(["1", "2"]), default="1")
@click.option("-o", "--out", type=click.Path(), default=None)
def codec_encode_cmd(bits, dim, out):
    """Encode BITS into the Thue-Morse point (or its vertical lift)."""
    x = degree_codec.thue_morse()
    if dim == "1":
        c, st = degree_codec.encode_1d(x, bits, _ORDER)
        text = degree_codec.transcript(st)
        shift = st.blocks[-1][0] + st.blocks[-1][1] // 2
    else:
        c, levels = degree_codec.encode_2d(degree_codec.vertical_lift(x), bits, _ORDER)
        text = "codec v1\n" + "".join(
            f"level {i} centre {lv.centre} half {lv.half} occ {lv.second} diff {lv.letters[0]} "
            f"{lv.letters[1]} bit {lv.bit}\n" for i, lv in enumerate(levels))
        shift = levels[-1].centre if levels else 0
    text += f"point thue-morse dim {dim} shift {shift}\n"
    if out:
        _write(out, text)
    else:
        click.echo(text, nl=False)


@main.command("codec-decode")
@click.argument("transcript", type=click.Path(exists=True))
@click.option("--nbits", type=int, required=True)
def codec_decode_cmd(transcript, nbits):
    """Read NBITS back from the point named on the transcript's last line."""
    last = _read(transcript).strip().splitlines()[-1].split()
    if len(last) != 6 or last[0] != "point" or last[1] != "thue-morse":
        raise FormatError("transcript has no `point thue-morse dim <d> shift <t>` line")
    c = degree_codec.thue_morse().shifted(int(last[5]))
    if last[3] == "1":
        click.echo(degree_codec.decode_1d(c, _ORDER, nbits) or "-")
    else:
        click.echo(degree_codec.decode_2d(degree_codec.vertical_lift(c), _ORDER, nbits) or "-")


@main.command("render")
@click.argument("window", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["ascii", "ppm"]), default="ascii")
@click.option("--scale", type=int, default=1, show_default=True)
@click.option("--palette", type=click.Path(exists=True), default=None)
@click.option("--roles", is_flag=True, help="Glyphs by sparse-grid tile role (T windows).")
@click.option("-o", "--out", type=click.Path(), default=None)
def render_cmd(window, fmt, scale, palette, roles, out):
    """Draw a window as text or as a binary PPM."""
    w = _window(window)
    if palette:
        pal = rnd.parse_palette(_read(palette), fmt)
    elif roles:
        pal = rnd.role_palette(sparse_grid.build_T().role_of)
    else:
        pal = rnd.default_palette(w, fmt)
    data = rnd.render(w, rnd.RenderSpec(fmt, pal, scale))
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def run(argv=None) -> int:
    """Run the CLI on argv and return the exit code."""
    try:
        main.main(args=argv, prog_name="wangshift", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        e.show()
        return 2
    except click.Abort:
        return 2
    except Verdict as v:
        click.echo(str(v))
        return 1
    except (ResourceLimit, degree_codec.BudgetExhausted, subshift1d.NotMinimal) as err:
        click.echo(f"resource-limit: {err}")
        return 3
    except (FormatError, ValueError, OSError, rnd.RenderError) as err:
        click.echo(f"error: {err}")
        return 1
    return 0


def entry():
    sys.exit(run())


if __name__ == "__main__":
    entry()
