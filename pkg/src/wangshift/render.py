"""ASCII and binary PPM pictures of windows."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .core import Window

GLYPHS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
FREE_GLYPH = "?"
FREE_RGB = (255, 255, 255)


class RenderError(ValueError):
    pass


@dataclass
class RenderSpec:
    format: str = "ascii"  # ascii | ppm
    palette: dict = field(default_factory=dict)  # id -> glyph or (r, g, b)
    scale: int = 1


def default_palette(w: Window, fmt: str) -> dict:
    ids = sorted({c for row in w.cells for c in row if c is not None})
    if fmt == "ascii":
        return {i: GLYPHS[i % len(GLYPHS)] for i in ids}
    out = {}
    for i in ids:
        d = hashlib.sha256(str(i).encode()).digest()
        rgb = (d[0], d[1], d[2])
        # keep clear of the colour reserved for free cells
        out[i] = rgb if rgb != FREE_RGB else (254, 254, 254)
    return out


def role_palette(role_of: dict) -> dict:
    """Glyphs for the sparse-grid tiles: lines, corner, the rest blank."""
    out = {}
    for i, roles in role_of.items():
        if "corner" in roles:
            out[i] = "+"
        elif "vertical-line" in roles and "horizontal-line" in roles:
            out[i] = "#"
        elif "vertical-line" in roles:
            out[i] = "|"
        elif "horizontal-line" in roles or "top" in roles:
            out[i] = "-"
        else:
            out[i] = "."
    return out


def _check(w: Window, spec: RenderSpec) -> None:
    if w.is_empty:
        raise RenderError("cannot render a window with no cells")
    missing = {c for row in w.cells for c in row if c is not None} - set(spec.palette)
    if missing:
        raise RenderError(f"palette misses ids {sorted(missing)[:8]}")


def render(w: Window, spec: RenderSpec) -> bytes:
    _check(w, spec)
    if spec.format == "ascii":
        lines = ["".join(FREE_GLYPH if c is None else spec.palette[c] for c in row)
                 for row in reversed(w.cells)]
        return ("\n".join(lines) + "\n").encode()
    if spec.format == "ppm":
        s = spec.scale
        if s <= 0:
            raise RenderError("scale must be positive")
        body = bytearray()
        for row in reversed(w.cells):
            line = b"".join(bytes(FREE_RGB if c is None else spec.palette[c]) * s for c in row)
            body += line * s
        return f"P6\n{w.width * s} {w.height * s}\n255\n".encode() + bytes(body)
    raise RenderError(f"unknown format {spec.format!r}")


def parse_palette(text: str, fmt: str) -> dict:
    """Lines ``<id> <glyph>`` (ascii) or ``<id> <r> <g> <b>`` (ppm)."""
    out = {}
    for ln in text.splitlines():
        ln = ln.split("#")[0].strip() if fmt == "ppm" else ln.strip()
        if not ln:
            continue
        parts = ln.split()
        if fmt == "ascii" and len(parts) == 2 and len(parts[1]) == 1:
            out[int(parts[0])] = parts[1]
        elif fmt == "ppm" and len(parts) == 4:
            out[int(parts[0])] = tuple(int(v) for v in parts[1:])
        else:
            raise RenderError(f"bad palette line: {ln}")
    return out
