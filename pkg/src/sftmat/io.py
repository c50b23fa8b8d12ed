"""JSON, DOT, ASCII and PPM output."""
from __future__ import annotations

import colorsys
import json

import numpy as np

from .errors import UnknownFormat
from .patterns import Alphabet, FinitePattern, SftSpec
from .torus import PeriodicPoint, TorusConfig


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def spec_to_json(spec: SftSpec):
    return {
        "dim": spec.dim,
        "alphabet": list(spec.alphabet.symbols),
        "forbidden": [[[list(c), spec.alphabet[s]] for c, s in p.cells] for p in spec.forbidden],
    }


def spec_from_json(obj) -> SftSpec:
    alphabet = Alphabet(tuple(obj["alphabet"]))
    patterns = tuple(
        FinitePattern(obj["dim"], tuple((tuple(c), alphabet.index(s)) for c, s in cells))
        for cells in obj["forbidden"])
    return SftSpec(alphabet, obj["dim"], patterns)


def rows_top_down(arr, symbols=None):
    """2-d ``arr[x, y]`` as a list of rows, highest y first."""
    rows = [arr[:, y].tolist() for y in reversed(range(arr.shape[1]))]
    if symbols is None:
        return rows
    return [[symbols[v] for v in row] for row in rows]


def cube_to_json(cube, symbols):
    cube = np.asarray(cube)
    if cube.ndim == 2:
        return {"rows": rows_top_down(cube, symbols)}
    return {"shape": list(cube.shape), "cells": [symbols[v] for v in cube.reshape(-1)]}


def strip_to_json(strip, symbols=None):
    return {"height": strip.height, "period": strip.period,
            "rows": rows_top_down(strip.array, symbols)}


def matrix_to_json(m, symbols=None):
    """Index list plus row-major bit rows; strip indices serialize as strips."""
    def label(ix):
        if hasattr(ix, "period"):
            return strip_to_json(ix, symbols)
        if hasattr(ix, "top"):
            return {"top": rows_top_down(ix.top.array, symbols),
                    "bottom": rows_top_down(ix.bottom.array, symbols)}
        return ix

    out = {
        "size": len(m.indices),
        "indices": [label(ix) for ix in m.indices],
        "rows": ["".join("1" if v else "0" for v in row) for row in np.asarray(m.entries)],
    }
    phases = getattr(m, "phases", None)
    if phases:
        out["phases"] = [[i, j, list(ph)] for (i, j), ph in sorted(phases.items())]
    if hasattr(m, "pruned"):
        out["pruned"] = m.pruned
    return out


def matrix_to_dot(m, name="M") -> str:
    lines = [f"digraph {name} {{"]
    for i in range(len(m.indices)):
        lines.append(f"    n{i} [label=\"{i}\"];")
    phases = getattr(m, "phases", {}) or {}
    for i, j in zip(*np.nonzero(np.asarray(m.entries))):
        ph = phases.get((int(i), int(j)))
        attr = f" [label=\"{','.join(map(str, ph))}\"]" if ph else ""
        lines.append(f"    n{i} -> n{j}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def point_to_json(pt: PeriodicPoint, symbols):
    return {
        "dim": pt.torus.dim,
        "periods": list(pt.periods),
        "alphabet": list(symbols),
        "cells": list(pt.torus.cells),
        "verified": pt.verified,
    }


def point_from_json(obj):
    """Returns ``(point, symbols)``; the verified flag is not trusted."""
    torus = TorusConfig(tuple(obj["periods"]), tuple(obj["cells"]))
    return PeriodicPoint(torus, False), tuple(obj["alphabet"])


def report_to_json(report, symbols, timings=False):
    return {
        "status": report.status,
        "certificate": point_to_json(report.certificate, symbols) if report.certificate else None,
        "witness": report.witness,
        "budgets": report.budgets,
        "details": report.details,
        "diagnostic": report.diagnostic or None,
        "timings": report.timings if timings else None,
    }


def symbol_chars(symbols):
    """One display character per symbol: its first character, or an index
    digit when that character is already taken."""
    used = set()
    out = []
    for i, s in enumerate(symbols):
        candidates = [s[0]] + list(str(i)) + [chr(c) for c in range(33, 127)]
        ch = next(c for c in candidates if c not in used)
        used.add(ch)
        out.append(ch)
    return out


def palette(k):
    """Evenly spaced hues, one RGB triple (0-255) per symbol index."""
    return [tuple(int(round(255 * c)) for c in colorsys.hsv_to_rgb(i / k, 0.65, 0.9))
            for i in range(k)]


def _window(pt, width, height):
    arr = pt.array
    if arr.ndim != 2:
        raise ValueError("only planar points can be rendered")
    xs = np.arange(width) % arr.shape[0]
    ys = np.arange(height) % arr.shape[1]
    return arr[np.ix_(xs, ys)]


def render_point(pt: PeriodicPoint, width, height, fmt, symbols) -> bytes:
    """ASCII rows (top row first) or a binary PPM image of a window."""
    if width < 1 or height < 1:
        raise ValueError("width and height must be at least 1")
    win = _window(pt, width, height)
    if fmt == "ascii":
        chars = symbol_chars(symbols)
        return "".join("".join(chars[v] for v in row) + "\n"
                       for row in rows_top_down(win)).encode()
    if fmt == "ppm":
        colors = np.array(palette(len(symbols)), dtype=np.uint8)
        rgb = colors[np.array(rows_top_down(win))]
        return f"P6\n{width} {height}\n255\n".encode() + rgb.tobytes()
    raise UnknownFormat(f"unknown render format {fmt!r}")
