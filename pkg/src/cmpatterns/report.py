"""Deterministic report emission: canonical JSON, CSV tables, and a small
SVG line plotter.

Reports must be byte-identical across runs with the same configuration and
seed, so nothing here writes timestamps, hostnames, or float formats that
depend on locale.  Floats go through repr (shortest round-trip form) and
non-finite values are spelled out as the strings "inf"/"-inf"/"nan" since
strict JSON has no encoding for them.
"""

import csv
import json
from dataclasses import asdict, is_dataclass
from enum import Enum

import numpy as np


def jsonable(obj):
    """Recursively convert numpy scalars/arrays, Enums, dataclasses and
    tuples into plain JSON-serializable Python objects."""
    if isinstance(obj, Enum):
        return obj.value
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if f != f:
            return "nan"
        if f == float("inf"):
            return "inf"
        if f == float("-inf"):
            return "-inf"
        return f
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def canonical_json(obj) -> str:
    """Sorted-key, indented JSON with a trailing newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(canonical_json(obj))


def write_csv(path, header, rows) -> None:
    """CSV with a header row; floats are written in repr form."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating))
                             else v for v in row])


# fixed palette, cycled per series
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#17becf")

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 62, 16, 26, 46  # margins: left, right, top, bottom


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float):
    return (lo, 0.5 * (lo + hi), hi)


def svg_line_plot(series, title: str = "", x_label: str = "", y_label: str = "",
                  y_window=None) -> str:
    """Render series = [(label, xs, ys), ...] as a single SVG string.

    Points that are non-finite, or that fall outside an explicit y_window,
    break the polyline into separate segments instead of being clamped, so
    curves with poles (like C(u)) keep their branch structure.
    """
    finite_x, finite_y = [], []
    for _, xs, ys in series:
        for x, y in zip(xs, ys):
            if np.isfinite(x) and np.isfinite(y):
                if y_window is None or (y_window[0] <= y <= y_window[1]):
                    finite_x.append(float(x))
                    finite_y.append(float(y))
    if finite_x:
        x_lo, x_hi = min(finite_x), max(finite_x)
        y_lo, y_hi = min(finite_y), max(finite_y)
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    if x_hi <= x_lo:
        x_hi = x_lo + max(1.0, abs(x_lo))
    if y_hi <= y_lo:
        y_hi = y_lo + max(1.0, abs(y_lo))
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def px(x):
        return _ML + plot_w * (x - x_lo) / (x_hi - x_lo)

    def py(y):
        return _MT + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo))

    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
               f'height="{_H}" viewBox="0 0 {_W} {_H}">')
    out.append(f'<rect width="{_W}" height="{_H}" fill="white"/>')
    out.append(f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
               'fill="none" stroke="#444444" stroke-width="1"/>')
    if title:
        out.append(f'<text x="{_W // 2}" y="17" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="13">{title}</text>')
    for tx in _ticks(x_lo, x_hi):
        out.append(f'<text x="{_fmt(px(tx))}" y="{_H - _MB + 16}" '
                   'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{tx:.4g}</text>')
    for ty in _ticks(y_lo, y_hi):
        out.append(f'<text x="{_ML - 6}" y="{_fmt(py(ty) + 4)}" '
                   'text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{ty:.4g}</text>')
    if x_label:
        out.append(f'<text x="{_W // 2}" y="{_H - 8}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{x_label}</text>')
    if y_label:
        out.append(f'<text x="14" y="{_MT - 8}" text-anchor="start" '
                   f'font-family="sans-serif" font-size="12">{y_label}</text>')

    for k, (label, xs, ys) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        segment: list = []
        segments = []
        for x, y in zip(xs, ys):
            ok = np.isfinite(x) and np.isfinite(y)
            if ok and y_window is not None:
                ok = y_window[0] <= y <= y_window[1]
            if ok:
                segment.append((float(x), float(y)))
            elif segment:
                segments.append(segment)
                segment = []
        if segment:
            segments.append(segment)
        for seg in segments:
            if len(seg) == 1:
                cx, cy = seg[0]
                out.append(f'<circle cx="{_fmt(px(cx))}" cy="{_fmt(py(cy))}" '
                           f'r="2" fill="{color}"/>')
                continue
            points = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in seg)
            out.append(f'<polyline points="{points}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5"/>')
        if label:
            ly = _MT + 14 + 14 * k
            out.append(f'<line x1="{_W - _MR - 86}" y1="{ly - 4}" '
                       f'x2="{_W - _MR - 70}" y2="{ly - 4}" '
                       f'stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{_W - _MR - 64}" y="{ly}" '
                       'font-family="sans-serif" font-size="11">'
                       f'{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, svg_text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg_text)
