"""Deterministic JSON / CSV / SVG output with atomic file replacement."""

import csv
import io
import json
import math
import os
import tempfile

import numpy as np


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _plain(x.real), "im": _plain(x.imag)}
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    return x


def to_json(obj):
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_csv(rows, columns):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="raise")
    w.writeheader()
    for r in rows:
        w.writerow({k: _csv_cell(r[k]) for k in columns})
    return buf.getvalue()


def _csv_cell(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return x


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary file in the same directory."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- SVG

CANVAS = 1000


def _f(x):
    return f"{x:.4f}"


class SvgCanvas:
    """Elements are kept with a sort key and emitted in key order."""

    def __init__(self, size=CANVAS):
        self.size = size
        self._items = []

    def _add(self, key, text):
        self._items.append((key, len(self._items), text))

    def polyline(self, key, pts, stroke="#000", width=1.0, closed=False, fill="none"):
        tag = "polygon" if closed else "polyline"
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
        self._add(
            key,
            f'<{tag} points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>',
        )

    def circle(self, key, cx, cy, r, stroke="#000", width=1.0, fill="none"):
        self._add(
            key,
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="{fill}" '
            f'stroke="{stroke}" stroke-width="{width}"/>',
        )

    def text(self, key, x, y, s, size=14):
        self._add(key, f'<text x="{_f(x)}" y="{_f(y)}" font-size="{size}">{s}</text>')

    def render(self):
        body = "\n".join(t for _, _, t in sorted(self._items))
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
            f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">\n'
            f'<rect width="{self.size}" height="{self.size}" fill="#fff"/>\n'
            f"{body}\n</svg>\n"
        )


class DiskView:
    """Maps the closed unit disk onto the canvas with a margin."""

    def __init__(self, canvas, margin=20):
        self.c = canvas
        self.r = canvas.size / 2 - margin

    def xy(self, w):
        w = complex(w)
        half = self.c.size / 2
        return (half + self.r * w.real, half - self.r * w.imag)

    def boundary(self, key="000"):
        half = self.c.size / 2
        self.c.circle(key, half, half, self.r, stroke="#888")


class PlaneView:
    """Maps a rectangle of the complex plane onto the canvas."""

    def __init__(self, canvas, lo, hi, margin=20):
        self.c = canvas
        self.lo, self.hi = complex(lo), complex(hi)
        self.margin = margin

    def xy(self, z):
        z = complex(z)
        span = self.c.size - 2 * self.margin
        sx = span / (self.hi.real - self.lo.real)
        sy = span / (self.hi.imag - self.lo.imag)
        return (
            self.margin + (z.real - self.lo.real) * sx,
            self.c.size - self.margin - (z.imag - self.lo.imag) * sy,
        )
