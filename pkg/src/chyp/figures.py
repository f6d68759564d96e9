"""SVG figures: the deltoid with trace trajectories, and the 18-gon."""

import math

import numpy as np

from .io import DiskView, PlaneView, SvgCanvas
from .isometry import deltoid_point
from .realhyp import point_along, to_disk

COLORS = ("#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e")


def _geodesic_samples(g, n=200):
    """Points along a full geodesic line, in the upper half-plane."""
    c, rho = g.circle
    if math.isinf(rho):
        ys = np.logspace(-6, 6, n)
        return [complex(c, y) for y in ys]
    th = np.linspace(1e-6, math.pi - 1e-6, n)
    return [complex(c + rho * math.cos(t), rho * math.sin(t)) for t in th]


def deltoid_svg(trajectories=(), points=(), n=720):
    """Deltoid ``f = 0`` in the trace plane, with labelled trajectories
    ``(name, traces)`` and isolated points ``(name, trace)``."""
    canvas = SvgCanvas()
    pts = [deltoid_point(t) for t in np.linspace(0, 2 * math.pi, n, endpoint=False)]
    extent = 3.5
    for _, tr in trajectories:
        if len(tr):
            extent = max(extent, float(np.max(np.abs(np.asarray(tr)))) * 1.05)
    for _, z in points:
        extent = max(extent, abs(complex(z)) * 1.05)
    view = PlaneView(canvas, complex(-extent, -extent), complex(extent, extent))
    canvas.polyline("00-axis-re", [view.xy(-extent), view.xy(extent)], stroke="#ccc")
    canvas.polyline(
        "00-axis-im", [view.xy(complex(0, -extent)), view.xy(complex(0, extent))], stroke="#ccc"
    )
    canvas.polyline("01-deltoid", [view.xy(z) for z in pts], stroke="#000", width=1.5, closed=True)
    for i, (name, tr) in enumerate(trajectories):
        col = COLORS[i % len(COLORS)]
        key = f"10-traj-{i:03d}"
        canvas.polyline(key, [view.xy(z) for z in tr], stroke=col, width=1.5)
        canvas.text(key + "-label", 30, 40 + 20 * i, name)
    for i, (name, z) in enumerate(points):
        x, y = view.xy(z)
        key = f"20-point-{i:03d}"
        canvas.circle(key, x, y, 4, stroke="#000", fill="#000")
        canvas.text(key + "-label", x + 6, y - 6, name)
    return canvas.render()


def gon18_svg(polygon, chords, axis):
    """Polygon ``P``, chord system, and the full axis in the disk model."""
    canvas = SvgCanvas()
    view = DiskView(canvas)
    view.boundary()
    n = len(polygon)
    for k in range(n):
        a, b = polygon.side(k)
        seg = [to_disk(point_along(a, b, t)) for t in np.linspace(0, 1, 40)]
        canvas.polyline(f"10-side-{k:03d}", [view.xy(w) for w in seg], stroke="#000", width=1.5)
    for i, c in enumerate(chords):
        seg = [to_disk(point_along(c.entry, c.exit, t)) for t in np.linspace(0, 1, 60)]
        canvas.polyline(f"20-chord-{i:03d}", [view.xy(w) for w in seg], stroke="#2471a3")
    line = [view.xy(to_disk(z)) for z in _geodesic_samples(axis)]
    canvas.polyline("30-axis", line, stroke="#c0392b", width=2.0)
    return canvas.render()
