"""SVG drawing of a rescaled disk system."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .geometry import DiskSystem
from .solver import cech_scale

_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def render_svg(system: DiskSystem, scale: float, width: int = 600) -> str:
    """Circles of radius ``scale * r_i``, center dots, and the witness point
    when the rescaled disks share one."""
    if system.dim != 2:
        raise ValueError("only planar systems can be drawn")
    c, r = system.centers, system.radii * scale
    lo = (c - r[:, None]).min(axis=0)
    hi = (c + r[:, None]).max(axis=0)
    span = float(max((hi - lo).max(), 1e-9))
    pad = 0.05 * span
    lo, hi = lo - pad, hi + pad
    w, h = hi - lo
    unit = span / width

    witness = None
    if np.all(system.radii > 0):
        res = cech_scale(system)
        if res.cech_scale <= scale:
            witness = res.witness

    def n(v):
        return repr(float(v))

    def y(v):
        # svg y grows downwards
        return n(hi[1] - v + lo[1])

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{int(round(width * h / w))}" viewBox="{n(lo[0])} {n(lo[1])} {n(w)} {n(h)}">',
        f"<title>disk system at scale {scale:.6g}</title>",
    ]
    for i, (center, radius) in enumerate(zip(c, r)):
        color = _COLORS[i % len(_COLORS)]
        out.append(f'<circle class="disk" cx="{n(center[0])}" cy="{y(center[1])}" r="{n(radius)}" '
                   f'fill={quoteattr(color)} fill-opacity="0.15" stroke={quoteattr(color)} '
                   f'stroke-width="{n(2 * unit)}"/>')
    for center in c:
        out.append(f'<circle class="center" cx="{n(center[0])}" cy="{y(center[1])}" '
                   f'r="{n(3 * unit)}" fill="black"/>')
    if witness is not None:
        out.append(f'<circle class="witness" cx="{n(witness[0])}" cy="{y(witness[1])}" '
                   f'r="{n(5 * unit)}" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
