"""SVG 1.1 figure of a cheese: outer circle, I, optional capsules K_n, and
deleted discs coloured by stage."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .geometry import delta
from .schedule import CheeseDescription

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
VIEW = 1.05


@dataclass
class RenderOptions:
    width_px: int = 800
    stage_colors: dict[int, str] = field(default_factory=dict)
    show_I: bool = True
    show_K: tuple[int, ...] = ()


def _num(v) -> str:
    return repr(float(v))


def _color(stage: int, options: RenderOptions) -> str:
    return options.stage_colors.get(stage, PALETTE[(stage - 1) % len(PALETTE)])


def render_svg(c: CheeseDescription, options: RenderOptions | None = None) -> str:
    o = options or RenderOptions()
    w = int(o.width_px)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" '
        f'viewBox="{_num(-VIEW)} {_num(-VIEW)} {_num(2 * VIEW)} {_num(2 * VIEW)}">',
    ]
    if c.provenance:
        meta = json.dumps({k: c.provenance[k] for k in sorted(c.provenance)}, sort_keys=True)
        out.append(f"<metadata>{escape(meta)}</metadata>")
    out.append('<g transform="scale(1,-1)" stroke-width="0.004" vector-effect="non-scaling-stroke">')
    oc = c.outer
    out.append(f'<circle class="outer" cx="{_num(oc.center.x)}" cy="{_num(oc.center.y)}" r="{_num(oc.radius)}" '
               'fill="#fffbe6" stroke="#000000"/>')
    for n in o.show_K:
        d = _num(delta(n))
        out.append(
            f'<path class="capsule" data-level="{n}" fill="none" stroke="#888888" stroke-dasharray="0.02,0.01" '
            f'd="M -0.5,{d} L 0.5,{d} A {d} {d} 0 0 0 0.5,-{d} L -0.5,-{d} A {d} {d} 0 0 0 -0.5,{d} Z"/>'
        )
    if o.show_I:
        out.append('<line class="interval" x1="-0.5" y1="0.0" x2="0.5" y2="0.0" stroke="#000000"/>')
    for d in c.deletions:
        disc = d.disc
        out.append(
            f'<circle class="deletion" data-stage="{d.stage}" data-parent="{d.parent_index}" '
            f'cx="{_num(disc.center.x)}" cy="{_num(disc.center.y)}" r="{_num(disc.radius)}" '
            f'fill="{_color(d.stage, o)}" stroke="none"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
