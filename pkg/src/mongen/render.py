"""Column diagrams for complexes: rows are vertices, columns maximal simplices."""

from __future__ import annotations

from mongen.core import Complex

# All styling constants in one place; colors carry no meaning.
SVG_CELL = 22          # cell edge length in px
SVG_PAD = 6            # outer padding
SVG_GAP = 8            # gap between the label column and the grid
SVG_FILL = "#8a8a8a"   # filled cell
SVG_EMPTY = "#f2f2f2"  # empty cell
SVG_LABEL = "#222222"  # label text


def render_ascii(k: Complex) -> str:
    lines = []
    for v in range(k.n):
        row = "".join("#" if v in s else "." for s in k.maximal)
        lines.append(f"{v:>3} {row}")
    return "\n".join(lines) + "\n"


def render_svg(k: Complex) -> str:
    cols = len(k.maximal)
    width = SVG_PAD * 2 + SVG_CELL + SVG_GAP + cols * SVG_CELL
    height = SVG_PAD * 2 + k.n * SVG_CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    x0 = SVG_PAD + SVG_CELL + SVG_GAP
    for v in range(k.n):
        y = SVG_PAD + v * SVG_CELL
        parts.append(
            f'<text x="{SVG_PAD + SVG_CELL // 2}" y="{y + SVG_CELL - 6}" '
            f'font-family="monospace" font-size="{SVG_CELL - 8}" '
            f'fill="{SVG_LABEL}" text-anchor="middle">{v}</text>')
        for c, s in enumerate(k.maximal):
            fill = SVG_FILL if v in s else SVG_EMPTY
            parts.append(
                f'<rect x="{x0 + c * SVG_CELL}" y="{y}" width="{SVG_CELL - 2}" '
                f'height="{SVG_CELL - 2}" fill="{fill}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
