"""SVG drawings of lozenge tilings."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .tilings.lozenges import LEFT, RIGHT, VERTICAL, Tile

COLORS = {LEFT: "#e0b040", RIGHT: "#4a7bc0", VERTICAL: "#c84b3c"}


def tiling_svg(tiles: list[Tile], scale: float = 20.0, margin: float = 10.0, title: str | None = None) -> str:
    """One <polygon> per tile, colored by type; y grows upward in the picture."""
    if not tiles:
        raise ValueError("nothing to draw")
    pts = [p for t in tiles for p in t.cartesian()]
    xmin = min(x for x, _ in pts)
    xmax = max(x for x, _ in pts)
    ymin = min(y for _, y in pts)
    ymax = max(y for _, y in pts)
    width = (xmax - xmin) * scale + 2 * margin
    height = (ymax - ymin) * scale + 2 * margin

    def sx(x):
        return (x - xmin) * scale + margin

    def sy(y):
        return (ymax - y) * scale + margin

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">'
    ]
    if title:
        lines.append(f"<title>{title}</title>")
    for t in tiles:
        poly = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in t.cartesian())
        lines.append(
            f'<polygon class={quoteattr(t.type)} points="{poly}" fill="{COLORS[t.type]}" '
            f'stroke="#222" stroke-width="0.8"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
