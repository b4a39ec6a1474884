"""Static SVG pictures of domains and decorated paths.

Coordinates are exact until the final formatting step; identical inputs
produce identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .domains import Domain
from .paths import DecoratedPath

_SCALE = 40
_MARGIN = 60


def _fmt(value) -> str:
    return f"{float(value):.3f}"


class _Canvas:
    def __init__(self, width_units: Fraction, height_units: Fraction):
        self.width = float(width_units) * _SCALE + 2 * _MARGIN
        self.height = float(height_units) * _SCALE + 2 * _MARGIN
        self.parts: list[str] = []

    def to_px(self, p) -> tuple[str, str]:
        x = _MARGIN + float(p[0]) * _SCALE
        y = self.height - _MARGIN - float(p[1]) * _SCALE
        return _fmt(x), _fmt(y)

    def line(self, a, b, stroke: str, width: str = "1.5", dash: str | None = None):
        (x1, y1), (x2, y2) = self.to_px(a), self.to_px(b)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
        )

    def circle(self, p, r: str, fill: str):
        cx, cy = self.to_px(p)
        self.parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>')

    def text(self, p, content: str, fill: str = "black"):
        x, y = self.to_px(p)
        self.parts.append(
            f'<text x="{x}" y="{y}" font-size="12" fill="{fill}">{content}</text>'
        )

    def document(self) -> str:
        header = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
            f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">'
        )
        return header + "".join(self.parts) + "</svg>\n"


def render_domain(domain: Domain, decorated_paths: tuple[DecoratedPath, ...] = ()) -> str:
    """Cone rays, outer boundary, lattice dots, and optional decorated paths
    (h-labeled runs dashed)."""
    xs = [Fraction(v.x) for v in domain.vertices] + [Fraction(0)]
    ys = [Fraction(v.y) for v in domain.vertices] + [Fraction(0)]
    for dec in decorated_paths:
        for v in dec.path.vertices():
            xs.append(Fraction(v.x))
            ys.append(Fraction(v.y))
    span_x = max(xs) * Fraction(6, 5) + 1
    span_y = max(ys) * Fraction(6, 5) + 1
    canvas = _Canvas(span_x, span_y)

    frame = domain.frame
    canvas.line((0, 0), (0, span_y), "gray", "1")
    ray_reach = min(
        span_x / frame.n, span_y / frame.m if frame.m else span_x / frame.n
    )
    canvas.line((0, 0), (frame.n * ray_reach, frame.m * ray_reach), "gray", "1")
    for x in range(int(span_x) + 1):
        for y in range(int(span_y) + 1):
            if frame.n * y - frame.m * x >= 0:
                canvas.circle((x, y), "1.2", "#bbbbbb")

    for v, w in zip(domain.vertices, domain.vertices[1:]):
        canvas.line(v, w, "blue", "2")
    for v in domain.vertices:
        canvas.circle(v, "3", "blue")

    for dec in decorated_paths:
        verts = dec.path.vertices()
        for (v, w), lab in zip(zip(verts, verts[1:]), dec.labels):
            dash = "6,4" if lab == "h" else None
            canvas.line(v, w, "red", "2", dash)
            if lab == "h":
                mid = ((v.x + w.x) / 2, (v.y + w.y) / 2)
                canvas.text(mid, "h", "red")
        for v in verts:
            canvas.circle(v, "2.5", "red")
    return canvas.document()
