"""Minimal deterministic SVG 1.1 writer for 2-D construction diagrams."""
from __future__ import annotations

import math
from html import escape

import numpy as np

STATE_COLOR = "#1f4e9c"
CONJ_COLOR = "#c0392b"
REF_COLOR = "#2e7d32"
OUTLINE = "#333333"


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Scene:
    """Collects primitives in world coordinates; y points up."""

    def __init__(self, bounds, size=480, margin=48):
        xmin, xmax, ymin, ymax = bounds
        span = max(xmax - xmin, ymax - ymin, 1e-9)
        self.scale = (size - 2 * margin) / span
        self.xmin, self.ymax = xmin, ymax
        self.ox = margin + 0.5 * ((size - 2 * margin) - (xmax - xmin) * self.scale)
        self.oy = margin + 0.5 * ((size - 2 * margin) - (ymax - ymin) * self.scale)
        self.size = size
        self.items: list[str] = []

    def _xy(self, p):
        return (self.ox + (p[0] - self.xmin) * self.scale,
                self.oy + (self.ymax - p[1]) * self.scale)

    def polygon(self, points, stroke=OUTLINE, fill="#f4f4f4", dashed=False, cls="outline"):
        pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in map(self._xy, points))
        dash = ' stroke-dasharray="5,4"' if dashed else ""
        self.items.append(f'<polygon class="{cls}" points="{pts}" fill="{fill}" '
                          f'stroke="{stroke}" stroke-width="1.5"{dash}/>')

    def circle(self, center, radius, stroke=OUTLINE, fill="#f4f4f4", cls="outline"):
        x, y = self._xy(center)
        self.items.append(f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" '
                          f'r="{_f(radius * self.scale)}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="1.5"/>')

    def segment(self, a, b, stroke="#777777", dashed=True, cls="construction"):
        (x1, y1), (x2, y2) = self._xy(a), self._xy(b)
        dash = ' stroke-dasharray="4,3"' if dashed else ""
        self.items.append(f'<line class="{cls}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" '
                          f'y2="{_f(y2)}" stroke="{stroke}" stroke-width="1"{dash}/>')

    def point(self, p, label, color, cls):
        x, y = self._xy(p)
        self.items.append(f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="4" '
                          f'fill="{color}"/>')
        self.items.append(f'<text class="label" x="{_f(x + 6)}" y="{_f(y - 6)}" '
                          f'font-size="13" fill="{color}">{escape(label)}</text>')

    def caption(self, text, line=0):
        y = self.size - 30 + 16 * line
        self.items.append(f'<text class="caption" x="12" y="{y}" font-size="13" '
                          f'fill="#000000">{escape(text)}</text>')

    def title(self, text):
        self.items.append(f'<text class="title" x="12" y="20" font-size="15" '
                          f'font-weight="bold" fill="#000000">{escape(text)}</text>')

    def to_svg(self) -> str:
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{self.size}" height="{self.size + 24}" '
                f'viewBox="0 0 {self.size} {self.size + 24}">\n'
                f'<rect width="100%" height="100%" fill="#ffffff"/>\n')
        return head + "\n".join(self.items) + "\n</svg>\n"


def hull_order(points) -> np.ndarray:
    """Indices of 2-D extreme points in counter-clockwise order."""
    P = np.asarray(points, dtype=float)
    c = P.mean(axis=0)
    ang = np.arctan2(P[:, 1] - c[1], P[:, 0] - c[0])
    return np.lexsort((np.hypot(*(P - c).T), ang))


def _bounds(points, pad=0.08):
    P = np.asarray(points, dtype=float)
    lo, hi = P.min(axis=0), P.max(axis=0)
    d = max(float(np.max(hi - lo)), 1e-6) * pad
    return lo[0] - d, hi[0] + d, lo[1] - d, hi[1] + d


def construction_scene(outline, states, conjugates, reference, title, captions=(),
                       disc=False) -> Scene:
    """Outline (polygon vertices or, with ``disc``, the unit circle), rays s_i -> t_i."""
    pts = [np.asarray(p, float) for p in (*states, *conjugates, reference)]
    if disc:
        scene = Scene((-1.1, 1.1, -1.1, 1.1))
        scene.circle((0.0, 0.0), 1.0)
    else:
        O = np.asarray(outline, dtype=float)
        scene = Scene(_bounds(np.vstack([O, *pts])))
        if len(O) >= 3:
            scene.polygon(O[hull_order(O)])
        else:
            scene.segment(O[0], O[-1], stroke=OUTLINE, dashed=False, cls="outline")
    n = len(states)
    if n >= 3:
        S = np.asarray(states, float)
        T = np.asarray(conjugates, float)
        scene.polygon(S[hull_order(S)], stroke=STATE_COLOR, fill="none", dashed=True,
                      cls="state-hull")
        scene.polygon(T[hull_order(T)], stroke=CONJ_COLOR, fill="none", dashed=True,
                      cls="conjugate-hull")
    for s, t in zip(states, conjugates):
        scene.segment(s, t)
    for i, s in enumerate(states, 1):
        scene.point(s, f"s{i}", STATE_COLOR, "state")
    for i, t in enumerate(conjugates, 1):
        scene.point(t, f"t{i}", CONJ_COLOR, "conjugate")
    scene.point(reference, "s", REF_COLOR, "reference")
    scene.title(title)
    for k, text in enumerate(captions):
        scene.caption(text, k)
    return scene


def great_circle_basis(a, b) -> np.ndarray:
    """Orthonormal 2x3 basis of a plane through the origin containing ``a`` and ``b``."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    d = a - b
    e1 = d / np.linalg.norm(d)
    for v in (a, b, np.eye(3)[2], np.eye(3)[0], np.eye(3)[1]):
        w = v - (v @ e1) * e1
        if np.linalg.norm(w) > 1e-9:
            return np.vstack([e1, w / np.linalg.norm(w)])
    raise ValueError("unreachable: some axis is not parallel to e1")


def ratio_caption(ratio: float, label: str = "Helstrom ratio") -> str:
    return f"{label} p = {ratio:.6f}" if math.isfinite(ratio) else label
