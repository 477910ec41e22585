"""Risk-matrix grid model and text/SVG renderers."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .fuzzy_core import assess_risk

COLORS = ("green", "yellow", "orange", "red")  # Low, Medium, High, Critical
COLOR_LETTER = {"green": "G", "yellow": "Y", "orange": "O", "red": "R"}
COLOR_HEX = {"green": "#2e7d32", "yellow": "#f9a825", "orange": "#ef6c00", "red": "#c62828"}

# Published 5x5 layout, top row = most likely, columns = impact low -> high.
PUBLISHED_LAYOUT = (
    ("green", "yellow", "orange", "red", "red"),
    ("green", "yellow", "yellow", "orange", "red"),
    ("green", "green", "yellow", "orange", "orange"),
    ("green", "green", "yellow", "yellow", "orange"),
    ("green", "green", "green", "yellow", "yellow"),
)

CANVAS_W, CANVAS_H = 800, 600


@dataclass(frozen=True)
class GridCell:
    color: str
    risks: tuple = ()


@dataclass(frozen=True)
class RiskMatrixGrid:
    """Cells indexed ``[row][col]``; row 0 is the most likely term."""

    likelihood_labels: tuple  # top to bottom
    impact_labels: tuple  # left to right
    cells: tuple

    def cell(self, likelihood, impact):
        return self.cells[self.likelihood_labels.index(likelihood)][self.impact_labels.index(impact)]

    def placement(self, code):
        for r, row in enumerate(self.cells):
            for c, cell in enumerate(row):
                if code in cell.risks:
                    return self.likelihood_labels[r], self.impact_labels[c]
        raise KeyError(code)

    def to_dict(self):
        return {"rows": list(self.likelihood_labels), "columns": list(self.impact_labels),
                "cells": [[{"color": cell.color, "risks": list(cell.risks)} for cell in row]
                          for row in self.cells]}


def argmax_term(x, var):
    """Index of the strongest term at ``x``; ties go to the more severe term."""
    degrees = var.memberships(x)
    return len(degrees) - 1 - int(np.argmax(degrees[::-1]))


def cell_colors(cfg, recompute=False):
    """Colour grid (top row most likely). Published layout unless recomputed."""
    n_l, n_i = len(cfg.likelihood_var), len(cfg.impact_var)
    if not recompute and (n_l, n_i) == (5, 5):
        return PUBLISHED_LAYOUT
    rows = []
    for a in reversed(range(n_l)):
        lx = cfg.likelihood_var.sets[a].peak
        row = []
        for b in range(n_i):
            level = assess_risk(lx, cfg.impact_var.sets[b].peak, cfg).level
            row.append(COLORS[cfg.risk_var.index(level)])
        rows.append(tuple(row))
    return tuple(rows)


def build_grid(inputs, cfg, recompute_colors=False):
    """Place each risk at its argmax likelihood term x argmax impact term.

    ``inputs`` maps risk code -> (likelihood_x, impact_x); codes keep their
    mapping order inside a cell.
    """
    colors = cell_colors(cfg, recompute_colors)
    n_l, n_i = len(cfg.likelihood_var), len(cfg.impact_var)
    placed = [[[] for _ in range(n_i)] for _ in range(n_l)]
    for code, (lx, ix) in inputs.items():
        row = n_l - 1 - argmax_term(lx, cfg.likelihood_var)
        placed[row][argmax_term(ix, cfg.impact_var)].append(code)
    cells = tuple(tuple(GridCell(colors[r][c], tuple(placed[r][c])) for c in range(n_i))
                  for r in range(n_l))
    return RiskMatrixGrid(tuple(reversed(cfg.likelihood_var.labels)), cfg.impact_var.labels, cells)


def empty_grid(cfg):
    return build_grid({}, cfg)


def render_matrix_ascii(grid: RiskMatrixGrid) -> str:
    corner = "Likelihood \\ Impact"
    texts = [[" ".join([COLOR_LETTER[cell.color], ",".join(cell.risks)]).rstrip()
              for cell in row] for row in grid.cells]
    first_w = max(len(corner), *(len(l) for l in grid.likelihood_labels))
    widths = [max(len(h), *(len(texts[r][c]) for r in range(len(texts))))
              for c, h in enumerate(grid.impact_labels)]
    rule = "+" + "+".join("-" * (w + 2) for w in [first_w, *widths]) + "+"

    def line(first, cols):
        return "| " + " | ".join([first.ljust(first_w)] + [t.ljust(w) for t, w in zip(cols, widths)]) + " |"

    out = [rule, line(corner, grid.impact_labels), rule.replace("-", "=")]
    for label, row in zip(grid.likelihood_labels, texts):
        out.append(line(label, row))
        out.append(rule)
    return "\n".join(out) + "\n"


def _svg_open(title):
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_W}" height="{CANVAS_H}" '
        f'viewBox="0 0 {CANVAS_W} {CANVAS_H}" font-family="Helvetica, Arial, sans-serif" '
        'style="background:#ffffff">',
        f'<text x="{CANVAS_W // 2}" y="28" font-size="18" text-anchor="middle">{escape(title)}</text>',
    ]


def render_matrix_svg(grid: RiskMatrixGrid, title="Climate transition risk matrix") -> str:
    left, top, right, bottom = 130, 80, 20, 50
    n_r, n_c = len(grid.cells), len(grid.cells[0])
    cw = (CANVAS_W - left - right) / n_c
    ch = (CANVAS_H - top - bottom) / n_r
    out = _svg_open(title)
    for c, label in enumerate(grid.impact_labels):
        x = left + (c + 0.5) * cw
        out.append(f'<text x="{x:.1f}" y="{top - 10}" font-size="13" text-anchor="middle">{escape(label)}</text>')
    for r, (label, row) in enumerate(zip(grid.likelihood_labels, grid.cells)):
        y = top + r * ch
        out.append(f'<text x="{left - 8}" y="{y + ch / 2 + 4:.1f}" font-size="13" '
                   f'text-anchor="end">{escape(label)}</text>')
        for c, cell in enumerate(row):
            x = left + c * cw
            out.append(f'<rect class="cell" x="{x:.1f}" y="{y:.1f}" width="{cw:.1f}" height="{ch:.1f}" '
                       f'fill="{COLOR_HEX[cell.color]}" stroke="#ffffff" stroke-width="2"/>')
            lines = [", ".join(cell.risks[i:i + 3]) for i in range(0, len(cell.risks), 3)]
            for k, text in enumerate(lines):
                ty = y + 20 + 15 * k
                out.append(f'<text x="{x + cw / 2:.1f}" y="{ty:.1f}" font-size="12" fill="#ffffff" '
                           f'text-anchor="middle" font-weight="bold">{escape(text)}</text>')
    out.append(f'<text x="{left + (CANVAS_W - left - right) / 2:.1f}" y="{CANVAS_H - 15}" '
               f'font-size="14" text-anchor="middle">Impact</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def diverging_color(v):
    """Linear blue (-1) -> white (0) -> red (+1)."""
    v = min(1.0, max(-1.0, float(v)))
    if v >= 0.0:
        fade = round(255 * (1.0 - v))
        rgb = (255, fade, fade)
    else:
        fade = round(255 * (1.0 + v))
        rgb = (fade, fade, 255)
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def render_heatmap_svg(corr, title="Kendall rank correlation") -> str:
    k = len(corr.methods)
    left, top = 120, 110
    size = min((CANVAS_W - left - 20) / k, (CANVAS_H - top - 20) / k)
    out = _svg_open(title)
    for j, name in enumerate(corr.methods):
        x = left + (j + 0.5) * size
        out.append(f'<text x="{x:.1f}" y="{top - 8}" font-size="11" text-anchor="start" '
                   f'transform="rotate(-45 {x:.1f} {top - 8})">{escape(name)}</text>')
    for i, name in enumerate(corr.methods):
        y = top + i * size
        out.append(f'<text x="{left - 6}" y="{y + size / 2 + 4:.1f}" font-size="11" '
                   f'text-anchor="end">{escape(name)}</text>')
        for j in range(k):
            v = corr.values[i, j]
            x = left + j * size
            out.append(f'<rect class="cell" x="{x:.1f}" y="{y:.1f}" width="{size:.1f}" height="{size:.1f}" '
                       f'fill="{diverging_color(v)}" stroke="#ffffff" stroke-width="1"/>')
            out.append(f'<text x="{x + size / 2:.1f}" y="{y + size / 2 + 4:.1f}" font-size="10" '
                       f'text-anchor="middle">{v:.2f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
