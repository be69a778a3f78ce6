"""Deterministic SVG 1.1 diagrams of construction stages.

One horizontal row per stage, top to bottom. Exact rational coordinates
are converted to whole pixels with round-half-up integer arithmetic, so
equal inputs always produce byte-identical documents. Degenerate point
components appear as marks one pixel wide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructions import ConstructionSpec, iterate
from .errors import ValidationError

_PAD = 10
_GUTTER = 36
_BAR_GAP = 6


@dataclass(frozen=True)
class RenderConfig:
    width_px: int = 800
    row_height_px: int = 24
    depth: int = 4
    label: bool = False

    def __post_init__(self) -> None:
        if self.width_px < 100:
            raise ValidationError(f"render width must be at least 100 px, got {self.width_px}")
        if self.row_height_px < 8:
            raise ValidationError(
                f"row height must be at least 8 px, got {self.row_height_px}")
        if self.depth < 0:
            raise ValidationError("render depth must be nonnegative")


def _half_up(x: Fraction) -> int:
    """Nearest integer, ties away from zero; exact for nonnegative input."""
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def render_svg(spec: ConstructionSpec, cfg: RenderConfig = RenderConfig()) -> str:
    stages = iterate(spec, cfg.depth)
    gutter = _GUTTER if cfg.label else 0
    inner = cfg.width_px - gutter - 2 * _PAD
    height = 2 * _PAD + len(stages) * cfg.row_height_px
    bar_h = max(1, cfg.row_height_px - _BAR_GAP)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{cfg.width_px}" height="{height}" '
        f'viewBox="0 0 {cfg.width_px} {height}">',
        f'<rect width="{cfg.width_px}" height="{height}" fill="#ffffff"/>',
        '<g fill="#1f2430">',
    ]
    for row, stage in enumerate(stages):
        y = _PAD + row * cfg.row_height_px
        for iv in stage.intervals:
            x0 = gutter + _PAD + _half_up(iv.lo * inner)
            x1 = gutter + _PAD + _half_up(iv.hi * inner)
            w = max(1, x1 - x0)
            lines.append(f'<rect x="{x0}" y="{y}" width="{w}" height="{bar_h}"/>')
    lines.append('</g>')
    if cfg.label:
        lines.append('<g font-family="monospace" font-size="12" fill="#555555">')
        for row, stage in enumerate(stages):
            y = _PAD + row * cfg.row_height_px + bar_h - 1
            lines.append(f'<text x="{_PAD}" y="{y}">{stage.index}</text>')
        lines.append('</g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
