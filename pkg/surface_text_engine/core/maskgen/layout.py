# Lays text out as uniform character cells inside an ROI
# core/maskgen/layout.py

import logging
from typing import List, Optional

from surface_text_engine.core.errors import RoiTooSmall, SurfaceTextError, UnsupportedCharacter
from surface_text_engine.core.maskgen.glyphs import GlyphSet, load_glyph_set
from surface_text_engine.core.schemas.config import LayoutConfig
from surface_text_engine.core.schemas.geometry import BBox2D
from surface_text_engine.core.schemas.maskgen import CharBox

logger = logging.getLogger(__name__)

SPACE = " "


class TextLayoutEngine:
    """
    Grid layout of character cells.

    Sizing rule:
    1. Split the trimmed text into lines (newline separated)
    2. Cell height h is the largest value for which the widest line and
       the stacked lines both fit inside the ROI minus margins
    3. Cells are w = aspect * h wide, separated by gap = char_gap_frac * w;
       rows are h * (1 + line_gap_frac) apart
    4. The line stack is centred vertically; each line is aligned
       left, centre or right
    """

    @staticmethod
    def split_lines(text: str, cfg: LayoutConfig) -> List[str]:
        trimmed = text.replace("\r\n", "\n").replace("\r", "\n").strip()
        if not trimmed:
            raise SurfaceTextError("text is empty after trimming")
        if cfg.fold_case:
            trimmed = trimmed.upper()
        return [line.rstrip() for line in trimmed.split("\n")]

    @staticmethod
    def validate(lines: List[str], glyphs: GlyphSet) -> None:
        for line_no, line in enumerate(lines):
            for col, ch in enumerate(line):
                if ch != SPACE and not glyphs.supports(ch):
                    raise UnsupportedCharacter(
                        f"character {ch!r} (U+{ord(ch):04X}) at line {line_no + 1}, "
                        f"column {col + 1} has no glyph",
                        character=ch,
                        line=line_no,
                        column=col,
                    )

    @staticmethod
    def cell_height(lines: List[str], roi: BBox2D, cfg: LayoutConfig) -> float:
        widest = max(len(line) for line in lines)
        rows = len(lines)
        avail_w = roi.w * (1.0 - 2.0 * cfg.margin_frac)
        avail_h = roi.h * (1.0 - 2.0 * cfg.margin_frac)

        by_width = avail_w / (cfg.char_aspect * (widest + (widest - 1) * cfg.char_gap_frac))
        by_height = avail_h / (rows + (rows - 1) * cfg.line_gap_frac)
        return min(by_width, by_height)

    @staticmethod
    def layout(text: str, roi: BBox2D, cfg: LayoutConfig, glyphs: GlyphSet) -> List[CharBox]:
        lines = TextLayoutEngine.split_lines(text, cfg)
        TextLayoutEngine.validate(lines, glyphs)

        h = TextLayoutEngine.cell_height(lines, roi, cfg)
        if h < cfg.min_font_px:
            raise RoiTooSmall(
                f"ROI {roi.w:g}x{roi.h:g} px leaves a {h:.2f} px font, "
                f"below the {cfg.min_font_px:g} px minimum",
                font_px=h,
            )

        w = cfg.char_aspect * h
        gap = cfg.char_gap_frac * w
        pitch_x = w + gap
        pitch_y = h * (1.0 + cfg.line_gap_frac)

        margin_x = roi.w * cfg.margin_frac
        stack_h = len(lines) * h + (len(lines) - 1) * h * cfg.line_gap_frac
        top = roi.cy - stack_h / 2.0

        boxes: List[CharBox] = []
        for line_no, line in enumerate(lines):
            line_w = len(line) * w + max(len(line) - 1, 0) * gap
            if cfg.align == "left":
                left = roi.x0 + margin_x
            elif cfg.align == "right":
                left = roi.x1 - margin_x - line_w
            else:
                left = roi.cx - line_w / 2.0

            cy = top + h / 2.0 + line_no * pitch_y
            for col, ch in enumerate(line):
                if ch == SPACE:
                    continue
                boxes.append(
                    CharBox(
                        ch=ch,
                        box=BBox2D(cx=left + col * pitch_x + w / 2.0, cy=cy, w=w, h=h),
                        line=line_no,
                        column=col,
                    )
                )

        logger.debug("Laid out %d character(s) in %d line(s), cell %.3fx%.3f px",
                     len(boxes), len(lines), w, h)
        return boxes


def layout_text(
    text: str,
    roi: BBox2D,
    cfg: Optional[LayoutConfig] = None,
    glyphs: Optional[GlyphSet] = None,
) -> List[CharBox]:
    """
    Uniform character cells for text inside the ROI rectangle.

    Raises:
        UnsupportedCharacter: a non-space character has no glyph
        RoiTooSmall: the fitted cell height is below min_font_px
    """
    return TextLayoutEngine.layout(text, roi, cfg or LayoutConfig(), glyphs or load_glyph_set())
