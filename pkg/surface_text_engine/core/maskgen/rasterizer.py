# Rasterizes glyph stamps into aligned quads (binary character mask)
# core/maskgen/rasterizer.py

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from surface_text_engine.core.errors import DegenerateQuad, PointAtInfinity
from surface_text_engine.core.geometry.homography import quad_to_unit_square
from surface_text_engine.core.maskgen.glyphs import GlyphSet, load_glyph_set
from surface_text_engine.core.schemas.config import RasterConfig
from surface_text_engine.core.schemas.geometry import Quad2D
from surface_text_engine.core.schemas.maskgen import CharQuad, MaskImage

logger = logging.getLogger(__name__)

MASK_ON = 255


def snap_quad(quad: Quad2D, grid: float) -> Quad2D:
    """Round corners to a fine grid so near-identical corner sets rasterize alike."""
    snapped = np.round(quad.as_array() / grid) * grid
    return Quad2D.from_array(snapped + 0.0)


def _pixel_window(quad: Quad2D, size: Tuple[int, int]) -> Optional[Tuple[int, int, int, int]]:
    width, height = size
    x_min, y_min, x_max, y_max = quad.bounding_box()
    x0 = max(0, int(math.floor(x_min)))
    y0 = max(0, int(math.floor(y_min)))
    x1 = min(width, int(math.ceil(x_max)))
    y1 = min(height, int(math.ceil(y_max)))
    if x0 >= x1 or y0 >= y1:
        return None
    return x0, y0, x1, y1


def stamp_coverage(
    stamp: np.ndarray,
    quad: Quad2D,
    size: Tuple[int, int],
    threshold: float = 0.5,
) -> Optional[Tuple[Tuple[int, int, int, int], np.ndarray]]:
    """
    Boolean coverage of one stamp warped into quad, restricted to the
    clipped pixel window of the quad.

    Pixel centres are mapped through the quad -> unit-square homography
    and the stamp is sampled at the nearest stamp cell.
    """
    window = _pixel_window(quad, size)
    if window is None:
        return None
    x0, y0, x1, y1 = window

    to_unit = quad_to_unit_square(quad)
    ys, xs = np.mgrid[y0:y1, x0:x1]
    centres = np.stack([xs.ravel() + 0.5, ys.ravel() + 0.5], axis=1).astype(np.float64)
    st = to_unit.apply_many(centres)
    s = st[:, 0]
    t = st[:, 1]

    inside = (s >= 0.0) & (s < 1.0) & (t >= 0.0) & (t < 1.0)
    rows_n, cols_n = stamp.shape
    cols = np.clip(np.floor(s * cols_n), 0, cols_n - 1).astype(np.int64)
    rows = np.clip(np.floor(t * rows_n), 0, rows_n - 1).astype(np.int64)
    ink = stamp[rows, cols].astype(np.float64) >= threshold

    covered = (inside & ink).reshape(y1 - y0, x1 - x0)
    return window, covered


def rasterize_mask(
    quads: List[CharQuad],
    image_size: Tuple[int, int],
    glyphs: Optional[GlyphSet] = None,
    cfg: Optional[RasterConfig] = None,
) -> MaskImage:
    """
    Binary mask (0/255) with every glyph drawn into its quad. Coverage of
    overlapping quads merges with a bitwise OR; parts outside the image
    are clipped.
    """
    cfg = cfg or RasterConfig()
    glyphs = glyphs or load_glyph_set(stamp_size=cfg.stamp_size)
    width, height = image_size
    canvas = np.zeros((height, width), dtype=bool)

    for index, char_quad in enumerate(quads):
        quad = snap_quad(char_quad.quad, cfg.snap_px)
        try:
            result = stamp_coverage(glyphs.stamp(char_quad.ch), quad, image_size, cfg.threshold)
        except (DegenerateQuad, PointAtInfinity) as e:
            logger.warning("Skipping quad %d (%r): %s", index, char_quad.ch, e)
            continue
        if result is None:
            continue
        (x0, y0, x1, y1), covered = result
        canvas[y0:y1, x0:x1] |= covered

    mask = np.where(canvas, MASK_ON, 0).astype(np.uint8)
    logger.debug("Rasterized %d quad(s), %d lit pixel(s)", len(quads), int(canvas.sum()))
    return MaskImage(mask)
