# Aligns laid-out character cells with the surface under the ROI
# core/maskgen/alignment.py

import logging
from typing import List, Optional

from surface_text_engine.core.errors import DegenerateNormal, EmptyRoi, IncoherentNormals, SurfaceTextError
from surface_text_engine.core.geometry.projection import align_bbox
from surface_text_engine.core.normals.aggregation import COHERENCE_THRESHOLD, dominant_normal
from surface_text_engine.core.schemas.config import ProjectionConfig
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.maskgen import CharBox, CharQuad
from surface_text_engine.core.schemas.normals import NormalField, RoiMask

logger = logging.getLogger(__name__)


def _with_box_index(error: SurfaceTextError, index: int, box: CharBox) -> SurfaceTextError:
    context = dict(error.context)
    context["box_index"] = index
    return type(error)(f"box {index} ({box.ch!r}): {error.message}", **context)


def _box_normal(
    index: int,
    box: CharBox,
    field: NormalField,
    roi: RoiMask,
    fallback: Optional[UnitVec3],
    coherence_threshold: float,
) -> UnitVec3:
    region = roi.intersect_rect(box.box.x0, box.box.y0, box.box.x1, box.box.y1)
    try:
        return dominant_normal(field, region, coherence_threshold)
    except EmptyRoi:
        logger.debug("Box %d (%r) covers no ROI pixel, using the ROI-wide normal", index, box.ch)
        return fallback


def align_char_boxes(
    boxes: List[CharBox],
    field: NormalField,
    roi: RoiMask,
    cfg: Optional[ProjectionConfig] = None,
    per_char: bool = False,
    coherence_threshold: float = COHERENCE_THRESHOLD,
    region_normal: Optional[UnitVec3] = None,
) -> List[CharQuad]:
    """
    Surface-aligned quads, one per box, in input order.

    By default one dominant normal over the whole ROI drives every box.
    With per_char, each box uses the dominant normal of ROI pixels inside
    the box (boxes outside the ROI fall back to the ROI-wide normal).

    Raises:
        DegenerateNormal, IncoherentNormals: with box_index in the context
            when a specific box is at fault
    """
    cfg = cfg or ProjectionConfig()
    image_size = field.size

    fallback: Optional[UnitVec3] = region_normal
    if fallback is None:
        try:
            fallback = dominant_normal(field, roi, coherence_threshold)
        except IncoherentNormals:
            if not per_char:
                raise
            logger.info("ROI-wide normal is incoherent; per-character normals only")

    quads: List[CharQuad] = []
    for index, char_box in enumerate(boxes):
        try:
            if per_char:
                n = _box_normal(index, char_box, field, roi, fallback, coherence_threshold)
                if n is None:
                    raise IncoherentNormals("box covers no ROI pixel and the ROI-wide normal is incoherent")
            else:
                n = fallback
            quad = align_bbox(char_box.box, n, cfg, image_size)
        except (DegenerateNormal, IncoherentNormals) as e:
            raise _with_box_index(e, index, char_box) from e
        quads.append(CharQuad(ch=char_box.ch, quad=quad, normal=n))

    logger.debug("Aligned %d box(es) (%s normals)", len(quads), "per-character" if per_char else "ROI-wide")
    return quads


def unaligned_quads(boxes: List[CharBox], normal: Optional[UnitVec3] = None) -> List[CharQuad]:
    """Axis-aligned boxes as quads (the unaligned character mask)."""
    return [CharQuad.from_box(b, normal) for b in boxes]
