# End-to-end conditioning pipeline: layout -> normal -> align -> raster -> export
# pipeline/conditioning_pipeline.py

import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from surface_text_engine.core.errors import DimensionMismatch, IncoherentNormals, SurfaceTextError
from surface_text_engine.core.explainability.pipeline_trace import PipelineTraceLogger
from surface_text_engine.core.maskgen.alignment import align_char_boxes, unaligned_quads
from surface_text_engine.core.maskgen.export import ExportResult, export_conditioning
from surface_text_engine.core.maskgen.glyphs import GlyphSet, load_glyph_set
from surface_text_engine.core.maskgen.layout import layout_text
from surface_text_engine.core.maskgen.rasterizer import rasterize_mask
from surface_text_engine.core.normals.aggregation import dominant_normal
from surface_text_engine.core.schemas.config import EngineSettings
from surface_text_engine.core.schemas.geometry import BBox2D, UnitVec3
from surface_text_engine.core.schemas.maskgen import CharBox, CharQuad, MaskImage
from surface_text_engine.core.schemas.normals import NormalField, RoiMask
from surface_text_engine.core.settings import config_digest

logger = logging.getLogger(__name__)


class ConditioningResult:
    """
    Result of one pipeline run.

    Attributes:
        boxes: Laid-out character cells
        quads: Surface-aligned quads, same order as boxes
        mask: Aligned character mask
        unaligned_mask: Mask of the unaligned boxes (when requested)
        dominant: ROI-wide dominant normal (None if incoherent in per-character mode)
        export: Written files and manifest (None when no output directory was given)
        trace: Stage trace
    """

    def __init__(
        self,
        boxes: List[CharBox],
        quads: List[CharQuad],
        mask: MaskImage,
        unaligned_mask: Optional[MaskImage],
        dominant: Optional[UnitVec3],
        export: Optional[ExportResult],
        trace: List[str],
    ):
        self.boxes = boxes
        self.quads = quads
        self.mask = mask
        self.unaligned_mask = unaligned_mask
        self.dominant = dominant
        self.export = export
        self.trace = trace


class ConditioningPipeline:
    """
    Runs the stages in order:
    INPUTS -> LAYOUT -> DOMINANT_NORMAL -> ALIGN -> RASTERIZE -> EXPORT

    A failing stage is recorded as <STAGE>:FAILED:<code> and its typed
    error is re-raised with the trace attached.
    """

    def __init__(self, settings: Optional[EngineSettings] = None, glyphs: Optional[GlyphSet] = None):
        self.settings = settings or EngineSettings()
        self.glyphs = glyphs or load_glyph_set(stamp_size=self.settings.raster.stamp_size)

    def run(
        self,
        source: np.ndarray,
        field: NormalField,
        roi: RoiMask,
        text: str,
        out_dir: Optional[Union[str, Path]] = None,
        layout_rect: Optional[BBox2D] = None,
        per_char: bool = False,
        emit_unaligned: bool = False,
    ) -> ConditioningResult:
        settings = self.settings
        trace: List[str] = []
        stage = "INPUTS"

        try:
            size = (int(source.shape[1]), int(source.shape[0]))
            if field.size != size:
                raise DimensionMismatch(f"normal map is {field.size}, source image is {size}")
            roi.require_size(size)
            PipelineTraceLogger.passed(trace, stage)

            stage = "LAYOUT"
            if layout_rect is None:
                x, y, w, h = roi.bounding_rect()
                layout_rect = BBox2D.from_corner(x, y, w, h)
            boxes = layout_text(text, layout_rect, settings.layout, self.glyphs)
            PipelineTraceLogger.passed(trace, stage)

            stage = "DOMINANT_NORMAL"
            threshold = settings.normals.coherence_threshold
            dominant: Optional[UnitVec3] = None
            try:
                dominant = dominant_normal(field, roi, threshold)
                PipelineTraceLogger.passed(trace, stage)
            except IncoherentNormals:
                if not per_char:
                    raise
                trace.append(f"{stage}:SKIPPED")

            stage = "ALIGN"
            quads = align_char_boxes(
                boxes, field, roi, settings.projection,
                per_char=per_char, coherence_threshold=threshold, region_normal=dominant,
            )
            PipelineTraceLogger.passed(trace, stage)

            stage = "RASTERIZE"
            mask = rasterize_mask(quads, size, self.glyphs, settings.raster)
            PipelineTraceLogger.passed(trace, stage)

            unaligned_mask = None
            if emit_unaligned:
                stage = "RASTERIZE_UNALIGNED"
                unaligned_mask = rasterize_mask(unaligned_quads(boxes), size, self.glyphs, settings.raster)
                PipelineTraceLogger.passed(trace, stage)

            export = None
            if out_dir is not None:
                stage = "EXPORT"
                PipelineTraceLogger.passed(trace, stage)
                export = export_conditioning(
                    source, mask, field, roi, out_dir, quads,
                    config_digest=config_digest(settings),
                    dominant=dominant,
                    normal_mode="per_char" if per_char else "roi",
                    unaligned_mask=unaligned_mask,
                    pipeline_trace=trace,
                )
        except SurfaceTextError as e:
            if trace and trace[-1] == f"{stage}:PASSED":
                trace.pop()
            PipelineTraceLogger.failed(trace, stage, e.error_code)
            e.context.setdefault("trace", list(trace))
            logger.debug("Pipeline stopped at %s: %s", stage, e)
            raise

        logger.info("Conditioning pipeline finished: %d character(s)", len(quads))
        return ConditioningResult(boxes, quads, mask, unaligned_mask, dominant, export, trace)
