# Configuration schema definitions
# core/schemas/config.py

from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field

ReadoutMode = Literal["orthographic", "perspective"]
AlignMode = Literal["left", "center", "right"]
ZeroPolicy = Literal["replace", "raise"]


class ProjectionConfig(BaseModel):
    """Parameters of the box-to-surface projection"""

    model_config = ConfigDict(frozen=True)

    depth: float = Field(default=1.0, gt=0, description="Depth constant d along the negative normal")
    min_facing: float = Field(
        default=0.05, gt=0, lt=1, description="Minimum |n_z| accepted for alignment"
    )
    readout: ReadoutMode = Field(
        default="orthographic", description="3D to image readout after in-plane construction"
    )
    focal_length: float = Field(
        default=4.0, gt=0, description="Focal length for perspective readout (normalized units)"
    )

    @staticmethod
    def norm_scale(image_size: Tuple[int, int]) -> float:
        """Half of the longer image side, in pixels."""
        width, height = image_size
        return max(width, height) / 2.0


class LayoutConfig(BaseModel):
    """Grid layout of characters inside an ROI"""

    model_config = ConfigDict(frozen=True)

    char_aspect: float = Field(default=0.6, gt=0.1, lt=2.0, description="Cell width / height")
    char_gap_frac: float = Field(default=0.1, ge=0, le=0.5, description="Gap as fraction of cell width")
    line_gap_frac: float = Field(default=0.25, ge=0, le=0.5, description="Row gap as fraction of cell height")
    margin_frac: float = Field(default=0.05, ge=0, le=0.5, description="ROI margin on every side")
    align: AlignMode = Field(default="center", description="Horizontal line alignment")
    fold_case: bool = Field(default=False, description="Upper-case text before glyph lookup")
    min_font_px: float = Field(default=4.0, gt=0, description="Smallest accepted cell height (pixels)")


class NormalsConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    zero_threshold: float = Field(default=1e-3, gt=0, description="Zero-normal magnitude threshold")
    zero_policy: ZeroPolicy = Field(default="replace", description="How decode handles zero normals")
    coherence_threshold: float = Field(
        default=0.1, gt=0, lt=1, description="Minimum mean magnitude for a dominant normal"
    )
    snap_iterations: int = Field(default=40, ge=0, le=200, description="Quantization-cell bisection steps")


class RasterConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    stamp_size: int = Field(default=70, ge=64, description="Glyph stamp resolution (square)")
    threshold: float = Field(default=0.5, gt=0, lt=1, description="Stamp sample threshold")
    snap_px: float = Field(default=1e-6, gt=0, description="Corner snapping grid (pixels)")


class AugmentSamplerConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    rotate_deg: float = Field(default=20.0, ge=0, description="Uniform rotation range (+/- degrees)")
    scale_min: float = Field(default=0.9, gt=0)
    scale_max: float = Field(default=1.1, gt=0)
    shear_x: float = Field(default=0.1, ge=0, description="Uniform shear range (+/-)")
    translate_frac: float = Field(default=0.0, ge=0, le=0.5, description="Translation range, fraction of size")


class MetricsConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    json_decimals: int = Field(default=9, ge=0, le=15, description="Rounding of printed degrees")


class EngineSettings(BaseModel):
    """Effective engine configuration (YAML defaults + overrides)"""

    model_config = ConfigDict(frozen=True)

    projection: ProjectionConfig = Field(default_factory=ProjectionConfig)
    layout: LayoutConfig = Field(default_factory=LayoutConfig)
    normals: NormalsConfig = Field(default_factory=NormalsConfig)
    raster: RasterConfig = Field(default_factory=RasterConfig)
    augment: AugmentSamplerConfig = Field(default_factory=AugmentSamplerConfig)
    metrics: MetricsConfig = Field(default_factory=MetricsConfig)
