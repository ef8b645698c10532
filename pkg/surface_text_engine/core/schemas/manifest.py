# Conditioning export schema definitions
# core/schemas/manifest.py

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

FileRole = Literal["source", "cmask_aligned", "cmask_unaligned", "normals", "roi", "quads", "manifest"]


class ExportedFile(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="File name relative to the output directory")
    role: FileRole = Field(..., description="What the file holds")
    width: Optional[int] = Field(default=None, description="Pixel width (images only)")
    height: Optional[int] = Field(default=None, description="Pixel height (images only)")


class QuadEntry(BaseModel):
    """One character of quads.json"""

    model_config = ConfigDict(frozen=True)

    ch: str
    quad: List[Tuple[float, float]] = Field(..., description="TL, TR, BR, BL corners, 3-decimal pixels")
    normal: Optional[Tuple[float, float, float]] = None


class QuadsDocument(BaseModel):
    chars: List[QuadEntry]
    dominant_normal: Optional[Tuple[float, float, float]] = None


class ConditioningManifest(BaseModel):
    """
    Index of one conditioning export.

    Contains no timestamps or absolute paths so identical inputs produce
    byte-identical manifests.
    """

    files: List[ExportedFile] = Field(..., description="Every file written, in write order")
    image_width: int = Field(..., gt=0)
    image_height: int = Field(..., gt=0)
    char_count: int = Field(..., ge=0)
    dominant_normal: Optional[Tuple[float, float, float]] = Field(
        default=None, description="ROI-wide dominant normal (None when incoherent in per-character mode)"
    )
    normal_mode: Literal["roi", "per_char"] = Field(default="roi")
    config_digest: str = Field(..., description="SHA-256 of the effective projection/layout/raster settings")
    pipeline_trace: List[str] = Field(default_factory=list)
