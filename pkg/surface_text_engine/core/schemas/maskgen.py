# Character layout and mask schema definitions
# core/schemas/maskgen.py

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from surface_text_engine.core.errors import InvalidImage
from surface_text_engine.core.schemas.geometry import BBox2D, Quad2D, UnitVec3


class CharBox(BaseModel):
    """One axis-aligned character cell of the unaligned character mask"""

    model_config = ConfigDict(frozen=True)

    ch: str = Field(..., min_length=1, max_length=1, description="Character drawn in the cell")
    box: BBox2D = Field(..., description="Cell in pixels")
    line: int = Field(default=0, ge=0, description="Zero-based text line")
    column: int = Field(default=0, ge=0, description="Zero-based cell position in the line")


class CharQuad(BaseModel):
    """A character cell after alignment with the surface"""

    model_config = ConfigDict(frozen=True)

    ch: str = Field(..., min_length=1, max_length=1)
    quad: Quad2D = Field(..., description="Aligned quadrilateral (TL, TR, BR, BL)")
    normal: Optional[UnitVec3] = Field(default=None, description="Surface normal used for this character")

    @field_validator("quad")
    @classmethod
    def _positive_winding(cls, quad: Quad2D) -> Quad2D:
        if quad.signed_area() <= 0:
            raise ValueError("aligned quad must have positive signed area")
        return quad

    @classmethod
    def from_box(cls, char_box: CharBox, normal: Optional[UnitVec3] = None) -> "CharQuad":
        return cls(ch=char_box.ch, quad=char_box.box.to_quad(), normal=normal)


@dataclass(frozen=True, eq=False)
class MaskImage:
    """Binary character mask, uint8 values in {0, 255}, shape (height, width)"""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.uint8)
        if arr.ndim != 2:
            raise InvalidImage(f"mask must be 2D, got shape {arr.shape}")
        if not np.all((arr == 0) | (arr == 255)):
            raise InvalidImage("mask must be strictly binary (0 or 255)")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def blank(cls, size: Tuple[int, int]) -> "MaskImage":
        width, height = size
        return cls(np.zeros((height, width), dtype=np.uint8))

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def size(self) -> Tuple[int, int]:
        return (self.width, self.height)

    def lit_count(self) -> int:
        return int(np.count_nonzero(self.data))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MaskImage):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))
