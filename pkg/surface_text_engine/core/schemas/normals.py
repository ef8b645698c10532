# Normal-map and ROI containers
# core/schemas/normals.py

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from surface_text_engine.core.errors import DimensionMismatch, EmptyRoi, InvalidImage

UNIT_FIELD_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class NormalField:
    """
    Per-pixel unit surface normals over an image grid.

    Attributes:
        data: float64 array of shape (height, width, 3), row-major, xyz
        replaced_pixels: Number of pixels the decoder replaced with (0, 0, 1)
    """

    data: np.ndarray
    replaced_pixels: int = 0

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise InvalidImage(f"normal field must have shape (H, W, 3), got {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise InvalidImage("normal field must not be empty")
        if not np.all(np.isfinite(arr)):
            raise InvalidImage("normal field contains non-finite values")
        lengths = np.linalg.norm(arr, axis=2)
        worst = float(np.max(np.abs(lengths - 1.0)))
        if worst > UNIT_FIELD_TOLERANCE:
            raise InvalidImage(f"normal field contains non-unit vectors (max deviation {worst:.3g})")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def size(self) -> Tuple[int, int]:
        return (self.width, self.height)

    def crop(self, x: int, y: int, w: int, h: int) -> "NormalField":
        return NormalField(self.data[y:y + h, x:x + w].copy())

    def upsample_nearest(self, factor: int) -> "NormalField":
        return NormalField(np.repeat(np.repeat(self.data, factor, axis=0), factor, axis=1))


@dataclass(frozen=True, eq=False)
class RoiMask:
    """Per-pixel boolean region of interest, shape (height, width)"""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=bool)
        if arr.ndim != 2:
            raise InvalidImage(f"ROI mask must be 2D, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rect(cls, x: int, y: int, w: int, h: int, size: Tuple[int, int]) -> "RoiMask":
        width, height = size
        if w <= 0 or h <= 0:
            raise EmptyRoi(f"ROI rectangle {x},{y},{w},{h} has no area")
        if x < 0 or y < 0 or x + w > width or y + h > height:
            raise EmptyRoi(
                f"ROI rectangle {x},{y},{w},{h} lies outside the {width}x{height} image"
            )
        arr = np.zeros((height, width), dtype=bool)
        arr[y:y + h, x:x + w] = True
        return cls(arr)

    @classmethod
    def full(cls, size: Tuple[int, int]) -> "RoiMask":
        width, height = size
        return cls(np.ones((height, width), dtype=bool))

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def size(self) -> Tuple[int, int]:
        return (self.width, self.height)

    def count(self) -> int:
        return int(self.data.sum())

    def bounding_rect(self) -> Tuple[int, int, int, int]:
        """(x, y, w, h) of the true pixels."""
        ys, xs = np.nonzero(self.data)
        if xs.size == 0:
            raise EmptyRoi("ROI mask has no true pixels")
        x0, x1 = int(xs.min()), int(xs.max())
        y0, y1 = int(ys.min()), int(ys.max())
        return (x0, y0, x1 - x0 + 1, y1 - y0 + 1)

    def intersect_rect(self, x0: float, y0: float, x1: float, y1: float) -> "RoiMask":
        """Restrict to pixels whose centres fall inside [x0, x1) x [y0, y1)."""
        cols = np.arange(self.width) + 0.5
        rows = np.arange(self.height) + 0.5
        in_x = (cols >= x0) & (cols < x1)
        in_y = (rows >= y0) & (rows < y1)
        return RoiMask(self.data & in_y[:, None] & in_x[None, :])

    def upsample_nearest(self, factor: int) -> "RoiMask":
        return RoiMask(np.repeat(np.repeat(self.data, factor, axis=0), factor, axis=1))

    def require_size(self, size: Tuple[int, int]) -> None:
        if self.size != tuple(size):
            raise DimensionMismatch(f"ROI mask is {self.size}, expected {tuple(size)}")
