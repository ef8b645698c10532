# Affine augmentation schema definitions
# core/schemas/augment.py

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from surface_text_engine.core.errors import SingularAffine

MIN_DETERMINANT = 1e-6


class AffineParams(BaseModel):
    """
    Affine warp about the image centre:
    translate(centre + t) . rotate . shear . scale . translate(-centre).

    Rotation is clockwise on screen for positive degrees (y points down),
    so (1, 0) turns toward (0, 1).
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    rotate_deg: float = Field(default=0.0, description="Rotation about the view axis (degrees)")
    scale: float = Field(default=1.0, gt=0, description="Isotropic scale")
    shear_x: float = Field(default=0.0, description="x += shear_x * y")
    shear_y: float = Field(default=0.0, description="y += shear_y * x")
    translate: Tuple[float, float] = Field(default=(0.0, 0.0), description="(tx, ty) pixels")

    def linear(self) -> np.ndarray:
        theta = math.radians(self.rotate_deg)
        c, s = math.cos(theta), math.sin(theta)
        rotation = np.array([[c, -s], [s, c]])
        shear = np.array([[1.0, self.shear_x], [self.shear_y, 1.0]])
        return rotation @ shear @ (self.scale * np.eye(2))

    def determinant(self) -> float:
        return float(np.linalg.det(self.linear()))

    def check(self) -> None:
        det = self.determinant()
        if abs(det) <= MIN_DETERMINANT:
            raise SingularAffine(
                f"affine linear part is singular (det = {det:.3g}; rotate {self.rotate_deg}, "
                f"scale {self.scale}, shear ({self.shear_x}, {self.shear_y}))",
                determinant=det,
            )

    def matrix(self, image_size: Tuple[int, int]) -> np.ndarray:
        """2x3 forward (source -> destination) matrix in cv2 pixel-centre coordinates."""
        self.check()
        width, height = image_size
        centre = np.array([(width - 1) / 2.0, (height - 1) / 2.0])
        a = self.linear()
        offset = centre + np.asarray(self.translate, dtype=np.float64) - a @ centre
        return np.hstack([a, offset[:, None]])

    @property
    def is_identity(self) -> bool:
        return (
            self.rotate_deg == 0.0
            and self.scale == 1.0
            and self.shear_x == 0.0
            and self.shear_y == 0.0
            and tuple(self.translate) == (0.0, 0.0)
        )
