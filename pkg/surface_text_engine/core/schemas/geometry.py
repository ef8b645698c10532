# Geometry schema definitions (vectors, boxes, quads)
# core/schemas/geometry.py
#
# Coordinates follow the image convention: x to the right, y down.
# 3D points live in the normalized frame (see geometry.projection) with z
# pointing toward the viewer.

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from surface_text_engine.core.errors import ZeroNormal

Point2 = Tuple[float, float]

UNIT_TOLERANCE = 1e-9


class Vec3(BaseModel):
    """Finite 3-vector in normalized image coordinates"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    x: float = Field(..., description="x component (image right)")
    y: float = Field(..., description="y component (image down)")
    z: float = Field(..., description="z component (toward the viewer)")

    @classmethod
    def from_array(cls, values) -> "Vec3":
        x, y, z = (float(v) for v in values)
        return cls(x=x, y=y, z=z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.sqrt(self.dot(self))


class UnitVec3(Vec3):
    """Unit-length direction, typically a surface normal"""

    @model_validator(mode="after")
    def _check_unit(self) -> "UnitVec3":
        length = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(length - 1.0) > UNIT_TOLERANCE:
            raise ValueError(f"vector is not unit length (|v| = {length!r})")
        return self

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "UnitVec3":
        """Normalize arbitrary components; zero-length input is rejected."""
        length = math.sqrt(x * x + y * y + z * z)
        if not math.isfinite(length) or length < 1e-12:
            raise ZeroNormal(
                f"cannot normalize vector ({x}, {y}, {z})",
                normal=(x, y, z),
            )
        return cls(x=x / length, y=y / length, z=z / length)

    @classmethod
    def from_array(cls, values) -> "UnitVec3":
        x, y, z = (float(v) for v in values)
        return cls.normalized(x, y, z)

    def negated(self) -> "UnitVec3":
        return UnitVec3(x=-self.x, y=-self.y, z=-self.z)


class Point3(Vec3):
    """Point in the normalized 3D frame (z is the depth axis)"""


class BBox2D(BaseModel):
    """Axis-aligned box in pixels, described by its centre and size"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    cx: float = Field(..., description="Centre x (pixels)")
    cy: float = Field(..., description="Centre y (pixels)")
    w: float = Field(..., gt=0, description="Width (pixels)")
    h: float = Field(..., gt=0, description="Height (pixels)")

    @classmethod
    def from_corner(cls, x0: float, y0: float, w: float, h: float) -> "BBox2D":
        return cls(cx=x0 + w / 2.0, cy=y0 + h / 2.0, w=w, h=h)

    @property
    def x0(self) -> float:
        return self.cx - self.w / 2.0

    @property
    def y0(self) -> float:
        return self.cy - self.h / 2.0

    @property
    def x1(self) -> float:
        return self.cx + self.w / 2.0

    @property
    def y1(self) -> float:
        return self.cy + self.h / 2.0

    def to_quad(self) -> "Quad2D":
        return Quad2D(
            corners=(
                (self.x0, self.y0),
                (self.x1, self.y0),
                (self.x1, self.y1),
                (self.x0, self.y1),
            )
        )


class Quad2D(BaseModel):
    """
    Four ordered corners in pixels: top-left, top-right, bottom-right,
    bottom-left as seen in the source box.

    Construction does not enforce convexity so that degenerate inputs can
    reach the operations that report them (DegenerateQuad).
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    corners: Tuple[Point2, Point2, Point2, Point2] = Field(
        ..., description="TL, TR, BR, BL corner points (pixels)"
    )

    @classmethod
    def from_array(cls, points) -> "Quad2D":
        arr = np.asarray(points, dtype=np.float64).reshape(4, 2)
        return cls(corners=tuple((float(x), float(y)) for x, y in arr))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.corners, dtype=np.float64)

    def signed_area(self) -> float:
        """Shoelace area; positive for TL,TR,BR,BL order with y down."""
        pts = self.corners
        total = 0.0
        for i in range(4):
            x0, y0 = pts[i]
            x1, y1 = pts[(i + 1) % 4]
            total += x0 * y1 - x1 * y0
        return 0.5 * total

    def is_convex(self, tolerance: float = 1e-12) -> bool:
        signs = []
        pts = self.corners
        for i in range(4):
            ax, ay = pts[i]
            bx, by = pts[(i + 1) % 4]
            cx, cy = pts[(i + 2) % 4]
            cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
            if abs(cross) <= tolerance:
                return False
            signs.append(cross > 0)
        return all(signs) or not any(signs)

    def centroid(self) -> Point2:
        arr = self.as_array()
        return (float(arr[:, 0].mean()), float(arr[:, 1].mean()))

    def contains(self, point: Point2) -> bool:
        """Point-in-convex-quad test (boundary counts as inside)."""
        px, py = point
        signs = []
        pts = self.corners
        for i in range(4):
            ax, ay = pts[i]
            bx, by = pts[(i + 1) % 4]
            cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
            signs.append(cross)
        return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)

    def top_width(self) -> float:
        (x0, y0), (x1, y1) = self.corners[0], self.corners[1]
        return math.hypot(x1 - x0, y1 - y0)

    def left_height(self) -> float:
        (x0, y0), (x3, y3) = self.corners[0], self.corners[3]
        return math.hypot(x3 - x0, y3 - y0)

    def bounding_box(self) -> Tuple[float, float, float, float]:
        arr = self.as_array()
        return (
            float(arr[:, 0].min()),
            float(arr[:, 1].min()),
            float(arr[:, 0].max()),
            float(arr[:, 1].max()),
        )

    def max_corner_distance(self, other: "Quad2D") -> float:
        return float(np.max(np.abs(self.as_array() - other.as_array())))
