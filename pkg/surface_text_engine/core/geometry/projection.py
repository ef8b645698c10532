# Aligns character boxes with a planar surface given its normal
# core/geometry/projection.py
#
# Pipeline per box:
#   pixel centre -> normalized frame -> translate along -d*n -> orthogonal
#   projection onto the plane n.x = 0 -> in-plane corners (u, v basis)
#   -> readout (orthographic by default) -> pixels

import logging
import math
from typing import List, Tuple

from surface_text_engine.core.errors import DegenerateNormal, PointAtInfinity
from surface_text_engine.core.schemas.config import ProjectionConfig
from surface_text_engine.core.schemas.geometry import (
    BBox2D,
    Point2,
    Point3,
    Quad2D,
    UnitVec3,
)

logger = logging.getLogger(__name__)

ImageSize = Tuple[int, int]

PARALLEL_TOLERANCE = 1e-9


def normalize_coords(p: Point2, image_size: ImageSize) -> Point3:
    """
    Map a pixel point into the normalized frame: origin at the image centre,
    y down, the longer image side spanning [-1, 1], z = 0.
    """
    width, height = image_size
    if width <= 0 or height <= 0:
        raise ValueError(f"image size must be positive, got {image_size}")
    scale = ProjectionConfig.norm_scale(image_size)
    px, py = p
    return Point3(x=(px - width / 2.0) / scale, y=(py - height / 2.0) / scale, z=0.0)


def denormalize_coords(x: float, y: float, image_size: ImageSize) -> Point2:
    width, height = image_size
    scale = ProjectionConfig.norm_scale(image_size)
    return (x * scale + width / 2.0, y * scale + height / 2.0)


def translate_along_normal(c: Point3, n: UnitVec3, cfg: ProjectionConfig) -> Point3:
    d = cfg.depth
    return Point3(x=c.x - d * n.x, y=c.y - d * n.y, z=c.z - d * n.z)


def project_to_plane(p: Point3, n: UnitVec3) -> Point3:
    """Orthogonal line-plane intersection with the plane {x : n.x = 0}."""
    t = -(n.x * p.x + n.y * p.y + n.z * p.z)
    return Point3(x=p.x + t * n.x, y=p.y + t * n.y, z=p.z + t * n.z)


def in_plane_basis(n: UnitVec3) -> Tuple[UnitVec3, UnitVec3]:
    """
    Orthonormal axes of the plane: u is the image x-axis with its normal
    component removed, v = n x u.
    """
    if abs(n.x) > 1.0 - PARALLEL_TOLERANCE:
        raise DegenerateNormal(
            f"x-axis is parallel to the normal ({n.x:.6f}, {n.y:.6f}, {n.z:.6f})",
            normal=n.as_tuple(),
        )

    ux = 1.0 - n.x * n.x
    uy = -n.x * n.y
    uz = -n.x * n.z
    length = math.sqrt(ux * ux + uy * uy + uz * uz)
    u = UnitVec3(x=ux / length, y=uy / length, z=uz / length)

    v = UnitVec3(
        x=n.y * u.z - n.z * u.y,
        y=n.z * u.x - n.x * u.z,
        z=n.x * u.y - n.y * u.x,
    )
    return u, v


def _check_facing(n: UnitVec3, cfg: ProjectionConfig) -> None:
    if abs(n.z) < cfg.min_facing:
        raise DegenerateNormal(
            f"surface is edge-on to the viewer: normal ({n.x:.4f}, {n.y:.4f}, {n.z:.4f}) "
            f"has |n_z| < {cfg.min_facing}",
            normal=n.as_tuple(),
        )


def aligned_corners_3d(
    box: BBox2D,
    n: UnitVec3,
    cfg: ProjectionConfig,
    image_size: ImageSize,
) -> List[Point3]:
    """
    On-plane 3D corners (TL, TR, BR, BL) of the aligned box in the
    normalized frame. Side lengths equal the normalized box width/height.
    """
    _check_facing(n, cfg)

    centre = normalize_coords((box.cx, box.cy), image_size)
    shifted = translate_along_normal(centre, n, cfg)
    cp = project_to_plane(shifted, n)

    u, v = in_plane_basis(n)
    # Away-facing normals flip v; keep the vertical axis pointing down the image
    if n.z < 0:
        v = v.negated()

    scale = ProjectionConfig.norm_scale(image_size)
    hw = box.w / scale / 2.0
    hh = box.h / scale / 2.0

    corners = []
    for su, sv in ((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)):
        corners.append(
            Point3(
                x=cp.x + su * hw * u.x + sv * hh * v.x,
                y=cp.y + su * hw * u.y + sv * hh * v.y,
                z=cp.z + su * hw * u.z + sv * hh * v.z,
            )
        )
    return corners


def readout(p: Point3, cfg: ProjectionConfig) -> Tuple[float, float]:
    """3D normalized point -> 2D normalized image point."""
    if cfg.readout == "orthographic":
        return (p.x, p.y)

    f = cfg.focal_length
    denom = f - p.z
    if denom <= 1e-12:
        raise PointAtInfinity(
            f"point at depth {p.z:.6f} is behind the focal plane (f = {f})",
            point=p.as_tuple(),
        )
    return (p.x * f / denom, p.y * f / denom)


def align_bbox(
    box: BBox2D,
    n: UnitVec3,
    cfg: ProjectionConfig,
    image_size: ImageSize,
) -> Quad2D:
    """Surface-aligned quadrilateral (pixels) for an axis-aligned box."""
    corners = aligned_corners_3d(box, n, cfg, image_size)
    pixels = []
    for corner in corners:
        x, y = readout(corner, cfg)
        pixels.append(denormalize_coords(x, y, image_size))
    return Quad2D(corners=tuple(pixels))
