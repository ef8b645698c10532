# Surface-normal consistency metric (mean angular error, degrees)
# core/metrics/angular_error.py
#
# The angle is atan2(|a x b|, a . b): exact 0 for identical vectors,
# exactly symmetric, and well conditioned near 0 and 180 degrees.

import logging
import math
from typing import Optional

import numpy as np

from surface_text_engine.core.errors import DimensionMismatch, EmptyRoi
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.metrics import MetricReport
from surface_text_engine.core.schemas.normals import NormalField, RoiMask

logger = logging.getLogger(__name__)


def angular_error(a: UnitVec3, b: UnitVec3) -> float:
    """Angle between two unit vectors in degrees, in [0, 180]."""
    cx = a.y * b.z - a.z * b.y
    cy = a.z * b.x - a.x * b.z
    cz = a.x * b.y - a.y * b.x
    return math.degrees(math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), a.dot(b)))


def angular_error_map(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-pixel angles (degrees) between two (..., 3) vector arrays."""
    cross = np.cross(a, b)
    sin_part = np.linalg.norm(cross, axis=-1)
    cos_part = np.sum(a * b, axis=-1)
    return np.degrees(np.arctan2(sin_part, cos_part))


def mae_n(before: NormalField, after: NormalField, mask: Optional[RoiMask] = None) -> MetricReport:
    """
    Mean and max angular error between two normal fields, over the mask
    when given.

    Raises:
        DimensionMismatch: field sizes differ, or the mask does not match
        EmptyRoi: the mask selects no pixel
    """
    if before.size != after.size:
        raise DimensionMismatch(f"normal fields differ in size: {before.size} vs {after.size}")

    errors = angular_error_map(before.data, after.data)
    if mask is not None:
        mask.require_size(before.size)
        errors = errors[mask.data]
        if errors.size == 0:
            raise EmptyRoi("mask selects no pixels")
    else:
        errors = errors.ravel()

    # np.mean reduces with pairwise summation in a fixed order
    report = MetricReport(
        mae_degrees=float(np.mean(errors)),
        max_error_degrees=float(np.max(errors)),
        pixel_count=int(errors.size),
    )
    logger.debug("MAE-N over %d pixel(s): %.6f deg (max %.6f)",
                 report.pixel_count, report.mae_degrees, report.max_error_degrees)
    return report
