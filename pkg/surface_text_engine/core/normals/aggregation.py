# Dominant surface normal over a region of interest
# core/normals/aggregation.py

import logging

import numpy as np

from surface_text_engine.core.errors import EmptyRoi, IncoherentNormals
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.normals import NormalField, RoiMask

logger = logging.getLogger(__name__)

COHERENCE_THRESHOLD = 0.1


def dominant_normal(
    field: NormalField,
    roi: RoiMask,
    coherence_threshold: float = COHERENCE_THRESHOLD,
) -> UnitVec3:
    """
    Renormalized component-wise mean of the unit normals inside the ROI.

    Raises:
        EmptyRoi: the ROI selects no pixel of the field
        IncoherentNormals: the mean is shorter than the coherence threshold
    """
    roi.require_size(field.size)
    selected = field.data[roi.data]
    if selected.shape[0] == 0:
        raise EmptyRoi("ROI selects no pixels of the normal field")

    mean = selected.mean(axis=0)
    magnitude = float(np.linalg.norm(mean))
    if magnitude < coherence_threshold:
        raise IncoherentNormals(
            f"normals inside the ROI are too diverse for a single plane "
            f"(mean ({mean[0]:.4f}, {mean[1]:.4f}, {mean[2]:.4f}), |mean| = {magnitude:.4f})",
            mean=tuple(float(v) for v in mean),
            magnitude=magnitude,
        )

    logger.debug("Dominant normal over %d pixels: %s", selected.shape[0], mean / magnitude)
    return UnitVec3.normalized(float(mean[0]), float(mean[1]), float(mean[2]))
