# Four-point homographies for warping glyph stamps into quads
# core/geometry/homography.py

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from surface_text_engine.core.errors import DegenerateQuad, PointAtInfinity
from surface_text_engine.core.schemas.geometry import Point2, Quad2D

logger = logging.getLogger(__name__)

DENOMINATOR_EPS = 1e-12
DETERMINANT_EPS = 1e-12

UNIT_SQUARE = Quad2D(corners=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))


@dataclass(frozen=True, eq=False)
class Homography:
    """3x3 projective transform, bottom-right entry normalized to 1 when nonzero"""

    matrix: np.ndarray

    @staticmethod
    def identity() -> "Homography":
        return Homography(np.eye(3, dtype=np.float64))

    @staticmethod
    def normalized(matrix: np.ndarray) -> "Homography":
        m = np.array(matrix, dtype=np.float64).reshape(3, 3)
        if abs(m[2, 2]) > 0.0:
            m = m / m[2, 2]
        return Homography(m)

    def determinant(self) -> float:
        return float(np.linalg.det(self.matrix))

    def inverse(self) -> "Homography":
        if abs(self.determinant()) <= DETERMINANT_EPS:
            raise DegenerateQuad("homography is not invertible")
        return Homography.normalized(np.linalg.inv(self.matrix))

    def compose(self, other: "Homography") -> "Homography":
        """self after other."""
        return Homography.normalized(self.matrix @ other.matrix)

    def apply(self, p: Point2) -> Point2:
        return apply_homography(self, p)

    def apply_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized transform of an (N, 2) array."""
        pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        m = self.matrix
        xs = m[0, 0] * pts[:, 0] + m[0, 1] * pts[:, 1] + m[0, 2]
        ys = m[1, 0] * pts[:, 0] + m[1, 1] * pts[:, 1] + m[1, 2]
        ws = m[2, 0] * pts[:, 0] + m[2, 1] * pts[:, 1] + m[2, 2]
        if np.any(np.abs(ws) < DENOMINATOR_EPS):
            raise PointAtInfinity("projective denominator vanished for at least one point")
        return np.stack([xs / ws, ys / ws], axis=1)


def apply_homography(h: Homography, p: Point2) -> Point2:
    m = h.matrix
    x, y = float(p[0]), float(p[1])
    w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    if abs(w) < DENOMINATOR_EPS:
        raise PointAtInfinity(f"point ({x}, {y}) maps to infinity", point=(x, y))
    return (
        float((m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w),
        float((m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w),
    )


def _conditioning_transform(points: np.ndarray) -> np.ndarray:
    """Similarity moving the centroid to the origin with mean distance sqrt(2)."""
    centroid = points.mean(axis=0)
    mean_dist = float(np.mean(np.linalg.norm(points - centroid, axis=1)))
    if mean_dist <= 0.0:
        raise DegenerateQuad("quad corners coincide")
    s = np.sqrt(2.0) / mean_dist
    return np.array(
        [[s, 0.0, -s * centroid[0]], [0.0, s, -s * centroid[1]], [0.0, 0.0, 1.0]],
        dtype=np.float64,
    )


def _apply_affine(t: np.ndarray, points: np.ndarray) -> np.ndarray:
    return points @ t[:2, :2].T + t[:2, 2]


def homography_from_quads(src: Quad2D, dst: Quad2D) -> Homography:
    """
    Solve the 8-unknown projective system (h33 = 1) mapping each src corner
    to the matching dst corner. Points are conditioned before the solve.
    """
    for name, quad in (("source", src), ("destination", dst)):
        if not quad.is_convex():
            raise DegenerateQuad(f"{name} quad is not convex or has collinear corners",
                                 corners=quad.corners)

    src_pts = src.as_array()
    dst_pts = dst.as_array()
    t_src = _conditioning_transform(src_pts)
    t_dst = _conditioning_transform(dst_pts)
    a_pts = _apply_affine(t_src, src_pts)
    b_pts = _apply_affine(t_dst, dst_pts)

    system = np.zeros((8, 8), dtype=np.float64)
    rhs = np.zeros(8, dtype=np.float64)
    for i, ((x, y), (bx, by)) in enumerate(zip(a_pts, b_pts)):
        system[2 * i] = [x, y, 1.0, 0.0, 0.0, 0.0, -x * bx, -y * bx]
        system[2 * i + 1] = [0.0, 0.0, 0.0, x, y, 1.0, -x * by, -y * by]
        rhs[2 * i] = bx
        rhs[2 * i + 1] = by

    try:
        solution = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as e:
        raise DegenerateQuad("projective system is singular", corners=src.corners) from e

    if not np.all(np.isfinite(solution)):
        raise DegenerateQuad("projective system produced non-finite entries")

    h_norm = np.append(solution, 1.0).reshape(3, 3)
    matrix = np.linalg.inv(t_dst) @ h_norm @ t_src
    h = Homography.normalized(matrix)

    if abs(h.determinant()) <= DETERMINANT_EPS:
        raise DegenerateQuad("homography is not invertible", corners=src.corners)
    return h


def quad_to_unit_square(quad: Quad2D) -> Homography:
    return homography_from_quads(quad, UNIT_SQUARE)


def unit_square_to_quad(quad: Quad2D) -> Homography:
    return homography_from_quads(UNIT_SQUARE, quad)


def corner_residual(h: Homography, src: Quad2D, dst: Quad2D) -> Tuple[float, ...]:
    mapped = h.apply_many(src.as_array())
    return tuple(float(v) for v in np.linalg.norm(mapped - dst.as_array(), axis=1))
