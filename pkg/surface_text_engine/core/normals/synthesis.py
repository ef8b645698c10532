# Analytic normal-map fixtures
# core/normals/synthesis.py
#
# Constant planes, two-plane (dihedral) scenes and smooth curved fields.
# They serve as oracles: every value is known in closed form.

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from surface_text_engine.core.errors import SurfaceTextError
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.normals import NormalField


def _check_size(width: int, height: int) -> None:
    if width <= 0 or height <= 0:
        raise SurfaceTextError(f"field size must be positive, got {width}x{height}")


def synth_plane(n: UnitVec3, width: int, height: int) -> NormalField:
    """Constant field of n."""
    _check_size(width, height)
    data = np.empty((height, width, 3), dtype=np.float64)
    data[...] = n.as_array()
    return NormalField(data)


def synth_dihedral(
    n_left: UnitVec3,
    n_right: UnitVec3,
    width: int,
    height: int,
    split_col: int,
) -> NormalField:
    """Columns < split_col carry n_left, the remaining columns n_right."""
    _check_size(width, height)
    if not 0 < split_col < width:
        raise SurfaceTextError(f"split column must lie in (0, {width}), got {split_col}")
    data = np.empty((height, width, 3), dtype=np.float64)
    data[:, :split_col] = n_left.as_array()
    data[:, split_col:] = n_right.as_array()
    return NormalField(data)


@dataclass(frozen=True)
class SmoothNormalSpec:
    """
    Smooth curved surface: surface slopes vary as low-frequency sinusoids,
    n = normalize(-gx, -gy, 1). Evaluated at arbitrary (sub)pixel positions.
    """

    max_tilt_deg: float
    period_px: float
    phases: Tuple[float, float, float, float]

    @classmethod
    def from_seed(cls, seed: int, max_tilt_deg: float = 20.0, period_px: float = 256.0) -> "SmoothNormalSpec":
        rng = np.random.default_rng(seed)
        phases = tuple(float(v) for v in rng.uniform(0.0, 2.0 * math.pi, size=4))
        return cls(max_tilt_deg=max_tilt_deg, period_px=period_px, phases=phases)

    def evaluate(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        k = 2.0 * math.pi / self.period_px
        amplitude = math.tan(math.radians(self.max_tilt_deg)) / math.sqrt(2.0)
        p0, p1, p2, p3 = self.phases
        gx = amplitude * np.sin(k * xs + p0) * np.cos(k * ys + p1)
        gy = amplitude * np.cos(k * xs + p2) * np.sin(k * ys + p3)
        vectors = np.stack([-gx, -gy, np.ones_like(gx)], axis=-1)
        return vectors / np.linalg.norm(vectors, axis=-1, keepdims=True)

    def render(self, width: int, height: int) -> NormalField:
        _check_size(width, height)
        ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
        return NormalField(self.evaluate(xs, ys))


def synth_smooth(
    width: int,
    height: int,
    seed: int = 0,
    max_tilt_deg: float = 20.0,
    period_px: float = 256.0,
) -> NormalField:
    return SmoothNormalSpec.from_seed(seed, max_tilt_deg, period_px).render(width, height)
