# Geometry-aware affine augmentation of (image, normal map) pairs
# core/augment/affine_warp.py

import logging
from typing import Iterable, Iterator, Optional, Tuple

import cv2
import numpy as np

from surface_text_engine.core.errors import DimensionMismatch, InvalidImage
from surface_text_engine.core.schemas.augment import AffineParams
from surface_text_engine.core.schemas.config import AugmentSamplerConfig
from surface_text_engine.core.schemas.normals import NormalField

logger = logging.getLogger(__name__)

IMAGE_BORDER = 0
NORMAL_BORDER = (0.0, 0.0, 1.0)


def transform_normals(data: np.ndarray, linear: np.ndarray) -> np.ndarray:
    """
    Apply the inverse-transpose of the 2x2 linear part to (nx, ny), keep nz,
    renormalize.
    """
    inv_t = np.linalg.inv(linear).T
    out = np.empty_like(data, dtype=np.float64)
    out[..., :2] = data[..., :2] @ inv_t.T
    out[..., 2] = data[..., 2]
    return out / np.linalg.norm(out, axis=-1, keepdims=True)


def affine_warp_pair(
    image: np.ndarray,
    field: NormalField,
    params: AffineParams,
) -> Tuple[np.ndarray, NormalField]:
    """
    Warp an image (bilinear, black outside) and its normal field (nearest,
    (0, 0, 1) outside) by the same affine map; normals are re-oriented to
    follow the warp. Identity parameters return exact copies.

    Raises:
        SingularAffine: the linear part is not invertible
        DimensionMismatch: image and field sizes differ
    """
    image = np.asarray(image)
    if image.ndim not in (2, 3):
        raise InvalidImage(f"image must be (H, W) or (H, W, C), got {image.shape}")
    size = (int(image.shape[1]), int(image.shape[0]))
    if size != field.size:
        raise DimensionMismatch(f"image is {size}, normal field is {field.size}")

    params.check()
    if params.is_identity:
        return image.copy(), NormalField(field.data.copy(), replaced_pixels=field.replaced_pixels)

    matrix = params.matrix(size)
    warped_image = cv2.warpAffine(
        np.ascontiguousarray(image),
        matrix,
        dsize=size,
        flags=cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=IMAGE_BORDER,
    )
    if image.ndim == 3 and warped_image.ndim == 2:
        warped_image = warped_image[..., np.newaxis]

    warped_normals = cv2.warpAffine(
        np.ascontiguousarray(field.data, dtype=np.float64),
        matrix,
        dsize=size,
        flags=cv2.INTER_NEAREST,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=NORMAL_BORDER,
    )
    normals = transform_normals(warped_normals, params.linear())

    logger.debug("Warped %dx%d pair: %s", size[0], size[1], params.model_dump())
    return warped_image, NormalField(normals)


class AffineSampler:
    """Seeded uniform sampler of augmentation parameters"""

    def __init__(self, seed: int = 0, cfg: Optional[AugmentSamplerConfig] = None):
        self.cfg = cfg or AugmentSamplerConfig()
        self.rng = np.random.default_rng(seed)

    def sample(self, image_size: Tuple[int, int]) -> AffineParams:
        cfg = self.cfg
        width, height = image_size
        rotate = self.rng.uniform(-cfg.rotate_deg, cfg.rotate_deg)
        scale = self.rng.uniform(cfg.scale_min, cfg.scale_max)
        shear = self.rng.uniform(-cfg.shear_x, cfg.shear_x)
        tx = self.rng.uniform(-cfg.translate_frac, cfg.translate_frac) * width
        ty = self.rng.uniform(-cfg.translate_frac, cfg.translate_frac) * height
        return AffineParams(
            rotate_deg=float(rotate),
            scale=float(scale),
            shear_x=float(shear),
            translate=(float(tx), float(ty)),
        )


def augment_dataset(
    pairs: Iterable[Tuple[np.ndarray, NormalField]],
    count: int,
    seed: int = 0,
    cfg: Optional[AugmentSamplerConfig] = None,
) -> Iterator[Tuple[int, AffineParams, np.ndarray, NormalField]]:
    """
    Yield `count` augmented variants per input pair as
    (pair_index, params, image, field). Deterministic for a fixed seed.
    """
    sampler = AffineSampler(seed, cfg)
    for index, (image, field) in enumerate(pairs):
        for _ in range(count):
            params = sampler.sample(field.size)
            warped_image, warped_field = affine_warp_pair(image, field, params)
            yield index, params, warped_image, warped_field
