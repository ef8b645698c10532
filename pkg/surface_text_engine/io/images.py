# PNG and raw-file input/output for images, normal maps and masks
# io/images.py

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from surface_text_engine.core.errors import InvalidImage, IoError
from surface_text_engine.core.normals.codec import decode_normal_map, encode_normal_map
from surface_text_engine.core.normals.raw_format import read_raw_file
from surface_text_engine.core.schemas.config import NormalsConfig
from surface_text_engine.core.schemas.normals import NormalField, RoiMask

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RAW_SUFFIX = ".nrm"


def _open(path: PathLike) -> Image.Image:
    try:
        img = Image.open(path)
        img.load()
    except FileNotFoundError as e:
        raise IoError(f"cannot read {path}: file not found", path=str(path)) from e
    except UnidentifiedImageError as e:
        raise InvalidImage(f"{path} is not a readable image", path=str(path)) from e
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}", path=str(path)) from e
    return img


def read_rgb(path: PathLike) -> np.ndarray:
    """Any Pillow-readable image as (H, W, 3) uint8."""
    with _open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8).copy()


def read_image_array(path: PathLike) -> np.ndarray:
    """Pixel array exactly as stored (no mode conversion)."""
    with _open(path) as img:
        if img.mode == "P":
            img = img.convert("RGB")
        return np.asarray(img).copy()


def write_png(path: PathLike, array: np.ndarray) -> Path:
    target = Path(path)
    arr = np.ascontiguousarray(array)
    if arr.dtype == np.bool_:
        arr = arr.astype(np.uint8) * 255
    try:
        Image.fromarray(arr).save(target, format="PNG")
    except OSError as e:
        raise IoError(f"cannot write {target}: {e}", path=str(target)) from e
    logger.debug("Wrote %s (%dx%d)", target, arr.shape[1], arr.shape[0])
    return target


def read_normal_png(path: PathLike, cfg: Optional[NormalsConfig] = None) -> NormalField:
    return decode_normal_map(read_image_array(path), cfg)


def write_normal_png(path: PathLike, field: NormalField) -> Path:
    return write_png(path, encode_normal_map(field))


def load_normal_field(path: PathLike, cfg: Optional[NormalsConfig] = None) -> NormalField:
    """NRM1 raw for the .nrm suffix, 8-bit PNG decode otherwise."""
    if Path(path).suffix.lower() == RAW_SUFFIX:
        return read_raw_file(path)
    return read_normal_png(path, cfg)


def read_mask_png(path: PathLike) -> RoiMask:
    """Grayscale mask; any nonzero pixel is inside."""
    with _open(path) as img:
        arr = np.asarray(img.convert("L"))
    return RoiMask(arr > 0)


def write_mask_png(path: PathLike, mask: RoiMask) -> Path:
    return write_png(path, mask.data.astype(np.uint8) * 255)
