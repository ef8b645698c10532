# 8-bit RGB normal-map encoding and decoding
# core/normals/codec.py
#
# Convention: c = round((n + 1) / 2 * 255) per channel, camera-facing
# normal (0, 0, 1) <-> (128, 128, 255), camera-space normals with z
# toward the viewer.

import logging
from typing import Optional

import numpy as np

from surface_text_engine.core.errors import InvalidImage, ZeroNormal
from surface_text_engine.core.schemas.config import NormalsConfig
from surface_text_engine.core.schemas.normals import NormalField

logger = logging.getLogger(__name__)

# Inner margin of a quantization cell, in code units
CELL_MARGIN = 1e-8

# Search range for the ray parameter; covers every reachable cell
RAY_MAX = 4.0

FRONTAL = np.array([0.0, 0.0, 1.0], dtype=np.float64)


def _encode_codes(vectors: np.ndarray) -> np.ndarray:
    """Round-half-up quantization of (..., 3) float vectors to integer codes."""
    codes = np.floor((vectors + 1.0) / 2.0 * 255.0 + 0.5)
    return np.clip(codes, 0, 255)


def encode_normal_map(field: NormalField) -> np.ndarray:
    """NormalField -> (H, W, 3) uint8 image."""
    return _encode_codes(field.data).astype(np.uint8)


def _snap_to_cells(vectors: np.ndarray, codes: np.ndarray, iterations: int) -> np.ndarray:
    """
    Keep each unit vector inside the quantization cell of its code.

    Vectors that already re-encode to their code are returned as-is. For
    the rest, p(s) = clip(s * v, cell) is bisected on s until |p| = 1; |p|
    grows monotonically with s, so the result lies in the cell whenever
    the cell meets the unit sphere. Pixels that still do not settle keep
    their plain renormalized value.
    """
    out = vectors.copy()
    pending = ~np.all(_encode_codes(vectors) == codes, axis=-1)
    if iterations == 0 or not pending.any():
        return out

    v = vectors[pending]
    c = codes[pending]
    lo = np.maximum((c - 0.5 + CELL_MARGIN) / 127.5 - 1.0, -1.0)
    hi = np.minimum((c + 0.5 - CELL_MARGIN) / 127.5 - 1.0, 1.0)

    s_lo = np.zeros(v.shape[0])
    s_hi = np.full(v.shape[0], RAY_MAX)
    for _ in range(iterations):
        mid = 0.5 * (s_lo + s_hi)
        length = np.linalg.norm(np.clip(mid[:, None] * v, lo, hi), axis=-1)
        below = length < 1.0
        s_lo = np.where(below, mid, s_lo)
        s_hi = np.where(below, s_hi, mid)

    snapped = np.clip(s_hi[:, None] * v, lo, hi)
    snapped = snapped / np.linalg.norm(snapped, axis=-1, keepdims=True)
    settled = np.all(_encode_codes(snapped) == c, axis=-1)
    out[pending] = np.where(settled[:, None], snapped, v)
    return out


def decode_normal_map(image: np.ndarray, cfg: Optional[NormalsConfig] = None) -> NormalField:
    """
    (H, W, 3) uint8 image -> NormalField.

    n = c / 255 * 2 - 1, renormalized to unit length and kept inside the
    code's quantization cell, so re-encoding reproduces the image.
    """
    cfg = cfg or NormalsConfig()
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise InvalidImage(f"normal map must have 3 channels, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        raise InvalidImage(f"normal map must be 8-bit, got dtype {arr.dtype}")

    codes = arr.astype(np.float64)
    raw = codes / 255.0 * 2.0 - 1.0
    lengths = np.linalg.norm(raw, axis=-1, keepdims=True)
    zero = lengths[..., 0] < cfg.zero_threshold
    replaced = int(zero.sum())

    if replaced and cfg.zero_policy == "raise":
        ys, xs = np.nonzero(zero)
        raise ZeroNormal(
            f"{replaced} pixel(s) decode to a near-zero normal, first at ({xs[0]}, {ys[0]})",
            count=replaced,
        )

    safe_lengths = np.where(lengths < cfg.zero_threshold, 1.0, lengths)
    vectors = raw / safe_lengths
    vectors = _snap_to_cells(vectors, codes, cfg.snap_iterations)

    if replaced:
        vectors[zero] = FRONTAL
        logger.warning("Replaced %d near-zero normal(s) with (0, 0, 1)", replaced)

    return NormalField(vectors, replaced_pixels=replaced)
