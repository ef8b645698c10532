# Unit tests for normal-map decoding, the NRM1 raw format and aggregation

import math

import numpy as np
import pytest

from surface_text_engine.core.errors import (
    BadMagic,
    DimensionMismatch,
    EmptyRoi,
    IncoherentNormals,
    InvalidImage,
    IoError,
    SurfaceTextError,
    TruncatedFile,
    ZeroNormal,
)
from surface_text_engine.core.normals.aggregation import dominant_normal
from surface_text_engine.core.normals.codec import decode_normal_map, encode_normal_map
from surface_text_engine.core.normals.raw_format import read_raw, read_raw_file, write_raw, write_raw_file
from surface_text_engine.core.normals.synthesis import (
    SmoothNormalSpec,
    synth_dihedral,
    synth_plane,
    synth_smooth,
)
from surface_text_engine.core.schemas.config import NormalsConfig
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.normals import NormalField, RoiMask

FRONTAL = UnitVec3(x=0.0, y=0.0, z=1.0)


def _tilt_y(deg: float) -> UnitVec3:
    t = math.radians(deg)
    return UnitVec3.normalized(math.sin(t), 0.0, math.cos(t))


def _pixel(r: int, g: int, b: int) -> np.ndarray:
    return np.array([[[r, g, b]]], dtype=np.uint8)


def _angles_deg(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    cross = np.linalg.norm(np.cross(a, b), axis=-1)
    dot = np.sum(a * b, axis=-1)
    return np.degrees(np.arctan2(cross, dot))


# =============================================================================
# 8-bit codec
# =============================================================================

def test_decode_frontal_pixel() -> None:
    v = decode_normal_map(_pixel(128, 128, 255)).data[0, 0]
    np.testing.assert_allclose(v, [0.0, 0.0, 1.0], atol=0.01)


def test_decode_positive_x_pixel() -> None:
    v = decode_normal_map(_pixel(255, 128, 128)).data[0, 0]
    np.testing.assert_allclose(v, [1.0, 0.0, 0.0], atol=0.01)


def test_encode_frontal_normal() -> None:
    image = encode_normal_map(synth_plane(FRONTAL, 1, 1))
    assert image.dtype == np.uint8
    assert image[0, 0].tolist() == [128, 128, 255]


def test_encode_negative_x_normal() -> None:
    image = encode_normal_map(synth_plane(UnitVec3(x=-1.0, y=0.0, z=0.0), 1, 1))
    assert image[0, 0].tolist() == [0, 128, 128]


def test_decode_rejects_wrong_channel_count() -> None:
    with pytest.raises(InvalidImage):
        decode_normal_map(np.zeros((4, 4, 4), dtype=np.uint8))


def test_decode_rejects_16_bit_input() -> None:
    with pytest.raises(InvalidImage):
        decode_normal_map(np.zeros((4, 4, 3), dtype=np.uint16))


def test_random_unit_vectors_survive_quantization() -> None:
    rng = np.random.default_rng(2024)
    vectors = rng.normal(size=(1_000, 1_000, 3))
    vectors /= np.linalg.norm(vectors, axis=-1, keepdims=True)
    field = NormalField(vectors)

    image = encode_normal_map(field)
    decoded = decode_normal_map(image)

    assert float(_angles_deg(vectors, decoded.data).max()) <= 1.0
    reencoded = encode_normal_map(decoded)
    assert int(np.abs(reencoded.astype(int) - image.astype(int)).max()) <= 1
    second = decode_normal_map(reencoded)
    assert float(np.abs(second.data - decoded.data).max()) <= 1e-9


def test_near_zero_pixel_is_replaced_and_counted(caplog) -> None:
    cfg = NormalsConfig(zero_threshold=0.01)
    image = np.concatenate([_pixel(127, 128, 128), _pixel(128, 128, 255)], axis=1)

    decoded = decode_normal_map(image, cfg)

    assert decoded.replaced_pixels == 1
    assert decoded.data[0, 0].tolist() == [0.0, 0.0, 1.0]
    assert "near-zero" in caplog.text


def test_near_zero_pixel_raises_under_strict_policy() -> None:
    cfg = NormalsConfig(zero_threshold=0.01, zero_policy="raise")
    with pytest.raises(ZeroNormal) as exc:
        decode_normal_map(_pixel(127, 128, 128), cfg)
    assert exc.value.count == 1


def test_default_threshold_never_triggers_on_8_bit_codes() -> None:
    assert decode_normal_map(_pixel(127, 128, 128)).replaced_pixels == 0


# =============================================================================
# NRM1 raw format
# =============================================================================

def test_single_pixel_stream_is_24_bytes() -> None:
    data = write_raw(synth_plane(FRONTAL, 1, 1))
    assert len(data) == 24
    assert data[:4] == b"NRM1"


def test_raw_stream_round_trip_is_byte_identical() -> None:
    data = write_raw(synth_smooth(17, 9, seed=3))
    assert write_raw(read_raw(data)) == data


def test_raw_stream_keeps_dimensions() -> None:
    field = read_raw(write_raw(synth_plane(_tilt_y(25), 7, 3)))
    assert field.size == (7, 3)
    np.testing.assert_allclose(field.data[2, 6], _tilt_y(25).as_array(), atol=1e-7)


def test_wrong_magic_is_rejected() -> None:
    data = write_raw(synth_plane(FRONTAL, 2, 2))
    with pytest.raises(BadMagic):
        read_raw(b"NRM2" + data[4:])


@pytest.mark.parametrize("cut", [2, 10, 23])
def test_truncated_stream_is_rejected(cut: int) -> None:
    data = write_raw(synth_plane(FRONTAL, 1, 1))
    with pytest.raises(TruncatedFile):
        read_raw(data[:cut])


def test_trailing_bytes_are_rejected() -> None:
    data = write_raw(synth_plane(FRONTAL, 1, 1))
    with pytest.raises(InvalidImage):
        read_raw(data + b"\x00\x00\x00\x00")


def test_raw_file_round_trip(tmp_path) -> None:
    field = synth_dihedral(FRONTAL, _tilt_y(30), 8, 4, 3)
    path = write_raw_file(tmp_path / "field.nrm", field)
    assert read_raw_file(path).size == (8, 4)
    assert path.read_bytes() == write_raw(field)


def test_missing_raw_file_is_io_error(tmp_path) -> None:
    with pytest.raises(IoError):
        read_raw_file(tmp_path / "absent.nrm")


# =============================================================================
# Field containers
# =============================================================================

def test_field_rejects_non_unit_vectors() -> None:
    with pytest.raises(InvalidImage):
        NormalField(np.full((2, 2, 3), 0.5))


def test_field_is_read_only() -> None:
    field = synth_plane(FRONTAL, 2, 2)
    with pytest.raises(ValueError):
        field.data[0, 0, 0] = 1.0


def test_roi_rect_outside_image_is_empty() -> None:
    with pytest.raises(EmptyRoi):
        RoiMask.from_rect(60, 0, 10, 10, (64, 64))


def test_roi_bounding_rect() -> None:
    assert RoiMask.from_rect(3, 4, 5, 6, (20, 20)).bounding_rect() == (3, 4, 5, 6)


# =============================================================================
# Dominant normal
# =============================================================================

def test_constant_field_returns_its_normal() -> None:
    n0 = UnitVec3.normalized(0.3, -0.2, 0.9)
    field = synth_plane(n0, 16, 12)
    roi = RoiMask.from_rect(2, 3, 9, 5, field.size)

    n = dominant_normal(field, roi)

    np.testing.assert_allclose(n.as_array(), n0.as_array(), atol=1e-12)


def test_two_equal_halves_give_midpoint_direction() -> None:
    field = synth_dihedral(FRONTAL, _tilt_y(20), 32, 8, 16)
    n = dominant_normal(field, RoiMask.full(field.size))
    np.testing.assert_allclose(n.as_array(), _tilt_y(10).as_array(), atol=1e-12)


def test_antipodal_halves_are_incoherent() -> None:
    field = synth_dihedral(FRONTAL, UnitVec3(x=0.0, y=0.0, z=-1.0), 8, 8, 4)
    with pytest.raises(IncoherentNormals) as exc:
        dominant_normal(field, RoiMask.full(field.size))
    assert exc.value.magnitude == pytest.approx(0.0)


def test_empty_roi_is_rejected() -> None:
    field = synth_plane(FRONTAL, 4, 4)
    with pytest.raises(EmptyRoi):
        dominant_normal(field, RoiMask(np.zeros((4, 4), dtype=bool)))


def test_roi_of_other_size_is_rejected() -> None:
    field = synth_plane(FRONTAL, 4, 4)
    with pytest.raises(DimensionMismatch):
        dominant_normal(field, RoiMask.full((5, 4)))


def test_dominant_normal_ignores_pixel_order() -> None:
    field = synth_smooth(24, 16, seed=9)
    roi = RoiMask.from_rect(4, 2, 12, 10, field.size)
    perm = np.random.default_rng(1).permutation(24 * 16)

    shuffled = NormalField(field.data.reshape(-1, 3)[perm].reshape(16, 24, 3))
    shuffled_roi = RoiMask(roi.data.reshape(-1)[perm].reshape(16, 24))

    a = dominant_normal(field, roi)
    b = dominant_normal(shuffled, shuffled_roi)
    np.testing.assert_allclose(a.as_array(), b.as_array(), atol=1e-12)


def test_dominant_normal_survives_nearest_upsampling() -> None:
    field = synth_smooth(20, 20, seed=4)
    roi = RoiMask.from_rect(5, 5, 10, 8, field.size)

    a = dominant_normal(field, roi)
    b = dominant_normal(field.upsample_nearest(2), roi.upsample_nearest(2))

    np.testing.assert_allclose(a.as_array(), b.as_array(), atol=1e-12)


# =============================================================================
# Synthetic fixtures
# =============================================================================

def test_frontal_plane_dominant_normal() -> None:
    field = synth_plane(FRONTAL, 4, 4)
    assert dominant_normal(field, RoiMask.full(field.size)).as_tuple() == (0.0, 0.0, 1.0)


def test_dihedral_left_half_is_left_normal() -> None:
    left, right = _tilt_y(-15), _tilt_y(35)
    field = synth_dihedral(left, right, 64, 16, 32)

    n = dominant_normal(field, RoiMask.from_rect(0, 0, 32, 16, field.size))

    np.testing.assert_allclose(n.as_array(), left.as_array(), atol=1e-12)


def test_dihedral_with_equal_halves_is_a_plane() -> None:
    n0 = _tilt_y(12)
    field = synth_dihedral(n0, n0, 10, 10, 5)
    n = dominant_normal(field, RoiMask.full(field.size))
    np.testing.assert_allclose(n.as_array(), n0.as_array(), atol=1e-12)


@pytest.mark.parametrize("split", [0, 64, 70])
def test_dihedral_split_outside_image_is_rejected(split: int) -> None:
    with pytest.raises(SurfaceTextError):
        synth_dihedral(FRONTAL, _tilt_y(30), 64, 16, split)


def test_plane_needs_positive_size() -> None:
    with pytest.raises(SurfaceTextError):
        synth_plane(FRONTAL, 0, 4)


def test_smooth_field_is_seeded_and_bounded() -> None:
    a = synth_smooth(48, 32, seed=7, max_tilt_deg=20.0)
    b = synth_smooth(48, 32, seed=7, max_tilt_deg=20.0)
    c = synth_smooth(48, 32, seed=8, max_tilt_deg=20.0)

    assert np.array_equal(a.data, b.data)
    assert not np.array_equal(a.data, c.data)
    tilt = np.degrees(np.arccos(np.clip(a.data[..., 2], -1.0, 1.0)))
    assert float(tilt.max()) <= 20.0 + 1e-9


def test_smooth_spec_evaluates_off_grid() -> None:
    spec = SmoothNormalSpec.from_seed(2)
    v = spec.evaluate(np.array([10.25]), np.array([3.5]))
    assert v.shape == (1, 3)
    assert float(np.linalg.norm(v)) == pytest.approx(1.0, abs=1e-12)
