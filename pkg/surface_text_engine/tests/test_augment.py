# Unit tests for the image / normal-map affine augmentation

import math

import numpy as np
import pytest

from surface_text_engine.core.augment.affine_warp import (
    AffineSampler,
    affine_warp_pair,
    augment_dataset,
    transform_normals,
)
from surface_text_engine.core.errors import DimensionMismatch, SingularAffine
from surface_text_engine.core.metrics.angular_error import angular_error_map, mae_n
from surface_text_engine.core.normals.synthesis import SmoothNormalSpec, synth_plane, synth_smooth
from surface_text_engine.core.schemas.augment import AffineParams
from surface_text_engine.core.schemas.config import AugmentSamplerConfig
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.normals import NormalField, RoiMask


def _base_image(width: int = 64, height: int = 48) -> np.ndarray:
    ys, xs = np.mgrid[0:height, 0:width]
    return np.stack([xs * 3 % 256, ys * 5 % 256, (xs * ys) % 256], axis=-1).astype(np.uint8)


def _inverse_map(params: AffineParams, size) -> tuple:
    """Source coordinates of every destination pixel."""
    width, height = size
    m = params.matrix(size)
    inv = np.linalg.inv(np.vstack([m, [0.0, 0.0, 1.0]]))
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    qx = inv[0, 0] * xs + inv[0, 1] * ys + inv[0, 2]
    qy = inv[1, 0] * xs + inv[1, 1] * ys + inv[1, 2]
    return qx, qy


# =============================================================================
# Parameters
# =============================================================================

def test_identity_params() -> None:
    params = AffineParams()
    assert params.is_identity
    np.testing.assert_allclose(params.matrix((64, 48)), [[1, 0, 0], [0, 1, 0]], atol=1e-12)


def test_positive_rotation_turns_x_toward_y() -> None:
    linear = AffineParams(rotate_deg=90).linear()
    np.testing.assert_allclose(linear @ [1.0, 0.0], [0.0, 1.0], atol=1e-12)


def test_centre_is_fixed_without_translation() -> None:
    m = AffineParams(rotate_deg=33, scale=1.3, shear_x=0.2).matrix((101, 51))
    np.testing.assert_allclose(m @ [50.0, 25.0, 1.0], [50.0, 25.0], atol=1e-9)


def test_determinant_of_shear_and_scale() -> None:
    params = AffineParams(scale=2.0, shear_x=0.5, shear_y=0.4, rotate_deg=17)
    assert params.determinant() == pytest.approx(4.0 * (1.0 - 0.2))


def test_singular_shear_is_rejected() -> None:
    params = AffineParams(shear_x=1.0, shear_y=1.0)
    with pytest.raises(SingularAffine) as exc:
        params.check()
    assert abs(exc.value.determinant) <= 1e-6


def test_non_positive_scale_is_rejected() -> None:
    with pytest.raises(ValueError):
        AffineParams(scale=0.0)


# =============================================================================
# Warping
# =============================================================================

def test_identity_warp_returns_exact_copies() -> None:
    image = _base_image()
    field = synth_smooth(64, 48, seed=2)

    out_image, out_field = affine_warp_pair(image, field, AffineParams())

    assert np.array_equal(out_image, image)
    assert out_image is not image
    assert np.array_equal(out_field.data, field.data)


def test_quarter_turn_moves_a_pixel() -> None:
    image = np.zeros((5, 5), dtype=np.uint8)
    image[2, 3] = 255
    field = synth_plane(UnitVec3(x=0.0, y=0.0, z=1.0), 5, 5)

    out_image, _ = affine_warp_pair(image, field, AffineParams(rotate_deg=90))

    assert out_image[3, 2] >= 254
    assert out_image[2, 3] <= 1


def test_quarter_turn_rotates_constant_normals() -> None:
    field = synth_plane(UnitVec3(x=1.0, y=0.0, z=0.0), 32, 32)

    _, out = affine_warp_pair(np.zeros((32, 32, 3), dtype=np.uint8), field, AffineParams(rotate_deg=90))

    interior = out.data[4:-4, 4:-4]
    np.testing.assert_allclose(interior, np.broadcast_to([0.0, 1.0, 0.0], interior.shape), atol=1e-12)


def test_border_normals_face_the_viewer() -> None:
    field = synth_plane(UnitVec3(x=1.0, y=0.0, z=0.0), 32, 32)
    params = AffineParams(translate=(10.0, 0.0))

    _, out = affine_warp_pair(np.zeros((32, 32), dtype=np.uint8), field, params)

    np.testing.assert_allclose(out.data[:, :5], np.broadcast_to([0.0, 0.0, 1.0], (32, 5, 3)), atol=1e-12)
    np.testing.assert_allclose(out.data[:, 12:], np.broadcast_to([1.0, 0.0, 0.0], (32, 20, 3)), atol=1e-12)


def test_rotated_smooth_field_matches_analytic_rotation() -> None:
    size = (128, 128)
    spec = SmoothNormalSpec.from_seed(11, max_tilt_deg=20.0, period_px=256.0)
    field = spec.render(*size)
    params = AffineParams(rotate_deg=30)

    _, warped = affine_warp_pair(np.zeros((128, 128, 3), dtype=np.uint8), field, params)

    qx, qy = _inverse_map(params, size)
    expected = NormalField(transform_normals(spec.evaluate(qx, qy), params.linear()))
    interior = (qx >= 2) & (qx <= size[0] - 3) & (qy >= 2) & (qy <= size[1] - 3)

    report = mae_n(expected, warped, RoiMask(interior))
    assert report.mae_degrees < 1.0


def test_rotation_preserves_angles_between_pixels() -> None:
    spec = SmoothNormalSpec.from_seed(4, max_tilt_deg=25.0, period_px=128.0)
    field = spec.render(96, 96)
    params = AffineParams(rotate_deg=-40)

    _, warped = affine_warp_pair(np.zeros((96, 96), dtype=np.uint8), field, params)

    qx, qy = _inverse_map(params, (96, 96))
    a, b = (40, 40), (55, 50)
    before = angular_error_map(
        spec.evaluate(qx[a[1], a[0]], qy[a[1], a[0]]), spec.evaluate(qx[b[1], b[0]], qy[b[1], b[0]])
    )
    after = angular_error_map(warped.data[a[1], a[0]], warped.data[b[1], b[0]])
    assert abs(float(after) - float(before)) < 1.0


def test_normals_follow_the_inverse_transpose() -> None:
    linear = AffineParams(shear_x=0.5).linear()
    n = np.array([[[0.0, 1.0, 1.0]]]) / math.sqrt(2.0)

    out = transform_normals(n, linear)

    # A surface tangent sheared along x stays perpendicular to the new normal
    tangent = linear @ np.array([1.0, 0.0])
    assert abs(float(out[0, 0, :2] @ tangent)) <= 1e-12
    assert float(np.linalg.norm(out)) == pytest.approx(1.0)


def test_size_mismatch_is_rejected() -> None:
    with pytest.raises(DimensionMismatch):
        affine_warp_pair(_base_image(64, 48), synth_smooth(48, 64), AffineParams(rotate_deg=5))


def test_singular_warp_is_rejected() -> None:
    with pytest.raises(SingularAffine):
        affine_warp_pair(_base_image(), synth_smooth(64, 48), AffineParams(shear_x=1.0, shear_y=1.0))


# =============================================================================
# Sampling
# =============================================================================

def test_sampler_is_deterministic_per_seed() -> None:
    first = AffineSampler(5).sample((64, 48))
    assert AffineSampler(5).sample((64, 48)) == first
    assert AffineSampler(6).sample((64, 48)) != first


def test_sampled_params_stay_in_range() -> None:
    cfg = AugmentSamplerConfig(rotate_deg=10.0, scale_min=0.8, scale_max=1.2, shear_x=0.05, translate_frac=0.1)
    sampler = AffineSampler(1, cfg)
    for _ in range(200):
        p = sampler.sample((100, 50))
        assert -10.0 <= p.rotate_deg <= 10.0
        assert 0.8 <= p.scale <= 1.2
        assert -0.05 <= p.shear_x <= 0.05
        assert abs(p.translate[0]) <= 10.0 and abs(p.translate[1]) <= 5.0
        p.check()


def test_augment_dataset_yields_count_per_pair() -> None:
    pairs = [(_base_image(), synth_smooth(64, 48, seed=s)) for s in (1, 2)]

    first = list(augment_dataset(pairs, count=3, seed=9))
    second = list(augment_dataset(pairs, count=3, seed=9))

    assert [index for index, *_ in first] == [0, 0, 0, 1, 1, 1]
    for (_, p1, img1, f1), (_, p2, img2, f2) in zip(first, second):
        assert p1 == p2
        assert np.array_equal(img1, img2)
        assert np.array_equal(f1.data, f2.data)
