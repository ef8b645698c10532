# Unit tests for the angular-error metric and rating statistics

import math

import numpy as np
import pytest

from surface_text_engine.core.errors import DimensionMismatch, EmptyRoi, IoError, MalformedRecord
from surface_text_engine.core.metrics.angular_error import angular_error, angular_error_map, mae_n
from surface_text_engine.core.metrics.rating_stats import CSV_COLUMNS, load_ratings_csv, rating_stats
from surface_text_engine.core.normals.codec import decode_normal_map, encode_normal_map
from surface_text_engine.core.normals.raw_format import read_raw, write_raw
from surface_text_engine.core.normals.synthesis import synth_dihedral, synth_plane, synth_smooth
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.metrics import RATING_PARAMETERS, MetricReport, RatingRecord
from surface_text_engine.core.schemas.normals import RoiMask

FRONTAL = UnitVec3(x=0.0, y=0.0, z=1.0)


def _tilt_y(deg: float) -> UnitVec3:
    t = math.radians(deg)
    return UnitVec3.normalized(math.sin(t), 0.0, math.cos(t))


def _base_record(**overrides) -> RatingRecord:
    data = {
        "method": "aligned",
        "image_id": "img-001",
        "participant": "p01",
        "harmonization": 3,
        "text_rendering": 3,
        "perspective_blending": 3,
    }
    data.update(overrides)
    return RatingRecord(**data)


def _write_csv(path, rows, header=",".join(CSV_COLUMNS)) -> None:
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")


# =============================================================================
# Angular error
# =============================================================================

def test_identical_vectors_have_zero_error() -> None:
    n = UnitVec3.normalized(0.2, -0.4, 0.9)
    assert angular_error(n, n) == 0.0


def test_perpendicular_vectors() -> None:
    assert angular_error(FRONTAL, UnitVec3(x=0.0, y=1.0, z=0.0)) == pytest.approx(90.0, abs=1e-12)


def test_ten_degree_rotation() -> None:
    t = math.radians(10)
    b = UnitVec3.normalized(0.0, math.sin(t), math.cos(t))
    assert angular_error(FRONTAL, b) == pytest.approx(10.0, abs=1e-9)


def test_antipodal_vectors() -> None:
    assert angular_error(FRONTAL, FRONTAL.negated()) == pytest.approx(180.0, abs=1e-12)


def test_error_map_is_symmetric() -> None:
    a = synth_smooth(16, 16, seed=1).data
    b = synth_smooth(16, 16, seed=2).data
    assert np.array_equal(angular_error_map(a, b), angular_error_map(b, a))


# =============================================================================
# MAE over normal fields
# =============================================================================

def test_identical_fields_report_zero() -> None:
    field = synth_smooth(32, 24, seed=3)
    report = mae_n(field, field)
    assert report.mae_degrees == 0.0
    assert report.max_error_degrees == 0.0
    assert report.pixel_count == 32 * 24


def test_constant_tilt_gives_constant_error() -> None:
    report = mae_n(synth_plane(FRONTAL, 20, 10), synth_plane(_tilt_y(25), 20, 10))
    assert report.mae_degrees == pytest.approx(25.0, abs=1e-9)
    assert report.max_error_degrees == pytest.approx(25.0, abs=1e-9)


@pytest.mark.parametrize("theta", [1.0, 10.0, 25.0, 90.0])
def test_constant_tilt_through_storage_formats(theta: float) -> None:
    a, b = synth_plane(FRONTAL, 16, 16), synth_plane(_tilt_y(theta), 16, 16)

    assert mae_n(a, b).mae_degrees == pytest.approx(theta, abs=1e-6)
    # float32 storage of the raw format
    raw = mae_n(read_raw(write_raw(a)), read_raw(write_raw(b)))
    assert raw.mae_degrees == pytest.approx(theta, abs=1e-6)
    png = mae_n(decode_normal_map(encode_normal_map(a)), decode_normal_map(encode_normal_map(b)))
    assert png.mae_degrees == pytest.approx(theta, abs=1.0)


def test_mae_is_symmetric() -> None:
    a, b = synth_smooth(24, 24, seed=5), synth_smooth(24, 24, seed=6)
    assert mae_n(a, b) == mae_n(b, a)


def test_mask_matches_crop() -> None:
    a, b = synth_smooth(40, 30, seed=7), synth_smooth(40, 30, seed=8)
    roi = RoiMask.from_rect(5, 4, 20, 15, a.size)

    masked = mae_n(a, b, roi)
    cropped = mae_n(a.crop(5, 4, 20, 15), b.crop(5, 4, 20, 15))

    assert masked.mae_degrees == pytest.approx(cropped.mae_degrees, abs=1e-12)
    assert masked.pixel_count == 300


def test_error_grows_with_tilt() -> None:
    plane = synth_plane(FRONTAL, 8, 8)
    values = [mae_n(plane, synth_plane(_tilt_y(t), 8, 8)).mae_degrees for t in (5, 10, 20, 40, 80)]
    assert values == sorted(values)
    assert len(set(values)) == len(values)


def test_dihedral_error_is_area_weighted() -> None:
    dihedral = synth_dihedral(FRONTAL, _tilt_y(30), 64, 16, 16)
    report = mae_n(dihedral, synth_plane(FRONTAL, 64, 16))
    assert report.mae_degrees == pytest.approx(30.0 * 48 / 64, abs=1e-9)
    assert report.max_error_degrees == pytest.approx(30.0, abs=1e-9)


def test_size_mismatch_is_rejected() -> None:
    with pytest.raises(DimensionMismatch):
        mae_n(synth_plane(FRONTAL, 8, 8), synth_plane(FRONTAL, 8, 9))


def test_mask_of_other_size_is_rejected() -> None:
    field = synth_plane(FRONTAL, 8, 8)
    with pytest.raises(DimensionMismatch):
        mae_n(field, field, RoiMask.full((4, 4)))


def test_empty_mask_is_rejected() -> None:
    field = synth_plane(FRONTAL, 8, 8)
    with pytest.raises(EmptyRoi):
        mae_n(field, field, RoiMask(np.zeros((8, 8), dtype=bool)))


def test_report_json_shape() -> None:
    report = MetricReport(mae_degrees=1.23456789012, max_error_degrees=2.0, pixel_count=4)
    assert report.to_json_dict(3) == {"mae_deg": 1.235, "max_deg": 2.0, "pixels": 4}


def test_report_rejects_mean_above_max() -> None:
    with pytest.raises(ValueError):
        MetricReport(mae_degrees=3.0, max_error_degrees=2.0, pixel_count=4)


# =============================================================================
# Rating statistics
# =============================================================================

def test_single_record_of_threes() -> None:
    summary = rating_stats([_base_record()])
    stats = summary.methods["aligned"].parameters["harmonization"]
    assert stats.mean == 3.0
    assert stats.variance == 0.0
    assert stats.histogram == {1: 0, 2: 0, 3: 1, 4: 0, 5: 0}
    assert stats.top_rating_count == 0


def test_two_records_mean_and_variance() -> None:
    summary = rating_stats([
        _base_record(harmonization=2, participant="p01"),
        _base_record(harmonization=4, participant="p02"),
    ])
    stats = summary.methods["aligned"].parameters["harmonization"]
    assert stats.mean == 3.0
    assert stats.variance == 1.0


def test_survey_table_histograms_count_participants() -> None:
    rng = np.random.default_rng(15)
    methods = ["aligned", "baseline_a", "baseline_b", "unaligned"]
    records = [
        _base_record(
            method=m,
            participant=f"p{i:02d}",
            **{p: int(rng.integers(1, 6)) for p in RATING_PARAMETERS},
        )
        for m in methods
        for i in range(15)
    ]

    summary = rating_stats(records)

    assert list(summary.methods) == sorted(methods)
    for m in methods:
        assert summary.methods[m].record_count == 15
        for p in RATING_PARAMETERS:
            stats = summary.methods[m].parameters[p]
            assert sum(stats.histogram.values()) == 15
            assert stats.top_rating_count == stats.histogram[5]


def test_best_method_ties_break_by_name() -> None:
    summary = rating_stats([
        _base_record(method="zeta", text_rendering=5),
        _base_record(method="alpha", text_rendering=5),
        _base_record(method="mid", text_rendering=4, harmonization=5),
    ])
    assert summary.best_method["text_rendering"] == "alpha"
    assert summary.best_method["harmonization"] == "mid"


def test_no_records_is_malformed() -> None:
    with pytest.raises(MalformedRecord):
        rating_stats([])


def test_scores_outside_scale_are_rejected() -> None:
    with pytest.raises(ValueError):
        _base_record(harmonization=6)


def test_load_csv(tmp_path) -> None:
    path = tmp_path / "ratings.csv"
    _write_csv(path, ["aligned,img-1,p01,5,4,3", " baseline ,img-1,p01,2,2,1"])

    records = load_ratings_csv(path)

    assert [r.method for r in records] == ["aligned", "baseline"]
    assert records[0].harmonization == 5


def test_load_csv_with_byte_order_mark(tmp_path) -> None:
    path = tmp_path / "ratings.csv"
    path.write_bytes(("\ufeff" + ",".join(CSV_COLUMNS) + "\naligned,img-1,p01,5,4,3\n").encode("utf-8"))

    records = load_ratings_csv(path)

    assert [r.method for r in records] == ["aligned"]
    assert records[0].perspective_blending == 3


def test_csv_bad_score_names_its_row(tmp_path) -> None:
    path = tmp_path / "ratings.csv"
    _write_csv(path, ["aligned,img-1,p01,5,4,3", "aligned,img-2,p01,5,9,3"])
    with pytest.raises(MalformedRecord) as exc:
        load_ratings_csv(path)
    assert exc.value.row == 2
    assert "row 2" in str(exc.value)


def test_csv_short_row_is_rejected(tmp_path) -> None:
    path = tmp_path / "ratings.csv"
    _write_csv(path, ["aligned,img-1,p01,5,4"])
    with pytest.raises(MalformedRecord) as exc:
        load_ratings_csv(path)
    assert exc.value.row == 1


def test_csv_long_row_is_rejected(tmp_path) -> None:
    path = tmp_path / "ratings.csv"
    _write_csv(path, ["aligned,img-1,p01,5,4,3", "aligned,img-1,p02,5,4,3,1"])
    with pytest.raises(MalformedRecord) as exc:
        load_ratings_csv(path)
    assert exc.value.row == 2


def test_csv_missing_column_is_header_error(tmp_path) -> None:
    path = tmp_path / "ratings.csv"
    _write_csv(path, ["aligned,img-1,p01,5,4"], header="method,image_id,participant,harmonization,text_rendering")
    with pytest.raises(MalformedRecord) as exc:
        load_ratings_csv(path)
    assert exc.value.row == 0
    assert "perspective_blending" in str(exc.value)


def test_missing_csv_is_io_error(tmp_path) -> None:
    with pytest.raises(IoError):
        load_ratings_csv(tmp_path / "absent.csv")
