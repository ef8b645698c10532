# Unit tests for YAML settings loading, overrides and the config digest

import pytest

from surface_text_engine.core.errors import IoError, SurfaceTextError
from surface_text_engine.core.schemas.config import EngineSettings
from surface_text_engine.core.settings import CONFIG_ENV_VAR, config_digest, load_settings, with_overrides


def test_packaged_defaults_match_model_defaults() -> None:
    assert load_settings() == EngineSettings()


def test_partial_file_keeps_other_defaults(tmp_path) -> None:
    path = tmp_path / "custom.yaml"
    path.write_text("layout:\n  align: left\nprojection:\n  readout: perspective\n", encoding="utf-8")

    settings = load_settings(path)

    assert settings.layout.align == "left"
    assert settings.projection.readout == "perspective"
    assert settings.layout.char_aspect == 0.6
    assert settings.normals == EngineSettings().normals


def test_environment_variable_selects_the_file(tmp_path, monkeypatch) -> None:
    path = tmp_path / "env.yaml"
    path.write_text("raster:\n  threshold: 0.4\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))

    assert load_settings().raster.threshold == 0.4


def test_invalid_value_is_rejected(tmp_path) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text("layout:\n  char_gap_frac: 2.0\n", encoding="utf-8")
    with pytest.raises(SurfaceTextError):
        load_settings(path)


def test_missing_file_is_io_error(tmp_path) -> None:
    with pytest.raises(IoError):
        load_settings(tmp_path / "absent.yaml")


def test_overrides_skip_unset_values() -> None:
    base = EngineSettings()
    updated = with_overrides(base, {"layout": {"align": "right", "char_aspect": None}})
    assert updated.layout.align == "right"
    assert updated.layout.char_aspect == base.layout.char_aspect


def test_out_of_range_override_is_rejected() -> None:
    with pytest.raises(SurfaceTextError):
        with_overrides(EngineSettings(), {"projection": {"min_facing": 1.5}})


def test_digest_tracks_mask_shaping_settings_only() -> None:
    base = EngineSettings()
    digest = config_digest(base)

    assert len(digest) == 64
    assert config_digest(EngineSettings()) == digest
    assert config_digest(with_overrides(base, {"layout": {"margin_frac": 0.1}})) != digest
    assert config_digest(with_overrides(base, {"normals": {"zero_policy": "raise"}})) == digest
