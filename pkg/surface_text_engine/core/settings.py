# Loads engine settings from YAML
# core/settings.py

import hashlib
import json
import logging
import os
import threading
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import ValidationError

from surface_text_engine.core.errors import IoError, SurfaceTextError
from surface_text_engine.core.schemas.config import EngineSettings

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "SURFACE_TEXT_CONFIG"
DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "defaults.yaml"

_cache: Dict[str, EngineSettings] = {}
_lock = threading.Lock()


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise IoError(f"cannot read config {path}: {e}", path=str(path)) from e
    except yaml.YAMLError as e:
        raise SurfaceTextError(f"invalid YAML in {path}: {e}", path=str(path)) from e
    return data or {}


def load_settings(config_path: Optional[Union[str, Path]] = None) -> EngineSettings:
    """
    Load settings from an explicit path, the SURFACE_TEXT_CONFIG variable,
    or the packaged defaults. Sections or keys missing from the file keep
    their model defaults.
    """
    resolved = config_path or os.getenv(CONFIG_ENV_VAR) or DEFAULT_CONFIG_PATH
    key = str(Path(resolved).resolve())

    if key not in _cache:
        with _lock:
            if key not in _cache:
                raw = _read_yaml(Path(resolved))
                try:
                    _cache[key] = EngineSettings.model_validate(raw)
                except ValidationError as e:
                    raise SurfaceTextError(
                        f"invalid settings in {resolved}: {e}", path=str(resolved)
                    ) from e
                logger.debug("Loaded settings from %s", resolved)

    return _cache[key]


def with_overrides(settings: EngineSettings, overrides: Dict[str, Dict[str, Any]]) -> EngineSettings:
    """Return a copy with per-section overrides applied (None values are skipped)."""
    data = settings.model_dump()
    for section, values in overrides.items():
        for name, value in values.items():
            if value is not None:
                data[section][name] = value
    try:
        return EngineSettings.model_validate(data)
    except ValidationError as e:
        raise SurfaceTextError(f"invalid setting override: {e}") from e


def config_digest(settings: EngineSettings) -> str:
    """SHA-256 of the canonical JSON of the settings that shape the mask."""
    payload = {
        "projection": settings.projection.model_dump(),
        "layout": settings.layout.model_dump(),
        "raster": settings.raster.model_dump(),
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
