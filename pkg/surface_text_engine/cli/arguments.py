# Parsers for compact command-line values (vectors, sizes, rectangles)
# cli/arguments.py

import json
import math
import sys
from typing import Any, Tuple

from surface_text_engine.core.errors import SurfaceTextError
from surface_text_engine.core.schemas.geometry import UnitVec3


def _floats(text: str, count: int, what: str) -> Tuple[float, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise SurfaceTextError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise SurfaceTextError(f"{what} must be numeric, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise SurfaceTextError(f"{what} must be finite, got {text!r}")
    return values


def parse_normal(text: str) -> UnitVec3:
    """'nx,ny,nz' -> unit vector (zero or non-finite input is rejected)."""
    x, y, z = _floats(text, 3, "normal")
    return UnitVec3.normalized(x, y, z)


def parse_size(text: str) -> Tuple[int, int]:
    """'WxH' -> (width, height)."""
    parts = text.lower().split("x")
    try:
        width, height = (int(p) for p in parts)
    except ValueError:
        raise SurfaceTextError(f"size must look like 64x64, got {text!r}") from None
    if width <= 0 or height <= 0:
        raise SurfaceTextError(f"size must be positive, got {text!r}")
    return width, height


def parse_rect(text: str) -> Tuple[int, int, int, int]:
    """'x,y,w,h' in whole pixels."""
    values = _floats(text, 4, "ROI")
    if any(v != int(v) for v in values):
        raise SurfaceTextError(f"ROI must be whole pixels, got {text!r}")
    x, y, w, h = (int(v) for v in values)
    return x, y, w, h


def parse_pair(text: str) -> Tuple[float, float]:
    a, b = _floats(text, 2, "translation")
    return a, b


def emit_json(payload: Any) -> None:
    """Machine-readable result on stdout."""
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
