# Writes the conditioning files consumed by the text-generation model
# core/maskgen/export.py

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from PIL import Image, ImageDraw

from surface_text_engine.core.errors import DimensionMismatch, IoError
from surface_text_engine.core.schemas.geometry import UnitVec3
from surface_text_engine.core.schemas.manifest import ConditioningManifest, ExportedFile, QuadEntry, QuadsDocument
from surface_text_engine.core.schemas.maskgen import CharQuad, MaskImage
from surface_text_engine.core.schemas.normals import NormalField, RoiMask
from surface_text_engine.io.images import write_mask_png, write_normal_png, write_png

logger = logging.getLogger(__name__)

QUAD_DECIMALS = 3
PREVIEW_COLOR = (255, 0, 0)


class ExportResult:
    """
    Result of one conditioning export.

    Attributes:
        manifest: Parsed manifest as written to manifest.json
        paths: role -> written path
    """

    def __init__(self, manifest: ConditioningManifest, paths: Dict[str, Path]):
        self.manifest = manifest
        self.paths = paths


def _round(value: float) -> float:
    # +0.0 folds negative zero
    return round(float(value), QUAD_DECIMALS) + 0.0


def _normal_tuple(n: Optional[UnitVec3]):
    return None if n is None else n.as_tuple()


def quads_document(quads: List[CharQuad], dominant: Optional[UnitVec3]) -> QuadsDocument:
    return QuadsDocument(
        chars=[
            QuadEntry(
                ch=q.ch,
                quad=[(_round(x), _round(y)) for x, y in q.quad.corners],
                normal=_normal_tuple(q.normal),
            )
            for q in quads
        ],
        dominant_normal=_normal_tuple(dominant),
    )


def _write_json(path: Path, payload: Dict[str, Any]) -> Path:
    try:
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}", path=str(path)) from e
    return path


def _check_sizes(size, **parts) -> None:
    for name, part_size in parts.items():
        if part_size is not None and tuple(part_size) != tuple(size):
            raise DimensionMismatch(f"{name} is {tuple(part_size)}, source image is {tuple(size)}")


def render_preview(source: np.ndarray, quads: List[CharQuad]) -> np.ndarray:
    """Source image with quad outlines drawn on top."""
    img = Image.fromarray(np.ascontiguousarray(source, dtype=np.uint8)).convert("RGB")
    draw = ImageDraw.Draw(img)
    for q in quads:
        draw.polygon([(float(x), float(y)) for x, y in q.quad.corners], outline=PREVIEW_COLOR)
    return np.asarray(img)


def export_conditioning(
    source: np.ndarray,
    mask: MaskImage,
    field: NormalField,
    roi: RoiMask,
    out_dir: Union[str, Path],
    quads: List[CharQuad],
    config_digest: str,
    dominant: Optional[UnitVec3] = None,
    normal_mode: str = "roi",
    unaligned_mask: Optional[MaskImage] = None,
    pipeline_trace: Optional[List[str]] = None,
) -> ExportResult:
    """
    Write source.png, cmask_aligned.png, normals.png, roi.png, quads.json
    and manifest.json (plus cmask_unaligned.png when given).

    Raises:
        DimensionMismatch: inputs disagree on the image size
        IoError: the output directory or a file cannot be written
    """
    source = np.asarray(source)
    if source.ndim != 3 or source.shape[2] != 3:
        raise DimensionMismatch(f"source image must be (H, W, 3), got {source.shape}")
    size = (int(source.shape[1]), int(source.shape[0]))
    _check_sizes(
        size,
        mask=mask.size,
        normals=field.size,
        roi=roi.size,
        unaligned_mask=unaligned_mask.size if unaligned_mask is not None else None,
    )

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(f"cannot create output directory {out}: {e}", path=str(out)) from e

    width, height = size
    paths: Dict[str, Path] = {}
    files: List[ExportedFile] = []

    def image_file(role: str, name: str, writer) -> None:
        paths[role] = writer(out / name)
        files.append(ExportedFile(name=name, role=role, width=width, height=height))

    image_file("source", "source.png", lambda p: write_png(p, source.astype(np.uint8)))
    image_file("cmask_aligned", "cmask_aligned.png", lambda p: write_png(p, mask.data))
    if unaligned_mask is not None:
        image_file("cmask_unaligned", "cmask_unaligned.png", lambda p: write_png(p, unaligned_mask.data))
    image_file("normals", "normals.png", lambda p: write_normal_png(p, field))
    image_file("roi", "roi.png", lambda p: write_mask_png(p, roi))

    paths["quads"] = _write_json(out / "quads.json", quads_document(quads, dominant).model_dump(mode="json"))
    files.append(ExportedFile(name="quads.json", role="quads"))
    files.append(ExportedFile(name="manifest.json", role="manifest"))

    manifest = ConditioningManifest(
        files=files,
        image_width=width,
        image_height=height,
        char_count=len(quads),
        dominant_normal=_normal_tuple(dominant),
        normal_mode=normal_mode,
        config_digest=config_digest,
        pipeline_trace=list(pipeline_trace or []),
    )
    paths["manifest"] = _write_json(out / "manifest.json", manifest.model_dump(mode="json"))

    logger.info("Exported %d conditioning file(s) to %s", len(files), out)
    return ExportResult(manifest=manifest, paths=paths)
