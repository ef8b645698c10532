# surface-text align: layout, alignment, rasterization and conditioning export
# cli/commands/align.py

import argparse
import logging
from pathlib import Path

from surface_text_engine.cli.arguments import emit_json, parse_rect
from surface_text_engine.core.explainability.pipeline_trace import PipelineTraceLogger
from surface_text_engine.core.maskgen.export import render_preview
from surface_text_engine.core.maskgen.glyphs import load_glyph_set
from surface_text_engine.core.schemas.config import EngineSettings
from surface_text_engine.core.schemas.geometry import BBox2D
from surface_text_engine.core.schemas.normals import RoiMask
from surface_text_engine.core.settings import with_overrides
from surface_text_engine.io.images import load_normal_field, read_mask_png, read_rgb, write_png
from surface_text_engine.pipeline.conditioning_pipeline import ConditioningPipeline

logger = logging.getLogger(__name__)

PREVIEW_NAME = "preview.png"


def register(subparsers, parents) -> None:
    p = subparsers.add_parser(
        "align",
        parents=parents,
        help="Build the surface-aligned character mask and conditioning files",
        description="Lay text out in the ROI, align every character cell with the dominant surface "
                    "normal, rasterize the aligned mask and export the conditioning files "
                    "(source.png, cmask_aligned.png, normals.png, roi.png, quads.json, "
                    "manifest.json) plus preview.png.",
    )
    p.add_argument("--image", required=True, help="Source image (any Pillow-readable format)")
    p.add_argument("--normals", required=True, help="Normal map: 8-bit PNG, or NRM1 raw with the .nrm suffix")
    roi = p.add_mutually_exclusive_group(required=True)
    roi.add_argument("--roi", metavar="X,Y,W,H", help="ROI rectangle in pixels")
    roi.add_argument("--roi-mask", metavar="PATH", help="ROI mask PNG (nonzero = inside)")
    p.add_argument("--text", required=True, help="Text to place; a newline or a literal \\n starts a new line")
    p.add_argument("--per-char-normals", action="store_true",
                   help="Use the dominant normal under each character instead of one per ROI")

    layout = p.add_argument_group("layout")
    layout.add_argument("--char-aspect", type=float, help="Cell width / height")
    layout.add_argument("--char-gap", type=float, help="Gap between cells, fraction of cell width")
    layout.add_argument("--line-gap", type=float, help="Gap between rows, fraction of cell height")
    layout.add_argument("--margin", type=float, help="ROI margin, fraction of the ROI size")
    layout.add_argument("--align", choices=("left", "center", "right"), help="Line alignment")
    layout.add_argument("--fold-case", action="store_true", default=None, help="Upper-case the text first")

    projection = p.add_argument_group("projection")
    projection.add_argument("--depth", type=float, help="Depth constant along the normal")
    projection.add_argument("--min-facing", type=float, help="Smallest accepted |n_z|")
    projection.add_argument("--readout", choices=("orthographic", "perspective"), help="3D to image readout")
    projection.add_argument("--focal-length", type=float, help="Perspective focal length (normalized units)")

    p.add_argument("--glyph-dir", default=None, help="Directory of <hex codepoint>.png stamps overriding glyphs")
    p.add_argument("--emit-unaligned", action="store_true", help="Also write cmask_unaligned.png")
    p.add_argument("-o", "--output", required=True, help="Output directory")
    p.set_defaults(handler=run)


def _settings_from_args(args: argparse.Namespace, settings: EngineSettings) -> EngineSettings:
    return with_overrides(
        settings,
        {
            "layout": {
                "char_aspect": args.char_aspect,
                "char_gap_frac": args.char_gap,
                "line_gap_frac": args.line_gap,
                "margin_frac": args.margin,
                "align": args.align,
                "fold_case": args.fold_case,
            },
            "projection": {
                "depth": args.depth,
                "min_facing": args.min_facing,
                "readout": args.readout,
                "focal_length": args.focal_length,
            },
        },
    )


def run(args: argparse.Namespace, settings: EngineSettings) -> int:
    settings = _settings_from_args(args, settings)

    source = read_rgb(args.image)
    size = (int(source.shape[1]), int(source.shape[0]))
    field = load_normal_field(args.normals, settings.normals)

    if args.roi is not None:
        x, y, w, h = parse_rect(args.roi)
        roi = RoiMask.from_rect(x, y, w, h, size)
        layout_rect = BBox2D.from_corner(x, y, w, h)
    else:
        roi = read_mask_png(args.roi_mask)
        layout_rect = None

    glyphs = load_glyph_set(args.glyph_dir, settings.raster.stamp_size)
    pipeline = ConditioningPipeline(settings, glyphs)
    result = pipeline.run(
        source,
        field,
        roi,
        args.text.replace("\\n", "\n"),
        out_dir=args.output,
        layout_rect=layout_rect,
        per_char=args.per_char_normals,
        emit_unaligned=args.emit_unaligned,
    )

    write_png(Path(args.output) / PREVIEW_NAME, render_preview(source, result.quads))
    for line in PipelineTraceLogger.format(result.trace):
        logger.info(line)

    manifest = result.export.manifest
    emit_json(
        {
            "output": str(args.output),
            "files": [f.name for f in manifest.files] + [PREVIEW_NAME],
            "char_count": manifest.char_count,
            "dominant_normal": manifest.dominant_normal,
            "config_digest": manifest.config_digest,
        }
    )
    return 0
