# surface-text mae: surface-normal consistency between two normal maps
# cli/commands/mae.py

import argparse

from surface_text_engine.cli.arguments import emit_json, parse_rect
from surface_text_engine.core.metrics.angular_error import mae_n
from surface_text_engine.core.normals.raw_format import read_raw_file
from surface_text_engine.core.schemas.config import EngineSettings
from surface_text_engine.core.schemas.normals import RoiMask
from surface_text_engine.io.images import load_normal_field, read_mask_png


def register(subparsers, parents) -> None:
    p = subparsers.add_parser(
        "mae",
        parents=parents,
        help="Mean angular error (degrees) between two normal maps",
        description="Print {\"mae_deg\", \"max_deg\", \"pixels\"} for two normal maps of equal size, "
                    "optionally restricted to an ROI.",
    )
    p.add_argument("--before", required=True, help="Reference normal map (PNG or .nrm)")
    p.add_argument("--after", required=True, help="Compared normal map (PNG or .nrm)")
    roi = p.add_mutually_exclusive_group()
    roi.add_argument("--roi", metavar="X,Y,W,H", help="Restrict to this rectangle")
    roi.add_argument("--roi-mask", metavar="PATH", help="Restrict to nonzero pixels of this mask PNG")
    p.add_argument("--raw", action="store_true", help="Read both inputs as NRM1 raw regardless of suffix")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: EngineSettings) -> int:
    if args.raw:
        before = read_raw_file(args.before)
        after = read_raw_file(args.after)
    else:
        before = load_normal_field(args.before, settings.normals)
        after = load_normal_field(args.after, settings.normals)

    mask = None
    if args.roi is not None:
        x, y, w, h = parse_rect(args.roi)
        mask = RoiMask.from_rect(x, y, w, h, before.size)
    elif args.roi_mask is not None:
        mask = read_mask_png(args.roi_mask)

    report = mae_n(before, after, mask)
    emit_json(report.to_json_dict(settings.metrics.json_decimals))
    return 0
