# surface-text synth: analytic planar normal maps
# cli/commands/synth.py

import argparse
import logging

from surface_text_engine.cli.arguments import emit_json, parse_normal, parse_size
from surface_text_engine.core.normals.raw_format import write_raw_file
from surface_text_engine.core.normals.synthesis import synth_dihedral, synth_plane
from surface_text_engine.core.schemas.config import EngineSettings
from surface_text_engine.io.images import write_normal_png

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    p = subparsers.add_parser(
        "synth",
        parents=parents,
        help="Write a constant or two-plane normal map",
        description="Write an 8-bit normal-map PNG (and optionally an NRM1 raw file) of a plane "
                    "or of two planes meeting at a column. Use --normal=-0.5,0,0.8 for "
                    "components starting with a minus sign.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--normal", metavar="NX,NY,NZ", help="Plane normal (normalized on entry)")
    kind.add_argument("--dihedral", nargs=2, metavar=("LEFT", "RIGHT"),
                      help="Normals left and right of the split column")
    p.add_argument("--split", type=int, default=None, help="First column of the right plane (default: width / 2)")
    p.add_argument("--size", default="64x64", metavar="WxH", help="Map size in pixels")
    p.add_argument("-o", "--output", required=True, help="Output PNG path")
    p.add_argument("--raw", default=None, metavar="PATH", help="Also write the lossless NRM1 field here")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: EngineSettings) -> int:
    width, height = parse_size(args.size)

    if args.normal is not None:
        n = parse_normal(args.normal)
        field = synth_plane(n, width, height)
        summary = {"normal": list(n.as_tuple())}
    else:
        left = parse_normal(args.dihedral[0])
        right = parse_normal(args.dihedral[1])
        split = args.split if args.split is not None else width // 2
        field = synth_dihedral(left, right, width, height, split)
        summary = {"left": list(left.as_tuple()), "right": list(right.as_tuple()), "split": split}

    write_normal_png(args.output, field)
    summary["output"] = str(args.output)
    if args.raw:
        write_raw_file(args.raw, field)
        summary["raw"] = str(args.raw)

    summary["size"] = [width, height]
    logger.info("Wrote %dx%d normal map to %s", width, height, args.output)
    emit_json(summary)
    return 0
