# surface-text augment: warp an image and its normal map together
# cli/commands/augment.py

import argparse
import json
import logging
from pathlib import Path

from surface_text_engine.cli.arguments import emit_json, parse_pair
from surface_text_engine.core.augment.affine_warp import AffineSampler, affine_warp_pair
from surface_text_engine.core.errors import DimensionMismatch, IoError
from surface_text_engine.core.normals.raw_format import write_raw_file
from surface_text_engine.core.schemas.augment import AffineParams
from surface_text_engine.core.schemas.config import EngineSettings
from surface_text_engine.io.images import load_normal_field, read_rgb, write_normal_png, write_png

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    p = subparsers.add_parser(
        "augment",
        parents=parents,
        help="Affine-warp an image/normal-map pair consistently",
        description="Warp the image (bilinear) and the normal map (nearest, normals re-oriented) "
                    "by one affine map about the image centre. Writes image.png, normals.png, "
                    "normals.nrm and params.json.",
    )
    p.add_argument("--image", required=True, help="Source image")
    p.add_argument("--normals", required=True, help="Normal map (PNG or .nrm)")
    p.add_argument("--rotate", type=float, default=0.0, help="Rotation in degrees (clockwise on screen)")
    p.add_argument("--scale", type=float, default=1.0, help="Isotropic scale")
    p.add_argument("--shear-x", type=float, default=0.0, help="x += shear_x * y")
    p.add_argument("--shear-y", type=float, default=0.0, help="y += shear_y * x")
    p.add_argument("--translate", default="0,0", metavar="TX,TY", help="Translation in pixels")
    p.add_argument("--random", action="store_true", help="Sample parameters from the configured ranges")
    p.add_argument("--seed", type=int, default=0, help="Sampler seed for --random")
    p.add_argument("-o", "--output", required=True, help="Output directory")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: EngineSettings) -> int:
    image = read_rgb(args.image)
    field = load_normal_field(args.normals, settings.normals)
    size = (int(image.shape[1]), int(image.shape[0]))
    if size != field.size:
        raise DimensionMismatch(f"image is {size}, normal map is {field.size}")

    if args.random:
        params = AffineSampler(args.seed, settings.augment).sample(size)
    else:
        params = AffineParams(
            rotate_deg=args.rotate,
            scale=args.scale,
            shear_x=args.shear_x,
            shear_y=args.shear_y,
            translate=parse_pair(args.translate),
        )

    warped_image, warped_field = affine_warp_pair(image, field, params)

    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(f"cannot create output directory {out}: {e}", path=str(out)) from e

    write_png(out / "image.png", warped_image)
    write_normal_png(out / "normals.png", warped_field)
    write_raw_file(out / "normals.nrm", warped_field)
    payload = params.model_dump(mode="json")
    try:
        (out / "params.json").write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {out / 'params.json'}: {e}", path=str(out / "params.json")) from e

    logger.info("Augmented pair written to %s", out)
    emit_json(payload)
    return 0
