# surface-text rate-stats: per-method summary of human ratings
# cli/commands/rate_stats.py

import argparse

from surface_text_engine.cli.arguments import emit_json
from surface_text_engine.core.metrics.rating_stats import load_ratings_csv, rating_stats
from surface_text_engine.core.schemas.config import EngineSettings


def register(subparsers, parents) -> None:
    p = subparsers.add_parser(
        "rate-stats",
        parents=parents,
        help="Summarize a ratings CSV per method and quality parameter",
        description="CSV header: method,image_id,participant,harmonization,text_rendering,"
                    "perspective_blending (scores 1-5).",
    )
    p.add_argument("--csv", required=True, help="Ratings CSV path")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: EngineSettings) -> int:
    summary = rating_stats(load_ratings_csv(args.csv))
    emit_json(summary.model_dump(mode="json"))
    return 0
