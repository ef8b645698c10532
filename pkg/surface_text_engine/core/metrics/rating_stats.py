# Aggregates human quality ratings per method and parameter
# core/metrics/rating_stats.py

import csv
import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Union

from pydantic import ValidationError

from surface_text_engine.core.errors import IoError, MalformedRecord
from surface_text_engine.core.schemas.metrics import (
    RATING_PARAMETERS,
    RATING_SCALE,
    MethodSummary,
    ParameterStats,
    RatingRecord,
    RatingSummary,
)

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("method", "image_id", "participant") + RATING_PARAMETERS


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    field = ".".join(str(p) for p in err.get("loc", ())) or "record"
    return f"{field}: {err.get('msg', 'invalid value')}"


def load_ratings_csv(path: Union[str, Path]) -> List[RatingRecord]:
    """
    Parse a ratings CSV with header
    method,image_id,participant,harmonization,text_rendering,perspective_blending.

    Raises:
        IoError: the file cannot be read
        MalformedRecord: bad header or row (row = 1-based data row, 0 for the header)
    """
    try:
        with open(path, "r", encoding="utf-8-sig", newline="") as f:
            reader = csv.DictReader(f)
            header = tuple(name.strip() for name in (reader.fieldnames or ()))
            missing = [c for c in CSV_COLUMNS if c not in header]
            if missing:
                raise MalformedRecord(f"header is missing column(s): {', '.join(missing)}", row=0)

            records: List[RatingRecord] = []
            for row_no, row in enumerate(reader, start=1):
                values = {(k or "").strip(): v for k, v in row.items()}
                if None in row or any(values.get(c) is None for c in CSV_COLUMNS):
                    raise MalformedRecord(f"row {row_no} has the wrong number of fields", row=row_no)
                try:
                    records.append(RatingRecord(**{c: values[c] for c in CSV_COLUMNS}))
                except ValidationError as e:
                    raise MalformedRecord(f"row {row_no}: {_first_error(e)}", row=row_no) from e
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}", path=str(path)) from e

    logger.debug("Loaded %d rating record(s) from %s", len(records), path)
    return records


def _parameter_stats(scores: List[int]) -> ParameterStats:
    n = len(scores)
    mean = sum(scores) / n
    variance = sum((s - mean) ** 2 for s in scores) / n
    histogram = {rating: 0 for rating in RATING_SCALE}
    for s in scores:
        histogram[s] += 1
    return ParameterStats(mean=mean, variance=variance, histogram=histogram, top_rating_count=histogram[5])


def rating_stats(records: List[RatingRecord]) -> RatingSummary:
    """
    Per method and quality parameter: mean, population variance, histogram
    of ratings 1-5 and the count of top (5) ratings.

    Raises:
        MalformedRecord: no records
    """
    if not records:
        raise MalformedRecord("no rating records to summarize", row=0)

    by_method: Dict[str, List[RatingRecord]] = defaultdict(list)
    for record in records:
        by_method[record.method].append(record)

    methods: Dict[str, MethodSummary] = {}
    for method in sorted(by_method):
        group = by_method[method]
        methods[method] = MethodSummary(
            method=method,
            record_count=len(group),
            parameters={p: _parameter_stats([getattr(r, p) for r in group]) for p in RATING_PARAMETERS},
        )

    best_method = {
        p: min(methods, key=lambda m: (-methods[m].parameters[p].mean, m))
        for p in RATING_PARAMETERS
    }
    return RatingSummary(methods=methods, best_method=best_method)
