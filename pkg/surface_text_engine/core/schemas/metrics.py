# Metric and rating schema definitions
# core/schemas/metrics.py

from typing import Dict

from pydantic import BaseModel, ConfigDict, Field, model_validator

RATING_PARAMETERS = ("harmonization", "text_rendering", "perspective_blending")
RATING_SCALE = (1, 2, 3, 4, 5)


class MetricReport(BaseModel):
    """Surface-normal consistency between two normal fields (degrees)"""

    model_config = ConfigDict(frozen=True)

    mae_degrees: float = Field(..., ge=0, le=180, description="Mean per-pixel angular error")
    max_error_degrees: float = Field(..., ge=0, le=180, description="Largest per-pixel angular error")
    pixel_count: int = Field(..., gt=0, description="Pixels compared")

    @model_validator(mode="after")
    def _mean_below_max(self) -> "MetricReport":
        # Mean of values can exceed their max only by summation rounding
        if self.mae_degrees > self.max_error_degrees * (1.0 + 1e-12) + 1e-12:
            raise ValueError("mean error exceeds max error")
        return self

    def to_json_dict(self, decimals: int = 9) -> Dict[str, float]:
        return {
            "mae_deg": round(self.mae_degrees, decimals) + 0.0,
            "max_deg": round(self.max_error_degrees, decimals) + 0.0,
            "pixels": self.pixel_count,
        }


class RatingRecord(BaseModel):
    """One participant's scores for one generated image"""

    model_config = ConfigDict(frozen=True, str_strip_whitespace=True)

    method: str = Field(..., min_length=1)
    image_id: str = Field(..., min_length=1)
    participant: str = Field(..., min_length=1)
    harmonization: int = Field(..., ge=1, le=5)
    text_rendering: int = Field(..., ge=1, le=5)
    perspective_blending: int = Field(..., ge=1, le=5)


class ParameterStats(BaseModel):
    mean: float
    variance: float = Field(..., ge=0, description="Population variance")
    histogram: Dict[int, int] = Field(..., description="Count per rating 1-5")
    top_rating_count: int = Field(..., ge=0, description="Number of 5 ratings")


class MethodSummary(BaseModel):
    method: str
    record_count: int = Field(..., gt=0)
    parameters: Dict[str, ParameterStats]


class RatingSummary(BaseModel):
    methods: Dict[str, MethodSummary]
    best_method: Dict[str, str] = Field(
        ..., description="Per parameter, the method with the highest mean (ties by name)"
    )
