# Records conditioning-pipeline stages for explainability
# core/explainability/pipeline_trace.py

from typing import List


class PipelineTraceLogger:
    """
    Collects and formats stage traces
    for auditability and explainability.
    """

    @staticmethod
    def passed(trace: List[str], stage: str) -> None:
        trace.append(f"{stage}:PASSED")

    @staticmethod
    def failed(trace: List[str], stage: str, error_code: str) -> None:
        trace.append(f"{stage}:FAILED:{error_code}")

    @staticmethod
    def format(trace: List[str]) -> List[str]:
        """
        Converts internal stage identifiers into
        human-readable explanations.
        """
        readable_mapping = {
            "INPUTS:PASSED": "Source image, normal map and ROI share one size",
            "LAYOUT:PASSED": "Text laid out as character cells inside the ROI",
            "DOMINANT_NORMAL:PASSED": "Dominant surface normal found for the ROI",
            "DOMINANT_NORMAL:SKIPPED": "ROI-wide normal is incoherent; per-character normals only",
            "ALIGN:PASSED": "Character cells aligned with the surface",
            "RASTERIZE:PASSED": "Glyphs rasterized into the aligned quads",
            "RASTERIZE_UNALIGNED:PASSED": "Unaligned reference mask rasterized",
            "EXPORT:PASSED": "Conditioning files written",
        }

        formatted_trace = []

        for entry in trace:
            if entry in readable_mapping:
                formatted_trace.append(readable_mapping[entry])
            elif ":FAILED:" in entry:
                stage, _, code = entry.partition(":FAILED:")
                formatted_trace.append(f"Stage {stage} failed ({code})")
            else:
                formatted_trace.append(f"Stage executed: {entry}")

        return formatted_trace
