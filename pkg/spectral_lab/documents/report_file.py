from typing import Any, Dict, List

from typing_extensions import Annotated, TypedDict

from .generate.type_wrapper import Field, add_extra_schema
from .run_config import RunConfig
from .verification_report import BoundHit

REPORT_FILE_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(REPORT_FILE_EXTRA_SCHEMA)
class ReportFile(TypedDict):
    """Everything one command-line run writes"""

    config: Annotated[RunConfig, Field(description="The run settings")]
    ok: Annotated[bool, Field(description="No violations and no deviations")]
    counts: Annotated[
        Dict[str, int], Field(description="Graphs checked per order, keyed by order")
    ]
    violations: Annotated[List[BoundHit], Field(description="Failed checks")]
    minimizers: Annotated[
        List[BoundHit], Field(description="Smallest margins per bound and order")
    ]
    equalities: Annotated[List[BoundHit], Field(description="Checks met with equality")]
    rows: Annotated[
        List[Dict[str, Any]],
        Field(description="Per-command rows: table, family, bound or sign documents"),
    ]
    timing: Annotated[
        Dict[str, float], Field(description="Seconds per phase, empty with --no-timing")
    ]
