from typing import Dict, List, Optional

from typing_extensions import Annotated, TypedDict

from .energy_report import Exceptional
from .generate.type_wrapper import Field, add_extra_schema


class BoundHit(TypedDict):
    """One graph checked against one bound"""

    bound: Annotated[str, Field(description="Name of the bound that was checked")]
    n: Annotated[int, Field(description="Order the bound was checked at")]
    graph6: Annotated[
        Optional[str],
        Field(description="graph6 of the graph, null when no graph is involved"),
    ]
    value: Annotated[float, Field(description="The quantity that was bounded")]
    margin: Annotated[
        float, Field(description="value minus the bound; negative means violated")
    ]
    exceptional: Annotated[
        Exceptional, Field(description="Exempt-graph classification of the graph")
    ]


VERIFICATION_REPORT_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(VERIFICATION_REPORT_EXTRA_SCHEMA)
class VerificationReport(TypedDict):
    """Outcome of checking one claim over a range of orders"""

    claim: Annotated[str, Field(description="Name of the claim that was checked")]
    exponent: Annotated[float, Field(description="The exponent p")]
    n_range: Annotated[
        List[int], Field(description="Smallest and largest order covered")
    ]
    graphs_checked: Annotated[int, Field(description="Total number of graphs")]
    counts: Annotated[
        Dict[str, int], Field(description="Graphs checked per order, keyed by order")
    ]
    violations: Annotated[
        List[BoundHit], Field(description="Every check that failed, sorted")
    ]
    minimizers: Annotated[
        List[BoundHit],
        Field(description="The smallest margins per bound and order, sorted"),
    ]
    equalities: Annotated[
        List[BoundHit], Field(description="Every check met with equality, sorted")
    ]
    wall_time: Annotated[float, Field(description="Seconds spent, summed over parts")]
