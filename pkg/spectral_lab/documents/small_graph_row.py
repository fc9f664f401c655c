from typing import List, Optional

from typing_extensions import Annotated, TypedDict

from .generate.type_wrapper import Field, add_extra_schema

SMALL_GRAPH_ROW_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(SMALL_GRAPH_ROW_EXTRA_SCHEMA)
class SmallGraphRow(TypedDict):
    """A recomputed row of the small-graph spectrum table beside the printed
    values"""

    name: Annotated[str, Field(description="Name of the graph, e.g. H_6")]
    graph6: Annotated[str, Field(description="graph6 encoding of the graph")]
    n: Annotated[int, Field(description="Number of vertices")]
    m: Annotated[int, Field(description="Number of edges")]
    spectrum: Annotated[
        List[float], Field(description="Computed spectrum rounded to 3 decimals")
    ]
    reference_spectrum: Annotated[
        List[float], Field(description="Printed spectrum")
    ]
    max_spectrum_dev: Annotated[
        float,
        Field(description="Largest deviation of an unrounded eigenvalue from print"),
    ]
    e3_minus: Annotated[float, Field(description="Computed negative 3-energy")]
    reference_e3_minus: Annotated[float, Field(description="Printed negative 3-energy")]
    corrected_e3_minus: Annotated[
        Optional[float],
        Field(description="Corrected negative 3-energy where the print is wrong"),
    ]
    energy_dev: Annotated[
        float,
        Field(description="Deviation of e3_minus from the corrected or printed value"),
    ]
    ok: Annotated[bool, Field(description="Both deviations are within 0.001")]
