from typing import List, Optional

from typing_extensions import Annotated, Literal, TypedDict

from .generate.type_wrapper import Field, add_extra_schema

BOUND_CASE_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(BOUND_CASE_EXTRA_SCHEMA)
class BoundCase(TypedDict):
    """One tabulated value of a bound function beside its recomputation"""

    name: Annotated[
        Literal["f_s", "g_s", "f_star_clique"], Field(description="Bound function")
    ]
    arguments: Annotated[List[int], Field(description="Arguments, s or n first")]
    value: Annotated[float, Field(description="Recomputed value")]
    quoted_value: Annotated[Optional[float], Field(description="Quoted value")]
    relation: Annotated[
        Literal["approx", "at_least"],
        Field(
            description="approx: within 0.01 of the quote; at_least: the quote "
            "is a lower bound"
        ),
    ]
    deviation: Annotated[Optional[float], Field(description="|value - quoted_value|")]
    ok: Annotated[bool, Field(description="The relation holds")]
