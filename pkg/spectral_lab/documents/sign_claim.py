from typing import Optional

from typing_extensions import Annotated, TypedDict

from .generate.type_wrapper import Field, add_extra_schema

SIGN_CLAIM_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(SIGN_CLAIM_EXTRA_SCHEMA)
class SignClaim(TypedDict):
    """A sign fact checked at every order of a range"""

    name: Annotated[str, Field(description="What is claimed")]
    n_lo: Annotated[int, Field(description="First order checked")]
    n_hi: Annotated[int, Field(description="Last order checked")]
    holds: Annotated[bool, Field(description="The claim holds at every order")]
    worst_n: Annotated[int, Field(description="Order closest to failing")]
    worst_value: Annotated[float, Field(description="Value at worst_n")]
    anchor_n: Annotated[int, Field(description="Order of the quoted anchor value")]
    anchor_value: Annotated[float, Field(description="Computed value at anchor_n")]
    reference_anchor: Annotated[
        Optional[float], Field(description="Quoted value at anchor_n")
    ]
    anchor_ok: Annotated[
        Optional[bool], Field(description="Computed anchor matches the quote")
    ]
