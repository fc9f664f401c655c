from typing import Optional

from typing_extensions import Annotated, Literal, TypedDict

from .generate.type_wrapper import Field, add_extra_schema

LemmaKind = Literal[
    "complete-minus-edge", "complete-plus-pendant", "clique-k2", "subdivided-star"
]

FAMILY_ROW_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(FAMILY_ROW_EXTRA_SCHEMA)
class FamilyRow(TypedDict):
    """Closed-form and numeric negative 3-energy of one family member against
    its lemma bound"""

    kind: Annotated[LemmaKind, Field(description="The family")]
    n: Annotated[int, Field(description="The family parameter n")]
    t: Annotated[
        Optional[int], Field(description="Subdivided edges, only for subdivided-star")
    ]
    order: Annotated[int, Field(description="Number of vertices of the graph")]
    e3_minus_closed: Annotated[
        float, Field(description="Negative 3-energy from the closed-form spectrum")
    ]
    e3_minus_numeric: Annotated[
        Optional[float],
        Field(
            description="Negative 3-energy from the eigensolver, null above "
            "order 40"
        ),
    ]
    agreement: Annotated[
        Optional[float],
        Field(description="Largest closed-form vs numeric eigenvalue difference"),
    ]
    negative_root: Annotated[
        Optional[float],
        Field(description="The negative quotient root the lemma argues about"),
    ]
    bound: Annotated[float, Field(description="The lemma's lower bound")]
    strict: Annotated[bool, Field(description="Whether the bound is strict")]
    margin: Annotated[float, Field(description="e3_minus_closed - bound")]
    multiset_ok: Annotated[
        Optional[bool],
        Field(
            description="Multiplicities of 0, 1 and -1 match, only for "
            "subdivided-star"
        ),
    ]
    ok: Annotated[bool, Field(description="Every check on this row passed")]
