from typing_extensions import Annotated, Literal, TypedDict

from .generate.type_wrapper import Field, add_extra_schema

Exceptional = Literal["none", "K_1", "K_2", "P_3", "K_n"]

ENERGY_REPORT_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(ENERGY_REPORT_EXTRA_SCHEMA)
class EnergyReport(TypedDict):
    """Positive and negative p-energy of one graph with its margins against
    every bound that uses them"""

    graph6: Annotated[str, Field(description="graph6 encoding of the graph")]
    n: Annotated[int, Field(description="Number of vertices")]
    m: Annotated[int, Field(description="Number of edges")]
    exponent: Annotated[float, Field(description="The exponent p of the energies")]
    e_plus: Annotated[
        float, Field(description="Sum of the p-th powers of the positive eigenvalues")
    ]
    e_minus: Annotated[
        float,
        Field(
            description="Sum of the p-th powers of |lambda| over negative eigenvalues"
        ),
    ]
    margin_neg: Annotated[float, Field(description="e_minus - (n - 1)")]
    margin_neg_strict: Annotated[float, Field(description="e_minus - n")]
    margin_pos_path: Annotated[
        float, Field(description="e_plus minus the positive p-energy of P_n")
    ]
    margin_pos_linear: Annotated[float, Field(description="e_plus - sqrt(5) / 2 * n")]
    exceptional: Annotated[
        Exceptional,
        Field(
            description="Which exempt connected graph this is, identified by its "
            "order and size, or 'none'"
        ),
    ]
