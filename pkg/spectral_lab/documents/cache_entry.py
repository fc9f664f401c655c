from typing import Dict, List

from typing_extensions import Annotated, TypedDict

from .generate.type_wrapper import Field, add_extra_schema


class StoredEnergy(TypedDict):
    """Energies stored for one exponent"""

    e_plus: Annotated[float, Field(description="Positive p-energy")]
    e_minus: Annotated[float, Field(description="Negative p-energy")]


CACHE_ENTRY_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(CACHE_ENTRY_EXTRA_SCHEMA)
class CacheEntry(TypedDict):
    """One record of the append-only spectrum cache"""

    key: Annotated[
        str,
        Field(
            description="Canonical graph6 up to order 10, plain graph6 above that"
        ),
    ]
    n: Annotated[int, Field(description="Number of vertices")]
    spectrum: Annotated[
        List[float], Field(description="Eigenvalues, 12 significant digits")
    ]
    energies: Annotated[
        Dict[str, StoredEnergy], Field(description="Energies keyed by exponent")
    ]
    checksum: Annotated[
        str, Field(description="sha256 of the other fields as sorted-key JSON")
    ]
