from typing import Optional

from typing_extensions import Annotated, Literal, TypedDict

from .generate.type_wrapper import Field, add_extra_schema

Command = Literal[
    "verify", "table1", "family", "bounds", "configurations", "enumerate", "gadgets"
]

RUN_CONFIG_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(RUN_CONFIG_EXTRA_SCHEMA)
class RunConfig(TypedDict):
    """The settings of one command-line run"""

    command: Annotated[Command, Field(description="The subcommand")]
    side: Annotated[
        Optional[Literal["neg", "pos", "p2"]],
        Field(description="Which claim verify checks"),
    ]
    kind: Annotated[Optional[str], Field(description="Family for the family command")]
    n_lo: Annotated[Optional[int], Field(description="Smallest order")]
    n_hi: Annotated[Optional[int], Field(description="Largest order")]
    t_lo: Annotated[Optional[int], Field(description="Smallest t for subdivided-star")]
    t_hi: Annotated[Optional[int], Field(description="Largest t for subdivided-star")]
    exponent: Annotated[float, Field(description="The exponent p, at least 1")]
    shards: Annotated[int, Field(description="Number of worker processes")]
    shard_depth: Annotated[
        Optional[int], Field(description="Order of the shard prefixes")
    ]
    solver: Annotated[Literal["jacobi", "lapack"], Field(description="Eigensolver")]
    seed: Annotated[int, Field(description="Seed of the witness sampler")]
    samples: Annotated[int, Field(description="Witnesses per configuration family")]
    all_graphs: Annotated[
        bool, Field(description="enumerate also counts disconnected classes")
    ]
    format: Annotated[
        Literal["json", "csv", "text"], Field(description="Output format")
    ]
    cache: Annotated[Optional[str], Field(description="Spectrum cache file")]
    checkpoint: Annotated[Optional[str], Field(description="Checkpoint file")]
    output: Annotated[Optional[str], Field(description="Report file, stdout if null")]
    timing: Annotated[bool, Field(description="Whether timings are reported")]
