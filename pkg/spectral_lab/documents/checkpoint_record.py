from typing_extensions import Annotated, TypedDict

from .generate.type_wrapper import Field, add_extra_schema
from .verification_report import VerificationReport

CHECKPOINT_RECORD_EXTRA_SCHEMA = {"additionalProperties": False}


@add_extra_schema(CHECKPOINT_RECORD_EXTRA_SCHEMA)
class CheckpointRecord(TypedDict):
    """A finished shard, one line of a checkpoint file"""

    shard_id: Annotated[str, Field(description="claim:n:prefix of the shard")]
    report: Annotated[
        VerificationReport, Field(description="Partial report of the shard")
    ]
