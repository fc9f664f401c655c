import json
from collections import OrderedDict
from pathlib import Path
from typing import Dict, Optional

from pydantic import TypeAdapter
from pydantic.alias_generators import to_snake
from pydantic.json_schema import GenerateJsonSchema

from spectral_lab.documents import ALL_DOCUMENTS, DocumentType
from spectral_lab.documents.generate.type_wrapper import extra_schema

SortOrder = {
    "title": 0,
    "description": 1,
    "type": 2,
    "$defs": 3,
    "properties": 4,
    "required": 5,
    "additionalProperties": 6,
}


def sort_schema(document_schema: Dict) -> Dict:
    """Order the top-level keys and sort definitions and properties by name."""
    assert isinstance(document_schema, dict)
    document_schema = OrderedDict(
        sorted(
            document_schema.items(),
            key=lambda x: SortOrder.get(x[0], len(SortOrder)),
        )
    )

    for key in ("$defs", "properties"):
        if isinstance(document_schema.get(key), dict):
            document_schema[key] = OrderedDict(
                (name, sort_schema(value) if isinstance(value, dict) else value)
                for name, value in sorted(document_schema[key].items())
            )
    if isinstance(document_schema.get("required"), list):
        document_schema["required"].sort()

    return document_schema


def merge_extra_schema(document_schema: Dict, extra: Dict) -> None:
    """Merge hand-written schema fragments into a generated schema."""
    for key, value in extra.items():
        if key not in document_schema:
            document_schema[key] = value
        elif not isinstance(document_schema[key], type(value)):
            raise ValueError(
                f"Cannot merge {document_schema[key]!r} with {value!r} in "
                f"{document_schema['title']}[{key}]"
            )
        elif isinstance(value, dict):
            merge_extra_schema(document_schema[key], value)
        elif isinstance(value, list):
            document_schema[key] += value
        else:
            raise ValueError(
                f"{document_schema[key]!r} in {document_schema['title']}[{key}] "
                "is of unsupported type"
            )


def dump_json(dictionary: Dict, file_path: Path, mode="w"):
    with open(file_path, mode) as f:
        json.dump(dictionary, f, indent=4)


class _GenerateJsonSchema(GenerateJsonSchema):
    def generate(self, schema, mode="validation"):
        json_schema = super().generate(schema, mode=mode)
        json_schema["title"] = to_snake(json_schema["title"])
        json_schema["description"] = " ".join(json_schema["description"].split())
        return json_schema


def typeddict_to_schema(
    document_type: DocumentType, schema_dir: Optional[Path] = None, sort: bool = True
) -> Dict:
    """
    Build the JSON schema of one document type, optionally writing it to
    ``schema_dir/<title>.json`` when it differs from what is on disk.
    """
    assert document_type in ALL_DOCUMENTS

    document_schema = TypeAdapter(document_type).json_schema(
        by_alias=True, schema_generator=_GenerateJsonSchema
    )

    if sort:
        document_schema = sort_schema(document_schema)

    merge_extra_schema(document_schema, extra_schema.get(document_type, {}))

    if schema_dir:
        file_path = Path(schema_dir) / f"{document_schema['title']}.json"

        if not file_path.exists():
            print(f"{file_path} does not exist yet, writing")
            dump_json(document_schema, file_path)
        else:
            with open(file_path) as json_file:
                skip_writing = json.load(json_file) == document_schema

            if skip_writing:
                print(f"{document_schema['title']} is unchanged")
            else:
                print(
                    f"{document_schema['title']} has been changed, writing new schema"
                )
                dump_json(document_schema, file_path)

    return document_schema
