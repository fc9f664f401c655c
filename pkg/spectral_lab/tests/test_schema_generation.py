# type: ignore

import json
import os

import pytest

import spectral_lab
from spectral_lab.documents import ALL_DOCUMENTS

pytest.importorskip("pydantic", minversion="2.13")

from spectral_lab.documents.generate.typeddict_to_schema import (  # noqa: E402
    sort_schema,
    typeddict_to_schema,
)

SCHEMA_PATH = spectral_lab.__path__[0] + "/schemas/"


@pytest.mark.parametrize("typed_dict_class", ALL_DOCUMENTS)
def test_generated_json_matches_typed_dict(typed_dict_class, tmp_path):
    typeddict_to_schema(typed_dict_class, schema_dir=tmp_path)
    (file_name,) = os.listdir(tmp_path)
    with open(tmp_path / file_name) as generated_file, open(
        SCHEMA_PATH + file_name
    ) as old_file:
        if json.load(generated_file) != json.load(old_file):
            raise Exception(
                f"`{typed_dict_class.__name__}` can generate a json schema, but "
                f"it doesn't match the schema in `{SCHEMA_PATH}`. Did you forget "
                "to run `python -m spectral_lab.documents.generate` after changes "
                f"to `{typed_dict_class.__name__}`?"
            )


def test_stored_schemas_are_sorted():
    for name in spectral_lab.SCHEMA_NAMES.values():
        with open(os.path.join(spectral_lab.__path__[0], name)) as f:
            schema = json.load(f)
        assert list(sort_schema(schema)["properties"]) == sorted(
            schema["properties"]
        )
        assert list(schema["properties"]) == sorted(schema["properties"])


def test_generate_writes_every_schema(tmp_path, capsys):
    from spectral_lab.documents.generate.__main__ import main

    main([str(tmp_path)])
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(
        os.path.basename(name) for name in spectral_lab.SCHEMA_NAMES.values()
    )
