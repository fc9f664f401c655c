from argparse import ArgumentParser
from pathlib import Path

from spectral_lab.documents import ALL_DOCUMENTS
from spectral_lab.documents.generate.typeddict_to_schema import typeddict_to_schema

SCHEMA_DIR = Path(__file__).parent.parent.parent / "schemas"


def main(args=None):
    parser = ArgumentParser(description="Regenerate the packaged JSON schemas.")
    parser.add_argument("schema_dir", nargs="?", type=Path, default=SCHEMA_DIR)
    parsed = parser.parse_args(args)
    for document in ALL_DOCUMENTS:
        typeddict_to_schema(document, parsed.schema_dir)


if __name__ == "__main__":
    main()
