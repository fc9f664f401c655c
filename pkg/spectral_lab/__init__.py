import json
import math
import sys
from enum import Enum
from importlib.metadata import version as importlib_version
from typing import Any, no_type_check

import jsonschema
import numpy

if sys.version_info < (3, 9):
    import importlib_resources
else:
    import importlib.resources as importlib_resources

__version__ = importlib_version("spectral-lab")

del importlib_version


__all__ = [
    "DocumentNames",
    "schemas",
    "schema_validators",
    "sanitize_doc",
    "NumpyEncoder",
    "SpectralLabError",
    "SpectralLabKeyError",
    "SpectralLabValueError",
    "SpectralLabRuntimeError",
    "SpectralLabTypeError",
    "InvalidGraph",
    "InvalidFamily",
    "Graph6Error",
    "NonConvergenceError",
    "NoSignChange",
    "BoundArgumentError",
    "CacheError",
    "CheckpointError",
    "Graph",
    "FamilyKind",
    "FamilySpec",
    "graph_from_edges",
    "build_family",
    "gadget_catalog",
    "table1_catalog",
    "is_connected",
    "components",
    "induced_subgraph",
    "disjoint_union",
    "graph6_encode",
    "graph6_decode",
    "Spectrum",
    "EnergyPair",
    "QuotientPoly",
    "eigenvalues",
    "energy",
    "path_positive_energy",
    "closed_form_spectrum",
    "quotient_char_poly",
    "poly_negative_root",
    "CanonicalGraph",
    "EnumShard",
    "enumerate_connected",
    "enumerate_graphs",
    "canonical_form",
    "brute_force_connected",
    "shard_enumeration",
    "verify_negative",
    "verify_positive",
    "verify_table1",
    "verify_family_lemma",
    "verify_configuration_lemmas",
    "bound_f",
    "bound_g",
    "bound_star_clique",
    "merge_verification_reports",
    "__version__",
]


class DocumentNames(Enum):
    energy_report = "energy_report"
    verification_report = "verification_report"
    small_graph_row = "small_graph_row"
    family_row = "family_row"
    bound_case = "bound_case"
    sign_claim = "sign_claim"
    run_config = "run_config"
    report_file = "report_file"
    cache_entry = "cache_entry"
    checkpoint_record = "checkpoint_record"


class SpectralLabError(Exception): ...


class SpectralLabKeyError(SpectralLabError, KeyError): ...


class SpectralLabValueError(SpectralLabError, ValueError): ...


class SpectralLabRuntimeError(SpectralLabError, RuntimeError): ...


class SpectralLabTypeError(SpectralLabError, TypeError): ...


class InvalidGraph(SpectralLabValueError):
    """raised when a graph cannot be built from the given vertices and edges"""

    ...


class InvalidFamily(SpectralLabValueError):
    """raised when a family is asked for outside its parameter range"""

    ...


class Graph6Error(SpectralLabValueError):
    """raised when a string is not a well-formed graph6 encoding"""

    ...


class NonConvergenceError(SpectralLabRuntimeError):
    """raised when the Jacobi sweeps hit their cap before the matrix is diagonal"""

    ...


class NoSignChange(SpectralLabValueError):
    """raised when a bisection bracket does not straddle a root"""

    def __init__(self, bracket: Any, message: str) -> None:
        super().__init__(message)
        self.bracket = bracket
        self.message = message


class BoundArgumentError(SpectralLabValueError):
    """raised when a bound function is evaluated outside its feasible tuples"""

    ...


class CacheError(SpectralLabRuntimeError, IOError):
    """raised when the spectrum cache file cannot be read or written"""

    ...


class CheckpointError(SpectralLabRuntimeError, IOError):
    """raised when a checkpoint belongs to a different run or cannot be read"""

    ...


SCHEMA_PATH = "schemas"
SCHEMA_NAMES = {
    DocumentNames.energy_report: "schemas/energy_report.json",
    DocumentNames.verification_report: "schemas/verification_report.json",
    DocumentNames.small_graph_row: "schemas/small_graph_row.json",
    DocumentNames.family_row: "schemas/family_row.json",
    DocumentNames.bound_case: "schemas/bound_case.json",
    DocumentNames.sign_claim: "schemas/sign_claim.json",
    DocumentNames.run_config: "schemas/run_config.json",
    DocumentNames.report_file: "schemas/report_file.json",
    DocumentNames.cache_entry: "schemas/cache_entry.json",
    DocumentNames.checkpoint_record: "schemas/checkpoint_record.json",
}
schemas = {}
for name, filename in SCHEMA_NAMES.items():
    ref = importlib_resources.files("spectral_lab") / filename
    with ref.open() as f:
        schemas[name] = json.load(f)


def _is_array(checker, instance):
    return (
        jsonschema.validators.Draft7Validator.TYPE_CHECKER.is_type(instance, "array")
        or isinstance(instance, tuple)
        or isinstance(instance, numpy.ndarray)
    )


_array_type_checker = jsonschema.validators.Draft7Validator.TYPE_CHECKER.redefine(
    "array", _is_array
)

_Validator = jsonschema.validators.extend(
    jsonschema.validators.Draft7Validator, type_checker=_array_type_checker
)

schema_validators = {
    name: _Validator(schema=schema) for name, schema in schemas.items()
}

SIGNIFICANT_DIGITS = 12


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round to ``digits`` significant digits; non-finite values pass through."""
    if not math.isfinite(value) or value == 0.0:
        return float(value)
    return float(f"{value:.{digits}g}")


def _round_floats(obj: Any) -> Any:
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round_significant(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    return obj


def sanitize_doc(doc: dict) -> dict:
    """Return a copy with numpy objects converted and floats rounded.

    Every float in the copy is rounded to twelve significant digits, which is
    the precision reports and golden files are compared at.

    Parameters
    ----------
    doc : dict
        Any spectral-lab document, possibly holding numpy scalars or arrays.

    Returns
    -------
    sanitized_doc : dict
        A JSON-ready copy of ``doc``.
    """
    return _round_floats(json.loads(json.dumps(doc, cls=NumpyEncoder)))


class NumpyEncoder(json.JSONEncoder):
    """
    A json.JSONEncoder for encoding numpy objects using built-in Python types.

    Examples
    --------

    Encode a spectrum held as a numpy array.

    >>> json.dumps({'values': numpy.array([2.0, -1.0, -1.0])}, cls=NumpyEncoder)
    '{"values": [2.0, -1.0, -1.0]}'
    """

    @no_type_check
    def default(self, obj: object) -> Any:
        if isinstance(obj, (numpy.generic, numpy.ndarray)):
            if numpy.isscalar(obj):
                return obj.item()
            return obj.tolist()
        return json.JSONEncoder.default(self, obj)


# The submodules import the exceptions above from this package, so they are
# only pulled in once everything they need is defined.
from .graphs import (  # noqa: E402
    FamilyKind,
    FamilySpec,
    Graph,
    build_family,
    components,
    disjoint_union,
    gadget_catalog,
    graph6_decode,
    graph6_encode,
    graph_from_edges,
    induced_subgraph,
    is_connected,
    table1_catalog,
)
from .spectral import (  # noqa: E402
    EnergyPair,
    QuotientPoly,
    Spectrum,
    closed_form_spectrum,
    eigenvalues,
    energy,
    path_positive_energy,
    poly_negative_root,
    quotient_char_poly,
)
from .enumeration import (  # noqa: E402
    CanonicalGraph,
    EnumShard,
    brute_force_connected,
    canonical_form,
    enumerate_connected,
    enumerate_graphs,
    shard_enumeration,
)
from .verify import (  # noqa: E402
    bound_f,
    bound_g,
    bound_star_clique,
    merge_verification_reports,
    verify_configuration_lemmas,
    verify_family_lemma,
    verify_negative,
    verify_positive,
    verify_table1,
)
