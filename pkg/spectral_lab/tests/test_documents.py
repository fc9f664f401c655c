import json

import jsonschema
import numpy
import pytest

import spectral_lab
from spectral_lab.verify import energy_report


def test_documents():
    dn = spectral_lab.DocumentNames
    for k in (
        "energy_report",
        "verification_report",
        "small_graph_row",
        "family_row",
        "bound_case",
        "sign_claim",
        "run_config",
        "report_file",
        "cache_entry",
        "checkpoint_record",
    ):
        assert dn(k) == getattr(dn, k)


def test_len():
    assert 10 == len(spectral_lab.DocumentNames)


def test_schemas():
    for k in spectral_lab.DocumentNames:
        assert k in spectral_lab.SCHEMA_NAMES
        assert spectral_lab.schemas[k]
        assert spectral_lab.schemas[k]["title"] == k.value


def test_schema_validators():
    for name in spectral_lab.schemas.keys():
        assert name in spectral_lab.schema_validators

    assert len(spectral_lab.schema_validators) == len(spectral_lab.schemas)


def test_validators_reject_extra_keys():
    report = energy_report(spectral_lab.graph_from_edges(2, [(0, 1)]))
    names = spectral_lab.DocumentNames
    validator = spectral_lab.schema_validators[names.energy_report]
    validator.validate(report)
    with pytest.raises(jsonschema.ValidationError):
        validator.validate(dict(report, extra=1))
    with pytest.raises(jsonschema.ValidationError):
        validator.validate(dict(report, exceptional="C_4"))


def test_round_significant():
    assert spectral_lab.round_significant(1 / 3) == 0.333333333333
    assert spectral_lab.round_significant(0.0) == 0.0
    assert spectral_lab.round_significant(float("inf")) == float("inf")
    assert spectral_lab.round_significant(123456.7891234567) == 123456.789123


def test_sanitize_doc():
    doc = {
        "values": numpy.array([2.0, -1.0]),
        "count": numpy.int64(3),
        "nested": [{"x": numpy.float64(1) / 3, "flag": True}],
    }
    assert spectral_lab.sanitize_doc(doc) == {
        "values": [2.0, -1.0],
        "count": 3,
        "nested": [{"x": 0.333333333333, "flag": True}],
    }
    json.dumps(spectral_lab.sanitize_doc(doc))


def test_numpy_encoder():
    text = json.dumps(
        {"a": numpy.arange(3), "b": numpy.float32(0.5)}, cls=spectral_lab.NumpyEncoder
    )
    assert json.loads(text) == {"a": [0, 1, 2], "b": 0.5}
    with pytest.raises(TypeError):
        json.dumps({"a": object()}, cls=spectral_lab.NumpyEncoder)


def test_exception_hierarchy():
    assert issubclass(spectral_lab.InvalidGraph, ValueError)
    assert issubclass(spectral_lab.Graph6Error, spectral_lab.SpectralLabValueError)
    assert issubclass(spectral_lab.NonConvergenceError, RuntimeError)
    for io_error in (spectral_lab.CacheError, spectral_lab.CheckpointError):
        assert issubclass(io_error, spectral_lab.SpectralLabRuntimeError)
        assert issubclass(io_error, RuntimeError)
        assert issubclass(io_error, OSError)
        assert str(io_error("cannot write")) == "cannot write"
    assert issubclass(spectral_lab.CheckpointError, spectral_lab.SpectralLabError)
    err = spectral_lab.NoSignChange((-2.0, -1.0), "no root")
    assert err.bracket == (-2.0, -1.0)
    assert str(err) == "no root"
