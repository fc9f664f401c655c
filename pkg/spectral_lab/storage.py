"""
Files owned by the command line: the append-only spectrum cache and the
checkpoint of finished shards. Both are newline-delimited JSON with one
document per line and are written by a single process.
"""

import hashlib
import json
import os
import warnings
from pathlib import Path
from typing import IO, Dict, Iterator, List, Optional, Union

import jsonschema

from spectral_lab import (
    CacheError,
    CheckpointError,
    DocumentNames,
    NumpyEncoder,
    round_significant,
    schema_validators,
)

from .documents.cache_entry import CacheEntry, StoredEnergy
from .documents.checkpoint_record import CheckpointRecord
from .documents.verification_report import VerificationReport
from .enumeration import SOFT_MAX_ORDER, canonical_form
from .graphs import Graph, graph6_encode
from .spectral import Solver, Spectrum, eigenvalues, energy, spectrum_from_values

PathLike = Union[str, "os.PathLike[str]"]

CACHED_EXPONENTS = (3.0,)


def cache_key(g: Graph) -> str:
    """Canonical graph6 up to order 10, plain graph6 beyond."""
    if g.n <= SOFT_MAX_ORDER:
        return canonical_form(g)
    return graph6_encode(g)


def exponent_key(p: float) -> str:
    return f"{float(p):g}"


def entry_checksum(entry: dict) -> str:
    body = {k: v for k, v in entry.items() if k != "checksum"}
    text = json.dumps(body, sort_keys=True, cls=NumpyEncoder)
    return hashlib.sha256(text.encode()).hexdigest()


def make_cache_entry(
    g: Graph, spectrum: Spectrum, exponents=CACHED_EXPONENTS, validate: bool = True
) -> CacheEntry:
    """A cache record of ``g`` with its spectrum at 12 significant digits."""
    energies: Dict[str, StoredEnergy] = {}
    for p in exponents:
        pair = energy(spectrum, p)
        energies[exponent_key(p)] = StoredEnergy(
            e_plus=round_significant(pair.e_plus),
            e_minus=round_significant(pair.e_minus),
        )
    entry = CacheEntry(
        key=cache_key(g),
        n=g.n,
        spectrum=[round_significant(float(x)) for x in spectrum.values],
        energies=energies,
        checksum="",
    )
    entry["checksum"] = entry_checksum(entry)
    if validate:
        schema_validators[DocumentNames.cache_entry].validate(entry)
    return entry


def _read_records(path: Path, what: str, error: type) -> Iterator[dict]:
    """
    Parse every complete line of ``path``.

    A trailing line without its newline is an interrupted write; it is cut
    off the file with a warning.
    """
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        return
    except OSError as err:
        raise error(f"cannot read {what} {path}: {err}") from err
    lines = data.split(b"\n")
    tail = lines.pop()
    if tail:
        warnings.warn(
            f"{what} {path} ends in an incomplete record; truncating it",
            stacklevel=3,
        )
        try:
            with open(path, "r+b") as f:
                f.truncate(len(data) - len(tail))
        except OSError as err:
            raise error(f"cannot repair {what} {path}: {err}") from err
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield json.loads(line)
        except ValueError:
            warnings.warn(
                f"skipping unreadable line {lineno} of {what} {path}", stacklevel=3
            )


def _append(f: IO[str], doc: dict) -> None:
    f.write(json.dumps(doc, sort_keys=True, cls=NumpyEncoder) + "\n")
    f.flush()
    os.fsync(f.fileno())


class SpectrumCache:
    """
    Spectra keyed by isomorphism class, persisted in an append-only file.

    Reopening the file serves every record written before. Records whose
    checksum does not match are ignored with a warning.
    """

    def __init__(self, path: PathLike) -> None:
        self.path = Path(path)
        self._entries: Dict[str, CacheEntry] = {}
        validator = schema_validators[DocumentNames.cache_entry]
        for doc in _read_records(self.path, "cache", CacheError):
            try:
                validator.validate(doc)
            except jsonschema.ValidationError:
                warnings.warn(f"ignoring malformed cache record in {self.path}")
                continue
            if doc["checksum"] != entry_checksum(doc):
                warnings.warn(
                    f"ignoring cache record {doc['key']!r} in {self.path}: "
                    "checksum mismatch"
                )
                continue
            self._entries[doc["key"]] = doc

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def get(self, g: Graph) -> Optional[CacheEntry]:
        return self._entries.get(cache_key(g))

    def put(self, entry: CacheEntry) -> bool:
        """Append ``entry``; returns False when its key is already stored."""
        if entry["key"] in self._entries:
            return False
        try:
            with open(self.path, "a") as f:
                _append(f, entry)
        except OSError as err:
            raise CacheError(f"cannot write cache {self.path}: {err}") from err
        self._entries[entry["key"]] = entry
        return True

    def spectrum(self, g: Graph, solver: Solver = "jacobi") -> Spectrum:
        """The spectrum of ``g`` from the cache, computing and storing a miss."""
        entry = self.get(g)
        if entry is None:
            spec = eigenvalues(g, solver=solver)
            entry = make_cache_entry(g, spec)
            self.put(entry)
        return spectrum_from_values(entry["spectrum"])


def cache_get(cache: SpectrumCache, g: Graph) -> Optional[CacheEntry]:
    return cache.get(g)


def cache_put(cache: SpectrumCache, entry: CacheEntry) -> bool:
    return cache.put(entry)


class Checkpoint:
    """
    Finished shards of a long run, one ``CheckpointRecord`` per line.

    Lines that fail validation are skipped with a warning, so a run killed
    mid-write loses at most the shard it was writing.
    """

    def __init__(self, path: PathLike) -> None:
        self.path = Path(path)
        self._done: Dict[str, VerificationReport] = {}
        validator = schema_validators[DocumentNames.checkpoint_record]
        for doc in _read_records(self.path, "checkpoint", CheckpointError):
            try:
                validator.validate(doc)
            except jsonschema.ValidationError:
                warnings.warn(f"skipping invalid checkpoint record in {self.path}")
                continue
            self._done[doc["shard_id"]] = doc["report"]

    def __len__(self) -> int:
        return len(self._done)

    def __contains__(self, shard_id: str) -> bool:
        return shard_id in self._done

    @property
    def shard_ids(self) -> List[str]:
        return sorted(self._done)

    def get(self, shard_id: str, exponent: float) -> Optional[VerificationReport]:
        """
        The stored report of ``shard_id``.

        Raises
        ------
        CheckpointError
            If the stored report was computed with another exponent.
        """
        report = self._done.get(shard_id)
        if report is not None and report["exponent"] != float(exponent):
            raise CheckpointError(
                f"checkpoint {self.path} holds {shard_id} at p={report['exponent']}, "
                f"this run uses p={exponent}"
            )
        return report

    def record(
        self, shard_id: str, report: VerificationReport, validate: bool = True
    ) -> None:
        doc = CheckpointRecord(shard_id=shard_id, report=report)
        if validate:
            schema_validators[DocumentNames.checkpoint_record].validate(doc)
        try:
            with open(self.path, "a") as f:
                _append(f, doc)
        except OSError as err:
            raise CheckpointError(
                f"cannot write checkpoint {self.path}: {err}"
            ) from err
        self._done[shard_id] = report
