from typing import Tuple, Type, Union

# flake8: noqa
from spectral_lab.documents.bound_case import BoundCase
from spectral_lab.documents.cache_entry import CacheEntry, StoredEnergy
from spectral_lab.documents.checkpoint_record import CheckpointRecord
from spectral_lab.documents.energy_report import EnergyReport
from spectral_lab.documents.family_row import FamilyRow
from spectral_lab.documents.report_file import ReportFile
from spectral_lab.documents.run_config import RunConfig
from spectral_lab.documents.sign_claim import SignClaim
from spectral_lab.documents.small_graph_row import SmallGraphRow
from spectral_lab.documents.verification_report import BoundHit, VerificationReport

DocumentType = Union[
    Type[BoundCase],
    Type[CacheEntry],
    Type[CheckpointRecord],
    Type[EnergyReport],
    Type[FamilyRow],
    Type[ReportFile],
    Type[RunConfig],
    Type[SignClaim],
    Type[SmallGraphRow],
    Type[VerificationReport],
]

ALL_DOCUMENTS: Tuple[DocumentType, ...] = (
    BoundCase,
    CacheEntry,
    CheckpointRecord,
    EnergyReport,
    FamilyRow,
    ReportFile,
    RunConfig,
    SignClaim,
    SmallGraphRow,
    VerificationReport,
)


__all__ = [
    "BoundCase",
    "BoundHit",
    "CacheEntry",
    "CheckpointRecord",
    "EnergyReport",
    "FamilyRow",
    "ReportFile",
    "RunConfig",
    "SignClaim",
    "SmallGraphRow",
    "StoredEnergy",
    "VerificationReport",
    "DocumentType",
]
