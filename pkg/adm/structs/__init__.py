from adm.structs.config import InitialCondition, RandomSpectrum, SimConfig, Snapshot, TaylorGreen
from adm.structs.report import (
    BoundValue,
    ErrorReport,
    ErrorRow,
    ErrorSummary,
    IneqCase,
    PropertyReport,
    PropertyRow,
)

__all__ = [
    "BoundValue",
    "ErrorReport",
    "ErrorRow",
    "ErrorSummary",
    "IneqCase",
    "InitialCondition",
    "PropertyReport",
    "PropertyRow",
    "RandomSpectrum",
    "SimConfig",
    "Snapshot",
    "TaylorGreen",
]
