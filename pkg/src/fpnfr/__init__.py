"""Function point sizing with an NFR-extended value adjustment factor."""

from fpnfr.adjustment import (
    EstimateReport,
    PreconditionError,
    ProfileMismatchError,
    compute_adi,
    compute_fp,
    compute_tdi,
    compute_tdi_n,
    compute_vaf,
    estimate,
)
from fpnfr.analysis import (
    CalibrationRecord,
    CalibrationResult,
    SensitivityResult,
    calibrate,
    fp_bounds,
    one_way_sensitivity,
    tornado,
)
from fpnfr.counting import compute_ufp
from fpnfr.documents import DocumentError, parse_project, parse_project_file, resolve_profile
from fpnfr.model import (
    Complexity,
    FunctionInventory,
    FunctionType,
    GscId,
    GscRatingSheet,
    NfrId,
    NfrRatingSheet,
    Project,
    ValidationError,
    WeightProfile,
    validate_project,
)
from fpnfr.rubric import (
    ConsistencyWarning,
    consistency_warnings,
    guideline,
    mapped_gscs,
    suggest_nfr_di,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationRecord",
    "CalibrationResult",
    "Complexity",
    "ConsistencyWarning",
    "DocumentError",
    "EstimateReport",
    "FunctionInventory",
    "FunctionType",
    "GscId",
    "GscRatingSheet",
    "NfrId",
    "NfrRatingSheet",
    "PreconditionError",
    "ProfileMismatchError",
    "Project",
    "SensitivityResult",
    "ValidationError",
    "WeightProfile",
    "calibrate",
    "compute_adi",
    "compute_fp",
    "compute_tdi",
    "compute_tdi_n",
    "compute_ufp",
    "compute_vaf",
    "consistency_warnings",
    "estimate",
    "fp_bounds",
    "guideline",
    "mapped_gscs",
    "one_way_sensitivity",
    "parse_project",
    "parse_project_file",
    "resolve_profile",
    "suggest_nfr_di",
    "tornado",
    "validate_project",
]
