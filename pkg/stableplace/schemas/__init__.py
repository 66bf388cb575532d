from stableplace.schemas.annotation import AnnotationRecord, StablePlaneRecord
from stableplace.schemas.bench import BenchReport, ReportRow, TrialRecord
from stableplace.schemas.common import PoseRecord, Provenance, canonical_json, make_provenance
from stableplace.schemas.placement import ProposalRecord, RankedPlaneEntry, RankedPlanesRecord
from stableplace.schemas.trace import TraceLine
from stableplace.schemas.view import CameraRecord, ViewSidecar, VisiblePlane

__all__ = [
    "AnnotationRecord",
    "StablePlaneRecord",
    "BenchReport",
    "ReportRow",
    "TrialRecord",
    "PoseRecord",
    "Provenance",
    "canonical_json",
    "make_provenance",
    "ProposalRecord",
    "RankedPlaneEntry",
    "RankedPlanesRecord",
    "TraceLine",
    "CameraRecord",
    "ViewSidecar",
    "VisiblePlane",
]
