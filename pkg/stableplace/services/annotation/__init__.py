from stableplace.services.annotation.annotator import Annotator, annotate, annotate_corpus, record_planes
from stableplace.services.annotation.clustering import DirectionCluster, cluster_resting_directions
from stableplace.services.annotation.plane import StablePlane
from stableplace.services.annotation.support import extract_support_mask, support_heights
from stableplace.services.annotation.verification import tilt_verify

__all__ = [
    "Annotator",
    "annotate",
    "annotate_corpus",
    "record_planes",
    "DirectionCluster",
    "cluster_resting_directions",
    "StablePlane",
    "extract_support_mask",
    "support_heights",
    "tilt_verify",
]
