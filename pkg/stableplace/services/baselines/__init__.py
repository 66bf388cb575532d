from stableplace.services.baselines.bbf import bbf, canonical_axis
from stableplace.services.baselines.chsa import BasinAnalysis, basin_analysis, chsa, facet_solid_angles
from stableplace.services.baselines.proposal import PlacementProposal
from stableplace.services.baselines.rpf import outward_normal, rpf

__all__ = [
    "bbf",
    "canonical_axis",
    "BasinAnalysis",
    "basin_analysis",
    "chsa",
    "facet_solid_angles",
    "PlacementProposal",
    "outward_normal",
    "rpf",
]
