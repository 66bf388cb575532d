from stableplace.services.viewsynth.augment import augment
from stableplace.services.viewsynth.camera import VirtualCamera, sample_camera_poses
from stableplace.services.viewsynth.raycast import cast_rays
from stableplace.services.viewsynth.render import SynthesizedView, render_partial, sample_fixed, synthesize_view

__all__ = [
    "augment",
    "VirtualCamera",
    "sample_camera_poses",
    "cast_rays",
    "SynthesizedView",
    "render_partial",
    "sample_fixed",
    "synthesize_view",
]
