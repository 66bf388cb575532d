# Stable placement planes for 3-D objects
from stableplace.core.constants import TOOL_VERSION

__version__ = TOOL_VERSION
