# Utilities Package
from stableplace.utils.seeds import derive_seed

__all__ = ["derive_seed"]
