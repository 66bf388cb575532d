import hashlib
from typing import Union


def derive_seed(base: int, *parts: Union[str, int]) -> int:
    """
    Stable 63-bit seed from a base seed and identifying parts.

    Independent of execution order and of Python's hash randomization.
    """
    text = "/".join([str(int(base))] + [str(p) for p in parts])
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "little") >> 1
