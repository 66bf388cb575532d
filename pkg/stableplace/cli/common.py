"""
Helpers shared by the subcommands: corpus discovery and artifact writing.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ValidationError

from stableplace.core.config import ToolConfig, build_config
from stableplace.core.constants import MESH_SUFFIXES
from stableplace.core.exceptions import MeshFormatError
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.schemas.common import canonical_json
from stableplace.services.geometry import write_atomic


def discover_corpus(directory: Union[str, Path]) -> List[Path]:
    """Every OBJ/PLY mesh under `directory`, sorted lexicographically."""
    root = Path(directory)
    if not root.is_dir():
        raise MeshFormatError(f"Corpus directory not found: {root}", path=str(root))
    return sorted(p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in MESH_SUFFIXES)


def object_id(path: Union[str, Path]) -> str:
    return Path(path).stem


def write_model(path: Union[str, Path], model: BaseModel, include_timestamp: bool = True) -> None:
    write_atomic(path, canonical_json(model, include_timestamp))


def read_annotation(path: Union[str, Path]) -> AnnotationRecord:
    """
    Raises:
        MeshFormatError: If the file is missing or not an annotation record
    """
    path = Path(path)
    if not path.is_file():
        raise MeshFormatError(f"Annotation file not found: {path}", path=str(path))
    try:
        return AnnotationRecord.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise MeshFormatError(f"Invalid annotation record {path}: {e.error_count()} errors", path=str(path)) from e


def annotation_beside(mesh_path: Path) -> Optional[Path]:
    candidate = mesh_path.with_suffix(".json")
    return candidate if candidate.is_file() else None


def override(config: ToolConfig, **values: Any) -> ToolConfig:
    """
    Revalidated copy of `config` with command-line values applied.

    Keyword names are dotted paths with `__` for the dot (`cluster__subdivisions`);
    None values are skipped.

    Raises:
        ConfigValidationError: If an overridden value is invalid
    """
    data: Dict[str, Any] = config.model_dump(mode="json", by_alias=True)
    for key, value in values.items():
        if value is None:
            continue
        *sections, field = key.split("__")
        target = data
        for section in sections:
            target = target[section]
        target[field] = value
    return build_config(data)
