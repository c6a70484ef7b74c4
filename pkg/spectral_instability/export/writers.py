"""
JSON and CSV artifact writers and their readers.

Payload keys are sorted and floats are written losslessly, so identical inputs give
identical files apart from the timestamp in the metadata block.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from .. import __version__
from ..utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
FLOAT_FORMAT = "%.17g"


def _encode(value: Any) -> Any:
    """json default hook for numpy scalars/arrays and complex numbers."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(
    path: PathLike, payload: Dict[str, Any], metadata: Optional[Dict[str, Any]] = None
) -> Path:
    """
    Write payload with a metadata block holding the timestamp and package version.

    Non-finite floats are written as Infinity / NaN.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if "metadata" in payload:
        raise ValidationError("Payload must not define a top-level 'metadata' key")

    document = dict(payload)
    document["metadata"] = {
        "created": datetime.now().isoformat(),
        "version": __version__,
        **(metadata or {}),
    }
    with open(path, "w") as f:
        json.dump(document, f, indent=2, sort_keys=True, allow_nan=True, default=_encode)
        f.write("\n")
    logger.debug(f"Wrote JSON artifact {path}")
    return path


def read_json(path: PathLike) -> Dict[str, Any]:
    with open(path, "r") as f:
        return json.load(f)


def write_csv(path: PathLike, frame: pd.DataFrame) -> Path:
    """Write frame without index at 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.debug(f"Wrote CSV artifact {path} ({len(frame)} rows)")
    return path


def read_csv(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")
