# stdlib
import hashlib
import json
from pathlib import Path
from typing import Any, Union

# third party
import numpy as np


def _default(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"unsupported type {type(obj)}")


def canonical_json(obj: Any) -> str:
    """Stable JSON text: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def stable_hash(obj: Any) -> str:
    """64-bit BLAKE2b digest of the canonical JSON form, as 16 hex digits."""
    digest = hashlib.blake2b(canonical_json(obj).encode("utf-8"), digest_size=8)
    return digest.hexdigest()


def save_json(path: Union[str, Path], obj: Any) -> None:
    with open(path, "w") as f:
        json.dump(obj, f, sort_keys=True, indent=2, default=_default)
        f.write("\n")


def load_json(path: Union[str, Path]) -> Any:
    with open(path, "r") as f:
        return json.load(f)


def save_blob(path: Union[str, Path], arr: np.ndarray, dtype: str) -> None:
    """Write `arr` as raw little-endian values of `dtype` (e.g. "<f4", "i1")."""
    np.ascontiguousarray(arr, dtype=np.dtype(dtype)).tofile(str(path))


def load_blob(path: Union[str, Path], dtype: str, shape: tuple) -> np.ndarray:
    arr = np.fromfile(str(path), dtype=np.dtype(dtype))
    return arr.reshape(shape)
