# stdlib
from typing import List, Optional, Sequence

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

# spikedse absolute
from spikedse.exceptions import DomainError
from spikedse.utils.numeric import round_half_away

QMAX = 7


class QuantizedWeights(BaseModel):
    """Per-layer 4-bit integer weights (values in [-7, 7]) with a positive
    per-layer scale; None entries stand for weightless layers."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ints: List[Optional[np.ndarray]]
    scales: List[Optional[float]]

    @model_validator(mode="after")
    def _check_range(self) -> "QuantizedWeights":
        if len(self.ints) != len(self.scales):
            raise ValueError("one scale per layer expected")
        for q, scale in zip(self.ints, self.scales):
            if q is None:
                continue
            if scale is None or scale <= 0:
                raise ValueError("scale must be > 0")
            if q.size and (q.min() < -QMAX or q.max() > QMAX):
                raise ValueError(f"quantized values outside [-{QMAX}, {QMAX}]")
        return self

    def dequantize(self) -> List[Optional[np.ndarray]]:
        return [
            None if q is None else q.astype(np.float64) * scale
            for q, scale in zip(self.ints, self.scales)
        ]


def quantize_tensor(w: np.ndarray, bits: int = 4) -> tuple:
    """Symmetric quantization of one tensor: scale = max|w| / 7 and
    q = clamp(round(w / scale), -7, 7), ties rounded away from zero.
    An all-zero tensor gets scale 1."""
    if bits != 4:
        raise DomainError(f"only 4-bit quantization is supported, got {bits}")
    w = np.asarray(w, dtype=np.float64)
    max_abs = float(np.abs(w).max()) if w.size else 0.0
    if max_abs == 0:
        return np.zeros(w.shape, dtype=np.int8), 1.0
    scale = max_abs / QMAX
    q = np.clip(round_half_away(w / scale), -QMAX, QMAX).astype(np.int8)
    return q, scale


def quantize_weights(weights: Sequence[Optional[np.ndarray]], bits: int = 4) -> QuantizedWeights:
    ints, scales = [], []
    for w in weights:
        if w is None:
            ints.append(None)
            scales.append(None)
            continue
        q, scale = quantize_tensor(w, bits=bits)
        ints.append(q)
        scales.append(scale)
    return QuantizedWeights(ints=ints, scales=scales)
