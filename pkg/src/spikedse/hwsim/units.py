# third party
import numpy as np
from pydantic import BaseModel, ConfigDict

# spikedse absolute
from spikedse.core.topology import LayerKind, LayerSpec
from spikedse.exceptions import ShapeError


def penc_scan(bits: np.ndarray) -> np.ndarray:
    """Priority encoder: indices of the set bits, ascending."""
    return np.flatnonzero(np.asarray(bits).reshape(-1))


class AguTargets(BaseModel):
    """Output neurons reached by one input spike.

    For convolutions, output rows `rows` pair with kernel rows `krows` (and
    likewise for columns) across every output channel. Fully-connected
    layers target every output.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    channel: int
    rows: np.ndarray
    cols: np.ndarray
    krows: np.ndarray
    kcols: np.ndarray
    out_channels: int

    @property
    def count(self) -> int:
        return self.out_channels * len(self.rows) * len(self.cols)


def _axis_targets(pos: int, size_out: int, kernel: int, stride: int, pad: int) -> tuple:
    # output o covers input o*stride - pad + k for k in [0, kernel)
    lo = max(0, -(-(pos + pad - kernel + 1) // stride))
    hi = min(size_out - 1, (pos + pad) // stride)
    outs = np.arange(lo, hi + 1, dtype=np.int64)
    return outs, pos + pad - outs * stride


def agu_targets(active_index: int, spec: LayerSpec) -> AguTargets:
    """Targets of the input spike at flat (C-major) index `active_index`.

    Receptive fields are clipped at the borders, so a corner pixel of an
    unpadded 3x3 convolution reaches one position per output channel.
    """
    c_in, h, w = spec.in_shape
    if not 0 <= active_index < c_in * h * w:
        raise ShapeError(f"spike index {active_index} outside input of shape {spec.in_shape}")
    if spec.kind == LayerKind.fc:
        everything = np.zeros(1, dtype=np.int64)
        return AguTargets(
            channel=int(active_index),
            rows=everything,
            cols=everything,
            krows=everything,
            kcols=everything,
            out_channels=spec.out_features,
        )
    if spec.kind != LayerKind.conv:
        raise ShapeError(f"{spec.kind.value} layers have no address generation")

    c, rem = divmod(int(active_index), h * w)
    y, x = divmod(rem, w)
    _, h_out, w_out = spec.out_shape
    rows, krows = _axis_targets(y, h_out, spec.kernel_size, spec.stride, spec.padding)
    cols, kcols = _axis_targets(x, w_out, spec.kernel_size, spec.stride, spec.padding)
    return AguTargets(
        channel=c,
        rows=rows,
        cols=cols,
        krows=krows,
        kcols=kcols,
        out_channels=spec.out_channels,
    )
